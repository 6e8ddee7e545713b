"""Utility & helper functions."""

from __future__ import annotations

import json
import logging
import sys
from typing import Any, Dict, List, Sequence

import pandas as pd
from pydantic import BaseModel

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def setup_logging(level: str = "WARNING") -> None:
    """Send log records to stderr; stdout stays reserved for command output."""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format=LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )


def dump_json(payload: Any) -> str:
    """Serialize a model or plain data to one line of ASCII JSON."""
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json", by_alias=True)
    return json.dumps(payload, separators=(", ", ": "))


def format_table(rows: Sequence[Dict[str, Any]], columns: List[str]) -> str:
    """Render rows as a plain ASCII table, integers unabbreviated."""
    if not rows:
        return "(no rows)"
    frame = pd.DataFrame(
        [{c: "-" if row.get(c) is None else str(row.get(c)) for c in columns} for row in rows],
        columns=columns,
    )
    return frame.to_string(index=False, max_colwidth=None)


def format_fields(fields: Sequence[tuple]) -> str:
    """Two-column key/value table."""
    return format_table([{"field": k, "value": str(v)} for k, v in fields], ["field", "value"])
