"""Configuration for the bidouble cover tools."""

from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Any, Dict, Literal, Union

from dotenv import dotenv_values
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from bidouble.errors import InvalidInput

logger = logging.getLogger(__name__)

SEARCH_FILE_KEYS = {
    "max_n",
    "max_m",
    "require_general_type",
    "require_simply_connected",
    "certify_nondef",
    "threads",
}


class Configuration(BaseSettings):
    """Defaults read from BIDOUBLE_* environment variables or a .env file."""

    model_config = SettingsConfigDict(
        env_prefix="BIDOUBLE_", case_sensitive=False, env_file=".env", extra="ignore"
    )

    threads: int = Field(
        default_factory=lambda: os.cpu_count() or 1,
        ge=1,
        description="Default number of concurrent search partitions",
    )

    max_n: int = Field(
        default=10,
        ge=0,
        description="Default bound on each n_j for searches",
    )

    max_m: int = Field(
        default=10,
        ge=0,
        description="Default bound on each m_j for searches",
    )

    output_format: Literal["table", "json"] = Field(
        default="table",
        description="Default output format",
    )

    log_level: str = Field(
        default="WARNING",
        description="Logging level for the stderr handler",
    )

    def model_post_init(self, __context: Any) -> None:
        """Log configuration after initialization."""
        logger.debug(f"⚙️ Configuration initialized: threads={self.threads}, box={self.max_n}x{self.max_m}")

    def __str__(self) -> str:
        return f"Configuration(threads={self.threads}, max_n={self.max_n}, max_m={self.max_m}, format={self.output_format})"


def load_config_file(path: Union[str, Path]) -> Dict[str, str]:
    """Read a key=value search configuration file.

    Raises:
        InvalidInput: the file is missing or names an unknown key.
    """
    path = Path(path)
    if not path.is_file():
        raise InvalidInput(f"Config file not found: {path}", "config file exists")

    values = {k.strip().lower(): v for k, v in dotenv_values(path).items() if v is not None}
    unknown = sorted(set(values) - SEARCH_FILE_KEYS)
    if unknown:
        raise InvalidInput(
            f"Unknown keys in {path}: {', '.join(unknown)}",
            "config keys in " + ", ".join(sorted(SEARCH_FILE_KEYS)),
        )
    logger.debug(f"📄 Loaded search config {path}: {values}")
    return values
