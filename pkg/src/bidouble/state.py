"""Define the state structure of the search pipeline."""

from __future__ import annotations

import logging
from typing import Any, List

from pydantic import BaseModel, Field

from bidouble.covers import CoverType
from bidouble.search import SearchConfig, SearchSummary, SignatureGroup

logger = logging.getLogger(__name__)


class SearchState(BaseModel):
    """Represents the complete state of one search run.

    The pipeline fills it stage by stage: `types` after enumeration, `groups`
    and the filter counters of `summary` after grouping, and the certified
    pairs inside `groups` after certification.
    """

    search_config: SearchConfig = Field(..., description="Bounds and filters of the run")

    threads: int = Field(
        default=1,
        ge=1,
        description="Maximum number of partitions evaluated concurrently",
    )

    types: List[CoverType] = Field(
        default_factory=list,
        description="Canonical types in enumeration order",
    )

    groups: List[SignatureGroup] = Field(
        default_factory=list,
        description="Signature groups with at least two members",
    )

    summary: SearchSummary = Field(
        default_factory=SearchSummary,
        description="Counters reported in the search footer",
    )

    def model_post_init(self, __context: Any) -> None:
        """Log state initialization."""
        logger.debug(
            f"🔄 State initialized: {len(self.types)} types, {len(self.groups)} groups, threads={self.threads}"
        )
