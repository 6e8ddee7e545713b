"""JSON shapes of the command-line output.

Every `--format json` line printed by `bidouble.cli` validates against the
model registered for its command here.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple, Type

from pydantic import BaseModel, Field

from bidouble.deformations import ManettiCertificate, NaturalDeformationProfile, PairVerdict, PreservedSymmetry
from bidouble.invariants import InvariantRecord
from bidouble.search import SearchSummary, SignatureGroup


class SingularityReport(BaseModel):
    class_T: bool = Field(..., description="Whether 1/m(1,q) is of class T")
    d: Optional[int] = None
    n: Optional[int] = None
    a: Optional[int] = None
    link: Optional[Tuple[int, int]] = Field(None, description="Lens space L(m,q) of the link")
    equation: Optional[str] = Field(None, description="Q-Gorenstein smoothing family")


class DeformProfileReport(BaseModel):
    cover_type: str = Field(..., description="Canonical form of the type")
    profile: NaturalDeformationProfile
    preserved_symmetry: PreservedSymmetry


class SearchFooter(BaseModel):
    summary: SearchSummary


class ErrorReport(BaseModel):
    error: str
    invariant: str
    message: str


COMMAND_SCHEMAS: Dict[str, List[Type[BaseModel]]] = {
    "invariants": [InvariantRecord],
    "compare": [PairVerdict],
    "search": [SignatureGroup, SearchFooter],
    "singularity": [SingularityReport],
    "deform-profile": [DeformProfileReport],
    "manetti": [ManettiCertificate],
}
