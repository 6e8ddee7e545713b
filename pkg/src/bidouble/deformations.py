"""Natural deformations of bidouble covers and non-deformation certificates.

Natural deformations perturb the cover equations by f_j of bidegree D_j and
phi_j of bidegree D_j - L_j. For simple covers of type ((2a,2b),(2c,2d)) the two
nontrivial phi have bidegrees (2a-c, 2b-d) and (2c-a, 2d-b).

`manetti_check` tests the hypotheses under which simple covers of types
((2a,2b),(2c,2b)) and ((2a+2k,2b),(2c-2k,2b)) lie in different connected
components of the moduli space; `pair_verdict` combines it with the
homeomorphism signature.
"""

from __future__ import annotations

import itertools
import logging
from enum import Enum
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple

from pydantic import BaseModel, Field, field_serializer, field_validator

from bidouble.covers import BiDegree, CoverType, canonicalize, line_bundle_degrees
from bidouble.errors import SignatureUndetermined
from bidouble.invariants import HomeoSignature, homeo_signature

logger = logging.getLogger(__name__)


def section_count(degree: BiDegree) -> int:
    """Dimension of H^0(O(p,q)) on the quadric."""
    if degree.first < 0 or degree.second < 0:
        return 0
    return (degree.first + 1) * (degree.second + 1)


class PreservedSymmetry(str, Enum):
    FULL = "full"
    ITERATED_DOUBLE_COVER = "iterated_double_cover"
    NONE = "none"


class NaturalDeformationProfile(BaseModel):
    """Degrees and section counts of the natural deformation parameters."""

    f_degrees: Tuple[BiDegree, BiDegree, BiDegree] = Field(
        ..., description="Bidegrees of f_1, f_2, f_3"
    )
    phi_degrees: Tuple[BiDegree, BiDegree, BiDegree] = Field(
        ..., description="Bidegrees of phi_1, phi_2, phi_3, possibly negative"
    )
    f_dims: Tuple[int, int, int] = Field(..., description="Section counts of the f_j")
    phi_dims: Tuple[int, int, int] = Field(..., description="Section counts of the phi_j")
    total_params: int = Field(..., description="Sum of all six section counts")

    model_config = {"frozen": True}


def natural_deformation_profile(t: CoverType) -> NaturalDeformationProfile:
    bundles = line_bundle_degrees(t)
    phi = tuple(
        BiDegree(first=d.first - lb.first, second=d.second - lb.second)
        for d, lb in zip(t.branches, bundles)
    )
    f_dims = tuple(section_count(d) for d in t.branches)
    phi_dims = tuple(section_count(p) for p in phi)
    profile = NaturalDeformationProfile(
        f_degrees=t.branches,
        phi_degrees=phi,
        f_dims=f_dims,
        phi_dims=phi_dims,
        total_params=sum(f_dims) + sum(phi_dims),
    )
    logger.debug(f"📊 Natural deformations of {t}: {profile.total_params} parameters")
    return profile


def preserved_symmetry(t: CoverType) -> PreservedSymmetry:
    """Part of the (Z/2)^2 Galois action every natural deformation keeps.

    No phi_j with sections: the whole group survives. A simple cover with
    exactly one such phi keeps the involution fixing the other generator, so
    small deformations stay iterated double covers.
    """
    profile = natural_deformation_profile(t)
    active = sum(1 for dim in profile.phi_dims if dim > 0)
    if active == 0:
        return PreservedSymmetry.FULL
    if t.is_simple and active == 1:
        return PreservedSymmetry.ITERATED_DOUBLE_COVER
    return PreservedSymmetry.NONE


class ManettiCertificate(BaseModel):
    """Outcome of the non-deformation-equivalence hypothesis check."""

    a: int
    b: int
    c: int
    k: int
    satisfied: bool = Field(..., description="Every hypothesis holds")
    violated_conditions: List[str] = Field(
        default_factory=list, description="Names of the failed hypotheses, in check order"
    )

    model_config = {"frozen": True}

    def params(self) -> Tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.k)


_CONDITIONS: List[Tuple[str, Callable[[int, int, int, int], bool]]] = [
    ("a even", lambda a, b, c, k: a % 2 == 0),
    ("b even", lambda a, b, c, k: b % 2 == 0),
    ("c even", lambda a, b, c, k: c % 2 == 0),
    ("a >= 4", lambda a, b, c, k: a >= 4),
    ("b >= 4", lambda a, b, c, k: b >= 4),
    ("c >= 4", lambda a, b, c, k: c >= 4),
    ("a >= 2c+1", lambda a, b, c, k: a >= 2 * c + 1),
    ("a >= b+2", lambda a, b, c, k: a >= b + 2),
    ("c >= b+2", lambda a, b, c, k: c >= b + 2),
    ("c >= k+4", lambda a, b, c, k: c >= k + 4),
    ("k >= 1", lambda a, b, c, k: k >= 1),
]

CONDITION_NAMES = [name for name, _ in _CONDITIONS]


def manetti_check(a: int, b: int, c: int, k: int) -> ManettiCertificate:
    violated = [name for name, holds in _CONDITIONS if not holds(a, b, c, k)]
    return ManettiCertificate(
        a=a, b=b, c=c, k=k, satisfied=not violated, violated_conditions=violated
    )


class HomeoStatus(str, Enum):
    YES = "yes"
    UNKNOWN = "unknown"


class NondefStatus(str, Enum):
    CERTIFIED = "certified"
    UNKNOWN = "unknown"


class PairVerdict(BaseModel):
    homeo: HomeoStatus
    nondef: NondefStatus
    certificate: Optional[ManettiCertificate] = Field(
        None, description="Certificate with the smallest (a,b,c,k), when certified"
    )
    signature: Optional[HomeoSignature] = Field(
        None, description="Common signature, when homeo is yes"
    )

    model_config = {"frozen": True}

    @field_validator("certificate", mode="before")
    @classmethod
    def _rebuild_certificate(cls, value: Any) -> Any:
        if isinstance(value, dict) and "satisfied" not in value:
            return manetti_check(value["a"], value["b"], value["c"], value["k"])
        return value

    @field_serializer("certificate")
    def _dump_certificate(self, value: Optional[ManettiCertificate]) -> Optional[Dict[str, int]]:
        if value is None:
            return None
        return {"a": value.a, "b": value.b, "c": value.c, "k": value.k}


def _simple_orientations(t: CoverType) -> Iterator[Tuple[int, int, int, int]]:
    """(x1, y1, x2, y2) for the nontrivial branches of a simple type, all orders."""
    nontrivial = [b for b in canonicalize(t).branches if not b.is_trivial]
    for swap in (False, True):
        pairs = [b.swapped() if swap else b for b in nontrivial]
        for p, q in itertools.permutations(pairs):
            yield (p.first, p.second, q.first, q.second)


def family_parameters(t1: CoverType, t2: CoverType) -> List[Tuple[int, int, int, int]]:
    """All (a,b,c,k) with t1, t2 of types ((2a,2b),(2c,2b)), ((2a+2k,2b),(2c-2k,2b)).

    Either member may play the unshifted role; both rulings are tried for each.
    """
    if not (t1.is_simple and t2.is_simple):
        return []

    found = set()
    for unshifted, shifted in ((t1, t2), (t2, t1)):
        for x1, y1, x2, y2 in _simple_orientations(unshifted):
            if y1 != y2 or any(v % 2 for v in (x1, x2, y1)):
                continue
            for u1, v1, u2, v2 in _simple_orientations(shifted):
                if v1 != y1 or v2 != y1 or (u1 - x1) % 2:
                    continue
                k = (u1 - x1) // 2
                if u2 != x2 - 2 * k:
                    continue
                found.add((x1 // 2, y1 // 2, x2 // 2, k))
    return sorted(found)


def nondef_certificate(t1: CoverType, t2: CoverType) -> Optional[ManettiCertificate]:
    """Smallest satisfied certificate for the pair, if any."""
    for params in family_parameters(t1, t2):
        candidate = manetti_check(*params)
        if candidate.satisfied:
            return candidate
    return None


def pair_verdict(t1: CoverType, t2: CoverType) -> PairVerdict:
    signature: Optional[HomeoSignature] = None
    try:
        s1, s2 = homeo_signature(t1), homeo_signature(t2)
        if s1 == s2:
            signature = s1
    except SignatureUndetermined as e:
        logger.debug(f"⚠️ No homeomorphism claim for {t1} vs {t2}: {e}")

    certificate = nondef_certificate(t1, t2)

    verdict = PairVerdict(
        homeo=HomeoStatus.YES if signature is not None else HomeoStatus.UNKNOWN,
        nondef=NondefStatus.CERTIFIED if certificate else NondefStatus.UNKNOWN,
        certificate=certificate,
        signature=signature,
    )
    if certificate:
        logger.info(f"✅ {t1} vs {t2}: not deformation equivalent, (a,b,c,k) = {certificate.params()}")
    return verdict
