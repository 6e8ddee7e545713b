"""Numerical invariants of bidouble covers and the homeomorphism signature.

With n = sum n_j and m = sum m_j a smooth bidouble cover S of type
((n1,m1),(n2,m2),(n3,m3)) has

    chi(S) = ((n-4)(m-4) + sum n_j m_j) / 4
    K^2(S) = 2 (n-4)(m-4)

and K_S is the pullback of the Q-divisor of bidegree ((n-4)/2, (m-4)/2).
Simply connected minimal surfaces of general type with equal p_g >= 1, equal
K^2 and equal divisibility of K are homeomorphic by a homeomorphism carrying
canonical class to canonical class; `homeo_signature` packages exactly these
data.
"""

from __future__ import annotations

import logging
import math
from enum import Enum
from fractions import Fraction
from typing import Any, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, field_serializer, field_validator

from bidouble.covers import CoverType, line_bundle_degrees, validate_type
from bidouble.errors import (
    IrregularityUndetermined,
    NonIntegralChi,
    NotGeneralType,
    SignatureUndetermined,
)

logger = logging.getLogger(__name__)


class Pi1Class(str, Enum):
    SIMPLY_CONNECTED = "simply_connected"
    Z2 = "Z2"


class DivisibilityVerdict(BaseModel):
    """Divisibility index of the canonical class, exact or as a candidate set."""

    kind: Literal["exact", "candidates"] = Field(..., description="Verdict kind")
    r: Optional[int] = Field(None, description="Exact divisibility index")
    rs: Optional[List[int]] = Field(None, description="Admissible indices, ascending")

    model_config = {"frozen": True}

    @classmethod
    def exact(cls, r: int) -> DivisibilityVerdict:
        return cls(kind="exact", r=r)

    @classmethod
    def candidates(cls, rs: List[int]) -> DivisibilityVerdict:
        if rs == [1]:
            return cls.exact(1)
        return cls(kind="candidates", rs=sorted(rs))

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    def __str__(self) -> str:
        if self.is_exact:
            return f"exact({self.r})"
        return "candidates{" + ",".join(str(r) for r in self.rs or []) + "}"


class HomeoSignature(BaseModel):
    """Data deciding homeomorphism with matching canonical classes."""

    pi1: Pi1Class = Field(..., description="Fundamental group class")
    p_g: int = Field(..., description="Geometric genus")
    k_squared: int = Field(..., description="Self-intersection of K")
    divisibility: int = Field(..., description="Exact divisibility index of K")

    model_config = {"frozen": True}

    def key(self) -> Tuple[str, int, int, int]:
        return (self.pi1.value, self.p_g, self.k_squared, self.divisibility)

    def __str__(self) -> str:
        return f"({self.pi1.value}, p_g={self.p_g}, K2={self.k_squared}, r={self.divisibility})"


class InvariantRecord(BaseModel):
    """All invariants of one cover; refused values are None."""

    n: int = Field(..., description="Sum of the first branch coordinates")
    m: int = Field(..., description="Sum of the second branch coordinates")
    chi: int = Field(..., description="Holomorphic Euler characteristic")
    k_squared: int = Field(..., alias="k2", description="K^2")
    q: Optional[int] = Field(None, description="Irregularity, None when refused")
    p_g: Optional[int] = Field(None, alias="pg", description="Geometric genus, None when refused")
    canonical_bidegree: Tuple[Fraction, Fraction] = Field(
        ..., alias="K_bidegree", description="Q-bidegree of the class K pulls back from"
    )
    divisibility: Optional[DivisibilityVerdict] = Field(
        None, description="Divisibility of K, None when not general type"
    )
    pi1: Pi1Class = Field(..., description="Fundamental group class")
    general_type: bool = Field(..., description="n >= 5 and m >= 5")

    model_config = {
        "arbitrary_types_allowed": True,
        "populate_by_name": True,
        "frozen": True,
    }

    @field_validator("canonical_bidegree", mode="before")
    @classmethod
    def _parse_half_integers(cls, value: Any) -> Any:
        parsed = []
        for item in value:
            if isinstance(item, Fraction):
                parsed.append(item)
            else:
                numerator, denominator = item
                parsed.append(Fraction(numerator, denominator))
        return tuple(parsed)

    @field_serializer("canonical_bidegree")
    def _dump_half_integers(self, value: Tuple[Fraction, Fraction]) -> List[List[int]]:
        return [[v.numerator, v.denominator] for v in value]


def chi(t: CoverType) -> int:
    """Holomorphic Euler characteristic, asserting divisibility by 4."""
    n, m = t.n, t.m
    total = (n - 4) * (m - 4) + sum(b.first * b.second for b in t.branches)
    if total % 4:
        raise NonIntegralChi(f"4 does not divide {total} for type {t}")
    return total // 4


def k_squared(t: CoverType) -> int:
    return 2 * (t.n - 4) * (t.m - 4)


def is_general_type(t: CoverType) -> bool:
    return t.n >= 5 and t.m >= 5


def canonical_bidegree(t: CoverType) -> Tuple[Fraction, Fraction]:
    return (Fraction(t.n - 4, 2), Fraction(t.m - 4, 2))


def irregularity_and_pg(t: CoverType) -> Tuple[int, int]:
    """Return (q, p_g), using q = 0 when every L_i has both coordinates >= 1.

    Raises:
        IrregularityUndetermined: some L_i has a coordinate <= 0.
    """
    for i, bundle in enumerate(line_bundle_degrees(t), start=1):
        if bundle.first < 1 or bundle.second < 1:
            raise IrregularityUndetermined(
                f"L{i} = {bundle} of type {t} is not positive in both rulings"
            )
    return 0, chi(t) - 1


def _candidate_indices(k2: int) -> List[int]:
    return [
        r
        for r in range(1, math.isqrt(k2) + 1)
        if k2 % (r * r) == 0 and (r % 2 == 1 or k2 % 8 == 0)
    ]


def divisibility(t: CoverType) -> DivisibilityVerdict:
    """Divisibility index of K.

    All-even types pull K back from the integral class (n/2-2, m/2-2) of the
    quadric, whose pullback lattice is primitive, so the index is the gcd.
    Otherwise only r^2 | K^2 and the mod 8 obstruction for even r are used.

    Raises:
        NotGeneralType: n < 5 or m < 5.
    """
    if not is_general_type(t):
        raise NotGeneralType(f"Type {t} is not of general type (n={t.n}, m={t.m})")
    if t.all_even:
        return DivisibilityVerdict.exact(math.gcd(t.n // 2 - 2, t.m // 2 - 2))
    return DivisibilityVerdict.candidates(_candidate_indices(k_squared(t)))


def pi1_class(t: CoverType) -> Pi1Class:
    if not t.is_simple and t.all_even:
        return Pi1Class.Z2
    return Pi1Class.SIMPLY_CONNECTED


def _check_bogomolov_miyaoka_yau(t: CoverType, chi_value: int, k2: int) -> None:
    if k2 > 9 * chi_value:
        logger.warning(f"⚠️ K^2 = {k2} exceeds 9 chi = {9 * chi_value} for type {t}")


def homeo_signature(t: CoverType) -> HomeoSignature:
    """Signature (pi1, p_g, K^2, divisibility) for the homeomorphism criterion.

    Raises:
        SignatureUndetermined: not general type, pi1 = Z2, p_g refused or 0, or
            the divisibility is only a candidate set.
    """
    if not is_general_type(t):
        raise SignatureUndetermined(f"Type {t} is not of general type")

    pi1 = pi1_class(t)
    if pi1 is Pi1Class.Z2:
        raise SignatureUndetermined(f"Type {t} has fundamental group Z/2")

    try:
        _, p_g = irregularity_and_pg(t)
    except IrregularityUndetermined as e:
        raise SignatureUndetermined(f"p_g of type {t} is refused: {e}") from e
    if p_g < 1:
        raise SignatureUndetermined(f"Type {t} has p_g = {p_g} < 1")

    verdict = divisibility(t)
    if not verdict.is_exact or verdict.r is None:
        raise SignatureUndetermined(f"Divisibility of type {t} is only {verdict}")

    k2 = k_squared(t)
    _check_bogomolov_miyaoka_yau(t, p_g + 1, k2)
    return HomeoSignature(pi1=pi1, p_g=p_g, k_squared=k2, divisibility=verdict.r)


def invariant_record(t: CoverType) -> InvariantRecord:
    chi_value = chi(t)
    k2 = k_squared(t)
    general = is_general_type(t)

    q: Optional[int] = None
    p_g: Optional[int] = None
    try:
        q, p_g = irregularity_and_pg(t)
    except IrregularityUndetermined as e:
        logger.info(f"⚠️ {e}")

    verdict = divisibility(t) if general else None
    if general:
        _check_bogomolov_miyaoka_yau(t, chi_value, k2)

    record = InvariantRecord(
        n=t.n,
        m=t.m,
        chi=chi_value,
        k_squared=k2,
        q=q,
        p_g=p_g,
        canonical_bidegree=canonical_bidegree(t),
        divisibility=verdict,
        pi1=pi1_class(t),
        general_type=general,
    )
    logger.debug(f"📊 Invariants of {t}: chi={chi_value}, K2={k2}, div={verdict}")
    return record


def example_family_types(a: int, b: int, c: int, k: int) -> Tuple[CoverType, CoverType]:
    """Simple types ((2a,2b),(2c,2b)) and ((2a+2k,2b),(2c-2k,2b))."""
    return (
        validate_type([(2 * a, 2 * b), (2 * c, 2 * b)]),
        validate_type([(2 * a + 2 * k, 2 * b), (2 * c - 2 * k, 2 * b)]),
    )


def example_family_k_squared(a: int, b: int, c: int) -> int:
    return 16 * (a + c - 2) * (b - 1)
