"""Branch data of bidouble covers of the quadric P1 x P1.

A cover is described by its type: the bidegrees of the three branch divisors
D1, D2, D3, where (0,0) stands for a trivial divisor. Types are validated here,
classified (simple / non simple / even non simple) and reduced to a canonical
representative under branch permutations and the exchange of the two rulings.
"""

from __future__ import annotations

import itertools
import logging
import re
from enum import Enum
from typing import Iterable, List, Sequence, Tuple, Union

from pydantic import BaseModel, Field

from bidouble.errors import (
    BranchBelowMinimum,
    CoverParseError,
    ParityViolation,
    TooManyTrivialBranches,
)

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]
TypeKey = Tuple[Pair, Pair, Pair]
RawBranch = Union["BiDegree", Sequence[int]]

TRIVIAL: Pair = (0, 0)


class BiDegree(BaseModel):
    """Bidegree of a curve or line bundle on the quadric."""

    first: int = Field(..., description="Degree in the first ruling")
    second: int = Field(..., description="Degree in the second ruling")

    model_config = {"frozen": True}

    @classmethod
    def of(cls, pair: Sequence[int]) -> BiDegree:
        return cls(first=pair[0], second=pair[1])

    def as_tuple(self) -> Pair:
        return (self.first, self.second)

    def swapped(self) -> BiDegree:
        return BiDegree(first=self.second, second=self.first)

    @property
    def is_trivial(self) -> bool:
        return self.first == 0 and self.second == 0

    def __str__(self) -> str:
        return f"({self.first},{self.second})"


class CoverClass(str, Enum):
    SIMPLE = "simple"
    NON_SIMPLE = "non_simple"
    EVEN_NON_SIMPLE = "even_non_simple"


class CoverType(BaseModel):
    """Validated type of a bidouble cover: three branch bidegrees.

    Build instances through `validate_type` or `parse_cover_type`; the model
    itself does not re-check the branch constraints.
    """

    branches: Tuple[BiDegree, BiDegree, BiDegree] = Field(
        ..., description="Bidegrees of the branch divisors D1, D2, D3"
    )

    model_config = {"frozen": True}

    @property
    def n(self) -> int:
        return sum(b.first for b in self.branches)

    @property
    def m(self) -> int:
        return sum(b.second for b in self.branches)

    @property
    def trivial_count(self) -> int:
        return sum(1 for b in self.branches if b.is_trivial)

    @property
    def is_simple(self) -> bool:
        return self.trivial_count == 1

    @property
    def all_even(self) -> bool:
        return all(b.first % 2 == 0 and b.second % 2 == 0 for b in self.branches)

    @property
    def cover_class(self) -> CoverClass:
        if self.is_simple:
            return CoverClass.SIMPLE
        if self.all_even:
            return CoverClass.EVEN_NON_SIMPLE
        return CoverClass.NON_SIMPLE

    def key(self) -> TypeKey:
        a, b, c = (br.as_tuple() for br in self.branches)
        return (a, b, c)

    def __str__(self) -> str:
        return "(" + ",".join(str(b) for b in self.branches) + ")"


def _as_pair(raw: RawBranch) -> Pair:
    if isinstance(raw, BiDegree):
        return raw.as_tuple()
    try:
        first, second = raw
    except (TypeError, ValueError) as e:
        raise CoverParseError(f"Branch {raw!r} is not a pair of integers") from e
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in (first, second)):
        raise CoverParseError(f"Branch {raw!r} is not a pair of integers")
    return (first, second)


def check_branches(pairs: Sequence[Pair]) -> None:
    """Raise the first violated branch constraint, if any."""
    for pair in pairs:
        if pair == TRIVIAL:
            continue
        if pair[0] < 1 or pair[1] < 1:
            raise BranchBelowMinimum(
                f"Branch {pair} is neither trivial (0,0) nor has both coordinates >= 1"
            )

    if sum(1 for pair in pairs if pair == TRIVIAL) > 1:
        raise TooManyTrivialBranches(
            f"Type {tuple(pairs)} has more than one trivial branch"
        )

    for axis, label in ((0, "first"), (1, "second")):
        if len({pair[axis] % 2 for pair in pairs}) > 1:
            raise ParityViolation(
                f"The {label} coordinates {[p[axis] for p in pairs]} mix parities"
            )


def validate_type(raw: Iterable[RawBranch]) -> CoverType:
    """Validate three branch bidegrees (two for a simple cover) into a CoverType.

    Raises:
        ParityViolation: the n_j (or the m_j) do not share one parity.
        TooManyTrivialBranches: two or three branches are (0,0).
        BranchBelowMinimum: a nontrivial branch has a coordinate below 1.
        CoverParseError: the input is not two or three integer pairs.
    """
    pairs = [_as_pair(b) for b in raw]
    if len(pairs) == 2:
        pairs.append(TRIVIAL)
    if len(pairs) != 3:
        raise CoverParseError(f"Expected 2 or 3 branches, got {len(pairs)}")

    check_branches(pairs)
    return CoverType(branches=tuple(BiDegree.of(p) for p in pairs))


def line_bundle_degrees(t: CoverType) -> Tuple[BiDegree, BiDegree, BiDegree]:
    """Bidegrees of L1, L2, L3, with 2 L_i = D_j + D_k."""
    d = t.key()
    result = []
    for i in range(3):
        j, k = (x for x in range(3) if x != i)
        result.append(
            BiDegree(
                first=(d[j][0] + d[k][0]) // 2,
                second=(d[j][1] + d[k][1]) // 2,
            )
        )
    return (result[0], result[1], result[2])


def canonical_key(key: Sequence[Pair]) -> TypeKey:
    """Canonical representative of a type key under S3 x Z/2."""
    straight = sorted(key)
    swapped = sorted((p[1], p[0]) for p in key)
    best = min(straight, swapped)
    return (best[0], best[1], best[2])


def canonicalize(t: CoverType) -> CoverType:
    key = canonical_key(t.key())
    if key == t.key():
        return t
    return CoverType(branches=tuple(BiDegree.of(p) for p in key))


def symmetry_orbit(t: CoverType) -> List[CoverType]:
    """Images of `t` under all 12 elements of S3 x Z/2 (with repetitions)."""
    images = []
    for swap in (False, True):
        branches = [b.swapped() if swap else b for b in t.branches]
        for perm in itertools.permutations(branches):
            images.append(CoverType(branches=perm))
    return images


_PAIR = r"\(\s*(\d+)\s*,\s*(\d+)\s*\)"
_TYPE_PATTERN = re.compile(
    rf"^\s*\(\s*{_PAIR}\s*,\s*{_PAIR}\s*(?:,\s*{_PAIR}\s*)?\)\s*$", re.ASCII
)


def parse_cover_type(text: str) -> CoverType:
    """Parse "((n1,m1),(n2,m2),(n3,m3))" or the simple form "((n1,m1),(n2,m2))"."""
    match = _TYPE_PATTERN.match(text)
    if not match:
        raise CoverParseError(f"Cannot parse cover type {text!r}")
    numbers = [int(g) for g in match.groups() if g is not None]
    pairs = [(numbers[i], numbers[i + 1]) for i in range(0, len(numbers), 2)]
    logger.debug(f"🔄 Parsed cover type {text!r} -> {pairs}")
    return validate_type(pairs)
