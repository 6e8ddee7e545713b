"""Bounded enumeration of cover types and grouping by homeomorphism signature.

Types are enumerated one parity class at a time, so every emitted triple
satisfies the parity constraint by construction. Each orbit under branch
permutations and ruling exchange is emitted once, as its canonical form, when
some representative fits in the box n_j <= max_n, m_j <= max_m.

Grouping accumulates into `SignatureTable`s. Tables built over any partition
of the input merge to the same result, which is what the parallel pipeline in
`bidouble.graph` relies on.
"""

from __future__ import annotations

import itertools
import logging
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from bidouble.covers import BiDegree, CoverType, TypeKey, validate_type
from bidouble.deformations import ManettiCertificate, nondef_certificate
from bidouble.errors import SignatureUndetermined
from bidouble.invariants import HomeoSignature, Pi1Class, homeo_signature, is_general_type, pi1_class

logger = logging.getLogger(__name__)

SignatureKey = Tuple[str, int, int, int]


class SearchConfig(BaseModel):
    """Bounds and filters of a search."""

    max_n: int = Field(..., ge=0, description="Bound on each n_j")
    max_m: int = Field(..., ge=0, description="Bound on each m_j")
    require_general_type: bool = Field(True, description="Drop types with n < 5 or m < 5")
    require_simply_connected: bool = Field(
        True, description="Drop pi1 = Z/2 types instead of listing them in the summary"
    )
    certify_nondef: bool = Field(True, description="Run pair verdicts inside groups")

    model_config = {"frozen": True}


class CertifiedPair(BaseModel):
    first: int = Field(..., description="Index of the first member in the group")
    second: int = Field(..., description="Index of the second member in the group")
    certificate: ManettiCertificate


class SignatureGroup(BaseModel):
    """Types sharing one homeomorphism signature."""

    signature: HomeoSignature
    members: List[CoverType] = Field(default_factory=list, description="Canonical types, sorted")
    certified_pairs: List[CertifiedPair] = Field(default_factory=list)


class SearchSummary(BaseModel):
    enumerated: int = 0
    filtered_not_general_type: int = 0
    filtered_z2: int = 0
    skipped_undetermined: int = 0
    z2_types: List[CoverType] = Field(
        default_factory=list, description="pi1 = Z/2 types, listed without homeomorphism claim"
    )
    groups: int = 0
    certified_pairs: int = 0
    elapsed_seconds: float = Field(0.0, exclude=True, description="Wall time, not serialized")


class SearchReport(BaseModel):
    groups: List[SignatureGroup] = Field(default_factory=list)
    summary: SearchSummary = Field(default_factory=SearchSummary)


def _branch_pairs(n_parity: int, m_parity: int, max_n: int, max_m: int) -> List[Tuple[int, int]]:
    return [
        (x, y)
        for x in range(2 - n_parity, max_n + 1, 2)
        for y in range(2 - m_parity, max_m + 1, 2)
    ]


def _box_keys(cfg: SearchConfig) -> Iterator[TypeKey]:
    """Sorted in-box triples, one per orbit, already in canonical form."""
    for n_parity, m_parity in itertools.product((0, 1), repeat=2):
        pairs = _branch_pairs(n_parity, m_parity, cfg.max_n, cfg.max_m)
        triples: Iterable[Tuple[Tuple[int, int], ...]] = itertools.combinations_with_replacement(pairs, 3)
        if n_parity == 0 and m_parity == 0:
            simple = (((0, 0),) + pair for pair in itertools.combinations_with_replacement(pairs, 2))
            triples = itertools.chain(simple, triples)

        for triple in triples:
            swapped = sorted((y, x) for x, y in triple)
            swapped_fits = all(x <= cfg.max_n and y <= cfg.max_m for x, y in swapped)
            if swapped_fits and tuple(swapped) < triple:
                # the swapped representative is emitted from its own parity class
                continue
            best = min(list(triple), swapped)
            yield (best[0], best[1], best[2])


def enumerate_types(cfg: SearchConfig) -> Iterator[CoverType]:
    """Canonical types with a representative inside the box, in lexicographic order."""
    keys = sorted(_box_keys(cfg))
    logger.info(f"🔄 Enumerated {len(keys)} canonical types (max_n={cfg.max_n}, max_m={cfg.max_m})")
    for key in keys:
        yield validate_type(key)


class SignatureTable:
    """Mergeable accumulator of signature -> members plus filter counters."""

    def __init__(self) -> None:
        self.buckets: Dict[SignatureKey, Tuple[HomeoSignature, List[CoverType]]] = {}
        self.filtered_not_general_type = 0
        self.filtered_z2 = 0
        self.skipped_undetermined = 0
        self.z2_types: List[CoverType] = []

    def add(self, signature: HomeoSignature, t: CoverType) -> None:
        entry = self.buckets.setdefault(signature.key(), (signature, []))
        entry[1].append(t)

    def absorb(self, other: SignatureTable) -> SignatureTable:
        """Fold `other` into this table in place; `other` is left untouched."""
        for key, (signature, members) in other.buckets.items():
            self.buckets.setdefault(key, (signature, []))[1].extend(members)
        self.filtered_not_general_type += other.filtered_not_general_type
        self.filtered_z2 += other.filtered_z2
        self.skipped_undetermined += other.skipped_undetermined
        self.z2_types.extend(other.z2_types)
        return self

    def merge(self, other: SignatureTable) -> SignatureTable:
        return SignatureTable().absorb(self).absorb(other)

    def to_groups(self, min_members: int = 2) -> List[SignatureGroup]:
        groups = []
        for key in sorted(self.buckets):
            signature, members = self.buckets[key]
            if len(members) < min_members:
                continue
            ordered = sorted(set(members), key=lambda t: t.key())
            groups.append(SignatureGroup(signature=signature, members=ordered))
        return groups

    def summary(self, enumerated: int) -> SearchSummary:
        return SearchSummary(
            enumerated=enumerated,
            filtered_not_general_type=self.filtered_not_general_type,
            filtered_z2=self.filtered_z2,
            skipped_undetermined=self.skipped_undetermined,
            z2_types=sorted(set(self.z2_types), key=lambda t: t.key()),
        )


def evaluate_partition(types: Sequence[CoverType], cfg: SearchConfig) -> SignatureTable:
    table = SignatureTable()
    for t in types:
        if cfg.require_general_type and not is_general_type(t):
            table.filtered_not_general_type += 1
            continue
        if pi1_class(t) is Pi1Class.Z2:
            if cfg.require_simply_connected:
                table.filtered_z2 += 1
            else:
                table.z2_types.append(t)
            continue
        try:
            signature = homeo_signature(t)
        except SignatureUndetermined:
            table.skipped_undetermined += 1
            continue
        table.add(signature, t)
    return table


def partition_types(types: Iterable[CoverType]) -> Dict[BiDegree, List[CoverType]]:
    """Split canonical types by their first branch."""
    partitions: Dict[BiDegree, List[CoverType]] = {}
    for t in types:
        partitions.setdefault(t.branches[0], []).append(t)
    return partitions


def certify_group(group: SignatureGroup) -> SignatureGroup:
    """Certified pairs of a group.

    Members already share a signature, so only the certificate is checked, and
    only between simple members.
    """
    simple = [i for i, t in enumerate(group.members) if t.is_simple]
    pairs = []
    for i, j in itertools.combinations(simple, 2):
        certificate = nondef_certificate(group.members[i], group.members[j])
        if certificate is not None:
            pairs.append(CertifiedPair(first=i, second=j, certificate=certificate))
    return group.model_copy(update={"certified_pairs": pairs})


def group_types(
    types: Iterable[CoverType], cfg: SearchConfig, enumerated: Optional[int] = None
) -> SearchReport:
    """Sequential grouping and certification of an arbitrary collection of types."""
    types = list(types)
    table = evaluate_partition(types, cfg)
    groups = table.to_groups()
    if cfg.certify_nondef:
        groups = [certify_group(g) for g in groups]
    summary = table.summary(len(types) if enumerated is None else enumerated)
    summary = summary.model_copy(
        update={
            "groups": len(groups),
            "certified_pairs": sum(len(g.certified_pairs) for g in groups),
        }
    )
    return SearchReport(groups=groups, summary=summary)
