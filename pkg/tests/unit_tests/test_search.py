import functools
import itertools
import random

import pytest
from pydantic import ValidationError

from bidouble.covers import canonical_key, canonicalize, check_branches, symmetry_orbit, validate_type
from bidouble.deformations import NondefStatus, pair_verdict
from bidouble.errors import InvalidCoverType
from bidouble.invariants import example_family_types, homeo_signature
from bidouble.search import (
    SearchConfig,
    SignatureGroup,
    SignatureTable,
    certify_group,
    enumerate_types,
    evaluate_partition,
    group_types,
    partition_types,
)


def _oracle_keys(max_n: int, max_m: int) -> set:
    """Canonical forms of every valid triple inside the box."""
    pairs = list(itertools.product(range(max_n + 1), range(max_m + 1)))
    keys = set()
    # validity and canonical form do not depend on the branch order
    for triple in itertools.combinations_with_replacement(pairs, 3):
        try:
            check_branches(triple)
        except InvalidCoverType:
            continue
        keys.add(canonical_key(triple))
    return keys


def test_enumeration_matches_brute_force_oracle() -> None:
    for max_n, max_m in itertools.product(range(7), repeat=2):
        keys = [t.key() for t in enumerate_types(SearchConfig(max_n=max_n, max_m=max_m))]
        assert len(keys) == len(set(keys)), (max_n, max_m)
        assert set(keys) == _oracle_keys(max_n, max_m), (max_n, max_m)


def test_enumeration_has_no_duplicates_under_symmetries() -> None:
    types = list(enumerate_types(SearchConfig(max_n=6, max_m=6)))
    seen = set()
    for t in types:
        assert canonicalize(t) == t
        for image in symmetry_orbit(t):
            assert canonicalize(image).key() == t.key()
        seen.add(t.key())
    assert len(seen) == len(types)


def test_enumeration_is_sorted() -> None:
    keys = [t.key() for t in enumerate_types(SearchConfig(max_n=7, max_m=4))]
    assert keys == sorted(keys)


def test_enumeration_examples() -> None:
    keys = {t.key() for t in enumerate_types(SearchConfig(max_n=2, max_m=2))}
    assert canonicalize(validate_type([(2, 2), (2, 2), (0, 0)])).key() in keys
    assert ((2, 2), (2, 2), (2, 2)) in keys

    keys = {t.key() for t in enumerate_types(SearchConfig(max_n=5, max_m=2))}
    assert ((1, 2), (3, 2), (5, 2)) in keys
    assert ((3, 2), (3, 2), (3, 2)) in keys

    assert list(enumerate_types(SearchConfig(max_n=0, max_m=10))) == []


def test_orbits_reaching_the_box_only_through_a_swap_are_emitted() -> None:
    keys = {t.key() for t in enumerate_types(SearchConfig(max_n=6, max_m=2))}
    assert ((0, 0), (2, 4), (2, 6)) in keys
    assert ((0, 0), (2, 4), (2, 6)) == canonicalize(validate_type([(6, 2), (4, 2)])).key()


def test_search_config_rejects_negative_bounds() -> None:
    with pytest.raises(ValidationError):
        SearchConfig(max_n=-1, max_m=2)


def test_group_types_finds_example_one() -> None:
    types = list(enumerate_types(SearchConfig(max_n=5, max_m=2)))
    report = group_types(types, SearchConfig(max_n=5, max_m=2))
    groups = {g.signature.key(): g for g in report.groups}
    group = groups[("simply_connected", 6, 20, 1)]
    assert [t.key() for t in group.members] == [
        ((1, 2), (3, 2), (5, 2)),
        ((3, 2), (3, 2), (3, 2)),
    ]
    assert group.certified_pairs == []
    assert report.summary.enumerated == len(types)
    assert report.summary.groups == len(report.groups)


def test_group_types_is_order_independent() -> None:
    cfg = SearchConfig(max_n=8, max_m=8)
    types = list(enumerate_types(cfg))
    reference = group_types(types, cfg)
    rng = random.Random(3)
    for _ in range(3):
        shuffled = types[:]
        rng.shuffle(shuffled)
        assert group_types(shuffled, cfg) == reference


def test_partition_tables_merge_to_the_sequential_table() -> None:
    cfg = SearchConfig(max_n=8, max_m=6, require_simply_connected=False)
    types = list(enumerate_types(cfg))
    whole = evaluate_partition(types, cfg)
    tables = [evaluate_partition(part, cfg) for part in partition_types(types).values()]

    forward = functools.reduce(SignatureTable.merge, tables, SignatureTable())
    backward = functools.reduce(SignatureTable.merge, reversed(tables), SignatureTable())
    for merged in (forward, backward):
        assert merged.to_groups() == whole.to_groups()
        assert merged.summary(len(types)) == whole.summary(len(types))


def test_absorb_accumulates_in_place_without_touching_the_source() -> None:
    cfg = SearchConfig(max_n=8, max_m=6, require_simply_connected=False)
    types = list(enumerate_types(cfg))
    whole = evaluate_partition(types, cfg)
    tables = [evaluate_partition(part, cfg) for part in partition_types(types).values()]
    sizes = [sum(len(members) for _, members in t.buckets.values()) for t in tables]

    accumulator = SignatureTable()
    for table in reversed(tables):
        assert accumulator.absorb(table) is accumulator

    assert accumulator.to_groups() == whole.to_groups()
    assert accumulator.summary(len(types)) == whole.summary(len(types))
    assert [sum(len(members) for _, members in t.buckets.values()) for t in tables] == sizes


def test_certify_group_agrees_with_pair_verdicts() -> None:
    members = sorted(
        {
            canonicalize(t)
            for t in (
                *example_family_types(14, 4, 6, 1),
                *example_family_types(20, 4, 8, 2),
                validate_type([(5, 2), (3, 2), (1, 2)]),
                validate_type([(3, 2), (3, 2), (3, 2)]),
            )
        },
        key=lambda t: t.key(),
    )
    signature = homeo_signature(canonicalize(example_family_types(14, 4, 6, 1)[0]))
    group = SignatureGroup(signature=signature, members=members)

    expected = []
    for i, j in itertools.combinations(range(len(members)), 2):
        verdict = pair_verdict(members[i], members[j])
        if verdict.nondef is NondefStatus.CERTIFIED:
            expected.append((i, j, verdict.certificate))

    certified = certify_group(group).certified_pairs
    assert [(p.first, p.second, p.certificate) for p in certified] == expected
    assert len(expected) >= 1


def test_filters_count_what_they_drop() -> None:
    cfg = SearchConfig(max_n=2, max_m=2)
    types = list(enumerate_types(cfg))
    report = group_types(types, cfg)
    assert report.groups == []
    summary = report.summary
    assert summary.filtered_not_general_type + summary.filtered_z2 + summary.skipped_undetermined == len(types)
    assert summary.filtered_z2 == 1


def test_z2_types_are_listed_when_not_filtered() -> None:
    cfg = SearchConfig(max_n=4, max_m=4, require_simply_connected=False)
    report = group_types(enumerate_types(cfg), cfg)
    assert report.summary.filtered_z2 == 0
    assert ((2, 2), (2, 2), (2, 2)) in [t.key() for t in report.summary.z2_types]


def test_non_general_types_are_skipped_when_not_filtered() -> None:
    cfg = SearchConfig(max_n=2, max_m=2, require_general_type=False)
    report = group_types(enumerate_types(cfg), cfg)
    assert report.summary.filtered_not_general_type == 0
    assert report.summary.skipped_undetermined > 0
