import itertools
import json
import random

import pytest

from bidouble.covers import BiDegree, canonicalize, symmetry_orbit, validate_type
from bidouble.deformations import (
    CONDITION_NAMES,
    HomeoStatus,
    NondefStatus,
    PairVerdict,
    PreservedSymmetry,
    family_parameters,
    manetti_check,
    natural_deformation_profile,
    pair_verdict,
    preserved_symmetry,
    section_count,
)
from bidouble.invariants import example_family_types, homeo_signature
from bidouble.utils import dump_json

EXAMPLE_ONE = validate_type([(5, 2), (3, 2), (1, 2)])
EXAMPLE_ONE_PRIME = validate_type([(3, 2), (3, 2), (3, 2)])
FAMILY_PAIR = example_family_types(14, 4, 6, 1)


@pytest.mark.parametrize(
    "degree, expected",
    [((0, 0), 1), ((3, 0), 4), ((2, 5), 18), ((-1, 4), 0), ((4, -3), 0)],
)
def test_section_count(degree, expected) -> None:
    assert section_count(BiDegree.of(degree)) == expected


def test_profile_of_example_one() -> None:
    profile = natural_deformation_profile(EXAMPLE_ONE)
    assert [p.as_tuple() for p in profile.phi_degrees] == [(3, 0), (0, 0), (-3, 0)]
    assert profile.f_dims == (18, 12, 6)
    assert profile.phi_dims == (4, 1, 0)
    assert profile.total_params == 41


def test_profile_of_symmetric_type() -> None:
    profile = natural_deformation_profile(EXAMPLE_ONE_PRIME)
    assert {p.as_tuple() for p in profile.phi_degrees} == {(0, 0)}
    assert profile.total_params == 39


def test_simple_phi_degrees_match_the_closed_form() -> None:
    for a, b, c, d in itertools.product(range(1, 7), repeat=4):
        profile = natural_deformation_profile(validate_type([(2 * a, 2 * b), (2 * c, 2 * d)]))
        assert profile.phi_degrees[0].as_tuple() == (2 * a - c, 2 * b - d)
        assert profile.phi_degrees[1].as_tuple() == (2 * c - a, 2 * d - b)
        assert profile.phi_dims[2] == 0


def test_preserved_symmetry() -> None:
    assert preserved_symmetry(validate_type([(10, 2), (4, 6)])) is PreservedSymmetry.FULL
    assert preserved_symmetry(FAMILY_PAIR[0]) is PreservedSymmetry.ITERATED_DOUBLE_COVER
    assert preserved_symmetry(EXAMPLE_ONE) is PreservedSymmetry.NONE


def test_manetti_check_examples() -> None:
    assert manetti_check(14, 4, 6, 1).satisfied
    assert manetti_check(14, 4, 6, 1).violated_conditions == []

    certificate = manetti_check(14, 4, 6, 3)
    assert not certificate.satisfied
    assert certificate.violated_conditions == ["c >= k+4"]

    assert manetti_check(13, 4, 6, 1).violated_conditions == ["a even"]


def test_manetti_check_reports_violations_in_check_order() -> None:
    assert manetti_check(3, 3, 3, 0).violated_conditions == CONDITION_NAMES
    assert manetti_check(14, 4, 5, 1).violated_conditions == ["c even", "c >= b+2"]



def test_manetti_perturbations_of_a_satisfied_point() -> None:
    base = (14, 4, 6, 1)
    expected = {
        (13, 4, 6, 1): "a even",
        (14, 3, 6, 1): "b even",
        (14, 4, 6, 0): "k >= 1",
        (12, 4, 6, 1): "a >= 2c+1",
        (14, 4, 6, 3): "c >= k+4",
        (14, 4, 5, 1): "c even",
        (14, 6, 6, 1): "c >= b+2",
    }
    assert manetti_check(*base).satisfied
    for params, condition in expected.items():
        certificate = manetti_check(*params)
        assert not certificate.satisfied, params
        assert condition in certificate.violated_conditions, params


def test_manetti_c_just_above_b_fails() -> None:
    certificate = manetti_check(20, 4, 5, 1)
    assert "c >= b+2" in certificate.violated_conditions


def test_family_parameters_find_the_shift() -> None:
    t1, t2 = FAMILY_PAIR
    assert (14, 4, 6, 1) in family_parameters(t1, t2)
    assert family_parameters(t1, t2) == family_parameters(t2, t1)
    assert family_parameters(EXAMPLE_ONE, EXAMPLE_ONE_PRIME) == []


def test_pair_verdict_certifies_the_family_pair() -> None:
    verdict = pair_verdict(*FAMILY_PAIR)
    assert verdict.homeo is HomeoStatus.YES
    assert verdict.nondef is NondefStatus.CERTIFIED
    assert verdict.certificate.params() == (14, 4, 6, 1)
    assert verdict.signature == homeo_signature(FAMILY_PAIR[0])


def test_pair_verdict_does_not_certify_example_one() -> None:
    verdict = pair_verdict(EXAMPLE_ONE, EXAMPLE_ONE_PRIME)
    assert verdict.homeo is HomeoStatus.YES
    assert verdict.nondef is NondefStatus.UNKNOWN
    assert verdict.certificate is None


def test_pair_verdict_json_carries_only_the_certificate_parameters() -> None:
    verdict = pair_verdict(*FAMILY_PAIR)
    payload = json.loads(dump_json(verdict))
    assert payload["certificate"] == {"a": 14, "b": 4, "c": 6, "k": 1}
    assert PairVerdict.model_validate(payload) == verdict

    payload = json.loads(dump_json(pair_verdict(EXAMPLE_ONE, EXAMPLE_ONE_PRIME)))
    assert payload["certificate"] is None
    assert payload["nondef"] == "unknown"


def test_pair_verdict_of_a_type_with_itself() -> None:
    for t in (EXAMPLE_ONE, FAMILY_PAIR[0]):
        verdict = pair_verdict(t, t)
        assert verdict.homeo is HomeoStatus.YES
        assert verdict.nondef is NondefStatus.UNKNOWN


def test_pair_verdict_without_homeomorphism_claim() -> None:
    z2 = validate_type([(4, 4), (2, 2), (2, 4)])
    verdict = pair_verdict(z2, EXAMPLE_ONE)
    assert verdict.homeo is HomeoStatus.UNKNOWN
    assert verdict.signature is None

    verdict = pair_verdict(validate_type([(4, 4), (4, 4)]), EXAMPLE_ONE)
    assert verdict.homeo is HomeoStatus.UNKNOWN


def test_pair_verdict_is_symmetric_and_orbit_invariant() -> None:
    rng = random.Random(7)
    pairs = [FAMILY_PAIR, (EXAMPLE_ONE, EXAMPLE_ONE_PRIME), example_family_types(20, 4, 8, 2)]
    for t1, t2 in pairs:
        reference = pair_verdict(t1, t2)
        assert pair_verdict(t2, t1) == reference
        for _ in range(5):
            image1 = rng.choice(symmetry_orbit(t1))
            image2 = rng.choice(symmetry_orbit(t2))
            assert pair_verdict(image1, image2) == reference


def test_certified_pairs_are_homeomorphic() -> None:
    for a, b, c, k in itertools.product(range(4, 24, 2), (4, 6), range(4, 12, 2), range(1, 5)):
        if not manetti_check(a, b, c, k).satisfied:
            continue
        t1, t2 = example_family_types(a, b, c, k)
        verdict = pair_verdict(t1, t2)
        assert verdict.nondef is NondefStatus.CERTIFIED
        assert verdict.homeo is HomeoStatus.YES
        assert canonicalize(t1) != canonicalize(t2)
