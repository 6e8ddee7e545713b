import random
from typing import List

import pytest

from bidouble.covers import CoverType, validate_type


def random_valid_type(rng: random.Random, bound: int) -> CoverType:
    n_parity, m_parity = rng.randrange(2), rng.randrange(2)
    simple = n_parity == 0 and m_parity == 0 and rng.random() < 0.3

    def coordinate(parity: int) -> int:
        return rng.randrange(2 - parity, bound + 1, 2)

    branches = [
        (coordinate(n_parity), coordinate(m_parity)) for _ in range(2 if simple else 3)
    ]
    if simple:
        branches.append((0, 0))
        rng.shuffle(branches)
    return validate_type(branches)


@pytest.fixture(scope="session")
def random_types() -> List[CoverType]:
    rng = random.Random(20020518)
    return [random_valid_type(rng, 40) for _ in range(10_000)]
