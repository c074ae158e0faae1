from random import Random

import pytest

from ipils import KnapsackInstance


@pytest.fixture
def t1() -> KnapsackInstance:
    """Four-item biobjective instance whose front is {(8,6),(4,9)}."""
    return KnapsackInstance(
        name="t1",
        n=4,
        K=2,
        capacity=6,
        costs=(2, 3, 4, 5),
        profits=((3, 5, 1, 4), (4, 2, 5, 3)),
    )


@pytest.fixture
def rng() -> Random:
    return Random(0)
