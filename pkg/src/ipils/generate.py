"""Random instance generation for experiments and validation."""

from __future__ import annotations

import math
from random import Random

from .core import KnapsackInstance


def random_instance(
    name: str, n: int, K: int = 2, seed: int = 0, coeff_max: int = 100
) -> KnapsackInstance:
    """Generate a random knapsack instance with uniform integer coefficients.

    Costs and profits are drawn uniformly from [1, coeff_max]; the capacity
    is half the total cost, rounded up, so roughly half the items fit. The
    draw order is costs, then each profit row, so instances are reproducible
    from (n, K, seed) alone.
    """
    rng = Random(seed)
    costs = tuple(rng.randint(1, coeff_max) for _ in range(n))
    profits = tuple(
        tuple(rng.randint(1, coeff_max) for _ in range(n)) for _ in range(K)
    )
    capacity = math.ceil(sum(costs) / 2)
    return KnapsackInstance(name, n, K, capacity, costs, profits)
