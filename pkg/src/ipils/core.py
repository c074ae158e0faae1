"""Knapsack problem model: instances, solutions, dominance, feasibility."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from random import Random
from typing import Sequence


@dataclass(frozen=True)
class KnapsackInstance:
    """A 0/1 knapsack instance with K profit objectives.

    Maximization is the canonical sense: minimization data must be
    negated or otherwise transformed before construction.
    """

    name: str
    n: int
    K: int
    capacity: int
    costs: tuple[int, ...]
    profits: tuple[tuple[int, ...], ...]  # K rows of n entries

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("item count must be nonnegative")
        if self.K < 1:
            raise ValueError("objective count must be positive")
        if self.capacity < 0:
            raise ValueError("capacity must be nonnegative")
        if len(self.costs) != self.n:
            raise ValueError(f"expected {self.n} costs, got {len(self.costs)}")
        if len(self.profits) != self.K:
            raise ValueError(f"expected {self.K} profit rows, got {len(self.profits)}")
        for k, row in enumerate(self.profits):
            if len(row) != self.n:
                raise ValueError(f"profit row {k} has {len(row)} entries, expected {self.n}")
        if any(c < 0 for c in self.costs):
            raise ValueError("negative cost coefficient")
        if any(p < 0 for row in self.profits for p in row):
            raise ValueError("negative profit coefficient")
        # Unusual coefficient shapes are legal inputs, just worth flagging.
        if any(c > self.capacity for c in self.costs):
            warnings.warn(
                f"instance {self.name!r}: some item alone exceeds the capacity",
                stacklevel=2,
            )
        if self.n > 0 and sum(self.costs) <= self.capacity:
            warnings.warn(
                f"instance {self.name!r}: all items fit together, capacity is not binding",
                stacklevel=2,
            )


@dataclass(frozen=True)
class Solution:
    """A selection of items with its cached objective vector and cost."""

    selection: tuple[int, ...]  # 0/1 per item
    objectives: tuple[int, ...]
    total_cost: int

    def bitstring(self) -> str:
        return "".join("1" if x else "0" for x in self.selection)


def evaluate(instance: KnapsackInstance, selection: Sequence[int]) -> Solution:
    """Build a Solution from a 0/1 selection; infeasible selections are allowed."""
    if len(selection) != instance.n:
        raise ValueError(f"selection length {len(selection)} != n={instance.n}")
    sel = tuple(1 if x else 0 for x in selection)
    objectives = tuple(
        sum(p for p, x in zip(row, sel) if x) for row in instance.profits
    )
    total_cost = sum(c for c, x in zip(instance.costs, sel) if x)
    return Solution(sel, objectives, total_cost)


def is_feasible(instance: KnapsackInstance, solution: Solution) -> bool:
    return solution.total_cost <= instance.capacity


def dominates(a: Sequence[int], b: Sequence[int]) -> bool:
    """Pareto dominance for maximization: a >= b componentwise, one strict."""
    if len(a) != len(b):
        raise ValueError("objective vectors differ in length")
    strict = False
    for ak, bk in zip(a, b):
        if ak < bk:
            return False
        if ak > bk:
            strict = True
    return strict


def maximal_fill(
    instance: KnapsackInstance,
    solution: Solution,
    rng: Random,
    exclude: Sequence[int] = (),
) -> Solution:
    """Add unselected items one at a time, uniformly among those that fit.

    Items in `exclude` are never added in the first round of draws but may
    enter once everything else is exhausted, so the result is always
    saturated: no unselected item fits in the residual capacity. Feasible
    inputs only.
    """
    costs = instance.costs
    residual = instance.capacity - solution.total_cost
    banned = set(exclude)
    fitting = [
        j
        for j in range(instance.n)
        if not solution.selection[j] and costs[j] <= residual and j not in banned
    ]
    sel = list(solution.selection)
    objs = list(solution.objectives)
    total = solution.total_cost
    while True:
        while fitting:
            j = fitting[rng.randrange(len(fitting))]
            sel[j] = 1
            total += costs[j]
            for k in range(instance.K):
                objs[k] += instance.profits[k][j]
            residual = instance.capacity - total
            fitting = [i for i in fitting if i != j and costs[i] <= residual]
        if not banned:
            break
        # excluded items re-enter only after everything else is placed,
        # keeping the saturation guarantee
        fitting = [j for j in banned if not sel[j] and costs[j] <= residual]
        banned = set()
    if total == solution.total_cost:
        return solution
    return Solution(tuple(sel), tuple(objs), total)


def solution_from_items(instance: KnapsackInstance, items: Sequence[int]) -> Solution:
    """Convenience constructor from 0-based item indices."""
    sel = [0] * instance.n
    for j in items:
        sel[j] = 1
    return evaluate(instance, sel)
