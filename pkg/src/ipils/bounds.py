"""Lower and upper bound sets shown to the decision maker before search.

Lower bounds are feasible greedy solutions per weight vector; upper bounds
are Dantzig LP-relaxation values of the weighted-sum scalarization.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from random import Random

from .core import KnapsackInstance, Solution, dominates, evaluate, maximal_fill


@dataclass(frozen=True)
class WeightVector:
    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")
        if abs(sum(self.weights) - 1.0) > 1e-9:
            raise ValueError("weights must sum to 1")


@dataclass(frozen=True)
class UpperBoundEntry:
    weights: WeightVector
    value: float
    # Objective vector of the fractional relaxation optimum; the point the
    # supporting hyperplane touches, used for plotting the upper envelope.
    point: tuple[float, ...]


@dataclass(frozen=True)
class BoundSets:
    lower_solutions: tuple[Solution, ...]  # mutually nondominated
    upper: tuple[UpperBoundEntry, ...]


def make_weight_set(K: int, count: int) -> list[WeightVector]:
    """Uniform simplex lattice of weight vectors with `count` levels per axis."""
    if count < 2:
        raise ValueError("need at least 2 weight vectors")
    if K < 2:
        raise ValueError("need at least 2 objectives")
    m = count - 1
    if K == 2:
        return [WeightVector((i / m, (m - i) / m)) for i in range(count)]
    # Compositions of m into K nonnegative parts via stars and bars.
    out = []
    for bars in combinations(range(m + K - 1), K - 1):
        parts = []
        prev = -1
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(m + K - 2 - prev)
        out.append(WeightVector(tuple(p / m for p in parts)))
    return out


def _scalarized(instance: KnapsackInstance, w: WeightVector, j: int) -> float:
    return sum(w.weights[k] * instance.profits[k][j] for k in range(instance.K))


def _ratio_order(instance: KnapsackInstance, w: WeightVector) -> list[int]:
    """Item indices by scalarized profit/cost ratio, descending, ties by index."""

    def ratio(j: int) -> float:
        c = instance.costs[j]
        if c == 0:
            return float("inf")
        return _scalarized(instance, w, j) / c

    return sorted(range(instance.n), key=lambda j: (-ratio(j), j))


def lower_bound_solution(
    instance: KnapsackInstance, w: WeightVector, rng: Random
) -> Solution:
    """Greedy-by-ratio feasible solution, completed by random maximal fill."""
    sel = [0] * instance.n
    used = 0
    for j in _ratio_order(instance, w):
        if used + instance.costs[j] <= instance.capacity:
            sel[j] = 1
            used += instance.costs[j]
    return maximal_fill(instance, evaluate(instance, sel), rng)


def upper_bound(instance: KnapsackInstance, w: WeightVector) -> float:
    """Dantzig bound of the w-scalarized LP relaxation."""
    return upper_bound_entry(instance, w).value


def upper_bound_entry(instance: KnapsackInstance, w: WeightVector) -> UpperBoundEntry:
    residual = instance.capacity
    value = 0.0
    point = [0.0] * instance.K
    for j in _ratio_order(instance, w):
        c = instance.costs[j]
        if c == 0 or c <= residual:
            frac = 1.0
        elif residual > 0:
            frac = residual / c
        else:
            break
        residual -= c * frac
        value += frac * _scalarized(instance, w, j)
        for k in range(instance.K):
            point[k] += frac * instance.profits[k][j]
        if frac < 1.0:
            break
    return UpperBoundEntry(w, value, tuple(point))


def nondominated_filter(solutions: list[Solution]) -> list[Solution]:
    """Keep mutually nondominated solutions, one per objective vector, in order."""
    kept: list[Solution] = []
    seen: set[tuple[int, ...]] = set()
    for cand in solutions:
        if cand.objectives in seen:
            continue
        if any(dominates(other.objectives, cand.objectives) for other in kept):
            continue
        kept = [s for s in kept if not dominates(cand.objectives, s.objectives)]
        kept.append(cand)
        seen = {s.objectives for s in kept}
    return kept


def compute_bound_sets(
    instance: KnapsackInstance, weight_count: int, rng: Random
) -> BoundSets:
    weights = make_weight_set(instance.K, weight_count)
    lower = nondominated_filter(
        [lower_bound_solution(instance, w, rng) for w in weights]
    )
    upper = tuple(upper_bound_entry(instance, w) for w in weights)
    return BoundSets(tuple(lower), upper)
