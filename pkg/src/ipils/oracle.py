"""Exact Pareto fronts by exhaustive enumeration and biobjective DP."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import KnapsackInstance, Solution, dominates, evaluate

ENUMERATION_LIMIT = 25
DEFAULT_DP_STATE_CAP = 50_000_000


@dataclass(frozen=True)
class ExactFront:
    points: tuple[tuple[int, ...], ...]  # sorted lex descending
    witnesses: tuple[Solution, ...]  # one per point, same order
    method: str  # "enumeration" | "dp" | "imported"

    def point_set(self) -> set[tuple[int, ...]]:
        return set(self.points)


class DpResourceError(RuntimeError):
    """The dynamic program would exceed its configured state budget."""


def _sorted_front(
    by_point: dict[tuple[int, ...], Solution], method: str
) -> ExactFront:
    points = sorted(by_point, reverse=True)
    return ExactFront(
        tuple(points), tuple(by_point[z] for z in points), method
    )


def _nondominated_rows(Z: np.ndarray) -> np.ndarray:
    """Boolean mask of nondominated rows (maximization)."""
    m = len(Z)
    keep = np.ones(m, dtype=bool)
    order = np.lexsort(Z.T[::-1])[::-1]  # lex descending
    Zs = Z[order]
    if Z.shape[1] == 2:
        best2 = -1
        for i in range(m):
            z2 = Zs[i, 1]
            if z2 <= best2:
                keep[order[i]] = False
            else:
                best2 = z2
        return keep
    for i in range(m):
        zi = Zs[i]
        above = Zs[:i]
        if len(above) and np.any(
            np.all(above >= zi, axis=1) & np.any(above > zi, axis=1)
        ):
            keep[order[i]] = False
    return keep


def enumerate_front(instance: KnapsackInstance) -> ExactFront:
    """Exhaustively enumerate all 2^n selections; exact but tiny-n only."""
    n = instance.n
    if n > ENUMERATION_LIMIT:
        raise ValueError(f"n={n} exceeds enumeration limit {ENUMERATION_LIMIT}; use dp_front")
    if n == 0:
        return _sorted_front(
            {(0,) * instance.K: evaluate(instance, [])}, "enumeration"
        )
    costs = np.asarray(instance.costs, dtype=np.int64)
    profits = np.asarray(instance.profits, dtype=np.int64).T  # n x K
    # item 1 as the most significant bit: numeric order on the key equals
    # lexicographic order on the selection bitstring
    lex_weights = np.left_shift(np.int64(1), n - 1 - np.arange(n))
    all_Z: list[np.ndarray] = []
    all_keys: list[np.ndarray] = []
    chunk = 1 << 18
    for start in range(0, 1 << n, chunk):
        masks = np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)
        sel = ((masks[:, None] >> np.arange(n)) & 1).astype(np.int64)
        feasible = sel @ costs <= instance.capacity
        sel = sel[feasible]
        all_Z.append(sel @ profits)
        all_keys.append(sel @ lex_weights)
    Z = np.concatenate(all_Z)
    keys = np.concatenate(all_keys)
    keep = _nondominated_rows(Z)
    kept_points = {tuple(r) for r in Z[keep].tolist()}
    best_key: dict[tuple[int, ...], int] = {}
    for row, key in zip(Z.tolist(), keys.tolist()):
        z = tuple(row)
        if z in kept_points:
            old = best_key.get(z)
            if old is None or key < old:
                best_key[z] = key
    by_point = {
        z: evaluate(instance, [(key >> (n - 1 - j)) & 1 for j in range(n)])
        for z, key in best_key.items()
    }
    return _sorted_front(by_point, "enumeration")


def dp_front(
    instance: KnapsackInstance, state_cap: int = DEFAULT_DP_STATE_CAP
) -> ExactFront:
    """Capacity-indexed biobjective dynamic program with witness recovery.

    dp[c] holds the nondominated (z1, z2) pairs reachable at cost exactly c,
    each with the lexicographically smallest witness selection. The front is
    the nondominated union over all c <= C.
    """
    if instance.K != 2:
        raise ValueError("dp_front supports exactly 2 objectives")
    C = instance.capacity
    p1, p2 = instance.profits
    # state: (z1, z2) -> lex key of witness mask
    dp: list[dict[tuple[int, int], int]] = [dict() for _ in range(C + 1)]
    dp[0][(0, 0)] = 0
    states = 1
    n = instance.n
    for j in range(n):
        cj = instance.costs[j]
        if cj > C:
            continue
        a, b = p1[j], p2[j]
        bit = 1 << (n - 1 - j)  # item 1 most significant: lex order == numeric
        for c in range(C - cj, -1, -1):
            src = dp[c]
            if not src:
                continue
            dst = dp[c + cj]
            moved = [((z1 + a, z2 + b), key | bit) for (z1, z2), key in src.items()]
            changed = False
            for z, key in moved:
                old = dst.get(z)
                if old is None or key < old:
                    dst[z] = key
                    changed = True
            if changed:
                dp[c + cj] = _prune_level(dst)
        states = sum(len(level) for level in dp)
        if states > state_cap:
            raise DpResourceError(
                f"dp exceeded state cap ({states} > {state_cap}) after item {j + 1}"
            )
    # nondominated union across capacities
    merged: dict[tuple[int, int], int] = {}
    for level in dp:
        for z, key in level.items():
            old = merged.get(z)
            if old is None or key < old:
                merged[z] = key
    pts = np.array(sorted(merged), dtype=np.int64)
    keep = _nondominated_rows(pts)
    by_point: dict[tuple[int, ...], Solution] = {}
    for row in pts[keep]:
        z = (int(row[0]), int(row[1]))
        key = merged[z]
        selection = tuple((key >> (n - 1 - j)) & 1 for j in range(n))
        by_point[z] = evaluate(instance, selection)
    return _sorted_front(by_point, "dp")


def _prune_level(level: dict[tuple[int, int], int]) -> dict[tuple[int, int], int]:
    """Drop dominated states within one capacity level (2 objectives)."""
    if len(level) <= 1:
        return level
    kept: dict[tuple[int, int], int] = {}
    best2 = -1
    for z in sorted(level, reverse=True):
        if z[1] > best2:
            kept[z] = level[z]
            best2 = z[1]
        # equal z1 handled by descending sort: first (max z2) survives
    return kept


def write_front(front: ExactFront, path: str) -> None:
    """One line per point: objectives then the selection bitstring."""
    with open(path, "w") as fh:
        for z, sol in zip(front.points, front.witnesses):
            fh.write(" ".join(str(v) for v in z) + " " + sol.bitstring() + "\n")


def read_front(instance: KnapsackInstance, path: str) -> ExactFront:
    """Load a front file; witnesses are re-evaluated against the instance."""
    by_point: dict[tuple[int, ...], Solution] = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != instance.K + 1:
                raise ValueError(
                    f"{path}:{lineno}: expected {instance.K} objectives + bitstring"
                )
            z = tuple(int(v) for v in parts[: instance.K])
            bits = parts[instance.K]
            if len(bits) != instance.n or set(bits) - {"0", "1"}:
                raise ValueError(f"{path}:{lineno}: bad selection bitstring")
            sol = evaluate(instance, [int(ch) for ch in bits])
            if sol.objectives != z:
                raise ValueError(
                    f"{path}:{lineno}: witness evaluates to {sol.objectives}, not {z}"
                )
            if sol.total_cost > instance.capacity:
                raise ValueError(f"{path}:{lineno}: witness is infeasible")
            by_point[z] = sol
    for z in by_point:
        for other in by_point:
            if other != z and dominates(other, z):
                raise ValueError(f"{path}: imported front is not mutually nondominated")
    return _sorted_front(by_point, "imported")
