"""Approximation quality: fraction of cone-restricted front points found."""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

from .archive import ReferencePoint, in_cone
from .oracle import ExactFront


@dataclass(frozen=True)
class MCurve:
    run_id: str
    reference: ReferencePoint
    checkpoints: tuple[tuple[int, float], ...]  # (evaluations, M)

    def evaluations_grid(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.checkpoints)


def m_metric(
    approx: Iterable[tuple[int, ...]],
    front: ExactFront,
    ref: ReferencePoint,
) -> float:
    """Fraction of cone-restricted exact front points present in `approx`.

    With an empty cone-restricted front the target is vacuous: returns 1.0
    when the cone-restricted approximation is empty too, else 0.0.
    """
    approx = set(approx)
    target = {z for z in front.points if in_cone(z, ref)}
    if not target:
        return 1.0 if not any(in_cone(z, ref) for z in approx) else 0.0
    return len(approx & target) / len(target)


def mean_curve(curves: Sequence[MCurve]) -> MCurve:
    if not curves:
        raise ValueError("need at least one curve")
    grid = curves[0].evaluations_grid()
    for c in curves[1:]:
        if c.evaluations_grid() != grid:
            raise ValueError("curves have mismatched checkpoint grids")
    means = tuple(
        (e, sum(c.checkpoints[i][1] for c in curves) / len(curves))
        for i, e in enumerate(grid)
    )
    return MCurve("mean", curves[0].reference, means)


def write_curve_csv(curve: MCurve, fh: TextIO) -> None:
    fh.write("evaluations,M\n")
    for e, m in curve.checkpoints:
        fh.write(f"{e},{m:.6f}\n")


def write_aggregate_csv(curves: Sequence[MCurve], fh: TextIO) -> None:
    grid = curves[0].evaluations_grid()
    fh.write("evaluations,meanM,stddev,n\n")
    for i, e in enumerate(grid):
        values = [c.checkpoints[i][1] for c in curves]
        mean = sum(values) / len(values)
        sd = statistics.pstdev(values)
        fh.write(f"{e},{mean:.6f},{sd:.6f},{len(values)}\n")
