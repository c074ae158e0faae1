"""Batch experiment harness with a simulated decision maker.

For each reference point, a batch of independently seeded runs is executed
with the reference fixed for the whole run; the M metric is sampled on a
shared checkpoint grid so mean curves are well defined.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from random import Random

from .archive import ParetoArchive, ReferencePoint
from .bounds import compute_bound_sets
from .core import KnapsackInstance
from .engine import RunLog, SearchConfig, SearchState, run_until
from .instance_io import load_instance
from .metrics import MCurve, m_metric, mean_curve, write_aggregate_csv, write_curve_csv
from .oracle import ExactFront, dp_front, enumerate_front, read_front


@dataclass(frozen=True)
class ExperimentSpec:
    instance_path: str
    reference_points: tuple[ReferencePoint, ...]
    runs: int = 100
    max_evaluations: int = 100_000
    base_seed: int = 0
    oracle_path: str | None = None
    output_dir: str = "out"
    weight_count: int = 101
    strict_cone_mode: bool = False
    checkpoint_interval: int = 1000
    workers: int | None = None  # None: one per CPU

    def __post_init__(self) -> None:
        if self.runs < 1:
            raise ValueError("need at least one run")


@dataclass
class ExperimentReport:
    spec: ExperimentSpec
    front_size: int
    mean_curves: dict[str, MCurve] = field(default_factory=dict)
    run_curves: dict[str, list[MCurve]] = field(default_factory=dict)


def ref_label(ref: ReferencePoint) -> str:
    return "-".join(str(v) for v in ref.values)


def seed_archive(
    instance: KnapsackInstance, config: SearchConfig, rng: Random
) -> ParetoArchive:
    """Fresh archive seeded with the lower-bound solutions."""
    archive = ParetoArchive(instance.K)
    bound_sets = compute_bound_sets(instance, config.weight_count, rng)
    for sol in bound_sets.lower_solutions:
        archive.try_insert(sol)
    return archive


def run_single(
    instance: KnapsackInstance,
    front: ExactFront,
    ref: ReferencePoint,
    config: SearchConfig,
    run_id: str,
) -> tuple[MCurve, RunLog]:
    """One seeded run with a fixed reference point; M sampled on the grid."""
    rng = Random(config.seed)
    archive = seed_archive(instance, config, rng)
    archive.set_reference(ref)
    state = SearchState(archive, config)
    state.rng = rng  # single stream across bounds + search

    samples: dict[int, float] = {}

    def observe(event: dict) -> None:
        if (
            event["type"] == "snapshot"
            and event["evaluations"] % config.checkpoint_interval == 0
        ):
            samples[event["evaluations"]] = m_metric(
                archive.objective_vectors(), front, ref
            )

    m0 = m_metric(archive.objective_vectors(), front, ref)
    log = run_until(state, instance, config, emit=observe)
    grid = [0] + [
        e
        for e in range(
            config.checkpoint_interval,
            config.max_evaluations + 1,
            config.checkpoint_interval,
        )
    ]
    final_m = m_metric(archive.objective_vectors(), front, ref)
    checkpoints = []
    last = m0
    for e in grid:
        if e == 0:
            checkpoints.append((0, m0))
            continue
        if e in samples:
            last = samples[e]
        elif e >= state.evaluations:
            last = final_m
        checkpoints.append((e, last))
    return MCurve(run_id, ref, tuple(checkpoints)), log


def _run_task(args: tuple) -> MCurve:
    instance, front, ref, config, run_id = args
    curve, _ = run_single(instance, front, ref, config, run_id)
    return curve


def resolve_oracle(instance: KnapsackInstance, oracle_path: str | None) -> ExactFront:
    if oracle_path:
        return read_front(instance, oracle_path)
    if instance.K == 2:
        return dp_front(instance)
    if instance.n <= 25:
        return enumerate_front(instance)
    raise ValueError(
        "no oracle available: supply --oracle for K > 2 instances beyond enumeration scale"
    )


def run_experiment(spec: ExperimentSpec) -> ExperimentReport:
    instance = load_instance(spec.instance_path)
    front = resolve_oracle(instance, spec.oracle_path)
    os.makedirs(spec.output_dir, exist_ok=True)
    report = ExperimentReport(spec, front_size=len(front.points))

    base_config = SearchConfig(
        max_evaluations=spec.max_evaluations,
        strict_cone_mode=spec.strict_cone_mode,
        checkpoint_interval=spec.checkpoint_interval,
        weight_count=spec.weight_count,
    )
    tasks = []
    for ref in spec.reference_points:
        for r in range(spec.runs):
            config = replace(base_config, seed=spec.base_seed + r)
            tasks.append((instance, front, ref, config, f"{ref_label(ref)}_{r}"))

    workers = spec.workers or os.cpu_count() or 1
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            curves = list(pool.map(_run_task, tasks, chunksize=1))
    else:
        curves = [_run_task(t) for t in tasks]

    idx = 0
    summary_lines = [
        f"instance: {instance.name} (n={instance.n}, K={instance.K}, C={instance.capacity})",
        f"exact front size: {len(front.points)}",
        f"runs per reference point: {spec.runs}, evaluations per run: {spec.max_evaluations}",
        "",
    ]
    for ref in spec.reference_points:
        label = ref_label(ref)
        batch = curves[idx : idx + spec.runs]
        idx += spec.runs
        report.run_curves[label] = batch
        mean = mean_curve(batch)
        report.mean_curves[label] = mean
        for r, curve in enumerate(batch):
            with open(os.path.join(spec.output_dir, f"run_{label}_{r}.csv"), "w") as fh:
                write_curve_csv(curve, fh)
        with open(os.path.join(spec.output_dir, f"mean_{label}.csv"), "w") as fh:
            write_aggregate_csv(batch, fh)
        final = mean.checkpoints[-1][1]
        summary_lines.append(f"ref ({', '.join(map(str, ref.values))}): final mean M = {final:.4f}")
    with open(os.path.join(spec.output_dir, "summary.txt"), "w") as fh:
        fh.write("\n".join(summary_lines) + "\n")
    return report
