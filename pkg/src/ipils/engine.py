"""Pareto Iterated Local Search: drop-one local search, drop-two perturbation.

The engine alternates local-search passes over the cone view of the
archive with perturbation steps, counting one evaluation per generated
candidate solution. Runs are deterministic given (instance, seed,
reference-change schedule).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from random import Random
from typing import Callable, Sequence

from .archive import InsertOutcome, ParetoArchive, ReferencePoint, in_cone
from .core import KnapsackInstance, Solution, dominates, maximal_fill

RNG_NAME = "python-random-mt19937"

Event = dict
Emit = Callable[[Event], None]


@dataclass(frozen=True)
class SearchConfig:
    failure_budget_per_element: int = 100
    max_evaluations: int = 100_000
    seed: int = 0
    strict_cone_mode: bool = False
    checkpoint_interval: int = 1000
    weight_count: int = 101

    def __post_init__(self) -> None:
        if self.failure_budget_per_element < 1:
            raise ValueError("failure budget must be >= 1")
        if self.max_evaluations < 0:
            raise ValueError("max evaluations must be >= 0")
        if self.checkpoint_interval < 1:
            raise ValueError("checkpoint interval must be >= 1")

    def to_dict(self) -> dict:
        return {
            "failure_budget_per_element": self.failure_budget_per_element,
            "max_evaluations": self.max_evaluations,
            "seed": self.seed,
            "strict_cone_mode": self.strict_cone_mode,
            "checkpoint_interval": self.checkpoint_interval,
            "weight_count": self.weight_count,
        }

    @staticmethod
    def from_dict(d: dict) -> "SearchConfig":
        return SearchConfig(**{k: d[k] for k in SearchConfig().to_dict() if k in d})


@dataclass
class RunLog:
    header: dict
    events: list[Event] = field(default_factory=list)

    def append(self, event: Event) -> None:
        self.events.append(event)

    def write(self, path: str) -> None:
        with open(path, "w") as fh:
            fh.write(json.dumps(self.header, sort_keys=True) + "\n")
            for ev in self.events:
                fh.write(json.dumps(ev, sort_keys=True) + "\n")

    @staticmethod
    def read(path: str) -> "RunLog":
        with open(path) as fh:
            lines = [json.loads(line) for line in fh if line.strip()]
        return RunLog(lines[0], lines[1:])


@dataclass
class PassReport:
    scanned: int = 0
    successes: int = 0
    failures: int = 0
    evaluations: int = 0
    empty: bool = False
    ref_changed: bool = False
    stopped: bool = False


class SearchState:
    """Mutable per-run state: archive, counters, rng, working start point."""

    def __init__(self, archive: ParetoArchive, config: SearchConfig) -> None:
        self.archive = archive
        self.config = config
        self.rng = Random(config.seed)
        self.evaluations = 0
        self.boundary = 0  # counts boundary checks, for replayable schedules
        self.working: Solution | None = None
        self.on_checkpoint: Callable[[], None] | None = None
        self.stop_cb: Callable[[], bool] | None = None
        self._observed_ref_gen = archive.ref_generation
        self._schedule: list[tuple[int, ReferencePoint]] = []
        self._stop_boundaries: list[int] = []
        self._scheduled_stop = False

    def set_schedule(self, schedule: Sequence[tuple[int, ReferencePoint]]) -> None:
        """Replay aid: apply reference points at recorded boundary indices."""
        self._schedule = sorted(schedule)

    def set_stop_boundaries(self, boundaries: Sequence[int]) -> None:
        """Replay aid: raise the stop signal at recorded boundary indices."""
        self._stop_boundaries = sorted(boundaries)

    def clear_scheduled_stop(self) -> None:
        self._scheduled_stop = False

    def count_evaluation(self) -> None:
        self.evaluations += 1
        if (
            self.on_checkpoint is not None
            and self.evaluations % self.config.checkpoint_interval == 0
        ):
            self.on_checkpoint()

    def budget_left(self) -> bool:
        return self.evaluations < self.config.max_evaluations

    def boundary_check(self) -> tuple[bool, bool]:
        """Poll at a pass/element boundary.

        Returns (reference_moved, stop_requested). Scheduled replay events
        fire here so a replayed run sees changes at the same boundaries as
        the live one.
        """
        self.boundary += 1
        while self._schedule and self._schedule[0][0] <= self.boundary:
            _, ref = self._schedule.pop(0)
            self.archive.set_reference(ref)
        while self._stop_boundaries and self._stop_boundaries[0] <= self.boundary:
            self._stop_boundaries.pop(0)
            self._scheduled_stop = True
        stop = self._scheduled_stop or (self.stop_cb is not None and self.stop_cb())
        gen = self.archive.ref_generation
        moved = gen != self._observed_ref_gen
        if moved:
            self._observed_ref_gen = gen
        return moved, stop


def neighborhood_move(
    instance: KnapsackInstance, x: Solution, rng: Random
) -> Solution:
    """Drop one selected item uniformly at random, then refill to saturation."""
    selected = [j for j, v in enumerate(x.selection) if v]
    if not selected:
        return maximal_fill(instance, x, rng)
    j = selected[rng.randrange(len(selected))]
    return maximal_fill(instance, _without(instance, x, (j,)), rng, exclude=(j,))


def perturb(instance: KnapsackInstance, x: Solution, rng: Random) -> Solution:
    """Drop two distinct selected items uniformly at random, then refill."""
    selected = [j for j, v in enumerate(x.selection) if v]
    if len(selected) >= 2:
        drop: Sequence[int] = rng.sample(selected, 2)
    elif selected:
        drop = (selected[0],)
    else:
        return maximal_fill(instance, x, rng)
    return maximal_fill(instance, _without(instance, x, drop), rng, exclude=drop)


def _without(
    instance: KnapsackInstance, x: Solution, items: Sequence[int]
) -> Solution:
    sel = list(x.selection)
    objs = list(x.objectives)
    total = x.total_cost
    for j in items:
        sel[j] = 0
        total -= instance.costs[j]
        for k in range(instance.K):
            objs[k] -= instance.profits[k][j]
    return Solution(tuple(sel), tuple(objs), total)


def _offer(state: SearchState, candidate: Solution) -> InsertOutcome | None:
    if state.config.strict_cone_mode and not in_cone(
        candidate.objectives, state.archive.reference
    ):
        return None
    return state.archive.try_insert(candidate)


def local_search_pass(
    state: SearchState, instance: KnapsackInstance, config: SearchConfig
) -> PassReport:
    """One sweep of the drop-one neighborhood over the cone-view snapshot.

    Each element is descended until `failure_budget_per_element` consecutive
    moves fail to dominate it; a dominating move replaces the element and
    resets the failure count, so each scan runs to local optimality. A
    pending working start point (from perturbation or cone seeding) is
    scanned first.
    """
    report = PassReport()
    snapshot = state.archive.cone_view()
    if state.working is not None:
        seen = {s.objectives for s in snapshot}
        if state.working.objectives not in seen:
            snapshot.insert(0, state.working)
        state.working = None
    if not snapshot:
        report.empty = True
        return report

    for element in snapshot:
        if not state.budget_left():
            break
        moved, stop = state.boundary_check()
        if stop:
            report.stopped = True
            break
        if moved:
            report.ref_changed = True
            break
        report.scanned += 1
        failures = 0
        while failures < config.failure_budget_per_element and state.budget_left():
            candidate = neighborhood_move(instance, element, state.rng)
            _offer(state, candidate)
            state.count_evaluation()
            report.evaluations += 1
            if dominates(candidate.objectives, element.objectives):
                report.successes += 1
                element = candidate
                failures = 0
            else:
                failures += 1
        report.failures += failures
    return report


def perturbation_step(
    state: SearchState, instance: KnapsackInstance, config: SearchConfig
) -> Solution:
    """Perturb a uniformly random cone-view element into the next start point."""
    cone = state.archive.cone_view()
    if cone:
        base = cone[state.rng.randrange(len(cone))]
    elif state.working is not None:
        base = state.working
    else:
        seed_cone(state, instance)
        base = state.working
        if base is None:
            raise RuntimeError("no start point available for perturbation")
    candidate = perturb(instance, base, state.rng)
    _offer(state, candidate)
    state.count_evaluation()
    state.working = candidate
    return candidate


def seed_cone(state: SearchState, instance: KnapsackInstance) -> None:
    """Pick a start point when the cone view is empty.

    Chooses the archive member with the smallest Chebyshev shortfall
    max_k(r_k - z_k)+ to the reference point, ties broken by shortfall sum
    then insertion order. The pick becomes the working start point; it is
    not a cone member.
    """
    ref = state.archive.reference
    if not ref.active or state.archive.cone_view():
        return
    members = state.archive.members()
    if not members:
        raise RuntimeError("archive is empty; seed it with bound solutions first")
    best = None
    best_key = None
    for m in members:
        shortfalls = [max(0, r - z) for r, z in zip(ref.values, m.objectives)]
        key = (max(shortfalls), sum(shortfalls))
        if best_key is None or key < best_key:
            best, best_key = m, key
    state.working = best


def run_until(
    state: SearchState,
    instance: KnapsackInstance,
    config: SearchConfig,
    stop: Callable[[], bool] | None = None,
    emit: Emit | None = None,
) -> RunLog:
    """Alternate local-search passes and perturbations until the budget,
    a stop signal, or session termination.

    Reference-point changes are observed at element boundaries; the engine
    then re-snapshots the cone (the outer interactive loop) and continues.
    Emits a snapshot event every `checkpoint_interval` evaluations and
    after every pass that changed the archive.
    """
    log = RunLog(
        {
            "instance": instance.name,
            "rng": RNG_NAME,
            "config": config.to_dict(),
        }
    )
    last_snap_gen = -1

    def record(event: Event) -> None:
        log.append(event)
        if emit is not None:
            emit(event)

    def snapshot_event() -> None:
        nonlocal last_snap_gen
        last_snap_gen = state.archive.generation
        record(
            {
                "type": "snapshot",
                "evaluations": state.evaluations,
                "payload": {
                    "generation": state.archive.generation,
                    "points": state.archive.snapshot(),
                },
            }
        )

    state.on_checkpoint = snapshot_event
    state.stop_cb = stop

    try:
        while state.budget_left():
            moved, halted = state.boundary_check()
            if halted:
                break
            if moved:
                _record_refchange(record, state)
                state.working = None
            ref = state.archive.reference
            if ref.active and not state.archive.cone_view() and state.working is None:
                seed_cone(state, instance)
            report = local_search_pass(state, instance, config)
            if state.archive.generation != last_snap_gen:
                snapshot_event()
            if report.empty:
                break  # nothing to search from (unseeded archive)
            if report.stopped:
                break
            if report.ref_changed:
                _record_refchange(record, state)
                state.working = None
                continue
            if not state.budget_left():
                break
            perturbation_step(state, instance, config)
        record(
            {
                "type": "done",
                "evaluations": state.evaluations,
                "payload": {"boundary": state.boundary},
            }
        )
    finally:
        state.on_checkpoint = None
        state.stop_cb = None
    return log


def _record_refchange(record: Emit, state: SearchState) -> None:
    ref = state.archive.reference
    record(
        {
            "type": "refchange",
            "evaluations": state.evaluations,
            "payload": {
                "r": list(ref.values),
                "active": ref.active,
                "boundary": state.boundary,
            },
        }
    )
