from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ipils import (
    ParetoArchive,
    ReferencePoint,
    RunLog,
    SearchConfig,
    SearchState,
    dp_front,
    evaluate,
    is_feasible,
    local_search_pass,
    neighborhood_move,
    perturb,
    perturbation_step,
    run_until,
    seed_cone,
)
from ipils.core import solution_from_items
from ipils.experiment import seed_archive
from ipils.generate import random_instance


def saturated(inst, s):
    residual = inst.capacity - s.total_cost
    return all(inst.costs[j] > residual for j in range(inst.n) if not s.selection[j])


def fresh_state(inst, config, ref=None):
    rng = Random(config.seed)
    archive = seed_archive(inst, config, rng)
    if ref is not None:
        archive.set_reference(ref)
    state = SearchState(archive, config)
    state.rng = rng
    return state


# --- operators ---------------------------------------------------------


def test_neighborhood_move_outputs(t1):
    x = solution_from_items(t1, [0, 1])
    outs = {neighborhood_move(t1, x, Random(s)).objectives for s in range(100)}
    # dropping item 0 forces its re-add -> x itself is a possible output
    assert (8, 6) in outs
    for s in range(100):
        out = neighborhood_move(t1, x, Random(s))
        assert is_feasible(t1, out) and saturated(t1, out)


def test_neighborhood_move_empty_solution(t1):
    out = neighborhood_move(t1, solution_from_items(t1, []), Random(0))
    assert out.total_cost > 0 and saturated(t1, out)


def test_neighborhood_move_single_item_cycle():
    from ipils import KnapsackInstance

    inst = KnapsackInstance("one", 1, 2, 5, (5,), ((7,), (3,)))
    x = solution_from_items(inst, [0])
    assert neighborhood_move(inst, x, Random(0)).selection == (1,)


def test_perturb_outputs(t1):
    x = solution_from_items(t1, [0, 1])
    for s in range(100):
        out = perturb(t1, x, Random(s))
        assert is_feasible(t1, out) and saturated(t1, out)


def test_perturb_degenerate(t1):
    one = solution_from_items(t1, [1])
    out = perturb(t1, one, Random(3))
    assert is_feasible(t1, out) and saturated(t1, out)
    out = perturb(t1, solution_from_items(t1, []), Random(3))
    assert out.total_cost > 0 and saturated(t1, out)


@settings(deadline=None, max_examples=50)
@given(st.integers(2, 14), st.integers(0, 10_000), st.integers(0, 10_000))
def test_operators_feasible_saturated(n, iseed, seed):
    inst = random_instance(f"op-{iseed}", n, 2, iseed)
    rng = Random(seed)
    from ipils import maximal_fill

    x = maximal_fill(inst, solution_from_items(inst, []), rng)
    for op in (neighborhood_move, perturb):
        out = op(inst, x, Random(seed))
        assert is_feasible(inst, out) and saturated(inst, out)
        assert evaluate(inst, out.selection).objectives == out.objectives


# --- local search pass -------------------------------------------------


def test_pass_budget_exhaustion(t1):
    # archive = the two Pareto points; no dominating move exists, so each
    # element consumes exactly the failure budget
    config = SearchConfig(seed=0, max_evaluations=10_000)
    state = fresh_state(t1, config)
    assert state.archive.objective_vectors() == {(8, 6), (4, 9)}
    report = local_search_pass(state, t1, config)
    assert report.scanned == 2
    assert report.successes == 0
    assert report.evaluations == 2 * config.failure_budget_per_element


def test_pass_empty_cone(t1):
    config = SearchConfig(seed=0, max_evaluations=10_000)
    state = fresh_state(t1, config, ReferencePoint((100, 100)))
    report = local_search_pass(state, t1, config)
    assert report.empty
    assert report.evaluations == 0


def test_pass_improves_dominated_seed(t1):
    config = SearchConfig(seed=1, max_evaluations=10_000)
    archive = ParetoArchive(2)
    archive.try_insert(solution_from_items(t1, [0]))  # (3,4), dominated seed
    state = SearchState(archive, config)
    report = local_search_pass(state, t1, config)
    assert report.successes >= 1
    assert (3, 4) not in state.archive.objective_vectors()


# --- perturbation step and cone seeding --------------------------------


def test_perturbation_step_from_singleton(t1):
    config = SearchConfig(seed=0, max_evaluations=10_000)
    archive = ParetoArchive(2)
    archive.try_insert(solution_from_items(t1, [0, 1]))
    state = SearchState(archive, config)
    out = perturbation_step(state, t1, config)
    assert is_feasible(t1, out) and saturated(t1, out)
    assert state.working is out
    assert state.evaluations == 1


def test_perturbation_accepts_dominated_start(t1):
    # even when the perturbed point is dominated, search continues from it
    config = SearchConfig(seed=0, max_evaluations=10_000)
    state = fresh_state(t1, config)
    for _ in range(20):
        out = perturbation_step(state, t1, config)
        assert state.working is out
    assert state.archive.objective_vectors() == {(8, 6), (4, 9)}


def test_seed_cone_chebyshev(t1):
    config = SearchConfig(seed=0, max_evaluations=10_000)
    state = fresh_state(t1, config, ReferencePoint((5, 8)))
    # shortfalls: (8,6) -> max(0,2)=2; (4,9) -> max(1,0)=1
    seed_cone(state, t1)
    assert state.working.objectives == (4, 9)


def test_seed_cone_noops(t1):
    config = SearchConfig(seed=0, max_evaluations=10_000)
    state = fresh_state(t1, config, ReferencePoint((4, 6)))  # cone non-empty
    seed_cone(state, t1)
    assert state.working is None
    state = fresh_state(t1, config)  # R inactive
    seed_cone(state, t1)
    assert state.working is None


def test_seed_cone_empty_archive(t1):
    config = SearchConfig(seed=0, max_evaluations=10_000)
    archive = ParetoArchive(2)
    archive.set_reference(ReferencePoint((5, 8)))
    state = SearchState(archive, config)
    with pytest.raises(RuntimeError):
        seed_cone(state, t1)


# --- run_until ---------------------------------------------------------


def test_run_until_zero_budget(t1):
    config = SearchConfig(seed=0, max_evaluations=0)
    state = fresh_state(t1, config)
    log = run_until(state, t1, config)
    assert state.evaluations == 0
    assert [e["type"] for e in log.events] == ["done"]


def test_run_until_finds_t1_front(t1):
    config = SearchConfig(seed=0, max_evaluations=1000)
    state = fresh_state(t1, config)
    run_until(state, t1, config)
    assert state.archive.objective_vectors() == {(8, 6), (4, 9)}
    assert state.evaluations == 1000


def test_run_until_deterministic(t1):
    config = SearchConfig(seed=7, max_evaluations=5000)
    logs = []
    for _ in range(2):
        state = fresh_state(t1, config)
        logs.append(run_until(state, t1, config))
    assert logs[0].header == logs[1].header
    assert logs[0].events == logs[1].events


def test_run_until_anytime_monotone():
    inst = random_instance("anytime", 16, 2, 5)
    front = dp_front(inst)
    hits = []
    config = SearchConfig(seed=3, max_evaluations=20_000)
    state = fresh_state(inst, config)

    def observe(event):
        if event["type"] == "snapshot":
            pts = {tuple(rec["objectives"]) for rec in event["payload"]["points"]}
            hits.append(len(pts & front.point_set()))

    run_until(state, inst, config, emit=observe)
    assert hits == sorted(hits)


def test_run_until_respects_stop(t1):
    config = SearchConfig(seed=0, max_evaluations=1_000_000)
    state = fresh_state(t1, config)
    calls = []

    def stop():
        calls.append(1)
        return len(calls) > 3

    run_until(state, t1, config, stop=stop)
    assert state.evaluations < 1_000_000


def test_scheduled_refchange_applied(t1):
    config = SearchConfig(seed=0, max_evaluations=2000, checkpoint_interval=100)
    state = fresh_state(t1, config)
    state.set_schedule([(2, ReferencePoint((5, 5)))])
    log = run_until(state, t1, config)
    refchanges = [e for e in log.events if e["type"] == "refchange"]
    assert len(refchanges) == 1
    assert refchanges[0]["payload"]["r"] == [5, 5]
    assert state.archive.reference.values == (5, 5)


def test_runlog_round_trip(t1, tmp_path):
    config = SearchConfig(seed=0, max_evaluations=2000)
    state = fresh_state(t1, config)
    log = run_until(state, t1, config)
    path = tmp_path / "run.ndjson"
    log.write(str(path))
    back = RunLog.read(str(path))
    assert back.header == log.header
    assert back.events == log.events


def test_statistical_front_recovery():
    # R inactive, 10^4 evaluations: the exact front is recovered in at
    # least 95/100 seeded runs on a small random instance
    inst = random_instance("stat-3", 10, 2, 3)
    front_pts = dp_front(inst).point_set()
    ok = 0
    for seed in range(100):
        config = SearchConfig(seed=seed, max_evaluations=10_000)
        state = fresh_state(inst, config)
        run_until(state, inst, config)
        ok += state.archive.objective_vectors() == front_pts
    assert ok >= 95


def test_strict_cone_mode(t1):
    config = SearchConfig(seed=0, max_evaluations=2000, strict_cone_mode=True)
    rng = Random(config.seed)
    archive = ParetoArchive(2)
    archive.set_reference(ReferencePoint((5, 5)))
    archive.try_insert(solution_from_items(t1, [0, 1]))  # (8,6) in cone
    state = SearchState(archive, config)
    state.rng = rng
    run_until(state, t1, config)
    for z in state.archive.objective_vectors():
        assert z >= (5, 5) or (z[0] >= 5 and z[1] >= 5)
