"""Interactive Pareto Iterated Local Search for multi-objective knapsacks."""

from .archive import InsertOutcome, ParetoArchive, ReferencePoint, in_cone
from .bounds import (
    BoundSets,
    WeightVector,
    compute_bound_sets,
    lower_bound_solution,
    make_weight_set,
    upper_bound,
)
from .core import (
    KnapsackInstance,
    Solution,
    dominates,
    evaluate,
    is_feasible,
    maximal_fill,
)
from .engine import (
    RunLog,
    SearchConfig,
    SearchState,
    local_search_pass,
    neighborhood_move,
    perturb,
    perturbation_step,
    run_until,
    seed_cone,
)
from .generate import random_instance
from .instance_io import parse_instance, serialize_instance
from .metrics import MCurve, m_metric, mean_curve
from .oracle import ExactFront, dp_front, enumerate_front, read_front, write_front

__all__ = [
    "BoundSets",
    "ExactFront",
    "InsertOutcome",
    "KnapsackInstance",
    "MCurve",
    "ParetoArchive",
    "ReferencePoint",
    "RunLog",
    "SearchConfig",
    "SearchState",
    "Solution",
    "WeightVector",
    "compute_bound_sets",
    "dominates",
    "dp_front",
    "enumerate_front",
    "evaluate",
    "in_cone",
    "is_feasible",
    "local_search_pass",
    "lower_bound_solution",
    "m_metric",
    "make_weight_set",
    "maximal_fill",
    "mean_curve",
    "neighborhood_move",
    "parse_instance",
    "perturb",
    "perturbation_step",
    "random_instance",
    "read_front",
    "run_until",
    "seed_cone",
    "serialize_instance",
    "upper_bound",
    "write_front",
]
