"""Adaptive nearest/farthest point queries on Lipschitz curves."""

from ._core import (
    BudgetExceeded,
    InstanceBundle,
    OracleCapExceeded,
    Polyline,
    SolveResult,
    check_proofset,
    closest_possible,
    constant_instance,
    farthest_possible,
    hidden_spike_instance,
    min_proofset_grid,
    polyline,
    random_polyline,
    relative_segment_family,
    replay,
    solve,
    spike_family,
    uniform_baseline,
)

__all__ = [
    "BudgetExceeded",
    "InstanceBundle",
    "OracleCapExceeded",
    "Polyline",
    "SolveResult",
    "check_proofset",
    "closest_possible",
    "constant_instance",
    "farthest_possible",
    "hidden_spike_instance",
    "min_proofset_grid",
    "polyline",
    "random_polyline",
    "relative_segment_family",
    "replay",
    "solve",
    "spike_family",
    "uniform_baseline",
]
