"""Parallel AOD atom rearrangement planner."""

from ._aodsort import (
    PLAN_FORMAT,
    __version__,
    Planner,
    feasibility,
    make_config,
    plan,
    plan_document,
    random_instance,
    run_trials,
    validate,
)

__all__ = [
    "PLAN_FORMAT",
    "Planner",
    "feasibility",
    "make_config",
    "plan",
    "plan_document",
    "random_instance",
    "run_trials",
    "validate",
]
