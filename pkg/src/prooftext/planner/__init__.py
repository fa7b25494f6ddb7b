"""Macroplanner: the Present cycle over top-down and bottom-up operators."""

from .core import (
    PlanResult,
    PlannerConfig,
    PlanningRun,
    Task,
    TraceRecord,
    plan_proof,
    present,
    select_operator,
)
from .operators import (
    REGISTRY,
    Features,
    PresentationOperator,
    enforce_readiness,
    op_order_minimal_load,
    order_by_focus,
)

__all__ = [
    "REGISTRY",
    "Features",
    "PlanResult",
    "PlannerConfig",
    "PlanningRun",
    "PresentationOperator",
    "Task",
    "TraceRecord",
    "enforce_readiness",
    "op_order_minimal_load",
    "order_by_focus",
    "plan_proof",
    "present",
    "select_operator",
]
