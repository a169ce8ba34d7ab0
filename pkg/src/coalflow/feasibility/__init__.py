from .covering import (
    INFEASIBLE,
    capability_counts,
    feasibility_radius,
    is_capability_covering,
    is_k_degree_feasible,
)
from .verdict import (
    FeasibilityCondition,
    FeasibilityVerdict,
    check_workflow_coalition_feasibility,
)

__all__ = [
    "INFEASIBLE",
    "capability_counts",
    "feasibility_radius",
    "is_capability_covering",
    "is_k_degree_feasible",
    "FeasibilityCondition",
    "FeasibilityVerdict",
    "check_workflow_coalition_feasibility",
]
