from .effort import DomainError, effectiveness, node_cost, task_reward
from .comm import (
    COMM_MODELS,
    CommModelBase,
    CommModelConfig,
    DistanceCommConfig,
    DistanceProportionalComm,
    FixedPerNodeComm,
    comm_cost,
    load_comm_model,
)
from .allocation import (
    ALLOCATORS,
    AllocatorBase,
    EqualSplitAllocator,
    ProportionalAllocator,
    allocate_rewards,
)
from .evaluator import (
    OUTSIDE_OPTION,
    AllocatorConfig,
    EconomicReport,
    evaluate_economics,
    surplus,
    total_cost,
)

__all__ = [
    "DomainError",
    "effectiveness",
    "node_cost",
    "task_reward",
    "COMM_MODELS",
    "CommModelBase",
    "CommModelConfig",
    "DistanceCommConfig",
    "DistanceProportionalComm",
    "FixedPerNodeComm",
    "comm_cost",
    "load_comm_model",
    "ALLOCATORS",
    "AllocatorBase",
    "EqualSplitAllocator",
    "ProportionalAllocator",
    "allocate_rewards",
    "OUTSIDE_OPTION",
    "AllocatorConfig",
    "EconomicReport",
    "evaluate_economics",
    "surplus",
    "total_cost",
]
