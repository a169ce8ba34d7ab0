from .task import (
    AGGREGATION_CHOICES,
    CycleError,
    RequirementMultiset,
    SubTask,
    TaskSpec,
    WorkflowDag,
    chain_task,
    healthcare_chain_task,
    terminal_subtasks,
    validate_task,
    validate_workflow,
)
from .assignment import (
    ASSIGNERS,
    AssignerBase,
    Assignment,
    OneToOneAssigner,
    SharedAssigner,
    find_assignment,
)
from .execution import (
    AGGREGATORS,
    AggregatorBase,
    ExecutionReport,
    IncompleteAssignment,
    execute_workflow,
)

__all__ = [
    "AGGREGATION_CHOICES",
    "CycleError",
    "RequirementMultiset",
    "SubTask",
    "TaskSpec",
    "WorkflowDag",
    "chain_task",
    "healthcare_chain_task",
    "terminal_subtasks",
    "validate_task",
    "validate_workflow",
    "ASSIGNERS",
    "AssignerBase",
    "Assignment",
    "OneToOneAssigner",
    "SharedAssigner",
    "find_assignment",
    "AGGREGATORS",
    "AggregatorBase",
    "ExecutionReport",
    "IncompleteAssignment",
    "execute_workflow",
]
