import math
from dataclasses import dataclass
from typing import Iterable, Optional

from coalflow.economics import CommModelBase, DomainError, EconomicReport, evaluate_economics
from coalflow.network import Network
from coalflow.utils import StrEnum
from coalflow.workflow import (
    Assignment,
    CycleError,
    IncompleteAssignment,
    TaskSpec,
    execute_workflow,
    find_assignment,
)

from .covering import is_capability_covering


class FeasibilityCondition(StrEnum):
    COVERING = "COVERING"
    ASSIGNMENT = "ASSIGNMENT"
    OUTPUT = "OUTPUT"
    REWARD = "REWARD"
    BUDGET = "BUDGET"
    INCENTIVE = "INCENTIVE"


@dataclass(frozen=True)
class FeasibilityVerdict:
    feasible: bool
    failed_condition: Optional[FeasibilityCondition] = None
    assignment: Optional[Assignment] = None
    report: Optional[EconomicReport] = None

    def to_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "failed_condition": None if self.failed_condition is None else str(self.failed_condition),
            "assignment": None if self.assignment is None else self.assignment.to_dict(),
            "report": None if self.report is None else self.report.to_dict(),
        }


def _fail(condition: FeasibilityCondition, assignment: Assignment = None, report: EconomicReport = None):
    return FeasibilityVerdict(
        feasible=False, failed_condition=condition, assignment=assignment, report=report
    )


def check_workflow_coalition_feasibility(
    net: Network,
    task: TaskSpec,
    coalition: Iterable[int],
    comm_model: CommModelBase = None,
    asg_mode: str = "shared",
    allocator: str = "proportional",
) -> FeasibilityVerdict:
    """Test the six workflow-coalition conditions in order.

    The verdict names the first failing condition (covering, assignment,
    well-defined output, reward realizability, budget, incentive) or carries
    the assignment and economic report of a feasible coalition. It never raises
    for an infeasible coalition; economics that cannot be evaluated fail the
    reward condition.

    :param net: The network.
    :type net: Network
    :param task: The task.
    :type task: TaskSpec
    :param coalition: Candidate coalition node ids.
    :type coalition: Iterable[int]
    :param comm_model: Communication model, defaults to fixed per-node overhead.
    :type comm_model: CommModelBase, optional
    :param asg_mode: Registered assigner name, defaults to "shared".
    :type asg_mode: str, optional
    :param allocator: Registered allocator name, defaults to "proportional".
    :type allocator: str, optional
    :return: The verdict.
    :rtype: FeasibilityVerdict
    """
    coalition = sorted(set(coalition))
    if not is_capability_covering(net, coalition, task.initiator, task.requirements):
        return _fail(FeasibilityCondition.COVERING)

    assignment = find_assignment(net, coalition, task.workflow, mode=asg_mode)
    if assignment is None:
        return _fail(FeasibilityCondition.ASSIGNMENT)

    try:
        execution = execute_workflow(net, task, assignment)
    except (IncompleteAssignment, CycleError):
        return _fail(FeasibilityCondition.OUTPUT, assignment)
    values = list(execution.per_subtask_output.values()) + [execution.outcome]
    if not all(math.isfinite(v) for v in values):
        return _fail(FeasibilityCondition.OUTPUT, assignment)

    try:
        report = evaluate_economics(
            net, task, coalition, assignment, comm_model, allocator=allocator, execution=execution
        )
    except DomainError:
        return _fail(FeasibilityCondition.REWARD, assignment)
    if not (math.isfinite(report.reward) and report.reward >= 0):
        return _fail(FeasibilityCondition.REWARD, assignment, report)
    if not report.budget_feasible:
        return _fail(FeasibilityCondition.BUDGET, assignment, report)
    if report.allocation is None or not report.ic_satisfied:
        return _fail(FeasibilityCondition.INCENTIVE, assignment, report)
    return FeasibilityVerdict(feasible=True, assignment=assignment, report=report)
