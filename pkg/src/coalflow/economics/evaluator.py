import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

from coalflow.network import Network
from coalflow.utils import FLOAT_TOL
from coalflow.workflow import Assignment, ExecutionReport, TaskSpec, execute_workflow

from .allocation import ALLOCATORS, allocate_rewards
from .comm import CommModelBase, FixedPerNodeComm
from .effort import node_cost, task_reward

# utility of abstaining; a single task is active at a time
OUTSIDE_OPTION = 0.0

AllocatorConfig = ALLOCATORS.make_config(default="proportional", config_name="AllocatorConfig")


@dataclass(frozen=True)
class EconomicReport:
    per_node_effort: dict[int, float] = field(default_factory=dict)
    per_node_cost: dict[int, float] = field(default_factory=dict)
    per_node_comm: dict[int, float] = field(default_factory=dict)
    outcome: float = 0.0
    reward: float = 0.0
    allocation: Optional[dict[int, float]] = None
    utilities: dict[int, float] = field(default_factory=dict)
    budget_feasible: bool = False
    ir_satisfied: bool = False
    outside_option: float = OUTSIDE_OPTION

    @property
    def ic_satisfied(self) -> bool:
        if not self.ir_satisfied:
            return False
        return all(u >= self.outside_option - FLOAT_TOL for u in self.utilities.values())

    @property
    def total_cost(self) -> float:
        return math.fsum(
            self.per_node_cost[i] + self.per_node_comm[i] for i in sorted(self.per_node_cost)
        )

    @property
    def surplus(self) -> float:
        return self.reward - self.total_cost

    def to_dict(self) -> dict:
        def keyed(mapping: Optional[dict]) -> Optional[dict]:
            if mapping is None:
                return None
            return {str(k): v for k, v in sorted(mapping.items())}

        return {
            "per_node_effort": keyed(self.per_node_effort),
            "per_node_cost": keyed(self.per_node_cost),
            "per_node_comm": keyed(self.per_node_comm),
            "outcome": self.outcome,
            "reward": self.reward,
            "total_cost": self.total_cost,
            "surplus": self.surplus,
            "allocation": keyed(self.allocation),
            "utilities": keyed(self.utilities),
            "budget_feasible": self.budget_feasible,
            "ir_satisfied": self.ir_satisfied,
            "ic_satisfied": self.ic_satisfied,
            "outside_option": self.outside_option,
        }


def total_cost(report: EconomicReport) -> float:
    return report.total_cost


def surplus(report: EconomicReport) -> float:
    return report.surplus


def evaluate_economics(
    net: Network,
    task: TaskSpec,
    coalition: Iterable[int],
    asg: Assignment,
    comm_model: CommModelBase = None,
    allocator: str = "proportional",
    execution: Optional[ExecutionReport] = None,
) -> EconomicReport:
    """Run the workflow and price it for the coalition.

    :param net: The network.
    :type net: Network
    :param task: The task.
    :type task: TaskSpec
    :param coalition: Coalition node ids; nodes without sub-tasks spend no effort.
    :type coalition: Iterable[int]
    :param asg: An assignment valid for the coalition.
    :type asg: Assignment
    :param comm_model: Communication model, defaults to fixed per-node overhead.
    :type comm_model: CommModelBase, optional
    :param allocator: Registered allocator name, defaults to "proportional".
    :type allocator: str, optional
    :param execution: A precomputed execution report of the same assignment.
    :type execution: ExecutionReport, optional
    :return: Efforts, costs, reward, allocation, utilities and the IR/budget flags.
    :rtype: EconomicReport
    """
    coalition = sorted(set(coalition))
    comm_model = comm_model or FixedPerNodeComm()
    if execution is None:
        execution = execute_workflow(net, task, asg)

    efforts = {i: execution.per_node_effort.get(i, 0.0) for i in coalition}
    costs = {i: node_cost(net.node(i), efforts[i]) for i in coalition}
    comms = {i: comm_model(net, coalition, i) for i in coalition}
    reward = task_reward(task.beta, execution.outcome)

    charges = {i: costs[i] + comms[i] for i in coalition}
    if all(math.isfinite(c) for c in charges.values()):
        budget_feasible = math.fsum(charges.values()) <= reward
        allocation = allocate_rewards(charges, reward, scheme=allocator)
    else:
        budget_feasible = False
        allocation = None

    utilities = {}
    ir_satisfied = False
    if allocation is not None:
        utilities = {i: allocation[i] - costs[i] - comms[i] for i in coalition}
        ir_satisfied = all(
            utilities[i] >= -FLOAT_TOL * max(1.0, allocation[i]) for i in coalition
        )
    return EconomicReport(
        per_node_effort=efforts,
        per_node_cost=costs,
        per_node_comm=comms,
        outcome=execution.outcome,
        reward=reward,
        allocation=allocation,
        utilities=utilities,
        budget_feasible=budget_feasible,
        ir_satisfied=ir_satisfied,
    )
