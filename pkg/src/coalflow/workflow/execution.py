import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field

import numpy as np

from coalflow.network import Network
from coalflow.utils import Register

from .assignment import Assignment
from .task import TaskSpec, terminal_subtasks, validate_workflow


class IncompleteAssignment(ValueError):
    """Raised when an assignment misses a sub-task or violates a capability."""


class AggregatorBase(ABC):
    def __call__(self, outputs: list[float]) -> float:
        assert len(outputs) > 0, "Aggregating an empty set of terminal outputs"
        return float(self.aggregate(outputs))

    @abstractmethod
    def aggregate(self, outputs: list[float]) -> float:
        return


AGGREGATORS = Register[AggregatorBase]("aggregator")


@AGGREGATORS("product")
class ProductAggregator(AggregatorBase):
    def aggregate(self, outputs: list[float]) -> float:
        return math.prod(outputs)


@AGGREGATORS("mean")
class MeanAggregator(AggregatorBase):
    def aggregate(self, outputs: list[float]) -> float:
        return np.mean(outputs)


@AGGREGATORS("min")
class MinAggregator(AggregatorBase):
    def aggregate(self, outputs: list[float]) -> float:
        return min(outputs)


@dataclass(frozen=True)
class ExecutionReport:
    per_subtask_output: dict[str, float] = field(default_factory=dict)
    outcome: float = 0.0
    per_node_effort: dict[int, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "per_subtask_output": dict(sorted(self.per_subtask_output.items())),
            "outcome": self.outcome,
            "per_node_effort": {str(k): v for k, v in sorted(self.per_node_effort.items())},
        }


def check_assignment(net: Network, task: TaskSpec, asg: Assignment) -> None:
    for subtask in task.workflow.subtasks:
        if subtask.id not in asg:
            raise IncompleteAssignment(f"Sub-task '{subtask.id}' is not assigned")
        node, agent = asg[subtask.id]
        if subtask.capability not in net.agent(node, agent).capabilities:
            raise IncompleteAssignment(
                f"Agent ({node}, {agent}) lacks capability '{subtask.capability}' for sub-task '{subtask.id}'"
            )
    return


def execute_workflow(net: Network, task: TaskSpec, asg: Assignment) -> ExecutionReport:
    """Compose the scalar reliability of the workflow along its DAG.

    Every sub-task yields ``alpha * (1 - exp(-rho * u)) * prod(predecessor outputs)``
    where ``u`` is the baseline effort of its agent; sources take an exogenous
    input of reliability 1. The outcome aggregates the terminal outputs.

    :param net: The network hosting the agents.
    :type net: Network
    :param task: The task whose workflow is executed.
    :type task: TaskSpec
    :param asg: A total, capability-consistent assignment.
    :type asg: Assignment
    :raises IncompleteAssignment: if `asg` misses a sub-task or a capability.
    :return: Per sub-task outputs, the outcome and the per-node effort.
    :rtype: ExecutionReport
    """
    # deferred: economics imports this module
    from coalflow.economics.effort import effectiveness

    check_assignment(net, task, asg)
    order = validate_workflow(task.workflow)

    outputs: dict[str, float] = {}
    for subtask_id in order:
        node_id, agent_id = asg[subtask_id]
        node = net.node(node_id)
        agent = net.agent(node_id, agent_id)
        value = node.alpha * effectiveness(node.rho, agent.baseline_effort)
        for pred in task.workflow.predecessors(subtask_id):
            value *= outputs[pred]
        outputs[subtask_id] = value

    terminals = sorted(terminal_subtasks(task.workflow))
    outcome = AGGREGATORS.get_item(task.aggregation)()([outputs[t] for t in terminals])

    per_node_effort: dict[int, float] = {}
    for (node_id, agent_id), count in sorted(asg.loads().items()):
        effort = net.agent(node_id, agent_id).baseline_effort * count
        per_node_effort[node_id] = per_node_effort.get(node_id, 0.0) + effort
    return ExecutionReport(
        per_subtask_output=outputs,
        outcome=outcome,
        per_node_effort=per_node_effort,
    )
