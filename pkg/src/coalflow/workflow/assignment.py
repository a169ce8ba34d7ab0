from abc import ABC, abstractmethod
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np
from scipy.optimize import linear_sum_assignment

from coalflow.network import Network, agents_with_capability
from coalflow.utils import Register

from .task import WorkflowDag

AgentRef = tuple[int, int]


@dataclass(frozen=True)
class Assignment:
    """A total map from sub-task id to the ``(node id, agent id)`` executing it."""

    mapping: dict[str, AgentRef] = field(default_factory=dict)

    def __getitem__(self, subtask_id: str) -> AgentRef:
        return self.mapping[subtask_id]

    def __contains__(self, subtask_id: str) -> bool:
        return subtask_id in self.mapping

    def __len__(self) -> int:
        return len(self.mapping)

    @property
    def nodes(self) -> set[int]:
        return {node for node, _ in self.mapping.values()}

    def loads(self) -> Counter:
        """Number of sub-tasks carried by every assigned agent."""
        return Counter(self.mapping.values())

    def total_effort(self, net: Network) -> float:
        """Sum of baseline effort times assignment count over the assigned agents.

        Agents without a sub-task contribute no effort.
        """
        total = 0.0
        for (node, agent), count in sorted(self.loads().items()):
            total += net.agent(node, agent).baseline_effort * count
        return total

    def to_dict(self) -> dict:
        return {t: list(ref) for t, ref in sorted(self.mapping.items())}


class AssignerBase(ABC):
    """Maps sub-tasks onto capable agents of a coalition."""

    @abstractmethod
    def assign(self, net: Network, coalition: Iterable[int], w: WorkflowDag) -> Optional[Assignment]:
        """Assign every sub-task of `w` to an agent hosted in `coalition`.

        :param net: The network.
        :type net: Network
        :param coalition: The coalition node ids.
        :type coalition: Iterable[int]
        :param w: The workflow.
        :type w: WorkflowDag
        :return: The assignment, or None if no capability-consistent one exists.
        :rtype: Optional[Assignment]
        """
        return


ASSIGNERS = Register[AssignerBase]("assigner")


def _effort_key(net: Network, ref: AgentRef) -> tuple[float, int, int]:
    node, agent = ref
    return (net.agent(node, agent).baseline_effort, node, agent)


@ASSIGNERS("shared")
class SharedAssigner(AssignerBase):
    """Each sub-task goes to the capable agent adding the least effort.

    An agent may take several sub-tasks; each one adds its baseline effort, so
    the choice per sub-task does not depend on the others.
    """

    def assign(self, net: Network, coalition: Iterable[int], w: WorkflowDag) -> Optional[Assignment]:
        coalition = sorted(set(coalition))
        best: dict[str, AgentRef] = {}
        mapping = {}
        for task in sorted(w.subtasks, key=lambda t: t.id):
            if task.capability not in best:
                candidates = agents_with_capability(net, coalition, task.capability)
                if not candidates:
                    return None
                best[task.capability] = min(candidates, key=lambda r: _effort_key(net, r))
            mapping[task.id] = best[task.capability]
        return Assignment(mapping)


@ASSIGNERS("one_to_one")
class OneToOneAssigner(AssignerBase):
    """A perfect sub-task/agent matching of minimum total baseline effort."""

    def assign(self, net: Network, coalition: Iterable[int], w: WorkflowDag) -> Optional[Assignment]:
        coalition = sorted(set(coalition))
        tasks = sorted(w.subtasks, key=lambda t: t.id)
        # agents without a workflow capability never enter the matching
        needed = w.capabilities
        agents = sorted(
            (node.id, a.id)
            for node in map(net.node, coalition)
            for a in node.agents
            if needed.intersection(a.capabilities)
        )
        if len(tasks) == 0:
            return Assignment({})
        if len(agents) < len(tasks):
            return None

        efforts = np.array([_effort_key(net, ref)[0] for ref in agents])
        penalty = (efforts.sum() + 1.0) * (len(tasks) + 1)
        cost = np.full((len(tasks), len(agents)), penalty)
        for row, task in enumerate(tasks):
            for col, (node, agent) in enumerate(agents):
                if task.capability in net.agent(node, agent).capabilities:
                    cost[row, col] = efforts[col]
        rows, cols = linear_sum_assignment(cost)
        if len(rows) < len(tasks) or np.any(cost[rows, cols] >= penalty):
            return None
        return Assignment({tasks[r].id: agents[c] for r, c in zip(rows, cols)})


def find_assignment(
    net: Network,
    coalition: Iterable[int],
    w: WorkflowDag,
    mode: str = "shared",
) -> Optional[Assignment]:
    """Capability-consistent assignment of `w` onto the coalition, or None."""
    return ASSIGNERS.get_item(mode)().assign(net, coalition, w)
