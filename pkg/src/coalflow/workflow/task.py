import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

import networkx as nx

from coalflow.network import Capability, Network, ValidationError
from coalflow.utils import LOGGER_MANAGER

logger = LOGGER_MANAGER.get_logger("coalflow.workflow")

AGGREGATION_CHOICES = ["product", "mean", "min"]


class CycleError(ValueError):
    """Raised when a workflow's dependency relation is not acyclic."""

    def __init__(self, cycle: list[str]):
        self.cycle = cycle
        super().__init__(f"Workflow contains a cycle: {' -> '.join(cycle + cycle[:1])}")


@dataclass(frozen=True)
class RequirementMultiset:
    counts: dict[Capability, int] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.counts) == 0:
            raise ValidationError("A requirement multiset needs at least one capability")
        for cap, count in self.counts.items():
            if not isinstance(count, int) or count < 1:
                raise ValidationError(f"Requirement count for '{cap}' must be >= 1, got {count}")
        return

    @property
    def capabilities(self) -> list[Capability]:
        return sorted(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, cap: Capability) -> int:
        return self.counts.get(cap, 0)

    def items(self):
        return sorted(self.counts.items())

    def to_dict(self) -> dict:
        return dict(sorted(self.counts.items()))


@dataclass(frozen=True)
class SubTask:
    id: str
    capability: Capability

    def to_dict(self) -> dict:
        return {"id": self.id, "capability": self.capability}


@dataclass(frozen=True)
class WorkflowDag:
    """Capability-typed sub-tasks plus ``(from, to)`` data dependencies."""

    subtasks: tuple[SubTask, ...]
    deps: frozenset[tuple[str, str]] = frozenset()

    @cached_property
    def graph(self) -> nx.DiGraph:
        ids = {t.id for t in self.subtasks}
        if len(ids) != len(self.subtasks):
            raise ValidationError("Workflow has duplicate sub-task ids")
        graph = nx.DiGraph()
        graph.add_nodes_from(sorted(ids))
        for u, v in sorted(self.deps):
            for endpoint in (u, v):
                if endpoint not in ids:
                    raise ValidationError(f"Dependency ({u}, {v}) references unknown sub-task '{endpoint}'")
            graph.add_edge(u, v)
        return graph

    @cached_property
    def capability_of(self) -> dict[str, Capability]:
        return {t.id: t.capability for t in self.subtasks}

    def predecessors(self, subtask_id: str) -> list[str]:
        return sorted(self.graph.predecessors(subtask_id))

    @property
    def capabilities(self) -> set[Capability]:
        return {t.capability for t in self.subtasks}

    def to_dict(self) -> dict:
        return {
            "subtasks": [t.to_dict() for t in sorted(self.subtasks, key=lambda t: t.id)],
            "deps": [list(d) for d in sorted(self.deps)],
        }


@dataclass(frozen=True)
class TaskSpec:
    initiator: int
    requirements: RequirementMultiset
    workflow: WorkflowDag
    beta: float = 10.0
    aggregation: str = "product"

    def __post_init__(self):
        if not (self.beta > 0 and math.isfinite(self.beta)):
            raise ValidationError(f"beta must be finite and > 0, got {self.beta}")
        if len(self.workflow.subtasks) == 0:
            raise ValidationError("A task workflow needs at least one sub-task")
        if str(self.aggregation) not in AGGREGATION_CHOICES:
            raise ValidationError(f"Unknown aggregation '{self.aggregation}'")
        for task in self.workflow.subtasks:
            if task.capability not in self.requirements.counts:
                raise ValidationError(
                    f"Sub-task '{task.id}' needs capability '{task.capability}' absent from the requirements"
                )
        return

    def to_dict(self) -> dict:
        return {
            "initiator": self.initiator,
            "beta": self.beta,
            "aggregation": str(self.aggregation),
            "requirements": self.requirements.to_dict(),
            "workflow": self.workflow.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TaskSpec":
        allowed = {"initiator", "beta", "aggregation", "requirements", "workflow"}
        for key in data:
            if key not in allowed:
                raise ValidationError(f"task: unknown field '{key}'")
        for key in ("initiator", "beta", "requirements", "workflow"):
            if key not in data:
                raise ValidationError(f"task: missing field '{key}'")
        workflow = data["workflow"]
        for key in workflow:
            if key not in {"subtasks", "deps"}:
                raise ValidationError(f"task.workflow: unknown field '{key}'")
        subtasks = []
        for n, item in enumerate(workflow["subtasks"]):
            for key in item:
                if key not in {"id", "capability"}:
                    raise ValidationError(f"task.workflow.subtasks[{n}]: unknown field '{key}'")
            subtasks.append(SubTask(id=str(item["id"]), capability=item["capability"]))
        deps = frozenset((str(u), str(v)) for u, v in workflow.get("deps", []))
        return cls(
            initiator=data["initiator"],
            requirements=RequirementMultiset(dict(data["requirements"])),
            workflow=WorkflowDag(subtasks=tuple(subtasks), deps=deps),
            beta=float(data["beta"]),
            aggregation=data.get("aggregation", "product"),
        )


def validate_workflow(w: WorkflowDag) -> list[str]:
    """Return a deterministic topological order of the sub-task ids.

    Ties are broken by sub-task id.

    :raises CycleError: listing one cycle of the dependency relation.
    """
    graph = w.graph
    try:
        return list(nx.lexicographical_topological_sort(graph))
    except nx.NetworkXUnfeasible:
        cycle = [u for u, _ in nx.find_cycle(graph)]
        raise CycleError(cycle) from None


def terminal_subtasks(w: WorkflowDag) -> set[str]:
    graph = w.graph
    return {t for t in graph.nodes if graph.out_degree(t) == 0}


def validate_task(task: TaskSpec, net: Optional[Network] = None) -> list[str]:
    """Check a task against a network and return the workflow's topological order."""
    order = validate_workflow(task.workflow)
    if net is not None:
        net.check_node(task.initiator)
        space = set(net.capability_space)
        for cap in task.requirements.counts:
            if cap not in space:
                raise ValidationError(f"Required capability '{cap}' is not in the capability space")
    return order


def chain_task(
    capabilities: Iterable[Capability],
    initiator: int = 0,
    beta: float = 10.0,
    aggregation: str = "product",
) -> TaskSpec:
    """A sequential workflow with one sub-task per capability, each required once."""
    capabilities = list(capabilities)
    subtasks = tuple(SubTask(id=f"t{n + 1}", capability=c) for n, c in enumerate(capabilities))
    deps = frozenset((f"t{n}", f"t{n + 1}") for n in range(1, len(capabilities)))
    counts: dict[Capability, int] = {}
    for cap in capabilities:
        counts[cap] = counts.get(cap, 0) + 1
    return TaskSpec(
        initiator=initiator,
        requirements=RequirementMultiset(counts),
        workflow=WorkflowDag(subtasks=subtasks, deps=deps),
        beta=beta,
        aggregation=aggregation,
    )


def healthcare_chain_task(initiator: int = 0, beta: float = 10.0, aggregation: str = "product") -> TaskSpec:
    """The five-stage intake pipeline OCR -> RAD -> DX -> VAL -> CONS.

    The finalized consultation is returned to the initiating clinic, which is
    modelled as delivery of the terminal output, not as an extra edge.
    """
    return chain_task(["OCR", "RAD", "DX", "VAL", "CONS"], initiator=initiator, beta=beta, aggregation=aggregation)
