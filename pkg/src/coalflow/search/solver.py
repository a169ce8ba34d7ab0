import csv
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from coalflow.economics import EconomicReport, load_comm_model
from coalflow.feasibility import check_workflow_coalition_feasibility
from coalflow.network import Network, k_hop_neighborhood
from coalflow.utils import LOGGER_MANAGER, StrEnum
from coalflow.workflow import Assignment, TaskSpec, validate_task

from .candidates import (
    Coalition,
    SearchConfig,
    effective_max_coalition_size,
    enumerate_candidates,
)

logger = LOGGER_MANAGER.get_logger("coalflow.search")

TracePoint = tuple[int, Optional[float]]


class SearchStatus(StrEnum):
    FOUND = "FOUND"
    INFEASIBLE = "INFEASIBLE"


@dataclass
class SearchResult:
    """Outcome of a coalition search.

    ``trace`` holds one ``(evaluation index, best feasible total cost so far)``
    point per evaluated candidate; the cost is None until a feasible coalition
    has been seen.
    """

    status: SearchStatus
    coalition: Coalition = ()
    radius: Optional[int] = None
    assignment: Optional[Assignment] = None
    report: Optional[EconomicReport] = None
    total_effort: Optional[float] = None
    evaluations: int = 0
    trace: list[TracePoint] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.status == SearchStatus.FOUND

    @property
    def total_cost(self) -> Optional[float]:
        return None if self.report is None else self.report.total_cost

    @property
    def reward(self) -> Optional[float]:
        return None if self.report is None else self.report.reward

    @property
    def surplus(self) -> Optional[float]:
        return None if self.report is None else self.report.surplus

    @property
    def allocation(self) -> Optional[dict[int, float]]:
        return None if self.report is None else self.report.allocation

    def to_dict(self) -> dict:
        allocation = self.allocation
        return {
            "status": str(self.status),
            "radius": self.radius,
            "coalition": list(self.coalition),
            "assignment": None if self.assignment is None else self.assignment.to_dict(),
            "total_effort": self.total_effort,
            "total_cost": self.total_cost,
            "reward": self.reward,
            "surplus": self.surplus,
            "allocation": (
                None if allocation is None else {str(k): v for k, v in sorted(allocation.items())}
            ),
            "evaluations": self.evaluations,
            "report": None if self.report is None else self.report.to_dict(),
            "trace": [[n, cost] for n, cost in self.trace],
        }

    def trace_to_csv(self, path: str) -> None:
        """Write the trace as ``iteration,best_cost`` rows; no feasible cost yet is left empty."""
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(["iteration", "best_cost"])
            for n, cost in self.trace:
                writer.writerow([n, "" if cost is None else repr(float(cost))])
        return


@dataclass
class _Tracker:
    selection: str
    evaluations: int = 0
    best_cost: Optional[float] = None
    trace: list[TracePoint] = field(default_factory=list)

    def objective(self, report: EconomicReport, assignment: Assignment, net: Network) -> float:
        if self.selection == "total_cost":
            return report.total_cost
        return assignment.total_effort(net)

    def record(self, report: Optional[EconomicReport]) -> None:
        self.evaluations += 1
        if report is not None:
            cost = report.total_cost
            if self.best_cost is None or cost < self.best_cost:
                self.best_cost = cost
        self.trace.append((self.evaluations, self.best_cost))
        return


def _evaluate(net: Network, task: TaskSpec, coalition: Coalition, comm_model, cfg: SearchConfig, tracker: _Tracker):
    verdict = check_workflow_coalition_feasibility(
        net,
        task,
        coalition,
        comm_model=comm_model,
        asg_mode=str(cfg.asg_mode),
        allocator=str(cfg.allocator_type),
    )
    tracker.record(verdict.report if verdict.feasible else None)
    if not verdict.feasible:
        logger.debug(f"Coalition {list(coalition)} fails {verdict.failed_condition}")
        return None
    objective = tracker.objective(verdict.report, verdict.assignment, net)
    key = (objective, len(coalition), coalition)
    return key, verdict


def _found(net: Network, coalition: Coalition, radius: int, verdict, tracker: _Tracker) -> SearchResult:
    return SearchResult(
        status=SearchStatus.FOUND,
        coalition=coalition,
        radius=radius,
        assignment=verdict.assignment,
        report=verdict.report,
        total_effort=verdict.assignment.total_effort(net),
        evaluations=tracker.evaluations,
        trace=tracker.trace,
    )


def solve(net: Network, task: TaskSpec, cfg: SearchConfig = None) -> SearchResult:
    """Find the minimum-radius feasible workflow coalition of a task.

    Radii ``k = 1 .. k_max`` are explored in order. At every radius all fresh
    candidates are evaluated and, if any is feasible, the one with the least
    objective wins; ties go to the smaller coalition and then to the
    lexicographically smaller node-id tuple.

    :param net: The network.
    :type net: Network
    :param task: The task, rooted at its initiator.
    :type task: TaskSpec
    :param cfg: Search options, defaults to SearchConfig().
    :type cfg: SearchConfig, optional
    :raises ValueError: if ``k_max < 1``.
    :return: The search result; INFEASIBLE still carries the trace.
    :rtype: SearchResult
    """
    cfg = cfg or SearchConfig()
    if cfg.k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {cfg.k_max}")
    validate_task(task, net)
    comm_model = load_comm_model(cfg)
    tracker = _Tracker(selection=str(cfg.selection))

    previous: Optional[set[int]] = None
    for k in range(1, cfg.k_max + 1):
        hood = k_hop_neighborhood(net, task.initiator, k)
        if previous is not None and hood == previous:
            logger.debug(f"Radius {k} adds no node around {task.initiator}")
            continue
        best = None
        for coalition in enumerate_candidates(
            net, task.initiator, task.requirements, k, cfg, fresh_only=True
        ):
            evaluated = _evaluate(net, task, coalition, comm_model, cfg, tracker)
            if evaluated is not None and (best is None or evaluated[0] < best[0]):
                best = evaluated
        if best is not None:
            (_, _, coalition), verdict = best
            logger.info(
                f"Selected coalition {list(coalition)} at radius {k} "
                f"after {tracker.evaluations} evaluations"
            )
            return _found(net, coalition, k, verdict, tracker)
        previous = hood

    logger.debug(f"No feasible coalition within {cfg.k_max} hops of node {task.initiator}")
    return SearchResult(
        status=SearchStatus.INFEASIBLE,
        evaluations=tracker.evaluations,
        trace=tracker.trace,
    )


def brute_force_oracle(net: Network, task: TaskSpec, cfg: SearchConfig = None) -> SearchResult:
    """Exhaustive reference for :func:`solve` on small networks.

    Every coalition containing the initiator inside the ``k_max``-hop
    neighborhood and within the size cap is evaluated, without pruning. The
    radius of a coalition is the largest hop distance of its members (at least
    1, since the search starts at radius 1); the winner minimizes the radius and
    then uses the same tie-breaking as :func:`solve`. ``k_max = 0`` evaluates
    the lone initiator only.
    """
    cfg = cfg or SearchConfig()
    if cfg.k_max < 0:
        raise ValueError(f"k_max must be >= 0, got {cfg.k_max}")
    validate_task(task, net)
    comm_model = load_comm_model(cfg)
    tracker = _Tracker(selection=str(cfg.selection))

    dist = net.hop_distances(task.initiator)
    hood = k_hop_neighborhood(net, task.initiator, cfg.k_max)
    others = sorted(hood - {task.initiator})
    max_size = min(effective_max_coalition_size(task, cfg), len(hood))

    best = None
    for size in range(1, max_size + 1):
        for combo in combinations(others, size - 1):
            coalition = tuple(sorted(combo + (task.initiator,)))
            evaluated = _evaluate(net, task, coalition, comm_model, cfg, tracker)
            if evaluated is None:
                continue
            radius = max(dist[i] for i in coalition)
            radius = max(radius, 1) if cfg.k_max >= 1 else radius
            key = (radius,) + evaluated[0]
            if best is None or key < best[0]:
                best = (key, evaluated[1])

    if best is None:
        return SearchResult(
            status=SearchStatus.INFEASIBLE,
            evaluations=tracker.evaluations,
            trace=tracker.trace,
        )
    (radius, _, _, coalition), verdict = best
    return _found(net, coalition, radius, verdict, tracker)
