from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional

from coalflow.economics import AllocatorConfig, CommModelConfig
from coalflow.network import Network, k_hop_neighborhood
from coalflow.utils import Choices
from coalflow.workflow import ASSIGNERS, RequirementMultiset, TaskSpec

Coalition = tuple[int, ...]


@dataclass
class SearchOptions:
    """Options of the expanding hop-radius coalition search.

    :param k_max: Largest hop radius explored.
    :param max_coalition_size: Cap on the coalition size; None means one node per
        distinct required capability.
    :param asg_mode: Registered assigner used for every candidate.
    :param prune: Drop candidates that cannot cover the requirements or that
        contain a member removable without changing the assignment.
    :param selection: Objective minimized among the feasible coalitions.
    """

    k_max: int = 4
    max_coalition_size: Optional[int] = None
    asg_mode: Choices(ASSIGNERS.names) = "shared"  # type: ignore
    prune: bool = True
    selection: Choices(["total_effort", "total_cost"]) = "total_effort"  # type: ignore


@dataclass
class SearchConfig(CommModelConfig, AllocatorConfig, SearchOptions):  # type: ignore
    """Search options plus the communication model and reward allocator selectors."""


def effective_max_coalition_size(reqs: RequirementMultiset | TaskSpec, cfg: SearchConfig) -> int:
    if isinstance(reqs, TaskSpec):
        reqs = reqs.requirements
    if cfg.max_coalition_size is not None:
        assert cfg.max_coalition_size >= 1, "max_coalition_size must be >= 1"
        return cfg.max_coalition_size
    return len(reqs.counts)


class _ContributionTable:
    """Per-node required-capability counts and cheapest capable agents."""

    def __init__(self, net: Network, nodes: list[int], reqs: RequirementMultiset) -> None:
        self.caps = reqs.capabilities
        self.required = [reqs[c] for c in self.caps]
        self.counts: dict[int, list[int]] = {}
        self.best: dict[int, list[Optional[tuple[float, int, int]]]] = {}
        for j in nodes:
            counts = [0] * len(self.caps)
            best = [None] * len(self.caps)
            for agent in net.node(j).agents:
                for n, c in enumerate(self.caps):
                    if c in agent.capabilities:
                        counts[n] += 1
                        key = (agent.baseline_effort, j, agent.id)
                        if best[n] is None or key < best[n]:
                            best[n] = key
            self.counts[j] = counts
            self.best[j] = best
        self.max_gain = max(
            (sum(min(r, c) for r, c in zip(self.required, self.counts[j])) for j in nodes),
            default=0,
        )
        return

    def deficit(self, counts: list[int]) -> int:
        return sum(max(0, r - c) for r, c in zip(self.required, counts))

    def add(self, counts: list[int], j: int) -> list[int]:
        return [a + b for a, b in zip(counts, self.counts[j])]

    def totals(self, coalition: Coalition) -> list[int]:
        counts = [0] * len(self.caps)
        for j in coalition:
            counts = self.add(counts, j)
        return counts

    def has_removable_member(self, coalition: Coalition, initiator: int, shared: bool) -> bool:
        totals = self.totals(coalition)
        winners = set()
        if shared:
            for n in range(len(self.caps)):
                keys = [self.best[j][n] for j in coalition if self.best[j][n] is not None]
                if keys:
                    winners.add(min(keys)[1])
        for j in coalition:
            if j == initiator or j in winners:
                continue
            if not shared and any(self.counts[j]):
                continue
            if all(t - c >= r for t, c, r in zip(totals, self.counts[j], self.required)):
                return True
        return False


def _covering_combinations(
    others: list[int], need: int, start_counts: list[int], table: _ContributionTable
) -> Iterator[Coalition]:
    """Lexicographic `need`-subsets of `others` that complete a covering."""
    n = len(others)
    chosen: list[int] = []

    def rec(start: int, counts: list[int]) -> Iterator[Coalition]:
        slots = need - len(chosen)
        deficit = table.deficit(counts)
        if slots == 0:
            if deficit == 0:
                yield tuple(chosen)
            return
        if deficit > slots * table.max_gain:
            return
        for idx in range(start, n - slots + 1):
            chosen.append(others[idx])
            yield from rec(idx + 1, table.add(counts, others[idx]))
            chosen.pop()
        return

    yield from rec(0, start_counts)


def enumerate_candidates(
    net: Network,
    initiator: int,
    reqs: RequirementMultiset,
    k: int,
    cfg: SearchConfig,
    fresh_only: bool = False,
) -> Iterator[Coalition]:
    """Stream the candidate coalitions of hop radius `k`.

    Coalitions are subsets of the k-hop neighborhood containing the initiator,
    yielded by increasing size and then lexicographically.

    :param net: The network.
    :type net: Network
    :param initiator: The initiating node.
    :type initiator: int
    :param reqs: The capability requirements.
    :type reqs: RequirementMultiset
    :param k: The hop radius.
    :type k: int
    :param cfg: The search config (size cap, pruning, assigner).
    :type cfg: SearchConfig
    :param fresh_only: Skip coalitions lying inside the (k-1)-hop neighborhood,
        which an expanding search has evaluated already. Ignored for k <= 1.
    :type fresh_only: bool, optional
    :return: Sorted node-id tuples.
    :rtype: Iterator[tuple[int, ...]]
    """
    hood = k_hop_neighborhood(net, initiator, k)
    inner = k_hop_neighborhood(net, initiator, k - 1) if (fresh_only and k > 1) else None
    others = sorted(hood - {initiator})
    max_size = min(effective_max_coalition_size(reqs, cfg), len(hood))

    def sort_in(combo: Coalition) -> Coalition:
        return tuple(sorted(combo + (initiator,)))

    if not cfg.prune:
        for size in range(1, max_size + 1):
            for combo in combinations(others, size - 1):
                coalition = sort_in(combo)
                if inner is not None and inner.issuperset(coalition):
                    continue
                yield coalition
        return

    shared = str(cfg.asg_mode) in ("shared", "SharedAssigner")
    table = _ContributionTable(net, sorted(hood), reqs)
    start = table.counts[initiator]
    for size in range(1, max_size + 1):
        for combo in _covering_combinations(others, size - 1, start, table):
            coalition = sort_in(combo)
            if inner is not None and inner.issuperset(coalition):
                continue
            if table.has_removable_member(coalition, initiator, shared):
                continue
            yield coalition
    return
