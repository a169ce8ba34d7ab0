from typing import Iterable, Optional

from coalflow.network import Capability, Network, k_hop_neighborhood
from coalflow.utils import LOGGER_MANAGER
from coalflow.workflow import RequirementMultiset

logger = LOGGER_MANAGER.get_logger("coalflow.feasibility")

# feasibility radius of a task no hop radius can serve
INFEASIBLE = None


def capability_counts(
    net: Network, coalition: Iterable[int], caps: Iterable[Capability]
) -> dict[Capability, int]:
    """Number of distinct agents in the coalition holding each capability."""
    caps = set(caps)
    counts = {c: 0 for c in caps}
    for node_id in set(coalition):
        for agent in net.node(node_id).agents:
            for c in agent.capabilities:
                if c in caps:
                    counts[c] += 1
    return counts


def is_capability_covering(
    net: Network,
    coalition: Iterable[int],
    initiator: int,
    reqs: RequirementMultiset,
) -> bool:
    coalition = set(coalition)
    if initiator not in coalition:
        return False
    counts = capability_counts(net, coalition, reqs.counts)
    return all(counts[c] >= r for c, r in reqs.items())


def is_k_degree_feasible(
    net: Network, initiator: int, reqs: RequirementMultiset, k: int
) -> bool:
    """Whether a capability-covering coalition exists within `k` hops.

    Covering is monotone under adding nodes, so it is enough to test the whole
    k-hop neighborhood.
    """
    assert k >= 0, f"hop radius must be >= 0, got {k}"
    return is_capability_covering(net, k_hop_neighborhood(net, initiator, k), initiator, reqs)


def feasibility_radius(
    net: Network, initiator: int, reqs: RequirementMultiset, k_max: int
) -> Optional[int]:
    """The least ``k <= k_max`` at which the task is k-degree feasible, or INFEASIBLE."""
    assert k_max >= 0, f"k_max must be >= 0, got {k_max}"
    for k in range(k_max + 1):
        if is_k_degree_feasible(net, initiator, reqs, k):
            return k
    if k_max >= net.diameter_from(initiator):
        logger.debug(f"Task at node {initiator} is infeasible on the whole network")
    else:
        logger.debug(f"Task at node {initiator} is infeasible within {k_max} hops")
    return INFEASIBLE
