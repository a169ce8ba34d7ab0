from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Optional

import networkx as nx

from coalflow.utils import LOGGER_MANAGER

logger = LOGGER_MANAGER.get_logger("coalflow.network")

# marker for nodes outside the origin's connected component
UNREACHABLE = None

Capability = str


class ValidationError(ValueError):
    """Raised when a network (or a serialized document) violates its invariants."""


class InvalidNode(KeyError):
    """Raised when a node id does not belong to the network."""


@dataclass(frozen=True)
class Agent:
    id: int
    capabilities: tuple[Capability, ...]
    baseline_effort: float

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "capabilities": list(self.capabilities),
            "baseline_effort": self.baseline_effort,
        }


@dataclass(frozen=True)
class NodeProfile:
    id: int
    agents: tuple[Agent, ...]
    rho: float
    alpha: float
    kappa_cpu: float
    kappa_lat: float
    comm_fixed: float
    domain: Optional[tuple[Capability, ...]] = None

    @property
    def capabilities(self) -> set[Capability]:
        return {c for agent in self.agents for c in agent.capabilities}

    def to_dict(self) -> dict:
        data = {
            "id": self.id,
            "rho": self.rho,
            "alpha": self.alpha,
            "kappa_cpu": self.kappa_cpu,
            "kappa_lat": self.kappa_lat,
            "comm_fixed": self.comm_fixed,
            "agents": [agent.to_dict() for agent in self.agents],
        }
        if self.domain is not None:
            data["domain"] = list(self.domain)
        return data


@dataclass(frozen=True)
class DistanceMap:
    origin: int
    dist: dict[int, Optional[int]] = field(default_factory=dict)

    def reachable(self) -> set[int]:
        return {i for i, d in self.dist.items() if d is not UNREACHABLE}


_NETWORK_FIELDS = {"capability_space", "nodes", "edges"}
_NODE_FIELDS = {"id", "rho", "alpha", "kappa_cpu", "kappa_lat", "comm_fixed", "agents"}
_AGENT_FIELDS = {"id", "capabilities", "baseline_effort"}


def _check_fields(data: dict, allowed: set[str], where: str, optional: set[str] = frozenset()) -> None:
    if not isinstance(data, dict):
        raise ValidationError(f"{where}: expected an object, got {type(data).__name__}")
    for key in data:
        if key not in allowed and key not in optional:
            raise ValidationError(f"{where}: unknown field '{key}'")
    for key in sorted(allowed):
        if key not in data:
            raise ValidationError(f"{where}: missing field '{key}'")
    return


@dataclass(frozen=True)
class Network:
    """An undirected communication graph of nodes hosting capability-typed agents.

    Instances are immutable; build them with :func:`build_network`, which checks
    every invariant. The networkx view used for distance queries is built lazily.
    """

    nodes: tuple[NodeProfile, ...]
    edges: frozenset[tuple[int, int]]
    capability_space: tuple[Capability, ...]

    @cached_property
    def graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(node.id for node in self.nodes)
        graph.add_edges_from(sorted(self.edges))
        return graph

    @cached_property
    def _bfs_cache(self) -> dict[int, dict[int, int]]:
        return {}

    def hop_distances(self, origin: int) -> dict[int, int]:
        """Hop counts from `origin` to every reachable node (memoized)."""
        self.check_node(origin)
        if origin not in self._bfs_cache:
            self._bfs_cache[origin] = dict(nx.single_source_shortest_path_length(self.graph, origin))
        return self._bfs_cache[origin]

    @property
    def node_ids(self) -> list[int]:
        return [node.id for node in self.nodes]

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, node_id: int) -> bool:
        return isinstance(node_id, int) and 0 <= node_id < len(self.nodes)

    def node(self, node_id: int) -> NodeProfile:
        self.check_node(node_id)
        return self.nodes[node_id]

    def check_node(self, node_id: int) -> None:
        if node_id not in self:
            raise InvalidNode(f"Unknown node id: {node_id}")
        return

    def agent(self, node_id: int, agent_id: int) -> Agent:
        for agent in self.node(node_id).agents:
            if agent.id == agent_id:
                return agent
        raise InvalidNode(f"Node {node_id} hosts no agent {agent_id}")

    def domain_capabilities(self, node_id: int) -> set[Capability]:
        """Return the domain-specialization set of a node.

        Nodes generated without an explicit specialization report the union of
        their agents' capabilities.
        """
        node = self.node(node_id)
        if node.domain is not None:
            return set(node.domain)
        return node.capabilities

    def neighbors(self, node_id: int) -> list[int]:
        self.check_node(node_id)
        return sorted(self.graph.neighbors(node_id))

    def connected_component(self, origin: int) -> set[int]:
        self.check_node(origin)
        return set(nx.node_connected_component(self.graph, origin))

    def diameter_from(self, origin: int) -> int:
        """The eccentricity of `origin` inside its connected component."""
        self.check_node(origin)
        return nx.eccentricity(self.graph.subgraph(self.connected_component(origin)), v=origin)

    def to_dict(self) -> dict:
        return {
            "capability_space": list(self.capability_space),
            "nodes": [node.to_dict() for node in self.nodes],
            "edges": [list(edge) for edge in sorted(self.edges)],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Network":
        _check_fields(data, _NETWORK_FIELDS, "network")
        nodes = []
        for n, node_data in enumerate(data["nodes"]):
            where = f"nodes[{n}]"
            _check_fields(node_data, _NODE_FIELDS, where, optional={"domain"})
            agents = []
            for m, agent_data in enumerate(node_data["agents"]):
                _check_fields(agent_data, _AGENT_FIELDS, f"{where}.agents[{m}]")
                agents.append(
                    Agent(
                        id=agent_data["id"],
                        capabilities=tuple(agent_data["capabilities"]),
                        baseline_effort=agent_data["baseline_effort"],
                    )
                )
            domain = node_data.get("domain", None)
            nodes.append(
                NodeProfile(
                    id=node_data["id"],
                    agents=tuple(agents),
                    rho=node_data["rho"],
                    alpha=node_data["alpha"],
                    kappa_cpu=node_data["kappa_cpu"],
                    kappa_lat=node_data["kappa_lat"],
                    comm_fixed=node_data["comm_fixed"],
                    domain=None if domain is None else tuple(domain),
                )
            )
        return build_network(nodes, [tuple(e) for e in data["edges"]], data["capability_space"])


def _validate_node(node: NodeProfile, space: set[Capability]) -> None:
    where = f"node {node.id}"
    if len(node.agents) == 0:
        raise ValidationError(f"{where}: hosts no agent")
    if not node.rho > 0:
        raise ValidationError(f"{where}: rho must be > 0, got {node.rho}")
    if not 0 < node.alpha <= 1:
        raise ValidationError(f"{where}: alpha must lie in (0, 1], got {node.alpha}")
    for name in ("kappa_cpu", "kappa_lat", "comm_fixed"):
        if not getattr(node, name) >= 0:
            raise ValidationError(f"{where}: {name} must be >= 0, got {getattr(node, name)}")
    agent_ids = set()
    for agent in node.agents:
        if agent.id in agent_ids:
            raise ValidationError(f"{where}: duplicate agent id {agent.id}")
        agent_ids.add(agent.id)
        if len(agent.capabilities) == 0:
            raise ValidationError(f"{where}: agent {agent.id} has no capability")
        if len(set(agent.capabilities)) != len(agent.capabilities):
            raise ValidationError(f"{where}: agent {agent.id} repeats a capability")
        for cap in agent.capabilities:
            if cap not in space:
                raise ValidationError(f"{where}: agent {agent.id} has unknown capability '{cap}'")
        if not agent.baseline_effort >= 0:
            raise ValidationError(f"{where}: agent {agent.id} has negative baseline effort")
    if node.domain is not None:
        for cap in node.domain:
            if cap not in space:
                raise ValidationError(f"{where}: unknown domain capability '{cap}'")
    return


def build_network(
    nodes: Iterable[NodeProfile],
    edges: Iterable[tuple[int, int]],
    capability_space: Iterable[Capability],
) -> Network:
    """Validate the given elements and assemble an immutable :class:`Network`.

    :param nodes: Node profiles; their ids must be exactly 0..n-1.
    :type nodes: Iterable[NodeProfile]
    :param edges: Unordered node-id pairs.
    :type edges: Iterable[tuple[int, int]]
    :param capability_space: The global capability labels.
    :type capability_space: Iterable[str]
    :raises ValidationError: naming the first offending element.
    :return: The validated network.
    :rtype: Network
    """
    space = tuple(capability_space)
    if len(set(space)) != len(space):
        dup = next(c for c in space if space.count(c) > 1)
        raise ValidationError(f"Duplicate capability label '{dup}'")

    nodes = sorted(nodes, key=lambda n: n.id)
    seen_ids = set()
    for node in nodes:
        if node.id in seen_ids:
            raise ValidationError(f"Duplicate node id {node.id}")
        seen_ids.add(node.id)
    if seen_ids != set(range(len(nodes))):
        missing = min(set(range(len(nodes))) - seen_ids)
        raise ValidationError(f"Node ids must be dense 0..{len(nodes) - 1}; {missing} is missing")
    if len(nodes) == 0:
        raise ValidationError("A network needs at least one node")
    space_set = set(space)
    for node in nodes:
        _validate_node(node, space_set)

    normalized = set()
    for edge in edges:
        if len(edge) != 2:
            raise ValidationError(f"Edge {edge} is not a pair")
        u, v = edge
        for endpoint in (u, v):
            if not isinstance(endpoint, int) or endpoint not in seen_ids:
                raise ValidationError(f"Edge {tuple(edge)} has dangling endpoint {endpoint}")
        if u == v:
            raise ValidationError(f"Edge {tuple(edge)} is a self-loop")
        normalized.add((min(u, v), max(u, v)))

    network = Network(
        nodes=tuple(nodes),
        edges=frozenset(normalized),
        capability_space=space,
    )
    logger.debug(f"Built network with {len(nodes)} nodes and {len(normalized)} edges")
    return network


def shortest_path_distances(net: Network, origin: int) -> DistanceMap:
    """Unweighted hop distances from `origin`; unreachable nodes map to UNREACHABLE."""
    lengths = net.hop_distances(origin)
    dist = {i: lengths.get(i, UNREACHABLE) for i in net.node_ids}
    return DistanceMap(origin=origin, dist=dist)


def k_hop_neighborhood(net: Network, origin: int, k: int) -> set[int]:
    assert k >= 0, f"hop radius must be >= 0, got {k}"
    return {i for i, d in net.hop_distances(origin).items() if d <= k}


def agents_with_capability(
    net: Network, coalition: Iterable[int], c: Capability
) -> list[tuple[int, int]]:
    found = []
    for node_id in sorted(set(coalition)):
        for agent in net.node(node_id).agents:
            if c in agent.capabilities:
                found.append((node_id, agent.id))
    return sorted(found)


def network_fingerprint(net: Network) -> dict[str, Any]:
    """Summary statistics used in log lines and experiment metadata."""
    degrees = [d for _, d in net.graph.degree()]
    return {
        "nodes": len(net),
        "edges": len(net.edges),
        "mean_degree": sum(degrees) / max(len(degrees), 1),
        "components": nx.number_connected_components(net.graph),
    }
