from dataclasses import dataclass, field

import numpy as np

from coalflow.utils import LOGGER_MANAGER

from .network import Agent, Network, NodeProfile, build_network, network_fingerprint

logger = LOGGER_MANAGER.get_logger("coalflow.network.generator")

HEALTHCARE_CAPABILITIES = ["OCR", "RAD", "DX", "VAL", "CONS"]


class InvalidConfig(ValueError):
    """Raised when a generation or experiment config is unusable."""


@dataclass
class CapabilityAssignmentConfig:
    """How capabilities are handed out to generated agents.

    :param capability_space: The global capability labels.
    :param max_caps: Upper bound of the per-agent capability breadth.
    :param agents_per_node: Number of agents hosted at every node.
    :param specialization: If True, every node first draws a domain of
        ``max_caps`` capabilities and its agents draw only from that domain.
    """

    capability_space: list[str] = field(default_factory=lambda: list(HEALTHCARE_CAPABILITIES))
    max_caps: int = 2
    agents_per_node: int = 1
    specialization: bool = False


@dataclass
class EconRanges:
    """Uniform sampling intervals ``[low, high]`` for the node economics."""

    rho: list[float] = field(default_factory=lambda: [1.0, 3.0])
    alpha: list[float] = field(default_factory=lambda: [0.9, 1.0])
    kappa_cpu: list[float] = field(default_factory=lambda: [0.05, 0.3])
    kappa_lat: list[float] = field(default_factory=lambda: [0.01, 0.05])
    comm_fixed: list[float] = field(default_factory=lambda: [0.05, 0.2])
    baseline_effort: list[float] = field(default_factory=lambda: [0.5, 2.0])

    def __post_init__(self):
        validate_econ_ranges(self)
        return


_ECON_FIELDS = ["rho", "alpha", "kappa_cpu", "kappa_lat", "comm_fixed", "baseline_effort"]


def validate_econ_ranges(ranges: EconRanges) -> None:
    for name in _ECON_FIELDS:
        interval = list(getattr(ranges, name))
        if len(interval) != 2:
            raise InvalidConfig(f"econ range '{name}' must be [low, high], got {interval}")
        low, high = interval
        if low > high:
            raise InvalidConfig(f"econ range '{name}' is empty: low {low} > high {high}")
        if low < 0:
            raise InvalidConfig(f"econ range '{name}' must be non-negative, got {interval}")
    if not ranges.rho[0] > 0:
        raise InvalidConfig(f"econ range 'rho' must be strictly positive, got {list(ranges.rho)}")
    if not (ranges.alpha[0] > 0 and ranges.alpha[1] <= 1):
        raise InvalidConfig(f"econ range 'alpha' must lie in (0, 1], got {list(ranges.alpha)}")
    return


def validate_capability_config(cfg: CapabilityAssignmentConfig) -> None:
    space = list(cfg.capability_space)
    if len(space) == 0:
        raise InvalidConfig("capability_space is empty")
    if len(set(space)) != len(space):
        raise InvalidConfig(f"capability_space has duplicates: {space}")
    if cfg.max_caps < 1:
        raise InvalidConfig(f"max_caps must be >= 1, got {cfg.max_caps}")
    if cfg.max_caps > len(space):
        raise InvalidConfig(
            f"max_caps ({cfg.max_caps}) exceeds the capability space size ({len(space)})"
        )
    if cfg.agents_per_node < 1:
        raise InvalidConfig(f"agents_per_node must be >= 1, got {cfg.agents_per_node}")
    return


def _draw_edges(rng: np.random.Generator, n: int, edge_prob: float) -> list[tuple[int, int]]:
    rows, cols = np.triu_indices(n, k=1)
    mask = rng.random(rows.shape[0]) < edge_prob
    return [(int(u), int(v)) for u, v in zip(rows[mask], cols[mask])]


def _draw_subset(rng: np.random.Generator, pool: list[str], max_caps: int) -> list[str]:
    count = int(rng.integers(1, max_caps + 1))
    picked = rng.choice(len(pool), size=count, replace=False)
    # keep capability-space order so serialization is canonical
    return [pool[i] for i in sorted(int(p) for p in picked)]


def generate_er_network(
    n: int,
    edge_prob: float,
    cap_config: CapabilityAssignmentConfig,
    econ_config: EconRanges,
    seed: int,
) -> Network:
    """Generate a seeded Erdos-Renyi network of capability-typed agents.

    One seed drives three independent sub-streams (topology, capabilities,
    economics), so changing e.g. the economic ranges never moves an edge.

    :param n: Number of nodes.
    :type n: int
    :param edge_prob: Independent edge probability for every unordered pair.
    :type edge_prob: float
    :param cap_config: Capability assignment config.
    :type cap_config: CapabilityAssignmentConfig
    :param econ_config: Uniform ranges of the economic parameters.
    :type econ_config: EconRanges
    :param seed: Random seed.
    :type seed: int
    :raises InvalidConfig: for empty ranges or an impossible capability breadth.
    :return: The generated network.
    :rtype: Network
    """
    if n < 1:
        raise InvalidConfig(f"n must be >= 1, got {n}")
    if not 0 <= edge_prob <= 1:
        raise InvalidConfig(f"edge_prob must lie in [0, 1], got {edge_prob}")
    validate_capability_config(cap_config)
    validate_econ_ranges(econ_config)

    topo_seq, caps_seq, econ_seq = np.random.SeedSequence(seed).spawn(3)
    topo_rng = np.random.default_rng(topo_seq)
    caps_rng = np.random.default_rng(caps_seq)
    econ_rng = np.random.default_rng(econ_seq)

    edges = _draw_edges(topo_rng, n, edge_prob)

    space = list(cap_config.capability_space)
    domains: list[list[str] | None] = []
    capabilities: list[list[list[str]]] = []
    for _ in range(n):
        if cap_config.specialization:
            picked = caps_rng.choice(len(space), size=cap_config.max_caps, replace=False)
            domain = [space[i] for i in sorted(int(p) for p in picked)]
        else:
            domain = None
        pool = space if domain is None else domain
        capabilities.append(
            [
                _draw_subset(caps_rng, pool, min(cap_config.max_caps, len(pool)))
                for _ in range(cap_config.agents_per_node)
            ]
        )
        domains.append(domain)

    def uniform(name: str, size: int) -> np.ndarray:
        low, high = getattr(econ_config, name)
        return econ_rng.uniform(low, high, size=size)

    rho = uniform("rho", n)
    alpha = uniform("alpha", n)
    kappa_cpu = uniform("kappa_cpu", n)
    kappa_lat = uniform("kappa_lat", n)
    comm_fixed = uniform("comm_fixed", n)
    efforts = uniform("baseline_effort", n * cap_config.agents_per_node).reshape(
        n, cap_config.agents_per_node
    )

    nodes = []
    for i in range(n):
        agents = tuple(
            Agent(
                id=a,
                capabilities=tuple(capabilities[i][a]),
                baseline_effort=float(efforts[i, a]),
            )
            for a in range(cap_config.agents_per_node)
        )
        nodes.append(
            NodeProfile(
                id=i,
                agents=agents,
                rho=float(rho[i]),
                alpha=float(alpha[i]),
                kappa_cpu=float(kappa_cpu[i]),
                kappa_lat=float(kappa_lat[i]),
                comm_fixed=float(comm_fixed[i]),
                domain=None if domains[i] is None else tuple(domains[i]),
            )
        )
    network = build_network(nodes, edges, space)
    logger.debug(f"Generated network (seed={seed}): {network_fingerprint(network)}")
    return network
