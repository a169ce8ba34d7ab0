from .network import (
    UNREACHABLE,
    Agent,
    Capability,
    DistanceMap,
    InvalidNode,
    Network,
    NodeProfile,
    ValidationError,
    agents_with_capability,
    build_network,
    k_hop_neighborhood,
    network_fingerprint,
    shortest_path_distances,
)
from .generator import (
    HEALTHCARE_CAPABILITIES,
    CapabilityAssignmentConfig,
    EconRanges,
    InvalidConfig,
    generate_er_network,
    validate_capability_config,
    validate_econ_ranges,
)

__all__ = [
    "UNREACHABLE",
    "Agent",
    "Capability",
    "DistanceMap",
    "InvalidNode",
    "Network",
    "NodeProfile",
    "ValidationError",
    "agents_with_capability",
    "build_network",
    "k_hop_neighborhood",
    "network_fingerprint",
    "shortest_path_distances",
    "HEALTHCARE_CAPABILITIES",
    "CapabilityAssignmentConfig",
    "EconRanges",
    "InvalidConfig",
    "generate_er_network",
    "validate_capability_config",
    "validate_econ_ranges",
]
