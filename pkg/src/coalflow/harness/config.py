import math
from dataclasses import dataclass, field

from omegaconf import OmegaConf
from omegaconf.errors import OmegaConfBaseException

from coalflow.network import (
    HEALTHCARE_CAPABILITIES,
    CapabilityAssignmentConfig,
    EconRanges,
    InvalidConfig,
    validate_capability_config,
)
from coalflow.search import SearchConfig
from coalflow.utils import LOGGER_MANAGER, Choices
from coalflow.workflow import AGGREGATION_CHOICES

logger = LOGGER_MANAGER.get_logger("coalflow.harness")


@dataclass
class ExperimentConfig:
    """Settings shared by the case study and the capability-breadth sweep.

    :param n_nodes: Number of nodes of every generated network.
    :param edge_prob: Erdos-Renyi edge probability.
    :param capability_space: Capability labels; the case-study task chains them in this order.
    :param max_caps: Per-agent capability breadth used by the case study.
    :param agents_per_node: Agents hosted by each node.
    :param specialization: Restrict each node's agents to a random capability domain.
    :param max_caps_values: Capability breadths swept by the Monte-Carlo study.
    :param trials: Monte-Carlo repetitions per breadth value.
    :param seed: Master seed; every network is derived from it.
    :param econ: Uniform sampling ranges of the node economics.
    :param beta: Reward scale of the task.
    :param aggregation: How terminal sub-task outputs combine into the task outcome.
    :param search: Coalition search options, including ``k_max``.
    :param num_workers: Processes used by the sweep; 1 runs trials in-process.
    :param log_interval: Sweep progress is logged every this many trials.
    """

    n_nodes: int = 40
    edge_prob: float = 0.15
    capability_space: list[str] = field(default_factory=lambda: list(HEALTHCARE_CAPABILITIES))
    max_caps: int = 2
    agents_per_node: int = 1
    specialization: bool = False
    max_caps_values: list[int] = field(default_factory=lambda: [1, 2, 3, 4, 5])
    trials: int = 200
    seed: int = 0
    econ: EconRanges = field(default_factory=EconRanges)
    beta: float = 10.0
    aggregation: Choices(AGGREGATION_CHOICES) = "product"  # type: ignore
    search: SearchConfig = field(default_factory=SearchConfig)
    num_workers: int = 1
    log_interval: int = 50

    def __post_init__(self):
        validate_experiment_config(self)
        return

    def capability_config(self, max_caps: int = None) -> CapabilityAssignmentConfig:
        return CapabilityAssignmentConfig(
            capability_space=list(self.capability_space),
            max_caps=self.max_caps if max_caps is None else max_caps,
            agents_per_node=self.agents_per_node,
            specialization=self.specialization,
        )


def validate_experiment_config(cfg: ExperimentConfig) -> None:
    if cfg.n_nodes < 1:
        raise InvalidConfig(f"n_nodes must be >= 1, got {cfg.n_nodes}")
    if not 0 <= cfg.edge_prob <= 1:
        raise InvalidConfig(f"edge_prob must lie in [0, 1], got {cfg.edge_prob}")
    if cfg.trials < 1:
        raise InvalidConfig(f"trials must be >= 1, got {cfg.trials}")
    if cfg.seed < 0:
        raise InvalidConfig(f"seed must be >= 0, got {cfg.seed}")
    if not (cfg.beta > 0 and math.isfinite(cfg.beta)):
        raise InvalidConfig(f"beta must be finite and > 0, got {cfg.beta}")
    if len(cfg.max_caps_values) == 0:
        raise InvalidConfig("max_caps_values is empty")
    for x in [cfg.max_caps] + list(cfg.max_caps_values):
        validate_capability_config(cfg.capability_config(x))
    if cfg.num_workers < 1:
        raise InvalidConfig(f"num_workers must be >= 1, got {cfg.num_workers}")
    if cfg.log_interval < 1:
        raise InvalidConfig(f"log_interval must be >= 1, got {cfg.log_interval}")
    if cfg.search.k_max < 1:
        raise InvalidConfig(f"search.k_max must be >= 1, got {cfg.search.k_max}")
    if cfg.search.max_coalition_size is not None and cfg.search.max_coalition_size < 1:
        raise InvalidConfig(
            f"search.max_coalition_size must be >= 1, got {cfg.search.max_coalition_size}"
        )
    return


def _header() -> str:
    lines = ["# coalflow experiment config", "#"]
    doc = ExperimentConfig.__doc__.split(":param ", 1)[1]
    for entry in doc.split(":param "):
        name, text = entry.split(":", 1)
        text = " ".join(text.split())
        lines.append(f"# {name}: {text}")
    lines.append("#")
    lines.append("# econ ranges are [low, high] intervals sampled uniformly per node (per agent for baseline_effort).")
    return "\n".join(lines) + "\n"


def emit_default_config(path: str) -> None:
    """Write the default :class:`ExperimentConfig` as commented YAML."""
    cfg = OmegaConf.structured(ExperimentConfig)
    with open(path, "w", encoding="utf-8") as f:
        f.write(_header())
        f.write(OmegaConf.to_yaml(cfg))
    logger.debug(f"Default experiment config written to {path}")
    return


def load_experiment_config(path: str) -> ExperimentConfig:
    """Load a YAML experiment config on top of the defaults.

    :param path: The YAML file.
    :type path: str
    :raises InvalidConfig: for unknown keys, ill-typed values or violated invariants.
    :return: The validated config.
    :rtype: ExperimentConfig
    """
    try:
        loaded = OmegaConf.load(path)
        merged = OmegaConf.merge(OmegaConf.structured(ExperimentConfig), loaded)
        cfg = OmegaConf.to_object(merged)
    except InvalidConfig:
        raise
    except OmegaConfBaseException as exc:
        raise InvalidConfig(f"{path}: {exc}") from exc
    return cfg


def to_plain(cfg: ExperimentConfig) -> dict:
    """A primitive-only copy of the config, safe to send to worker processes."""
    return OmegaConf.to_container(OmegaConf.structured(cfg), enum_to_str=True)


def from_plain(data: dict) -> ExperimentConfig:
    return OmegaConf.to_object(OmegaConf.merge(OmegaConf.structured(ExperimentConfig), data))
