import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Iterable

from coalflow.network import InvalidNode, Network
from coalflow.utils import Register

from .effort import DomainError


class CommModelBase(ABC):
    """Coordination overhead a node pays for taking part in a coalition."""

    def __call__(self, net: Network, coalition: Iterable[int], i: int) -> float:
        coalition = sorted(set(coalition))
        if i not in coalition:
            raise InvalidNode(f"Node {i} is not a member of coalition {coalition}")
        net.check_node(i)
        if len(coalition) == 1:
            return 0.0
        return self.cost(net, coalition, i)

    @abstractmethod
    def cost(self, net: Network, coalition: list[int], i: int) -> float:
        """Overhead of node `i` inside a coalition with at least one partner."""
        return


COMM_MODELS = Register[CommModelBase]("comm_model")


@COMM_MODELS("fixed_per_node")
class FixedPerNodeComm(CommModelBase):
    def cost(self, net: Network, coalition: list[int], i: int) -> float:
        return net.node(i).comm_fixed


@dataclass
class DistanceCommConfig:
    gamma0: float = 0.1


@COMM_MODELS("distance_proportional", config_class=DistanceCommConfig)
class DistanceProportionalComm(CommModelBase):
    """Pairwise overhead ``gamma0 * d(i, j)`` summed over the partners of `i`."""

    def __init__(self, cfg: DistanceCommConfig = None) -> None:
        cfg = cfg or DistanceCommConfig()
        if not cfg.gamma0 >= 0:
            raise DomainError(f"gamma0 must be >= 0, got {cfg.gamma0}")
        self.gamma0 = cfg.gamma0
        return

    def cost(self, net: Network, coalition: list[int], i: int) -> float:
        dist = net.hop_distances(i)
        total = 0.0
        for j in coalition:
            if j == i:
                continue
            if j not in dist:
                return math.inf
            total += self.gamma0 * dist[j]
        return total


CommModelConfig = COMM_MODELS.make_config(
    default="fixed_per_node", config_name="CommModelConfig"
)


def load_comm_model(cfg: CommModelConfig = None) -> CommModelBase:  # type: ignore
    if cfg is None:
        return FixedPerNodeComm()
    return COMM_MODELS.load(cfg)


def comm_cost(net: Network, coalition: Iterable[int], i: int, model: CommModelBase) -> float:
    return model(net, coalition, i)
