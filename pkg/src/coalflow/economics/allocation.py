import math
from abc import ABC, abstractmethod
from typing import Optional

from coalflow.utils import Register


class AllocatorBase(ABC):
    """Splits a non-negative surplus on top of the members' costs."""

    @abstractmethod
    def split(self, costs: dict[int, float], surplus: float) -> dict[int, float]:
        """Return the reward share of every member.

        :param costs: The cost every member must be compensated for.
        :type costs: dict[int, float]
        :param surplus: Reward left after covering all costs, >= 0.
        :type surplus: float
        :return: The allocation, summing to ``sum(costs) + surplus``.
        :rtype: dict[int, float]
        """
        return


ALLOCATORS = Register[AllocatorBase]("allocator")


@ALLOCATORS("equal_split")
class EqualSplitAllocator(AllocatorBase):
    def split(self, costs: dict[int, float], surplus: float) -> dict[int, float]:
        share = surplus / len(costs)
        return {i: c + share for i, c in sorted(costs.items())}


@ALLOCATORS("proportional")
class ProportionalAllocator(AllocatorBase):
    """Surplus proportional to cost; equal split when every cost is zero."""

    def split(self, costs: dict[int, float], surplus: float) -> dict[int, float]:
        total = math.fsum(costs.values())
        if total == 0:
            return EqualSplitAllocator().split(costs, surplus)
        return {i: c + surplus * c / total for i, c in sorted(costs.items())}


def allocate_rewards(
    costs: dict[int, float],
    reward: float,
    scheme: str = "proportional",
) -> Optional[dict[int, float]]:
    """Budget-balanced reward allocation covering every member's cost.

    :param costs: Cost (execution plus communication) of every member.
    :type costs: dict[int, float]
    :param reward: The task reward to distribute.
    :type reward: float
    :param scheme: Registered allocator name, defaults to "proportional".
    :type scheme: str, optional
    :return: The allocation, or None when the costs exceed the reward.
    :rtype: Optional[dict[int, float]]
    """
    assert len(costs) > 0, "Cannot allocate a reward among zero members"
    for i, c in costs.items():
        assert math.isfinite(c) and c >= 0, f"Invalid cost {c} for member {i}"
    total = math.fsum(costs.values())
    if total > reward:
        return None
    return ALLOCATORS.get_item(scheme)().split(costs, reward - total)
