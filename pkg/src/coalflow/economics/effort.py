import math

from coalflow.network import NodeProfile


class DomainError(ValueError):
    """Raised when an economic function is evaluated outside its domain."""


def effectiveness(rho: float, u: float) -> float:
    """Reliability gained from ``u`` effort units: ``1 - exp(-rho * u)``.

    Strictly increasing and concave in ``u``; ``rho`` is the deliberation
    efficiency of the hosting node.
    """
    if not rho > 0:
        raise DomainError(f"rho must be > 0, got {rho}")
    if not u >= 0:
        raise DomainError(f"effort must be >= 0, got {u}")
    return -math.expm1(-rho * u)


def node_cost(profile: NodeProfile, u: float) -> float:
    """Execution cost ``kappa_cpu * u + kappa_lat * u**2`` of a node."""
    if not u >= 0:
        raise DomainError(f"effort must be >= 0, got {u}")
    return profile.kappa_cpu * u + profile.kappa_lat * u * u


def task_reward(beta: float, outcome: float) -> float:
    """Task reward ``beta * ln(1 + outcome)``."""
    if not beta > 0:
        raise DomainError(f"beta must be > 0, got {beta}")
    if not outcome >= 0:
        raise DomainError(f"outcome must be >= 0, got {outcome}")
    reward = beta * math.log1p(outcome)
    if not math.isfinite(reward):
        raise DomainError(f"reward is not finite for beta={beta}, outcome={outcome}")
    return reward
