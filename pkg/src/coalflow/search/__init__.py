from .candidates import (
    Coalition,
    SearchConfig,
    SearchOptions,
    effective_max_coalition_size,
    enumerate_candidates,
)
from .solver import SearchResult, SearchStatus, TracePoint, brute_force_oracle, solve

__all__ = [
    "Coalition",
    "SearchConfig",
    "SearchOptions",
    "effective_max_coalition_size",
    "enumerate_candidates",
    "SearchResult",
    "SearchStatus",
    "TracePoint",
    "brute_force_oracle",
    "solve",
]
