from .workflow import AGGREGATORS, ASSIGNERS
from .economics import ALLOCATORS, COMM_MODELS


__VERSION__ = "0.1.0"


__all__ = [
    "AGGREGATORS",
    "ASSIGNERS",
    "ALLOCATORS",
    "COMM_MODELS",
]
