"""Domain-decomposed grid states with ghost layers."""

from .comm import QueueChannel, Team
from .partition import GridPartition, decompose
from .state import (DistributedAlgebra, DistributedState, gather_to_root, halo_exchange,
                    reduce_max_abs)

__all__ = [
    "DistributedAlgebra",
    "DistributedState",
    "GridPartition",
    "QueueChannel",
    "Team",
    "decompose",
    "gather_to_root",
    "halo_exchange",
    "reduce_max_abs",
]
