"""Exact Renyi entropies of random walks on groups.

Thin wrapper over the C++ core: exact convolution engines, the free-group
and lamplighter specialized solvers, closed-form asymptotics, and series
estimators.
"""

from ._core import (
    Walk,
    coupling_check,
    cumulant,
    distance_distribution,
    free_h_closed,
    free_renyi_exact,
    renyi_entropy,
    sws_h_closed,
    sws_max_atom,
    sws_renyi_exact,
)

__all__ = [
    "Walk",
    "coupling_check",
    "cumulant",
    "distance_distribution",
    "free_h_closed",
    "free_renyi_exact",
    "renyi_entropy",
    "sws_h_closed",
    "sws_max_atom",
    "sws_renyi_exact",
]
