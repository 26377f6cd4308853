"""Exact counting of arithmetic progressions inside symmetric subsets of Z_q^n.

Modules: ``core`` (weights, shifts, sets), ``oracle`` (brute force),
``count`` (pattern-count parameterisations), ``feasible``, ``modp``,
``encode`` (graph and hypergraph encodings), ``clt``, ``cli``.
"""

from .core import (
    BudgetExceeded,
    ContractError,
    InputError,
    SpaceParams,
    SymmetricSet,
    WeightArrangement,
    WeightTuple,
)
from .count import count_arrangement_full, count_arrangement_restricted, count_product_hits
from .generate import generate_random_set
from .oracle import oracle_count

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "ContractError",
    "InputError",
    "SpaceParams",
    "SymmetricSet",
    "WeightArrangement",
    "WeightTuple",
    "count_arrangement_full",
    "count_arrangement_restricted",
    "count_product_hits",
    "generate_random_set",
    "oracle_count",
]
