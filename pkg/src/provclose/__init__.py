"""Closures of cyclic subgroups of free groups in pro-V topologies."""

from .arith import PrimeSet, factorize, nu, parse_prime_set
from .closure import (
    ClosureResult,
    closure_cyclic,
    h_value,
    is_closed_cyclic,
    isolation_witness,
    membership_in_closure,
    root_exp_in_K,
    vtog_consistency_check,
)
from .errors import ProvcloseError
from .freeword import Word, abelianization, cyclic_decompose, parse_word, root_exp
from .variety import Pseudovariety, cyclic_membership, finite_group_membership, parse_variety

__version__ = "0.1.0"

__all__ = [
    "PrimeSet",
    "factorize",
    "nu",
    "parse_prime_set",
    "ClosureResult",
    "closure_cyclic",
    "h_value",
    "is_closed_cyclic",
    "isolation_witness",
    "membership_in_closure",
    "root_exp_in_K",
    "vtog_consistency_check",
    "ProvcloseError",
    "Word",
    "abelianization",
    "cyclic_decompose",
    "parse_word",
    "root_exp",
    "Pseudovariety",
    "cyclic_membership",
    "finite_group_membership",
    "parse_variety",
]
