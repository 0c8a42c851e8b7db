"""Descriptors for the supported pseudovarieties of finite groups.

Each descriptor answers two questions: is the cyclic group ``C_k`` a member,
and is a concrete :class:`~provclose.groups.FiniteGroup` a member.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .arith import PrimeSet, factorize, is_prime, parse_prime_set, prime_part
from .errors import ParseError, UnsupportedCheckError
from .groups import FiniteGroup

__all__ = [
    "Pseudovariety",
    "parse_variety",
    "cyclic_membership",
    "finite_group_membership",
    "KINDS",
]

KINDS = ("G", "GP", "O", "N", "S", "Su", "Ab", "Vp", "custom")

_CONTAINS_N = frozenset({"G", "N", "S", "Su"})


@dataclass(frozen=True)
class Pseudovariety:
    kind: str
    primes: PrimeSet | None = None
    m: int | None = None
    p: int | None = None
    name: str | None = None
    predicate: Callable[[int], bool] | None = field(default=None, compare=False, repr=False)
    declared_extension_closed: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown pseudovariety kind {self.kind!r}")
        if self.kind in ("GP", "O") and self.primes is None:
            raise ValueError(f"{self.kind} needs a prime set")
        if self.kind == "Ab" and (self.m is None or self.m < 1):
            raise ValueError("Ab(m) needs m >= 1")
        if self.kind == "Vp" and (self.p is None or not is_prime(self.p)):
            raise ValueError(f"V_p needs a prime p, got {self.p}")
        if self.kind == "custom" and self.predicate is None:
            raise ValueError("a custom descriptor needs a C_k membership predicate")

    @classmethod
    def all_finite(cls):
        return cls("G")

    @classmethod
    def prime_set(cls, P: PrimeSet | int, *more: int):
        if isinstance(P, int):
            P = PrimeSet.of(P, *more)
        return cls("GP", primes=P)

    @classmethod
    def odd(cls):
        return cls("O", primes=PrimeSet.excluding(2))

    @classmethod
    def nilpotent(cls):
        return cls("N")

    @classmethod
    def solvable(cls):
        return cls("S")

    @classmethod
    def supersolvable(cls):
        return cls("Su")

    @classmethod
    def abelian(cls, m: int):
        return cls("Ab", m=m)

    @classmethod
    def vp(cls, p: int):
        return cls("Vp", p=p)

    @classmethod
    def custom(cls, name: str, predicate: Callable[[int], bool], extension_closed: bool = False):
        """User-supplied ``C_k`` predicate.  Nothing about it is verified."""
        return cls("custom", name=name, predicate=predicate,
                   declared_extension_closed=extension_closed)

    @property
    def extension_closed(self) -> bool:
        if self.kind in ("G", "GP", "O", "S"):
            return True
        if self.kind == "Ab":
            return self.m == 1
        if self.kind == "Vp":
            # V_2 = G_2
            return self.p == 2
        if self.kind == "custom":
            return self.declared_extension_closed
        return False

    @property
    def contains_all_abelian(self) -> bool:
        return self.kind in _CONTAINS_N

    @property
    def contains_N(self) -> bool:
        return self.kind in _CONTAINS_N

    @property
    def verified(self) -> bool:
        return self.kind != "custom"

    def __str__(self):
        if self.kind == "GP":
            return f"GP:{self.primes}"
        if self.kind == "Ab":
            return f"Ab:{self.m}"
        if self.kind == "Vp":
            return f"Vp:{self.p}"
        if self.kind == "custom":
            return self.name or "custom"
        return self.kind


def parse_variety(text: str) -> Pseudovariety:
    """Parse ``G``, ``GP:2,3``, ``GP:!2``, ``O``, ``N``, ``S``, ``Su``, ``Ab:6``, ``Vp:3``."""
    s = text.strip()
    simple = {"G": Pseudovariety.all_finite, "O": Pseudovariety.odd,
              "N": Pseudovariety.nilpotent, "S": Pseudovariety.solvable,
              "Su": Pseudovariety.supersolvable}
    if s in simple:
        return simple[s]()
    head, sep, arg = s.partition(":")
    if not sep or not arg.strip():
        raise ParseError(f"unknown pseudovariety descriptor {text!r}", text)
    if head == "GP":
        return Pseudovariety.prime_set(parse_prime_set(arg))
    if head in ("Ab", "Vp"):
        try:
            n = int(arg)
        except ValueError:
            raise ParseError(f"malformed integer in {text!r}", text) from None
        try:
            return Pseudovariety.abelian(n) if head == "Ab" else Pseudovariety.vp(n)
        except ValueError as exc:
            raise ParseError(str(exc), text) from None
    raise ParseError(f"unknown pseudovariety descriptor {text!r}", text)


def cyclic_membership(k: int, V: Pseudovariety) -> bool:
    """Decide whether the cyclic group of order ``k`` lies in ``V``."""
    if k < 1:
        raise ValueError(f"cyclic group order must be >= 1, got {k}")
    if V.kind == "G" or V.kind in _CONTAINS_N:
        return True
    if V.kind in ("GP", "O"):
        return all(q in V.primes for q in factorize(k))
    if V.kind == "Ab":
        return V.m % k == 0
    if V.kind == "Vp":
        # C_k = C_{p^a} x C_q: normal Sylow p, quotient C_q needs q | p-1
        q = k // prime_part(k, V.p)
        return (V.p - 1) % q == 0
    return bool(V.predicate(k))


def finite_group_membership(G: FiniteGroup, V: Pseudovariety) -> bool:
    """Decide membership of a concrete finite group."""
    if V.kind == "G":
        return True
    if V.kind == "Su":
        raise UnsupportedCheckError("unsupported check: Su membership needs a chief series")
    if V.kind == "custom":
        raise UnsupportedCheckError(f"unsupported check: {V} has no finite-group test")
    flags = G.flags
    if V.kind in ("GP", "O"):
        return all(q in V.primes for q in flags.factorization)
    if V.kind == "N":
        return flags.nilpotent
    if V.kind == "S":
        return flags.solvable
    if V.kind == "Ab":
        return flags.abelian and V.m % flags.exponent == 0
    if V.kind == "Vp":
        quotient = flags.quotient_by_sylow(V.p)
        if quotient is None:
            return False
        _, abelian, exponent = quotient
        return abelian and (V.p - 1) % exponent == 0
    raise AssertionError(V.kind)
