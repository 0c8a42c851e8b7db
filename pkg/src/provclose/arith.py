"""Small-integer arithmetic: factorization, prime sets and prime-set parts."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import TYPE_CHECKING

from .errors import NotExtensionClosedError, ParseError

if TYPE_CHECKING:
    from .variety import Pseudovariety

__all__ = [
    "factorize",
    "is_prime",
    "prime_part",
    "PrimeSet",
    "parse_prime_set",
    "nu",
    "max_divisor_in_variety",
    "divisors",
    "lcm",
]


def factorize(k: int) -> dict[int, int]:
    """Prime factorization by trial division, ``{prime: multiplicity}``."""
    if k <= 0:
        raise ValueError(f"can only factorize positive integers, got {k}")
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while k % p == 0:
            out[p] = out.get(p, 0) + 1
            k //= p
    # 2,3,5 wheel: candidates coprime to 30
    steps = (4, 2, 4, 2, 4, 6, 2, 6)
    d, i = 7, 0
    while d * d <= k:
        while k % d == 0:
            out[d] = out.get(d, 0) + 1
            k //= d
        d += steps[i]
        i = (i + 1) % 8
    if k > 1:
        out[k] = out.get(k, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def divisors(n: int) -> list[int]:
    out = [1]
    for p, a in factorize(n).items():
        out = [d * p**i for d in out for i in range(a + 1)]
    return sorted(out)


def lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


def prime_part(k: int, p: int) -> int:
    """The largest power of ``p`` dividing ``k``."""
    part = 1
    while k % p == 0:
        k //= p
        part *= p
    return part


@dataclass(frozen=True)
class PrimeSet:
    """Either a finite set of primes or the complement of one.

    ``PrimeSet({2}, complement=True)`` is the set of odd primes.
    """

    primes: frozenset[int]
    complement: bool = False

    def __post_init__(self):
        object.__setattr__(self, "primes", frozenset(int(p) for p in self.primes))
        bad = sorted(p for p in self.primes if not is_prime(p))
        if bad:
            raise ValueError(f"not prime: {bad}")
        if not self.complement and not self.primes:
            raise ValueError("an explicit prime set must be nonempty")

    @classmethod
    def of(cls, *primes: int) -> "PrimeSet":
        return cls(frozenset(primes))

    @classmethod
    def excluding(cls, *primes: int) -> "PrimeSet":
        return cls(frozenset(primes), complement=True)

    def __contains__(self, p: int) -> bool:
        return (p in self.primes) != self.complement

    def perp(self) -> "PrimeSet":
        return PrimeSet(self.primes, not self.complement)

    def issubset(self, other: "PrimeSet") -> bool:
        if not self.complement and not other.complement:
            return self.primes <= other.primes
        if not self.complement:
            return not (self.primes & other.primes)
        if not other.complement:
            return False
        return other.primes <= self.primes

    def __str__(self):
        body = ",".join(str(p) for p in sorted(self.primes))
        return f"!{body}" if self.complement else body


def parse_prime_set(text: str) -> PrimeSet:
    """``"2,3"`` (explicit), ``"!2"`` (complement) or ``"odd"``."""
    s = text.strip()
    if s == "odd":
        return PrimeSet.excluding(2)
    complement = s.startswith("!")
    if complement:
        s = s[1:]
    try:
        primes = [int(t) for t in s.split(",") if t.strip()]
    except ValueError:
        raise ParseError(f"malformed prime set {text!r}", text) from None
    if not primes and not complement:
        raise ParseError("empty prime set", text)
    try:
        return PrimeSet(frozenset(primes), complement)
    except ValueError as exc:
        raise ParseError(f"invalid prime set {text!r}: {exc}", text) from None


def nu(k: int, P: PrimeSet | int) -> int:
    """Largest divisor of ``k`` all of whose prime factors lie in ``P``."""
    if k < 1:
        raise ValueError(f"nu needs k >= 1, got {k}")
    if isinstance(P, int):
        return prime_part(k, P)
    listed = prod(prime_part(k, p) for p in P.primes)
    return k // listed if P.complement else listed


def max_divisor_in_variety(e: int, V: "Pseudovariety") -> int:
    """max{k : k | e and C_k in V}; only meaningful for extension-closed V."""
    if not V.extension_closed:
        raise NotExtensionClosedError(f"{V} is not extension-closed")
    from .variety import cyclic_membership

    return max(k for k in divisors(e) if cyclic_membership(k, V))
