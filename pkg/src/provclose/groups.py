"""Finite groups given by a full multiplication table.

Elements are the integers ``0..N-1`` with ``0`` the identity.  Construction
validates the group laws, after which a group is treated as immutable.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .arith import factorize, lcm, prime_part
from .errors import CapExceededError, GroupLawError, ParseError

__all__ = [
    "FiniteGroup",
    "GroupFlags",
    "build_cyclic",
    "build_permutation_group",
    "build_unitriangular",
    "parse_cycles",
    "format_cycles",
    "check_group_laws",
    "structure_flags",
    "DEFAULT_ELEMENT_CAP",
]

DEFAULT_ELEMENT_CAP = 5000


class FiniteGroup:
    def __init__(self, table, name: str, labels=None, generators=None,
                 provenance: dict | None = None, check: bool = True):
        table = np.asarray(table, dtype=np.int32)
        n = table.shape[0]
        if table.ndim != 2 or table.shape != (n, n) or n == 0:
            raise GroupLawError(f"{name}: composition table must be a nonempty square")
        if table.min() < 0 or table.max() >= n:
            raise GroupLawError(f"{name}: table entries out of range")
        table.setflags(write=False)
        self.table = table
        self.name = name
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        self.generators = tuple(generators) if generators is not None else None
        self.provenance = dict(provenance or {})
        rows, cols = np.nonzero(table == 0)
        if len(rows) != n or not np.array_equal(np.sort(rows), np.arange(n)):
            raise GroupLawError(f"{name}: some element has no unique inverse")
        inverses = np.empty(n, dtype=np.int32)
        inverses[rows] = cols
        inverses.setflags(write=False)
        self.inverses = inverses
        if check:
            check_group_laws(self)

    def __repr__(self):
        return f"<FiniteGroup {self.name} of order {self.order}>"

    def __len__(self):
        return self.order

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def inv(self, x: int) -> int:
        return int(self.inverses[x])

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv(x), -k
        out = 0
        while k:
            if k & 1:
                out = self.mul(out, x)
            x = self.mul(x, x)
            k >>= 1
        return out

    def label(self, x: int) -> str:
        return self.labels[x]

    @cached_property
    def flags(self) -> "GroupFlags":
        return structure_flags(self)

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        idx = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        cur = idx.copy()
        k = 1
        while (orders == 0).any():
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            cur = self.table[cur, idx]
            k += 1
            if k > n + 1:
                raise GroupLawError(f"{self.name}: element order exceeds group order")
        orders.setflags(write=False)
        return orders

    @cached_property
    def exponent(self) -> int:
        return lcm(*(int(o) for o in np.unique(self.element_orders)))

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def in_cyclic(self) -> np.ndarray:
        """Boolean matrix: ``in_cyclic[x, y]`` iff ``x`` lies in ``<y>``."""
        n = self.order
        idx = np.arange(n)
        out = np.zeros((n, n), dtype=bool)
        cur = np.zeros(n, dtype=np.int32)
        for _ in range(self.exponent):
            out[cur, idx] = True
            cur = self.table[cur, idx]
        out.setflags(write=False)
        return out

    def generate_subgroup(self, gens) -> np.ndarray:
        gens = np.unique(np.asarray(list(gens), dtype=np.int32))
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        frontier = np.array([0], dtype=np.int32)
        while frontier.size and gens.size:
            new = np.unique(self.table[frontier][:, gens].ravel())
            new = new[~mask[new]]
            mask[new] = True
            frontier = new
        return np.flatnonzero(mask)

    def commutators(self, subset) -> np.ndarray:
        xs = np.asarray(subset, dtype=np.int32)
        xy = self.table[xs[:, None], xs[None, :]]
        ix = self.inverses[xs]
        ixiy = self.table[ix[:, None], ix[None, :]]
        return np.unique(self.table[xy, ixiy])


def check_group_laws(G: FiniteGroup, full_limit: int = 64, samples: int = 100_000,
                     seed: int = 0) -> None:
    """Identity, inverse and associativity checks.

    Associativity is checked on all triples up to ``full_limit`` elements and
    on ``samples`` random triples above that.
    """
    T = G.table
    n = G.order
    idx = np.arange(n)
    if not (np.array_equal(T[0], idx) and np.array_equal(T[:, 0], idx)):
        raise GroupLawError(f"{G.name}: element 0 is not a two-sided identity")
    if not (np.all(T[idx, G.inverses] == 0) and np.all(T[G.inverses, idx] == 0)):
        raise GroupLawError(f"{G.name}: inverse table is not two-sided")
    if n <= full_limit:
        lhs = T[T[:, :, None], idx[None, None, :]]
        rhs = T[idx[:, None, None], T[None, :, :]]
        ok = np.array_equal(lhs, rhs)
    else:
        rng = np.random.default_rng(seed)
        x, y, z = rng.integers(0, n, size=(3, samples))
        ok = np.array_equal(T[T[x, y], z], T[x, T[y, z]])
    if not ok:
        raise GroupLawError(f"{G.name}: operation is not associative")


def _cyclic_label(i: int) -> str:
    if i == 0:
        return "1"
    return "x" if i == 1 else f"x^{i}"


def build_cyclic(k: int) -> FiniteGroup:
    if k < 1:
        raise ValueError(f"cyclic group order must be >= 1, got {k}")
    idx = np.arange(k)
    table = (idx[:, None] + idx[None, :]) % k
    return FiniteGroup(table, f"C{k}", labels=[_cyclic_label(i) for i in range(k)],
                       generators=[1 % k], provenance={"kind": "cyclic", "k": k})


def build_unitriangular(m: int) -> FiniteGroup:
    """3x3 upper unitriangular matrices over Z/m.

    Element ``x*m*m + y*m + z`` is the matrix with entries (1,2)=x, (2,3)=y,
    (1,3)=z, labelled ``U(x,y,z)``.
    """
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    n = m**3
    e = np.arange(n)
    x, y, z = e // (m * m), (e // m) % m, e % m
    px = (x[:, None] + x[None, :]) % m
    py = (y[:, None] + y[None, :]) % m
    pz = (z[:, None] + z[None, :] + x[:, None] * y[None, :]) % m
    table = px * m * m + py * m + pz
    labels = ["1" if i == 0 else f"U({a},{b},{c})" for i, a, b, c in zip(e, x, y, z)]
    gens = [m * m % n, m % n] if m > 1 else [0]
    return FiniteGroup(table, f"UT3(Z/{m})", labels=labels, generators=gens,
                       provenance={"kind": "unitriangular", "modulus": m})


def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    """Parse 1-based cycle notation into a 0-based image tuple.

    Points may be separated by spaces or commas; with no separators and
    ``degree <= 9`` each digit is a point, so ``"(123)(45)"`` works.
    """
    s = text.strip()
    perm = list(range(degree))
    if s in ("", "()", "1", "id"):
        return tuple(perm)
    if not re.fullmatch(r"(\([\d\s,]*\)\s*)+", s):
        raise ParseError(f"malformed cycle notation {text!r}", text)
    seen: set[int] = set()
    for body in re.findall(r"\(([^)]*)\)", s):
        if re.search(r"[\s,]", body.strip()):
            pts = [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
        elif degree <= 9:
            pts = [int(ch) for ch in body]
        else:
            pts = [int(body)] if body else []
        for p in pts:
            if not 1 <= p <= degree:
                raise ParseError(f"point {p} outside 1..{degree}", text)
            if p in seen:
                raise ParseError(f"point {p} repeated in {text!r}", text)
            seen.add(p)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            perm[a - 1] = b - 1
    return tuple(perm)


def format_cycles(perm) -> str:
    seen, cycles = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x + 1)
            x = perm[x]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "1"


def build_permutation_group(degree: int, generators, name: str | None = None,
                            cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    """Breadth-first closure of permutation generators.

    Generators are cycle-notation strings or 0-based image sequences.  The
    product ``x*y`` applies ``x`` first, then ``y``.
    """
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    gens = []
    for g in generators:
        perm = parse_cycles(g, degree) if isinstance(g, str) else tuple(int(t) for t in g)
        if sorted(perm) != list(range(degree)):
            raise ValueError(f"not a permutation of degree {degree}: {g!r}")
        gens.append(perm)
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(g[x[i]] for i in range(degree))
            if y not in index:
                if len(elements) >= cap:
                    raise CapExceededError(f"permutation group exceeds element cap {cap}")
                index[y] = len(elements)
                elements.append(y)
                queue.append(y)
    P = np.array(elements, dtype=np.int64)
    n = len(elements)
    radix = degree ** np.arange(degree, dtype=np.int64)
    keys = P @ radix
    order = np.argsort(keys)
    sorted_keys = keys[order]
    table = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        # row i: (x_i * x_j)(t) = x_j[x_i[t]]
        comp = P[:, P[i]] @ radix
        table[i] = order[np.searchsorted(sorted_keys, comp)]
    labels = [format_cycles(p) for p in elements]
    gen_idx = [index[g] for g in gens]
    return FiniteGroup(table, name or f"Perm{degree}[{n}]", labels=labels, generators=gen_idx,
                       provenance={"kind": "permutation", "degree": degree,
                                   "generators": [format_cycles(g) for g in gens]})


@dataclass(frozen=True)
class GroupFlags:
    order: int
    factorization: dict
    abelian: bool
    exponent: int
    sylow_normal: dict
    nilpotent: bool
    derived_series: tuple
    solvable: bool
    element_orders: np.ndarray = field(repr=False, compare=False)
    derived_subgroup: frozenset = field(repr=False, compare=False)

    def p_elements(self, p: int) -> np.ndarray:
        rest = self.element_orders.astype(np.int64)
        while True:
            divisible = rest % p == 0
            if not divisible.any():
                break
            rest = np.where(divisible, rest // p, rest)
        return np.flatnonzero(rest == 1)

    def sylow_is_normal(self, p: int) -> bool:
        return len(self.p_elements(p)) == prime_part(self.order, p)

    def quotient_by_sylow(self, p: int) -> tuple[bool, bool, int] | None:
        """(normal, abelian quotient, quotient exponent) for the Sylow p-subgroup.

        Returns None when the Sylow p-subgroup is not normal.  The quotient
        exponent is the p'-part of the group exponent.
        """
        if not self.sylow_is_normal(p):
            return None
        P = set(int(x) for x in self.p_elements(p))
        quotient_abelian = self.derived_subgroup <= P
        return True, quotient_abelian, self.exponent // prime_part(self.exponent, p)


def structure_flags(G: FiniteGroup) -> GroupFlags:
    order = G.order
    fac = factorize(order)
    orders = G.element_orders
    sylow = {}
    for p, a in fac.items():
        count = sum(1 for o in orders if prime_part(int(o), p) == o)
        sylow[p] = count == p**a
    series = [order]
    current = np.arange(order)
    derived = None
    while True:
        nxt = G.generate_subgroup(G.commutators(current))
        if derived is None:
            derived = frozenset(int(x) for x in nxt)
        if len(nxt) == len(current):
            break
        series.append(len(nxt))
        current = nxt
    return GroupFlags(
        order=order,
        factorization=fac,
        abelian=G.is_abelian,
        exponent=G.exponent,
        sylow_normal=sylow,
        nilpotent=all(sylow.values()),
        derived_series=tuple(series),
        solvable=series[-1] == 1,
        element_orders=orders,
        derived_subgroup=derived,
    )

