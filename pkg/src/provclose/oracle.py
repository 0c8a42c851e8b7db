"""Brute-force finite-quotient oracle.

Homomorphisms ``F_n -> G`` are enumerated as generator-image assignments.  A
word ``v`` lies in the pro-V closure of ``<w>`` only if no homomorphism to a
group of V maps ``v`` outside the cyclic subgroup generated by the image of
``w``; a catalog of small groups gives evidence for that, never proof.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .errors import CapExceededError, ParseError
from .freeword import Word, letter_name
from .groups import (
    DEFAULT_ELEMENT_CAP,
    FiniteGroup,
    build_cyclic,
    build_permutation_group,
    build_unitriangular,
)
from .variety import Pseudovariety, finite_group_membership

__all__ = [
    "Homomorphism",
    "Witness",
    "OracleReport",
    "Catalog",
    "DEFAULT_HOM_CAP",
    "CATALOG_ENV",
    "enumerate_homs",
    "apply_hom",
    "evaluate_all",
    "separating_hom_in_group",
    "necessary_condition_check",
    "find_separating_quotient",
    "default_catalog",
    "load_catalog",
    "catalog_from_env",
]

DEFAULT_HOM_CAP = 10**7
CATALOG_ENV = "PROVCLOSE_CATALOG"


@dataclass(frozen=True)
class Homomorphism:
    """Images of the basis letters ``a_1..a_rank`` as element indices."""

    rank: int
    images: tuple[int, ...]

    def to_dict(self, G: FiniteGroup) -> dict[str, str]:
        return {letter_name(i + 1, self.rank): G.label(x) for i, x in enumerate(self.images)}


def _hom_count(rank: int, G: FiniteGroup, cap: int) -> int:
    if rank < 1:
        raise ValueError(f"rank must be >= 1, got {rank}")
    count = G.order**rank
    if count > cap:
        raise CapExceededError(
            f"{G.name}: {G.order}^{rank} = {count} homomorphisms exceeds cap {cap}")
    return count


def _index_to_images(t: int, rank: int, n: int) -> tuple[int, ...]:
    return tuple((t // n**j) % n for j in range(rank))


def enumerate_homs(rank: int, G: FiniteGroup, cap: int = DEFAULT_HOM_CAP) -> Iterator[Homomorphism]:
    """All ``|G|^rank`` assignments; the image of ``a_1`` varies fastest."""
    count = _hom_count(rank, G, cap)
    for t in range(count):
        yield Homomorphism(rank, _index_to_images(t, rank, G.order))


def apply_hom(h: Homomorphism, w: Word, G: FiniteGroup) -> int:
    if w.max_index > h.rank:
        raise ValueError(f"word uses generator {w.max_index} beyond hom rank {h.rank}")
    out = 0
    for x in w.letters:
        g = h.images[abs(x) - 1]
        out = G.mul(out, g if x > 0 else G.inv(g))
    return out


@lru_cache(maxsize=64)
def _flat_tables(G: FiniteGroup) -> tuple[np.ndarray, np.ndarray]:
    return G.table.astype(np.intp).ravel(), G.inverses.astype(np.intp)


@lru_cache(maxsize=64)
def _letter_images(G: FiniteGroup, rank: int) -> tuple[np.ndarray, ...]:
    n = G.order
    t = np.arange(n**rank, dtype=np.intp)
    return tuple((t // n**j) % n for j in range(rank))


@lru_cache(maxsize=256)
def _evaluate_cached(letters: tuple[int, ...], G: FiniteGroup, rank: int) -> np.ndarray:
    imgs = _letter_images(G, rank)
    n = G.order
    flat, inv = _flat_tables(G)
    cur = np.zeros(n**rank, dtype=np.intp)
    for x in letters:
        g = imgs[abs(x) - 1]
        if x < 0:
            g = inv[g]
        cur = flat[cur * n + g]
    cur = cur.astype(np.int32)
    cur.setflags(write=False)
    return cur


def evaluate_all(w: Word, G: FiniteGroup, rank: int, cap: int = DEFAULT_HOM_CAP) -> np.ndarray:
    """Image of ``w`` under every homomorphism, in enumeration order."""
    _hom_count(rank, G, cap)
    if w.max_index > rank:
        raise ValueError(f"word uses generator {w.max_index} beyond rank {rank}")
    return _evaluate_cached(w.letters, G, rank)


def _rank_of(*words: Word) -> int:
    return max(w.rank for w in words)


def separating_hom_in_group(v: Word, w: Word, G: FiniteGroup,
                            cap: int = DEFAULT_HOM_CAP) -> Homomorphism | None:
    """First homomorphism mapping ``v`` outside ``<image of w>``, if any."""
    rank = _rank_of(v, w)
    bad = ~G.in_cyclic[evaluate_all(v, G, rank, cap), evaluate_all(w, G, rank, cap)]
    if not bad.any():
        return None
    return Homomorphism(rank, _index_to_images(int(np.argmax(bad)), rank, G.order))


@dataclass(frozen=True)
class Witness:
    group: FiniteGroup
    hom: Homomorphism
    v_image: int
    w_image: int

    def to_dict(self) -> dict:
        G = self.group
        return {"group": G.name, "images": self.hom.to_dict(G),
                "v_image": G.label(self.v_image), "w_image": G.label(self.w_image)}


def _witness(v: Word, w: Word, G: FiniteGroup, h: Homomorphism) -> Witness:
    return Witness(G, h, apply_hom(h, v, G), apply_hom(h, w, G))


class Catalog:
    """Ordered list of finite groups the oracle searches."""

    def __init__(self, groups: Sequence[FiniteGroup]):
        self.groups = list(groups)

    def __iter__(self):
        return iter(self.groups)

    def __len__(self):
        return len(self.groups)

    def __getitem__(self, name: str) -> FiniteGroup:
        for G in self.groups:
            if G.name == name:
                return G
        raise KeyError(name)

    def eligible(self, V: Pseudovariety) -> list[FiniteGroup]:
        return [G for G in self.groups if finite_group_membership(G, V)]


@dataclass
class OracleReport:
    passed: bool
    vacuous: bool
    groups_checked: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    counterexample: Witness | None = None

    def to_dict(self) -> dict:
        return {
            "status": "pass" if self.passed else "fail",
            "vacuous": self.vacuous,
            "groups_checked": list(self.groups_checked),
            "skipped": list(self.skipped),
            "witness": None if self.counterexample is None else self.counterexample.to_dict(),
        }


def necessary_condition_check(candidate: Word, w: Word, V: Pseudovariety,
                              catalog: Catalog, cap: int = DEFAULT_HOM_CAP) -> OracleReport:
    """Check that no catalog group of V separates ``candidate`` from ``<w>``.

    Groups whose homomorphism count exceeds ``cap`` are listed in ``skipped``.
    """
    report = OracleReport(passed=True, vacuous=True)
    for G in catalog.eligible(V):
        try:
            h = separating_hom_in_group(candidate, w, G, cap)
        except CapExceededError as exc:
            report.skipped.append(f"{G.name}: {exc}")
            continue
        report.groups_checked.append(G.name)
        report.vacuous = False
        if h is not None:
            report.passed = False
            report.counterexample = _witness(candidate, w, G, h)
            break
    return report


def find_separating_quotient(v: Word, w: Word, V: Pseudovariety, catalog: Catalog,
                             cap: int = DEFAULT_HOM_CAP) -> Witness | None:
    """First (catalog order, then enumeration order) separating homomorphism.

    ``None`` means inconclusive: no group in the catalog separates.
    """
    for G in catalog.eligible(V):
        try:
            h = separating_hom_in_group(v, w, G, cap)
        except CapExceededError:
            continue
        if h is not None:
            return _witness(v, w, G, h)
    return None


# regular representation of Q8 on {1,-1,i,-i,j,-j,k,-k} = points 1..8
_Q8_GENERATORS = ["(1 3 2 4)(5 7 6 8)", "(1 5 2 6)(3 8 4 7)"]


@lru_cache(maxsize=None)
def default_catalog() -> Catalog:
    groups = [build_cyclic(k) for k in range(2, 17)]
    groups.append(build_permutation_group(3, ["(1 2)", "(1 2 3)"], name="S3"))
    groups.append(build_permutation_group(4, ["(1 2 3 4)", "(1 3)"], name="D4"))
    groups.append(build_permutation_group(8, _Q8_GENERATORS, name="Q8"))
    groups.append(build_permutation_group(4, ["(1 2 3)", "(1 2)(3 4)"], name="A4"))
    groups.extend(build_unitriangular(m) for m in (2, 3, 4, 8, 9))
    return Catalog(groups)


def _build_entry(entry: dict, element_cap: int) -> FiniteGroup:
    kind = entry.get("kind")
    try:
        if kind == "cyclic":
            G = build_cyclic(int(entry["k"]))
        elif kind == "permutation":
            G = build_permutation_group(int(entry["degree"]), list(entry["generators"]),
                                        cap=element_cap)
        elif kind == "unitriangular":
            G = build_unitriangular(int(entry["modulus"]))
        else:
            raise ParseError(f"unknown catalog entry kind {kind!r}")
    except KeyError as exc:
        raise ParseError(f"catalog entry {entry!r} is missing {exc}") from None
    if "name" in entry:
        G.name = str(entry["name"])
    return G


def load_catalog(path: str | os.PathLike, element_cap: int = DEFAULT_ELEMENT_CAP) -> Catalog:
    """Read a JSON list of ``{name, kind, k?, degree?, generators?, modulus?}``."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"catalog {path} is not valid JSON: {exc}") from None
    if not isinstance(data, list):
        raise ParseError(f"catalog {path} must be a JSON list")
    return Catalog([_build_entry(e, element_cap) for e in data])


def catalog_from_env(path: str | None = None) -> Catalog:
    path = path or os.environ.get(CATALOG_ENV)
    return load_catalog(path) if path else default_catalog()
