"""Reduced words in a free group of finite rank.

A letter is stored as a signed generator index: ``3`` is ``a_3`` and ``-3`` is
its inverse.  Every :class:`Word` is freely reduced on construction, so two
words are equal exactly when they denote the same group element.
"""
from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import ParseError, RootOfIdentityError

__all__ = [
    "Letter",
    "Word",
    "CyclicDecomposition",
    "RootExp",
    "parse_word",
    "reduce",
    "multiply",
    "invert",
    "power",
    "commutator",
    "cyclic_decompose",
    "root_exp",
    "abelianization",
    "format_word",
    "letter_name",
    "parse_words",
]

_ALPHABET = string.ascii_lowercase


class Letter(NamedTuple):
    index: int
    sign: int

    @classmethod
    def from_signed(cls, x: int) -> "Letter":
        return cls(abs(x), 1 if x > 0 else -1)

    def signed(self) -> int:
        return self.sign * self.index


def _reduce_letters(seq: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in seq:
        if x == 0:
            raise ValueError("generator index must be >= 1")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True, eq=False)
class Word:
    """Immutable freely reduced word.

    ``rank`` is the ambient rank; it never takes part in equality, since a word
    of ``F_n`` is the same element of every ``F_m`` with ``m >= n``.
    """

    letters: tuple[int, ...] = ()
    rank: int | None = None

    def __post_init__(self):
        letters = _reduce_letters(int(x) for x in self.letters)
        used = max((abs(x) for x in letters), default=0)
        rank = self.rank if self.rank is not None else max(used, 1)
        if rank < used:
            raise ValueError(f"rank {rank} is smaller than generator index {used}")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "rank", rank)

    @classmethod
    def identity(cls, rank: int = 1) -> "Word":
        return cls((), rank)

    @classmethod
    def generator(cls, index: int, rank: int | None = None) -> "Word":
        return cls((index,), rank)

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __len__(self):
        return len(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __iter__(self):
        return iter(self.letters)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    @property
    def max_index(self) -> int:
        return max((abs(x) for x in self.letters), default=0)

    def iter_letters(self):
        return (Letter.from_signed(x) for x in self.letters)

    def with_rank(self, rank: int) -> "Word":
        return Word(self.letters, rank)

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, k: int) -> "Word":
        return power(self, k)

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r}, rank={self.rank})"


class CyclicDecomposition(NamedTuple):
    conjugator: Word
    core: Word


class RootExp(NamedTuple):
    root: Word
    exponent: int


def reduce(raw: Iterable[int | Letter], rank: int | None = None) -> Word:
    """Freely reduce a sequence of signed indices (or :class:`Letter` values)."""
    seq = [x.signed() if isinstance(x, Letter) else x for x in raw]
    return Word(tuple(seq), rank)


def _common_rank(*words: Word) -> int:
    return max(w.rank for w in words)


def multiply(x: Word, y: Word) -> Word:
    return Word(x.letters + y.letters, _common_rank(x, y))


def invert(x: Word) -> Word:
    return Word(tuple(-a for a in reversed(x.letters)), x.rank)


def commutator(x: Word, y: Word) -> Word:
    return Word(x.letters + y.letters + invert(x).letters + invert(y).letters,
                _common_rank(x, y))


def cyclic_decompose(w: Word) -> CyclicDecomposition:
    """Split ``w`` as ``g * core * g^-1`` with ``core`` cyclically reduced."""
    s = w.letters
    i, j = 0, len(s) - 1
    while i < j and s[i] == -s[j]:
        i += 1
        j -= 1
    g = Word(s[:i], w.rank)
    core = Word(s[i:j + 1], w.rank)
    return CyclicDecomposition(g, core)


def power(x: Word, k: int) -> Word:
    if k == 0 or x.is_identity:
        return Word.identity(x.rank)
    if k < 0:
        x, k = invert(x), -k
    g, core = cyclic_decompose(x)
    # a cyclically reduced core concatenates with itself without cancellation
    return Word(g.letters + core.letters * k + invert(g).letters, x.rank)


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def root_exp(w: Word) -> RootExp:
    """Primitive root and maximal exponent of a nontrivial word."""
    if w.is_identity:
        raise RootOfIdentityError("no root of the empty word")
    g, core = cyclic_decompose(w)
    c = core.letters
    n = len(c)
    for d in _divisors(n):
        if c[:d] * (n // d) == c:
            root_core = Word(c[:d], w.rank)
            return RootExp(multiply(multiply(g, root_core), invert(g)), n // d)
    raise AssertionError("unreachable: d = n always matches")


def abelianization(w: Word) -> tuple[int, ...]:
    """Signed letter counts ``(f_1(w), ..., f_rank(w))``."""
    v = [0] * w.rank
    for x in w.letters:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(v)


def letter_name(index: int, rank: int) -> str:
    if rank <= len(_ALPHABET):
        return _ALPHABET[index - 1]
    return f"a{index}"


def format_word(w: Word) -> str:
    """Canonical text form, parseable by :func:`parse_word`."""
    if w.is_identity:
        return "1"
    runs: list[list[int]] = []
    for x in w.letters:
        if runs and runs[-1][0] == abs(x) and (runs[-1][1] > 0) == (x > 0):
            runs[-1][1] += 1 if x > 0 else -1
        else:
            runs.append([abs(x), 1 if x > 0 else -1])
    parts = []
    for index, exp in runs:
        name = letter_name(index, w.rank)
        parts.append(name if exp == 1 else f"{name}^{exp}")
    sep = "" if w.rank <= len(_ALPHABET) else " "
    return sep.join(parts)


class _Parser:
    def __init__(self, text: str, rank: int | None):
        self.text = text
        self.pos = 0
        self.rank = rank
        self.style: str | None = None

    def error(self, message, pos=None):
        raise ParseError(message, self.text, self.pos if pos is None else pos)

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> list[int]:
        seq = self.word()
        if self.peek():
            self.error(f"unexpected character {self.peek()!r}")
        return seq

    def word(self) -> list[int]:
        c = self.peek()
        if c == "1":
            start = self.pos
            self.pos += 1
            if self.peek() not in ("", ")", "]", ","):
                self.error("'1' must stand alone as the identity word", start)
            return []
        if c in ("", ")", "]", ","):
            self.error("expected a word")
        seq: list[int] = []
        while self.peek() not in ("", ")", "]", ","):
            seq.extend(self.term())
        return seq

    def term(self) -> list[int]:
        base = self.factor()
        if self.peek() != "^":
            return base
        self.pos += 1
        k = self.integer()
        if k < 0:
            base = [-x for x in reversed(base)]
            k = -k
        return base * k

    def integer(self) -> int:
        self.peek()
        start = self.pos
        if self.text.startswith("-", self.pos):
            self.pos += 1
        digits_start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits_start:
            self.error("malformed exponent literal", start)
        value = int(self.text[start:self.pos])
        if value == 0:
            self.error("zero exponent", start)
        return value

    def factor(self) -> list[int]:
        c = self.peek()
        start = self.pos
        if c == "(":
            self.pos += 1
            seq = self.word()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return seq
        if c == "[":
            self.pos += 1
            x = self.word()
            if self.peek() != ",":
                self.error("expected ','")
            self.pos += 1
            y = self.word()
            if self.peek() != "]":
                self.error("expected ']'")
            self.pos += 1
            return x + y + [-t for t in reversed(x)] + [-t for t in reversed(y)]
        if c and c in _ALPHABET:
            self.pos += 1
            end = self.pos
            while end < len(self.text) and self.text[end].isdigit():
                end += 1
            if c == "a" and end > self.pos:
                style, index = "indexed", int(self.text[self.pos:end])
                if index < 1:
                    self.error("generator index must be >= 1", start)
                self.pos = end
            else:
                style, index = "alpha", _ALPHABET.index(c) + 1
            if self.style is None:
                self.style = style
            elif self.style != style:
                self.error("letter styles 'a..z' and 'a<digits>' must not mix", start)
            if self.rank is not None and index > self.rank:
                self.error(f"generator index {index} exceeds declared rank {self.rank}", start)
            return [index]
        if not c:
            self.error("unexpected end of input")
        self.error(f"unexpected character {c!r}")


def parse_word(text: str, rank: int | None = None) -> Word:
    """Parse the word grammar, e.g. ``"a b^-2"``, ``"(ab)^3"``, ``"[a,b]"``."""
    if rank is not None and rank < 1:
        raise ParseError(f"rank must be >= 1, got {rank}", text)
    seq = _Parser(text, rank).parse()
    return Word(tuple(seq), rank)


def parse_words(texts: Sequence[str], rank: int | None = None) -> list[Word]:
    words = [parse_word(t, rank) for t in texts]
    n = max((w.rank for w in words), default=1)
    return [w.with_rank(n) for w in words]
