"""Ranked alphabets, words, and the lexicographic order with prefix-incomparability.

Letters are integer ranks 1..l over an alphabet of size l.  Comparison of two
words is decided at the first differing position; if one word is a proper
prefix of the other the pair is *incomparable* (no outcome is defined by the
order).  A separate sentinel ``BOTTOM`` compares below every word.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import InputError, RangeError

_ASCII = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True, slots=True)
class Alphabet:
    """A totally ordered alphabet a_1 < a_2 < ... < a_size."""

    size: int

    def __post_init__(self):
        if self.size < 1:
            raise InputError(f"alphabet size must be >= 1, got {self.size}")

    def letter_text(self, rank: int) -> str:
        if not 1 <= rank <= self.size:
            raise InputError(f"rank {rank} outside alphabet of size {self.size}")
        if self.size <= 26:
            return _ASCII[rank - 1]
        return str(rank)


class LexOutcome(enum.Enum):
    EQUAL = "equal"
    LESS = "less"
    GREATER = "greater"
    INCOMPARABLE_PREFIX = "incomparable-prefix"


@dataclass(frozen=True, slots=True)
class Word:
    """An immutable word: a tuple of letter ranks over an explicit alphabet."""

    letters: tuple[int, ...]
    alphabet: Alphabet

    def __post_init__(self):
        l = self.alphabet.size
        for r in self.letters:
            if not 1 <= r <= l:
                raise InputError(f"letter rank {r} outside alphabet of size {l}")

    @staticmethod
    def from_text(text: str, alphabet_size: int | None = None) -> "Word":
        """Parse ``"abc"`` (ranks 1..26) or dotted ``"1.2.3"`` for larger alphabets."""
        if "." in text:
            ranks = tuple(int(part) for part in text.split(".")) if text else ()
        else:
            ranks = tuple(_ASCII.index(ch) + 1 for ch in text)
        size = alphabet_size if alphabet_size is not None else max(ranks, default=1)
        return Word(ranks, Alphabet(size))

    @property
    def text(self) -> str:
        if self.alphabet.size <= 26:
            return "".join(_ASCII[r - 1] for r in self.letters)
        return ".".join(str(r) for r in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.letters[item], self.alphabet)
        return self.letters[item]

    def __add__(self, other: "Word") -> "Word":
        if self.alphabet != other.alphabet:
            raise InputError("cannot concatenate words over different alphabets")
        return Word(self.letters + other.letters, self.alphabet)

    def __mul__(self, times: int) -> "Word":
        return Word(self.letters * times, self.alphabet)

    def __repr__(self) -> str:
        return f"Word({self.text!r}, l={self.alphabet.size})"


class _Bottom:
    """Sentinel comparing strictly below every word; equal only to itself."""

    __slots__ = ()

    def __lt__(self, other) -> bool:
        return isinstance(other, Word)

    def __repr__(self) -> str:
        return "BOTTOM"


BOTTOM = _Bottom()


def compare(u: Word, v: Word) -> LexOutcome:
    """Lexicographic comparison; prefix pairs are incomparable."""
    if u.alphabet != v.alphabet:
        raise InputError("cannot compare words over different alphabets")
    return compare_tuples(u.letters, v.letters)


def compare_tuples(a: tuple[int, ...], b: tuple[int, ...]) -> LexOutcome:
    if a == b:
        return LexOutcome.EQUAL
    m = min(len(a), len(b))
    pa, pb = a[:m], b[:m]
    if pa == pb:
        return LexOutcome.INCOMPARABLE_PREFIX
    return LexOutcome.LESS if pa < pb else LexOutcome.GREATER


def greater_tuples(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """True iff a > b at the first differing position (strict, comparable)."""
    m = min(len(a), len(b))
    pa, pb = a[:m], b[:m]
    return pa != pb and pa > pb


def k_tail(w: Word, start: int, k: int) -> Word:
    """The k-letter window of ``w`` beginning at ``start``."""
    if start < 0 or k < 0 or start + k > len(w):
        raise RangeError(f"window [{start}, {start + k}) exceeds word of length {len(w)}")
    return Word(w.letters[start:start + k], w.alphabet)


@dataclass(frozen=True, slots=True)
class TailRef:
    """A suffix of ``source`` starting at ``start``, optionally truncated to length ``truncation``."""

    source: Word
    start: int
    truncation: int | None = None

    def __post_init__(self):
        if not 0 <= self.start < len(self.source):
            raise RangeError(f"tail start {self.start} outside word of length {len(self.source)}")
        if self.truncation is not None and self.start + self.truncation > len(self.source):
            raise RangeError("truncated tail exceeds word end")

    def word(self) -> Word:
        """Value snapshot of the referenced (k-)tail."""
        end = len(self.source) if self.truncation is None else self.start + self.truncation
        return Word(self.source.letters[self.start:end], self.source.alphabet)

    def __len__(self) -> int:
        if self.truncation is not None:
            return self.truncation
        return len(self.source) - self.start


def leftmost_first(u: TailRef, v: TailRef) -> bool:
    """True iff ``u`` starts strictly left of ``v`` (same source word)."""
    if u.source != v.source:
        raise InputError("tails of different source words have no left-of relation")
    return u.start < v.start


def suffix_order_tables(a: tuple[int, ...]):
    """First-difference tables for all suffix pairs of ``a``.

    Returns (delta, grt): for i < j, delta[i][j] is the first offset where the
    suffixes at i and j differ, or len(a) - j when the shorter suffix is a
    prefix of the longer one (the pair is then incomparable); grt[i][j] is True
    iff suffix i is strictly greater at that offset.  Block and tail
    comparisons reduce to these tables, which is what keeps the chain dynamic
    programs quadratic.
    """
    L = len(a)
    delta = [[0] * (L + 1) for _ in range(L + 1)]
    grt = [[False] * (L + 1) for _ in range(L + 1)]
    for i in range(L - 1, -1, -1):
        di, gi = delta[i], grt[i]
        ai = a[i]
        for j in range(L - 1, i, -1):
            if ai == a[j]:
                di[j] = delta[i + 1][j + 1] + 1
                gi[j] = grt[i + 1][j + 1]
            else:
                di[j] = 0
                gi[j] = ai > a[j]
    return delta, grt
