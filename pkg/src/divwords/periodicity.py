"""Powers u^t inside words, primitive roots, rotations, and factor counting."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, InvariantViolation
from .words import Word

__all__ = [
    "PowerOccurrence",
    "WordCycle",
    "find_power",
    "primitive_root",
    "rotations",
    "distinct_factors",
    "root_from_few_factors",
]


@dataclass(frozen=True, slots=True)
class PowerOccurrence:
    """A window of ``source`` equal to ``root`` repeated ``exponent`` times."""

    source: Word
    start: int
    root: Word
    exponent: int

    @property
    def span(self) -> int:
        return self.exponent * len(self.root)

    def verify(self) -> bool:
        window = self.source.letters[self.start:self.start + self.span]
        return self.exponent >= 2 and len(self.root) >= 1 and window == self.root.letters * self.exponent

    def to_json_dict(self) -> dict:
        return {"start": self.start, "root": self.root.text, "exponent": self.exponent}


def find_power(w: Word, d: int) -> PowerOccurrence | None:
    """Leftmost occurrence of some u^d in ``w`` (shortest root at that start).

    The quadratic window scan below is the reference decider; sizes here never
    warrant a runs index.
    """
    if d < 2:
        raise InputError(f"power exponent must be >= 2, got {d}")
    a = w.letters
    L = len(a)
    for start in range(L - d + 1):
        for r in range(1, (L - start) // d + 1):
            # the window [start, start+d*r) equals u^d iff it is r-periodic
            if a[start + r:start + d * r] == a[start:start + (d - 1) * r]:
                return PowerOccurrence(w, start, Word(a[start:start + r], w.alphabet), d)
    return None


def primitive_root(w: Word) -> tuple[Word, int]:
    """Decompose w = root^k with k maximal; the root is then non-cyclic."""
    L = len(w)
    if L == 0:
        raise InputError("the empty word has no primitive root")
    a = w.letters
    for r in range(1, L + 1):
        if L % r == 0 and a[r:] == a[:L - r]:
            return Word(a[:r], w.alphabet), L // r
    raise InvariantViolation("unreachable: every word is a power of itself")


def rotations(w: Word) -> tuple[Word, ...]:
    """All cyclic shifts of ``w``, starting with ``w`` itself."""
    a = w.letters
    return tuple(Word(a[i:] + a[:i], w.alphabet) for i in range(len(a)))


@dataclass(frozen=True, slots=True)
class WordCycle:
    """A non-cyclic word together with all of its cyclic shifts."""

    base: Word

    def __post_init__(self):
        _, k = primitive_root(self.base)
        if k != 1:
            raise InputError(f"{self.base!r} is cyclic; a word-cycle needs a non-cyclic base")

    @staticmethod
    def from_word(w: Word) -> "WordCycle":
        root, _ = primitive_root(w)
        return WordCycle(root)

    @property
    def shifts(self) -> tuple[Word, ...]:
        return rotations(self.base)


def distinct_factors(w: Word, k: int) -> int:
    """Number of distinct length-k windows of ``w``."""
    if k < 0 or k > len(w):
        raise InputError(f"factor length {k} exceeds word length {len(w)}")
    a = w.letters
    return len({a[i:i + k] for i in range(len(a) - k + 1)})


def root_from_few_factors(w: Word, k: int, t: int) -> Word:
    """Given |w| = k*t and at most k distinct length-k factors, return the
    length-k prefix v with w = v^t.

    This is a checked implication, not a search: violating either hypothesis
    raises InputError, and a failure of the conclusion would be a genuine
    invariant violation.
    """
    if k < 1 or t < 1 or len(w) != k * t:
        raise InputError(f"need |w| = k*t, got |w|={len(w)}, k={k}, t={t}")
    if distinct_factors(w, k) > k:
        raise InputError(f"word has more than {k} distinct factors of length {k}")
    root = Word(w.letters[:k], w.alphabet)
    if w.letters != root.letters * t:
        raise InvariantViolation(f"few-factors conclusion failed on {w!r} (k={k}, t={t})")
    return root
