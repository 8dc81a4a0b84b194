"""Two-coordinate posets on tails and on cycle shifts, chain decompositions,
selector tuples, and the run-length statistics built on them.

Both poset flavors share one strict order: x < y iff level(x) < level(y) and
word(x) is strictly lex-less than word(y).  For tail posets the level is the
start position (all distinct); for cycle posets it is the index of the host
cycle, so shifts of one cycle are pairwise incomparable.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .errors import InputError, InvariantViolation
from .divisibility import AuditOutcome, reducibility
from .periodicity import PowerOccurrence, find_power
from .words import BOTTOM, Word, compare_tuples, LexOutcome, suffix_order_tables

__all__ = [
    "PosetElement",
    "Poset",
    "TailPosetOutcome",
    "build_tail_poset",
    "build_cycle_poset",
    "ChainDecomposition",
    "chain_decompose",
    "max_antichain",
    "SelectorTuple",
    "selector",
    "selector_run_length",
    "selector_trace_rows",
    "ProcessCheckResult",
    "process_check",
    "selector_recursion_audit",
    "cycle_window_audit",
    "cycle_recursion_audit",
    "chain_bound",
]


def chain_bound(n: int, d: int) -> int:
    """The chain-count parameter 4nd - 1 for tail posets of non-reducible words."""
    return 4 * n * d - 1


@dataclass(frozen=True, slots=True)
class PosetElement:
    level: int
    word: Word
    label: object = None


class Poset:
    """Elements in a fixed sequence order with the two-coordinate strict order."""

    def __init__(self, elements: list[PosetElement]):
        self.elements = list(elements)

    def __len__(self) -> int:
        return len(self.elements)

    def less(self, i: int, j: int) -> bool:
        a, b = self.elements[i], self.elements[j]
        if a.level >= b.level:
            return False
        return compare_tuples(a.word.letters, b.word.letters) is LexOutcome.LESS


@dataclass(frozen=True, slots=True)
class TailPosetOutcome:
    """Either the poset on the first floor(|w|/d) tails, or the power that
    prevents it from being totally comparable."""

    poset: Poset | None
    power: PowerOccurrence | None


def build_tail_poset(w: Word, d: int) -> TailPosetOutcome:
    """Poset on the first floor(|w|/d) full tails, ordered by position and lex.

    A d-th power anywhere in the word is returned instead of a poset; absent
    such a power the selected tails are guaranteed pairwise comparable, which
    is re-checked here rather than assumed.
    """
    power = find_power(w, d)
    if power is not None:
        return TailPosetOutcome(None, power)
    count = len(w) // d
    a = w.letters
    elements = [
        PosetElement(level=s, word=Word(a[s:], w.alphabet), label=s) for s in range(count)
    ]
    L = len(a)
    delta, _ = suffix_order_tables(a)
    for i in range(count):
        for j in range(i + 1, count):
            if delta[i][j] >= L - j:
                raise InvariantViolation(
                    f"tails {i} and {j} of {w!r} are prefix-incomparable despite no {d}-th power"
                )
    return TailPosetOutcome(Poset(elements), None)


def build_cycle_poset(roots: list[tuple[int, Word]]) -> Poset:
    """Poset on all shifts of the given cycles.

    ``roots`` holds (cycle_index, non-cyclic root) pairs in host-word order;
    shifts of one cycle share its index and are therefore incomparable.
    """
    elements = []
    seen: dict[tuple[int, ...], tuple[int, int]] = {}
    for idx, root in roots:
        a = root.letters
        for shift in range(len(a)):
            rotated = a[shift:] + a[:shift]
            if rotated in seen:
                raise InputError(
                    f"shift {shift} of cycle {idx} duplicates shift {seen[rotated][1]} "
                    f"of cycle {seen[rotated][0]}; roots must come from distinct cycles"
                )
            seen[rotated] = (idx, shift)
            elements.append(PosetElement(level=idx, word=Word(rotated, root.alphabet), label=(idx, shift)))
    return Poset(elements)


@dataclass(slots=True)
class ChainDecomposition:
    """A coloring of poset elements into chains, 0-based chain indices."""

    poset: Poset
    colors: tuple[int, ...]
    chain_count: int

    def chains(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.chain_count)]
        for i, c in enumerate(self.colors):
            out[c].append(i)
        return out

    def verify(self) -> bool:
        for chain in self.chains():
            for i, j in zip(chain, chain[1:]):
                if not self.poset.less(i, j):
                    return False
        return True


def _matching(poset: Poset):
    """Kuhn augmenting-path matching on the strict order relation."""
    n = len(poset)
    succ = [[j for j in range(n) if poset.less(i, j)] for i in range(n)]
    match_right: list[int | None] = [None] * n

    def try_augment(i: int, visited: list[bool]) -> bool:
        for j in succ[i]:
            if not visited[j]:
                visited[j] = True
                if match_right[j] is None or try_augment(match_right[j], visited):
                    match_right[j] = i
                    return True
        return False

    for i in range(n):
        try_augment(i, [False] * n)
    match_left: list[int | None] = [None] * n
    for j, i in enumerate(match_right):
        if i is not None:
            match_left[i] = j
    return succ, match_left, match_right


def max_antichain(poset: Poset) -> list[int]:
    """A maximum antichain, via the matching dual of the chain-cover problem."""
    n = len(poset)
    if n == 0:
        return []
    succ, match_left, match_right = _matching(poset)
    # Alternating reachability from unmatched left copies; the antichain is
    # {i : left_i reachable, right_i not reachable}.
    left_seen = [False] * n
    right_seen = [False] * n
    stack = [i for i in range(n) if match_left[i] is None]
    for i in stack:
        left_seen[i] = True
    while stack:
        i = stack.pop()
        for j in succ[i]:
            if not right_seen[j]:
                right_seen[j] = True
                k = match_right[j]
                if k is not None and not left_seen[k]:
                    left_seen[k] = True
                    stack.append(k)
    antichain = [i for i in range(n) if left_seen[i] and not right_seen[i]]
    matched = sum(1 for j in match_right if j is not None)
    if len(antichain) != n - matched:
        raise InvariantViolation("antichain extraction disagrees with matching size")
    return antichain


def _greedy_chains(poset: Poset) -> tuple[tuple[int, ...], int]:
    """First-fit in sequence order: place each element on the lowest-index chain
    whose last element lies below it."""
    colors: list[int] = []
    tops: list[int] = []
    for i in range(len(poset)):
        for c, top in enumerate(tops):
            if poset.less(top, i):
                tops[c] = i
                colors.append(c)
                break
        else:
            tops.append(i)
            colors.append(len(tops) - 1)
    return tuple(colors), len(tops)


def chain_decompose(poset: Poset) -> ChainDecomposition:
    """A minimum chain decomposition (chain count = maximum antichain size).

    Greedy first-fit is used when it matches the antichain certificate on the
    instance; otherwise the matching-based exact cover is taken.
    """
    n = len(poset)
    if n == 0:
        return ChainDecomposition(poset, (), 0)
    target = len(max_antichain(poset))
    colors, count = _greedy_chains(poset)
    if count == target:
        return ChainDecomposition(poset, colors, count)
    succ, match_left, match_right = _matching(poset)
    color_of = [-1] * n
    next_color = 0
    # chains follow match_left links from chain heads (elements with no matched predecessor)
    heads = [i for i in range(n) if match_right[i] is None]
    for head in heads:
        i: int | None = head
        while i is not None:
            color_of[i] = next_color
            i = match_left[i]
        next_color += 1
    if next_color != target:
        raise InvariantViolation("matching chain cover disagrees with antichain size")
    return ChainDecomposition(poset, tuple(color_of), next_color)


@dataclass(frozen=True, slots=True)
class SelectorTuple:
    """Per chain color: the length-p prefix of the word at the latest colored
    position <= i, or BOTTOM when the color has not appeared yet."""

    entries: tuple

    def stable_hash(self) -> str:
        parts = []
        for e in self.entries:
            parts.append("_" if e is BOTTOM else ".".join(map(str, e)))
        return hashlib.sha1("|".join(parts).encode()).hexdigest()[:12]


def _entry_words(poset: Poset, p: int) -> list[tuple[int, ...]]:
    return [el.word.letters[:p] for el in poset.elements]


def _selector_sequence(
    decomposition: ChainDecomposition, p: int, mask: list[bool] | None = None
) -> list[SelectorTuple]:
    """Selector tuples at every unmasked index, in sequence order.

    The mask restricts both which indices emit a tuple and which positions are
    eligible as latest-of-color; it exists for the excision coupling, where the
    process is driven only over positions that are not marked boring (or whose
    boring type is large enough).
    """
    poset = decomposition.poset
    words = _entry_words(poset, p)
    latest: list[object] = [BOTTOM] * decomposition.chain_count
    out: list[SelectorTuple] = []
    for i in range(len(poset)):
        if mask is not None and not mask[i]:
            continue
        latest[decomposition.colors[i]] = words[i]
        out.append(SelectorTuple(tuple(latest)))
    return out


def selector(
    decomposition: ChainDecomposition, p: int, i: int, mask: list[bool] | None = None
) -> SelectorTuple:
    """The selector tuple at sequence index ``i`` (0-based, unmasked indexing)."""
    if p < 1:
        raise InputError(f"prefix length must be >= 1, got {p}")
    seq = _selector_sequence(decomposition, p, mask)
    if not 0 <= i < len(seq):
        raise InputError(f"index {i} outside the colored region of size {len(seq)}")
    return seq[i]


def selector_run_length(
    decomposition: ChainDecomposition, p: int, mask: list[bool] | None = None
) -> int:
    """Longest run of equal consecutive selector tuples (0 for an empty region)."""
    if p < 1:
        raise InputError(f"prefix length must be >= 1, got {p}")
    seq = _selector_sequence(decomposition, p, mask)
    best = run = 0
    prev = None
    for t in seq:
        run = run + 1 if t == prev else 1
        prev = t
        best = max(best, run)
    return best


def selector_trace_rows(decomposition: ChainDecomposition, p: int) -> list[tuple[int, int, str]]:
    """(position, color, tuple-hash) rows for the CSV golden-fixture workflow."""
    seq = _selector_sequence(decomposition, p)
    return [
        (i, decomposition.colors[i], t.stable_hash()) for i, t in enumerate(seq)
    ]


@dataclass(frozen=True, slots=True)
class ProcessCheckResult:
    hypothesis_holds: bool
    length_ok: bool
    width: int
    length: int


def process_check(vectors, p: int, width: int | None = None) -> ProcessCheckResult:
    """Check a unit-vector sequence against the position process and its bound.

    Each element must contain exactly one 1.  The hypothesis: whenever p
    elements carry their 1 at the same place s, some element strictly between
    the first and the p-th of them (in sequence order) carries its 1 strictly
    left of s.  Whenever the hypothesis holds the sequence length may not
    exceed p**width - 1.
    """
    if p < 2:
        raise InputError(f"process bound must be >= 2, got {p}")
    ones: list[int] = []
    for vec in vectors:
        vec = list(vec)
        if width is None:
            width = len(vec)
        if len(vec) != width or any(x not in (0, 1) for x in vec) or sum(vec) != 1:
            raise InputError(f"malformed process element {vec!r}")
        ones.append(vec.index(1) + 1)
    if width is None:
        width = 1
    positions: dict[int, list[int]] = {}
    for idx, s in enumerate(ones):
        positions.setdefault(s, []).append(idx)
    hypothesis = True
    for s, occs in positions.items():
        for a, b in zip(occs, occs[p - 1:]):
            if not any(ones[t] < s for t in range(a + 1, b)):
                hypothesis = False
                break
        if not hypothesis:
            break
    length_ok = (not hypothesis) or len(ones) <= p**width - 1
    return ProcessCheckResult(hypothesis, length_ok, width, len(ones))


def selector_run_lengths_for_word(
    w: Word, n: int, d: int, ps: list[int]
) -> tuple[dict[int, int], ChainDecomposition] | None:
    """Tail-poset run lengths for several prefix lengths at once, or None when
    the word carries a d-th power."""
    outcome = build_tail_poset(w, d)
    if outcome.poset is None:
        return None
    decomposition = chain_decompose(outcome.poset)
    return {p: selector_run_length(decomposition, p) for p in ps}, decomposition


def selector_recursion_audit(w: Word, n: int, d: int, a: int, k: int) -> AuditOutcome:
    """On a non-reducible word, the run length at prefix a is bounded by
    p^k * (run length at prefix k*a) + k*a, with p = 4nd - 1."""
    if a < 1 or k < 1:
        raise InputError("prefix length and segment count must be >= 1")
    verdict = reducibility(w, n, d)
    if verdict.reducible:
        return AuditOutcome(ok=True, applicable=False, details={"verdict": verdict.kind})
    runs, decomposition = selector_run_lengths_for_word(w, n, d, [a, k * a])
    p = chain_bound(n, d)
    if decomposition.chain_count > p:
        raise InvariantViolation(
            f"{decomposition.chain_count} chains exceed the bound {p} on a non-reducible word"
        )
    lhs = runs[a]
    rhs = p**k * runs[k * a] + k * a
    return AuditOutcome(
        ok=lhs <= rhs,
        applicable=len(decomposition.poset) > 0,
        details={"lhs": lhs, "rhs": rhs, "chains": decomposition.chain_count},
    )


def cycle_window_audit(decomposition: ChainDecomposition, n: int, m: int) -> AuditOutcome:
    """Run length at full window m obeys run * m <= n - 1 on cycle posets."""
    if not 1 <= m:
        raise InputError("window must be >= 1")
    if len(decomposition.poset) == 0:
        return AuditOutcome(ok=True, applicable=False)
    run = selector_run_length(decomposition, m)
    return AuditOutcome(
        ok=run * m <= n - 1, applicable=True, details={"run": run, "q": n - 1}
    )


def cycle_recursion_audit(
    decomposition: ChainDecomposition, n: int, d: int, a: int, k: int, m: int
) -> AuditOutcome:
    """Run length at prefix a is bounded by p^k * (run length at prefix k*a)
    on cycle posets, p = 4nd - 1; the sharper q^k bound with q = n - 1 is
    recorded alongside."""
    if a < 1 or k < 1 or a * k > m:
        raise InputError("need a, k >= 1 and a*k <= m")
    if len(decomposition.poset) == 0:
        return AuditOutcome(ok=True, applicable=False)
    lhs = selector_run_length(decomposition, a)
    tail_run = selector_run_length(decomposition, k * a)
    p = chain_bound(n, d)
    q = n - 1
    return AuditOutcome(
        ok=lhs <= p**k * tail_run,
        applicable=True,
        details={"lhs": lhs, "rhs": p**k * tail_run, "tight_rhs": q**k * tail_run,
                 "tight_ok": lhs <= q**k * tail_run},
    )
