"""Height decompositions over short roots, essential periodic fragments, and
the fragment-excision process with its piece statistics.

A height decomposition writes a word as y_1^{k_1} ··· y_h^{k_h} with every
|y_i| <= n-1 and h minimal.  Essential fragments are disjoint subwords whose
period (of length < n) repeats more than 2n times, pairwise separated by
subwords of length > n comparable with the preceding period.  The excision
process repeatedly cuts out a maximal periodic window with a non-cyclic root
repeated at least 4n times, tracking where the cut letters sit in the original
word.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputError, InvariantViolation
from .divisibility import AuditOutcome, is_n_divisible
from .periodicity import find_power, primitive_root
from .words import LexOutcome, Word, compare_tuples

__all__ = [
    "PowerFactor",
    "HeightDecomposition",
    "word_height",
    "PeriodicRun",
    "maximal_runs",
    "Fragment",
    "EssentialFragments",
    "essential_fragments",
    "period_class_counts",
    "repeated_class_forces_division",
    "ExcisionStep",
    "ExcisionTrace",
    "excise",
    "FragmentStatistics",
    "fragment_statistics",
    "piece_count_audit",
    "piece_weight_audit",
    "disjoint_periodic_audit",
]


@dataclass(frozen=True, slots=True)
class PowerFactor:
    root: Word
    exponent: int

    @property
    def span(self) -> int:
        return len(self.root) * self.exponent


@dataclass(frozen=True, slots=True)
class HeightDecomposition:
    word: Word
    max_root: int
    factors: tuple[PowerFactor, ...]

    @property
    def height(self) -> int:
        return len(self.factors)

    def verify(self) -> bool:
        flat: tuple[int, ...] = ()
        for f in self.factors:
            if len(f.root) > self.max_root or f.exponent < 1:
                return False
            flat += f.root.letters * f.exponent
        return flat == self.word.letters


def _factor_root(a: tuple[int, ...], i: int, j: int, max_root: int) -> int | None:
    """Smallest p <= max_root with p | (j - i) and a[i:j] = root^((j-i)/p)."""
    span = j - i
    for p in range(1, min(max_root, span) + 1):
        if span % p == 0 and a[i + p:j] == a[i:j - p]:
            return p
    return None


def word_height(w: Word, n: int) -> HeightDecomposition:
    """Minimal-length factorization into powers of roots of length <= n-1."""
    if n < 2:
        raise InputError(f"height needs n >= 2, got {n}")
    a = w.letters
    L = len(a)
    max_root = n - 1
    INF = L + 1
    best = [INF] * (L + 1)
    best[L] = 0
    choice: list[int | None] = [None] * (L + 1)
    for i in range(L - 1, -1, -1):
        for j in range(i + 1, L + 1):
            if _factor_root(a, i, j, max_root) is not None and best[j] + 1 < best[i]:
                best[i] = best[j] + 1
                choice[i] = j
    if best[0] >= INF:
        raise InvariantViolation("single letters always qualify as factors")
    factors = []
    i = 0
    while i < L:
        j = choice[i]
        p = _factor_root(a, i, j, max_root)
        factors.append(PowerFactor(Word(a[i:i + p], w.alphabet), (j - i) // p))
        i = j
    return HeightDecomposition(w, max_root, tuple(factors))


@dataclass(frozen=True, slots=True)
class PeriodicRun:
    """A maximal interval [start, end) whose minimal period is ``period``."""

    start: int
    end: int
    period: int

    @property
    def full_exponent(self) -> int:
        return (self.end - self.start) // self.period


def maximal_runs(w: Word, max_period: int) -> list[PeriodicRun]:
    """Maximal periodic intervals with minimal period <= max_period and at
    least two full repetitions, ordered by start."""
    a = w.letters
    L = len(a)
    runs = []
    for p in range(1, min(max_period, L // 2) + 1):
        i = 0
        while i + 2 * p <= L:
            if a[i] == a[i + p]:
                j = i
                while j + p < L and a[j] == a[j + p]:
                    j += 1
                end = j + p  # interval [i, end) is p-periodic
                if end - i >= 2 * p:
                    root = a[i:i + p]
                    # keep only primitive roots; smaller periods report the run
                    prim, _ = primitive_root(Word(root, w.alphabet))
                    if len(prim) == p:
                        runs.append(PeriodicRun(i, end, p))
                i = max(i + 1, end - p + 1) if end - i >= 2 * p else i + 1
            else:
                i += 1
    runs.sort(key=lambda r: (r.start, r.period))
    return runs


@dataclass(frozen=True, slots=True)
class Fragment:
    start: int
    root: Word
    exponent: int

    @property
    def end(self) -> int:
        return self.start + len(self.root) * self.exponent


@dataclass(frozen=True, slots=True)
class EssentialFragments:
    """Greedy left-to-right fragment selection; ``s`` is a lower bound on the
    number of distinct periodic fragments any decomposition must carry."""

    word: Word
    n: int
    fragments: tuple[Fragment, ...]

    @property
    def s(self) -> int:
        return len(self.fragments)

    def separators(self) -> tuple[Word, ...]:
        a = self.word.letters
        out = []
        for prev, nxt in zip(self.fragments, self.fragments[1:]):
            out.append(Word(a[prev.end:nxt.start], self.word.alphabet))
        return tuple(out)

    def verify(self) -> bool:
        a = self.word.letters
        n = self.n
        for f in self.fragments:
            if len(f.root) >= n or f.exponent <= 2 * n:
                return False
            if a[f.start:f.end] != f.root.letters * f.exponent:
                return False
        for prev, nxt in zip(self.fragments, self.fragments[1:]):
            if nxt.start - prev.end <= n:
                return False
            gap = a[prev.end:nxt.start]
            if compare_tuples(prev.root.letters, gap) not in (LexOutcome.LESS, LexOutcome.GREATER):
                return False
        return True


def essential_fragments(w: Word, n: int) -> EssentialFragments:
    """Select disjoint fragments with period length < n repeated > 2n times,
    separated by comparable gaps of length > n.

    Selection is greedy leftmost-maximal: each maximal run is trimmed to whole
    periods, shifted right when the gap to the previous fragment is too short,
    and skipped when the gap cannot be made comparable with the previous root.
    """
    if n < 2:
        raise InputError(f"fragments need n >= 2, got {n}")
    a = w.letters
    chosen: list[Fragment] = []
    for run in maximal_runs(w, n - 1):
        p = run.period
        prev_end = chosen[-1].end if chosen else None
        start = run.start
        if prev_end is not None:
            min_start = prev_end + n + 1
            if min_start > start:
                # shift right by whole periods to keep the root aligned
                shift = -(-(min_start - start) // p) * p
                start += shift
        exponent = (run.end - start) // p
        if exponent <= 2 * n:
            continue
        if prev_end is not None:
            gap = a[prev_end:start]
            root_prev = chosen[-1].root.letters
            if compare_tuples(root_prev, gap) not in (LexOutcome.LESS, LexOutcome.GREATER):
                continue
        root = Word(a[start:start + p], w.alphabet)
        chosen.append(Fragment(start, root, exponent))
    return EssentialFragments(w, n, tuple(chosen))


def _necklace_key(root: Word) -> tuple[int, ...]:
    a = root.letters
    return min(a[i:] + a[:i] for i in range(len(a)))


def period_class_counts(fragments: EssentialFragments, m: int) -> dict[tuple[int, ...], int]:
    """Fragments of root length m, grouped by rotation class of the root."""
    counts: dict[tuple[int, ...], int] = {}
    for f in fragments.fragments:
        if len(f.root) == m:
            key = _necklace_key(f.root)
            counts[key] = counts.get(key, 0) + 1
    return counts


def repeated_class_forces_division(fragments: EssentialFragments, n: int) -> bool:
    """True when some rotation class of length-m roots (m < n) contributes at
    least 2n - 1 fragments; the host word is then claimed n-divisible."""
    for m in range(1, n):
        if any(c >= 2 * n - 1 for c in period_class_counts(fragments, m).values()):
            return True
    return False


@dataclass(frozen=True, slots=True)
class ExcisionStep:
    """One excision: W_{k-1} = u · root^(core+left+right) · y, cut out in full.

    ``cut`` is the window in W_{k-1} coordinates; ``origin_runs`` are the
    maximal contiguous runs those letters occupy in the original word;
    ``typed_marks`` are (original position, type) pairs for the trailing
    positions of u, type 1 nearest the cut.
    """

    index: int
    root: Word
    core: int
    left: int
    right: int
    cut: tuple[int, int]
    origin_runs: tuple[tuple[int, int], ...]
    typed_marks: tuple[tuple[int, int], ...]

    @property
    def exponent(self) -> int:
        return self.core + self.left + self.right

    def to_json_dict(self) -> dict:
        return {
            "step": self.index,
            "root": self.root.text,
            "core": self.core,
            "left": self.left,
            "right": self.right,
            "cut": list(self.cut),
            "origin": [list(r) for r in self.origin_runs],
            "typed": [list(t) for t in self.typed_marks],
        }


@dataclass(slots=True)
class ExcisionTrace:
    original: Word
    n: int
    steps: tuple[ExcisionStep, ...]
    final_positions: tuple[int, ...]
    boring_excised: frozenset[int]
    boring_types: dict[int, int]

    def splice(self) -> Word:
        """Reassemble the original word from the final remainder and all cuts."""
        letters: dict[int, int] = {}
        a = self.original.letters
        for pos in self.final_positions:
            letters[pos] = a[pos]
        for step in self.steps:
            flat = step.root.letters * step.exponent
            t = 0
            for s, e in step.origin_runs:
                for pos in range(s, e):
                    letters[pos] = flat[t]
                    t += 1
        if sorted(letters) != list(range(len(a))):
            raise InvariantViolation("excision steps do not partition the word")
        return Word(tuple(letters[i] for i in range(len(a))), self.original.alphabet)


def _runs_of(positions: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    runs = []
    for pos in positions:
        if runs and runs[-1][1] == pos:
            runs[-1][1] = pos + 1
        else:
            runs.append([pos, pos + 1])
    return tuple((s, e) for s, e in runs)


def excise(w: Word, n: int, max_steps: int | None = None) -> ExcisionTrace:
    """Run the excision process until no non-cyclic 4n-th power remains.

    Each step takes the leftmost, shortest-root occurrence of x^(4n), extends
    it with as many whole copies of x as the context allows on each side, cuts
    the window, marks its positions boring and the last n positions of the
    left context boring of types 1..n (re-marks keep the smaller type).
    """
    if n < 2:
        raise InputError(f"excision needs n >= 2, got {n}")
    current = list(w.letters)
    positions = list(range(len(w)))
    steps: list[ExcisionStep] = []
    boring_excised: set[int] = set()
    boring_types: dict[int, int] = {}
    while max_steps is None or len(steps) < max_steps:
        cur_word = Word(tuple(current), w.alphabet)
        occ = find_power(cur_word, 4 * n)
        if occ is None:
            break
        p = len(occ.root)
        start, core = occ.start, occ.exponent
        left = 0
        while start - (left + 1) * p >= 0 and tuple(current[start - (left + 1) * p:start - left * p]) == occ.root.letters:
            left += 1
        end = start + core * p
        right = 0
        while end + (right + 1) * p <= len(current) and tuple(current[end + right * p:end + (right + 1) * p]) == occ.root.letters:
            right += 1
        cut_s = start - left * p
        cut_e = end + right * p
        cut_positions = tuple(positions[cut_s:cut_e])
        origin_runs = _runs_of(cut_positions)
        boring_excised.update(cut_positions)
        typed = []
        for t in range(1, n + 1):
            idx = cut_s - t
            if idx < 0:
                break
            pos = positions[idx]
            old = boring_types.get(pos)
            if old is None or t < old:
                boring_types[pos] = t
            typed.append((pos, t))
        steps.append(
            ExcisionStep(
                index=len(steps) + 1,
                root=occ.root,
                core=core,
                left=left,
                right=right,
                cut=(cut_s, cut_e),
                origin_runs=origin_runs,
                typed_marks=tuple(typed),
            )
        )
        del current[cut_s:cut_e]
        del positions[cut_s:cut_e]
    return ExcisionTrace(
        original=w,
        n=n,
        steps=tuple(steps),
        final_positions=tuple(positions),
        boring_excised=frozenset(boring_excised),
        boring_types=boring_types,
    )


@dataclass(slots=True)
class FragmentStatistics:
    """Piece counts over the first 4t steps of a trace.

    ``piece_counts[i]`` is the number of maximal contiguous runs the i-th cut
    occupies in the original word; ``histogram[k]`` counts steps with exactly k
    pieces; ``monoliths[i]`` is the number of maximal contiguous excised
    blocks after step i+1.
    """

    trace: ExcisionTrace
    t: int
    well_formed: bool
    piece_counts: tuple[int, ...]
    histogram: dict[int, int]
    monoliths: tuple[int, ...]

    @property
    def simple_pieces(self) -> int:
        return self.histogram.get(1, 0) + self.histogram.get(2, 0)

    @property
    def weighted_total(self) -> int:
        return sum(k * c for k, c in self.histogram.items())


def fragment_statistics(trace: ExcisionTrace) -> FragmentStatistics:
    total = len(trace.steps)
    t = total // 4
    well_formed = total == 4 * t + 1 and t >= 1
    used = trace.steps[:4 * t]
    piece_counts = tuple(len(s.origin_runs) for s in used)
    histogram: dict[int, int] = {}
    for c in piece_counts:
        histogram[c] = histogram.get(c, 0) + 1
    covered: list[list[int]] = []
    monoliths = []
    occupied: set[int] = set()
    for s in used:
        for a, b in s.origin_runs:
            occupied.update(range(a, b))
        count = 0
        prev_in = False
        for pos in range(len(trace.original) + 1):
            inside = pos in occupied
            if inside and not prev_in:
                count += 1
            prev_in = inside
        monoliths.append(count)
    return FragmentStatistics(
        trace=trace,
        t=t,
        well_formed=well_formed,
        piece_counts=piece_counts,
        histogram=histogram,
        monoliths=tuple(monoliths),
    )


def piece_count_audit(stats: FragmentStatistics) -> AuditOutcome:
    """Steps cut into one or two pieces make up at least half of 4t steps."""
    if stats.t < 1:
        return AuditOutcome(ok=True, applicable=False)
    return AuditOutcome(
        ok=stats.simple_pieces >= 2 * stats.t,
        applicable=True,
        details={"simple": stats.simple_pieces, "t": stats.t},
    )


def piece_weight_audit(stats: FragmentStatistics) -> AuditOutcome:
    """Total piece count is at most 10t, and at most 5 times the simple count."""
    if stats.t < 1:
        return AuditOutcome(ok=True, applicable=False)
    ok = stats.weighted_total <= 10 * stats.t <= 5 * stats.simple_pieces
    return AuditOutcome(
        ok=ok,
        applicable=True,
        details={"weighted": stats.weighted_total, "t": stats.t, "simple": stats.simple_pieces},
    )


def _aligned_exponent(a: tuple[int, ...], start: int, end: int, p: int) -> int:
    e = 1
    while start + (e + 1) * p <= end and a[start + e * p:start + (e + 1) * p] == a[start:start + p]:
        e += 1
    return e


def disjoint_periodic_audit(stats: FragmentStatistics) -> AuditOutcome:
    """From every one- or two-piece step, the longest piece carries a periodic
    span with exponent >= 2n; those spans are pairwise disjoint.  The extended
    spans built from every other piece (periodic closure plus one differing
    block) must also stay pairwise disjoint."""
    trace = stats.trace
    n = trace.n
    a = trace.original.letters
    pieces: list[tuple[int, int, int]] = []  # (start, end, period)
    for step, count in zip(trace.steps[:4 * stats.t], stats.piece_counts):
        if count > 2:
            continue
        runs = sorted(step.origin_runs, key=lambda r: (r[0] - r[1], r[0]))
        s, e = runs[0]
        pieces.append((s, e, len(step.root)))
    pieces.sort()
    if not pieces:
        return AuditOutcome(ok=True, applicable=False)
    ok = True
    details: dict = {"pieces": len(pieces)}
    spans = []
    for s, e, p in pieces:
        exp = _aligned_exponent(a, s, e, p)
        if exp < 2 * n:
            ok = False
            details["short_piece"] = (s, e, p, exp)
        spans.append((s, s + exp * p))
    for (s1, e1), (s2, e2) in zip(spans, spans[1:]):
        if e1 > s2:
            ok = False
            details["overlap"] = (s1, e1, s2, e2)
    extended = []
    for s, e, p in pieces[::2]:
        exp = _aligned_exponent(a, s, len(a), p)
        z_end = min(len(a), s + exp * p + p)
        extended.append((s, z_end))
    for (s1, e1), (s2, e2) in zip(extended, extended[1:]):
        if e1 > s2:
            ok = False
            details["extended_overlap"] = (s1, e1, s2, e2)
    return AuditOutcome(ok=ok, applicable=True, details=details)
