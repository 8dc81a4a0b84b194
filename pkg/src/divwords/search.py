"""Exhaustive avoidance search, permutation counting, and the audit harness.

The avoidance language (no d-th power, not n-divisible) is closed under
removing letters from either end, so the prefix tree of avoiders can be
explored by depth-first extension: a word is expanded iff it avoids both
properties, and both properties are monotone under extension.
"""

from __future__ import annotations

import itertools
import json
import time
from bisect import bisect_left
from dataclasses import dataclass, field, asdict
from multiprocessing import Pool

from .errors import InputError
from .divisibility import (
    is_n_divisible,
    is_tail_n_divisible,
    max_division_index,
    _chain_tables,
    _tail_chain_lengths,
)
from .periodicity import find_power
from .words import Alphabet, Word

__all__ = [
    "AvoiderQuery",
    "SearchReport",
    "extremal_length",
    "count_avoiders",
    "multilinear_count",
    "HarnessConfig",
    "HarnessReport",
    "property_harness",
]


@dataclass(frozen=True, slots=True)
class AvoiderQuery:
    n: int
    d: int
    l: int
    max_len: int
    gate: str = "ordinary"  # or "tail": gate divisibility on the tail sense

    def __post_init__(self):
        if self.n < 1 or self.d < 2 or self.l < 1 or self.max_len < 1:
            raise InputError(f"invalid query {self}")
        if self.gate not in ("ordinary", "tail"):
            raise InputError(f"unknown gate {self.gate!r}")


@dataclass(slots=True)
class SearchReport:
    query: AvoiderQuery
    extremal_length: int
    witness: Word | None
    counts: list[int]  # counts[k-1] = number of avoiders of length k
    nodes: int
    seconds: float
    ceiling_hit: bool

    def to_json_dict(self, include_timing: bool = False) -> dict:
        out = {
            "params": {
                "n": self.query.n,
                "d": self.query.d,
                "l": self.query.l,
                "max_len": self.query.max_len,
                "gate": self.query.gate,
            },
            "extremal_length": self.extremal_length,
            "witness": self.witness.text if self.witness is not None else None,
            "counts": list(self.counts),
            "nodes": self.nodes,
            "lower_bound_only": self.ceiling_hit,
        }
        if include_timing:
            out["seconds"] = self.seconds
        return out

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_json_dict(include_timing), sort_keys=True)


def _ends_with_power(a: tuple[int, ...], d: int) -> bool:
    """Does some u^d end exactly at the last letter?  Extensions can only add
    powers that end at the new letter, so this is the incremental power check."""
    L = len(a)
    for r in range(1, L // d + 1):
        tail = a[L - r:]
        if all(a[L - t * r:L - (t - 1) * r] == tail for t in range(2, d + 1)):
            return True
    return False


def _divisible(a: tuple[int, ...], n: int, gate: str) -> bool:
    if gate == "ordinary":
        _, M, _, _ = _chain_tables(a)
        return any(M[s][s + 1] >= n for s in range(len(a)))
    dp, _, _ = _tail_chain_lengths(a)
    return max(dp, default=0) >= n


def _subtree(args) -> tuple[list[int], int, tuple[int, ...] | None, int]:
    """Explore all extensions of one avoider prefix; returns per-length counts,
    deepest length, the first deepest word in lex order, and node count."""
    prefix, n, d, l, max_len, gate = args
    counts = [0] * (max_len + 1)
    nodes = 0
    best_len = 0
    best_word: tuple[int, ...] | None = None
    stack = [prefix]
    while stack:
        w = stack.pop()
        if len(w) >= max_len:
            continue
        for c in range(l, 0, -1):
            w2 = w + (c,)
            if _ends_with_power(w2, d) or _divisible(w2, n, gate):
                continue
            nodes += 1
            counts[len(w2)] += 1
            if len(w2) > best_len:
                best_len = len(w2)
                best_word = w2
            stack.append(w2)
    return counts, best_len, best_word, nodes


def extremal_length(query: AvoiderQuery, workers: int = 1, split_depth: int = 3) -> SearchReport:
    """Exact maximum avoider length by prefix-tree search.

    The tree is split at a fixed depth into independent subtrees; merge order
    follows the lex order of the subtree prefixes, so the report is identical
    for any worker count.
    """
    t0 = time.perf_counter()
    n, d, l, max_len, gate = query.n, query.d, query.l, query.max_len, query.gate
    counts = [0] * (max_len + 1)
    nodes = 0
    best_len, best_word = 0, None
    depth = min(split_depth, max_len)
    frontier: list[tuple[int, ...]] = []
    stack: list[tuple[int, ...]] = [()]
    while stack:
        w = stack.pop()
        if len(w) == depth:
            frontier.append(w)
            continue
        for c in range(l, 0, -1):
            w2 = w + (c,)
            if _ends_with_power(w2, d) or _divisible(w2, n, gate):
                continue
            nodes += 1
            counts[len(w2)] += 1
            if len(w2) > best_len:
                best_len, best_word = len(w2), w2
            stack.append(w2)
    frontier.sort()
    jobs = [(w, n, d, l, max_len, gate) for w in frontier]
    if workers > 1 and jobs:
        with Pool(workers) as pool:
            results = pool.map(_subtree, jobs)
    else:
        results = [_subtree(j) for j in jobs]
    for sub_counts, sub_best, sub_word, sub_nodes in results:
        for k, c in enumerate(sub_counts):
            counts[k] += c
        nodes += sub_nodes
        if sub_best > best_len:
            best_len, best_word = sub_best, sub_word
    alphabet = Alphabet(l)
    witness = Word(best_word, alphabet) if best_word is not None else None
    return SearchReport(
        query=query,
        extremal_length=best_len,
        witness=witness,
        counts=counts[1:],
        nodes=nodes,
        seconds=time.perf_counter() - t0,
        ceiling_hit=counts[max_len] > 0 if max_len < len(counts) else False,
    )


def count_avoiders(query: AvoiderQuery, workers: int = 1) -> list[int]:
    """Number of avoider words at each length 1..max_len."""
    return extremal_length(query, workers=workers).counts


def _longest_decreasing(perm: tuple[int, ...]) -> int:
    tails: list[int] = []  # longest strictly decreasing == LIS of reversed-with-negation
    for x in perm:
        v = -x
        i = bisect_left(tails, v)
        if i == len(tails):
            tails.append(v)
        else:
            tails[i] = v
    return len(tails)


def _multilinear_brute(n: int, k: int) -> int:
    return sum(1 for p in itertools.permutations(range(k)) if _longest_decreasing(p) < n)


def _partitions_max_parts(k: int, max_parts: int):
    def gen(remaining, largest, parts):
        if remaining == 0:
            yield tuple(parts)
            return
        if len(parts) == max_parts:
            return
        for part in range(min(largest, remaining), 0, -1):
            parts.append(part)
            yield from gen(remaining - part, part, parts)
            parts.pop()

    yield from gen(k, k, [])


def _hook_count(shape: tuple[int, ...], k: int) -> int:
    total = 1
    for t in range(2, k + 1):
        total *= t
    denom = 1
    for i, row in enumerate(shape):
        for j in range(row):
            arm = row - j - 1
            leg = sum(1 for r in range(i + 1, len(shape)) if shape[r] > j)
            denom *= arm + leg + 1
    assert total % denom == 0
    return total // denom


def _multilinear_shapes(n: int, k: int) -> int:
    # standard pair-counting: permutations whose longest decreasing chain stays
    # below n correspond to tableau pairs of a common shape with < n rows
    return sum(_hook_count(shape, k) ** 2 for shape in _partitions_max_parts(k, n - 1))


def multilinear_count(n: int, k: int, method: str = "auto") -> int:
    """Permutations of 1..k with no strictly decreasing subsequence of length n.

    Brute force enumerates permutations (k <= 9); the shape-counting path works
    for any k; both are cross-checked on the overlap by the test suite.
    """
    if n < 1 or k < 1:
        raise InputError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    if method == "auto":
        method = "brute" if k <= 9 else "shapes"
    if method == "brute":
        if k > 9:
            raise InputError(f"brute force is capped at k = 9, got k = {k}")
        return _multilinear_brute(n, k)
    if method == "shapes":
        return _multilinear_shapes(n, k)
    raise InputError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# audit harness


@dataclass(slots=True)
class HarnessConfig:
    seed: int = 0
    comparable_tails: int = 1000
    few_factor_periods: int = 1000
    repeat_reducibility: int = 1000
    tail_reducibility: int = 1000
    process_sequences: int = 1000
    selector_recursions: int = 1000
    cycle_windows: int = 1000
    cycle_recursions: int = 1000
    excision_traces: int = 1000
    comparator_override: object = None  # fault-injection hook for tests


@dataclass(slots=True)
class BatchResult:
    name: str
    ran: int
    applicable: int
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass(slots=True)
class HarnessReport:
    seed: int
    batches: list[BatchResult]

    @property
    def ok(self) -> bool:
        return all(b.ok for b in self.batches)

    def to_json_dict(self) -> dict:
        return {
            "seed": self.seed,
            "ok": self.ok,
            "batches": [
                {
                    "name": b.name,
                    "ran": b.ran,
                    "applicable": b.applicable,
                    "failures": b.failures,
                }
                for b in self.batches
            ],
        }


def _random_word(rng, l: int, length: int) -> Word:
    return Word(tuple(rng.randint(1, l) for _ in range(length)), Alphabet(l))


def _power_free_word(rng, l: int, d: int, target: int) -> Word:
    letters: list[int] = []
    while len(letters) < target:
        options = list(range(1, l + 1))
        rng.shuffle(options)
        for c in options:
            letters.append(c)
            if _ends_with_power(tuple(letters), d):
                letters.pop()
            else:
                break
        else:
            break
    return Word(tuple(letters), Alphabet(l))


def _power_rich_word(rng, l: int, blocks: int, max_root: int, min_rep: int, max_rep: int) -> Word:
    letters: list[int] = []
    for _ in range(blocks):
        root = [rng.randint(1, l) for _ in range(rng.randint(1, max_root))]
        letters.extend(root * rng.randint(min_rep, max_rep))
    return Word(tuple(letters), Alphabet(l))


def _max_power_exponent(w: Word) -> int:
    d = 2
    while find_power(w, d) is not None:
        d += 1
    return d - 1


def property_harness(config: HarnessConfig | None = None) -> HarnessReport:
    """Run every implication audit on randomized batches; failures carry the
    offending instance so it can be persisted and replayed."""
    import random

    from . import dilworth, height
    from .divisibility import (
        repeats_force_reducibility_audit,
        tail_division_forces_reducibility_audit,
    )
    from .periodicity import distinct_factors, root_from_few_factors
    from .words import compare_tuples, LexOutcome, greater_tuples

    config = config or HarnessConfig()
    rng = random.Random(config.seed)
    batches: list[BatchResult] = []

    def run_batch(name, count, instance_fn):
        batch = BatchResult(name=name, ran=0, applicable=0)
        for _ in range(count):
            batch.ran += 1
            applicable, ok, detail = instance_fn()
            if applicable:
                batch.applicable += 1
            if not ok:
                if len(batch.failures) < 10:
                    batch.failures.append(detail)
        batches.append(batch)

    def comparable_tails_instance():
        d = rng.choice([2, 3])
        l = rng.choice([2, 3])
        w = _power_free_word(rng, l, d, rng.randint(4, 24))
        a = w.letters
        count = len(a) // d
        for i in range(count):
            for j in range(i + 1, count):
                if compare_tuples(a[i:], a[j:]) not in (LexOutcome.LESS, LexOutcome.GREATER):
                    return True, False, {"word": w.text, "d": d, "tails": [i, j]}
        return count >= 2, True, {}

    run_batch("comparable-tails-or-power", config.comparable_tails, comparable_tails_instance)

    def few_factors_instance():
        k = rng.randint(1, 4)
        t = rng.randint(2, 5)
        l = rng.choice([2, 3])
        if rng.random() < 0.5:
            root = _random_word(rng, l, k)
            w = root * t
        else:
            w = _random_word(rng, l, k * t)
        if distinct_factors(w, k) > k:
            return False, True, {}
        try:
            root_from_few_factors(w, k, t)
            return True, True, {}
        except Exception:
            return True, False, {"word": w.text, "k": k, "t": t}

    run_batch("few-factors-force-period", config.few_factor_periods, few_factors_instance)

    greater = config.comparator_override or greater_tuples

    def repeat_instance():
        n = rng.choice([2, 3])
        d = rng.choice([2, 3])
        l = rng.choice([2, 3])
        if rng.random() < 0.5:
            seg = _random_word(rng, l, n * d)
            filler = _random_word(rng, l, rng.randint(0, 3))
            w = seg
            for _ in range(n - 1):
                w = w + filler + seg
        else:
            w = _random_word(rng, l, 40)
        out = repeats_force_reducibility_audit(w, n, d, greater=greater)
        return out.applicable, out.ok, {"word": w.text, "n": n, "d": d, **out.details}

    run_batch("repeats-force-reducibility", config.repeat_reducibility, repeat_instance)

    def tail_reduction_instance():
        n, d = 2, 2
        kind = rng.random()
        if kind < 0.4:
            w = _random_word(rng, 2, rng.randint(8, 64))
        elif kind < 0.7:
            w = _random_word(rng, 3, rng.randint(16, 48))
        else:
            size = 4 * n * d
            w = Word(tuple(range(size + 4, 4, -1)), Alphabet(size + 4))
        out = tail_division_forces_reducibility_audit(w, n, d)
        return out.applicable, out.ok, {"word": w.text, "n": n, "d": d, **out.details}

    run_batch("tail-division-forces-reducibility", config.tail_reducibility, tail_reduction_instance)

    def process_instance():
        width = rng.randint(1, 3)
        p = rng.choice([2, 3])
        cap = p**width + rng.randint(0, p**width)
        values = [rng.randint(1, width) for _ in range(rng.randint(0, cap))]
        vectors = [[1 if i + 1 == v else 0 for i in range(width)] for v in values]
        res = dilworth.process_check(vectors, p, width=width)
        return res.hypothesis_holds, res.length_ok, {"values": values, "p": p}

    run_batch("process-length-bound", config.process_sequences, process_instance)

    def selector_recursion_instance():
        l = rng.choice([2, 3])
        w = _random_word(rng, l, rng.randint(12, 48))
        n = max_division_index(w) + 1
        d = max(_max_power_exponent(w) + 1, n)
        a, k = rng.choice([(1, 2), (1, 3), (2, 2), (2, 3)])
        out = dilworth.selector_recursion_audit(w, n, d, a, k)
        return out.applicable, out.ok, {"word": w.text, "n": n, "d": d, "a": a, "k": k, **out.details}

    run_batch("selector-run-recursion", config.selector_recursions, selector_recursion_instance)

    def cycle_instance_pair(min_m: int = 1):
        l = rng.choice([2, 3])
        w = _power_rich_word(rng, l, rng.randint(3, 6), 3, 8, 14)
        n = max(3, max_division_index(w) + 1)
        frags = height.essential_fragments(w, n)
        by_len: dict[int, list] = {}
        for f in frags.fragments:
            by_len.setdefault(len(f.root), []).append(f)
        candidates = [(m, fs) for m, fs in sorted(by_len.items()) if m >= min_m]
        if not candidates:
            return None
        m, fs = max(candidates, key=lambda item: (len(item[1]), item[0]))
        reps: list[tuple[int, Word]] = []
        seen = set()
        for f in fs:
            key = height._necklace_key(f.root)
            if key not in seen:
                seen.add(key)
                reps.append((len(reps), Word(key, w.alphabet)))
        poset = dilworth.build_cycle_poset(reps)
        decomposition = dilworth.chain_decompose(poset)
        if decomposition.chain_count > n - 1 and is_n_divisible(w, n) is None:
            return ("antichain", w, n, m, decomposition, None)
        return ("ok", w, n, m, decomposition, None)

    def cycle_window_instance():
        made = cycle_instance_pair()
        if made is None:
            return False, True, {}
        tag, w, n, m, decomposition, _ = made
        if tag == "antichain":
            return True, False, {"word": w.text, "n": n, "reason": "antichain exceeds n-1 on non-divisible host"}
        out = dilworth.cycle_window_audit(decomposition, n, m)
        return out.applicable, out.ok, {"word": w.text, "n": n, "m": m, **out.details}

    run_batch("cycle-window-bound", config.cycle_windows, cycle_window_instance)

    def cycle_recursion_instance():
        made = cycle_instance_pair(min_m=2)
        if made is None:
            return False, True, {}
        tag, w, n, m, decomposition, _ = made
        if tag == "antichain":
            return True, False, {"word": w.text, "n": n, "reason": "antichain exceeds n-1 on non-divisible host"}
        pairs = [(a, k) for a in range(1, m + 1) for k in (2, 3) if a * k <= m]
        if not pairs:
            return False, True, {}
        a, k = rng.choice(pairs)
        out = dilworth.cycle_recursion_audit(decomposition, n, n, a, k, m)
        return out.applicable, out.ok, {"word": w.text, "n": n, "m": m, "a": a, "k": k, **out.details}

    run_batch("cycle-run-recursion", config.cycle_recursions, cycle_recursion_instance)

    def excision_instance():
        l = rng.choice([2, 3])
        n = rng.choice([2, 3])
        w = _power_rich_word(rng, l, rng.randint(5, 9), 2, 4 * n + 1, 8 * n)
        trace = height.excise(w, n)
        detail = {"word": w.text, "n": n, "steps": len(trace.steps)}
        if trace.splice() != w:
            return True, False, {**detail, "reason": "splice mismatch"}
        from .periodicity import primitive_root

        for step in trace.steps:
            if primitive_root(step.root)[1] != 1:
                return True, False, {**detail, "reason": "cyclic root", "root": step.root.text}
        stats = height.fragment_statistics(trace)
        for audit_fn in (height.piece_count_audit, height.piece_weight_audit, height.disjoint_periodic_audit):
            out = audit_fn(stats)
            if not out.ok:
                return True, False, {**detail, "audit": audit_fn.__name__, **{k: str(v) for k, v in out.details.items()}}
        return stats.t >= 1, True, detail

    run_batch("excision-statistics", config.excision_traces, excision_instance)

    return HarnessReport(seed=config.seed, batches=batches)
