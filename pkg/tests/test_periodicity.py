import random

import pytest

from conftest import all_words
from oracles import brute_find_power
from divwords.errors import InputError
from divwords.periodicity import (
    PowerOccurrence,
    WordCycle,
    distinct_factors,
    find_power,
    primitive_root,
    root_from_few_factors,
    rotations,
)
from divwords.words import Alphabet, Word


def W(text, l=3):
    return Word.from_text(text, l)


def test_find_power_examples():
    occ = find_power(W("abab"), 2)
    assert (occ.start, occ.root.text, occ.exponent) == (0, "ab", 2)
    assert occ.verify()
    assert find_power(W("abc"), 2) is None
    assert find_power(W("aabaabaa"), 3) is None
    with pytest.raises(InputError):
        find_power(W("abc"), 1)


def test_find_power_tie_break_leftmost_then_shortest():
    # "aabb": squares "aa" at 0 and "bb" at 2; leftmost wins
    occ = find_power(W("aabb"), 2)
    assert (occ.start, occ.root.text) == (0, "a")
    # "abab" also contains "baba"? no; whole-word square root "ab" at 0
    occ = find_power(W("aaaa"), 2)
    assert (occ.start, occ.root.text, occ.exponent) == (0, "a", 2)


def test_find_power_matches_brute_force_exhaustively():
    for w in all_words(2, 1, 10):
        for d in (2, 3):
            got = find_power(w, d)
            expect = brute_find_power(w.letters, d)
            if expect is None:
                assert got is None, (w.text, d)
            else:
                assert got is not None and (got.start, len(got.root)) == expect, (w.text, d)


def test_find_power_matches_brute_force_random():
    rng = random.Random(7)
    for _ in range(300):
        l = rng.choice([2, 3])
        w = Word(tuple(rng.randint(1, l) for _ in range(rng.randint(1, 40))), Alphabet(l))
        for d in (2, 3, 4):
            got = find_power(w, d)
            expect = brute_find_power(w.letters, d)
            assert (got is None) == (expect is None)
            if got is not None:
                assert (got.start, len(got.root)) == expect


def test_primitive_root_examples():
    root, k = primitive_root(W("ababab"))
    assert (root.text, k) == ("ab", 3)
    root, k = primitive_root(W("abc"))
    assert (root.text, k) == ("abc", 1)
    root, k = primitive_root(W("aaaa"))
    assert (root.text, k) == ("a", 4)
    with pytest.raises(InputError):
        primitive_root(Word((), Alphabet(2)))


def test_primitive_root_idempotent():
    rng = random.Random(11)
    for _ in range(200):
        w = Word(tuple(rng.randint(1, 2) for _ in range(rng.randint(1, 24))), Alphabet(2))
        root, k = primitive_root(w)
        assert root.letters * k == w.letters
        again, k2 = primitive_root(root)
        assert k2 == 1 and again == root


def test_distinct_factors_examples():
    assert distinct_factors(W("aaaa"), 2) == 1
    assert distinct_factors(W("abab"), 2) == 2
    assert distinct_factors(W("abcd", 4), 2) == 3
    with pytest.raises(InputError):
        distinct_factors(W("ab"), 3)


def test_root_from_few_factors_examples():
    assert root_from_few_factors(W("ababab"), 2, 3).text == "ab"
    assert root_from_few_factors(W("aaa"), 1, 3).text == "a"
    with pytest.raises(InputError):
        root_from_few_factors(W("abcabc"), 2, 3)  # more than 2 distinct factors
    with pytest.raises(InputError):
        root_from_few_factors(W("abab"), 2, 3)  # length mismatch


def test_few_factors_imply_period_exhaustive():
    # over l=2: whenever |w| = k*t and w has at most k distinct length-k
    # factors, w must equal its k-prefix to the t-th power
    for w in all_words(2, 2, 12):
        L = len(w)
        for k in range(1, L):
            if L % k:
                continue
            t = L // k
            if t < 2 or distinct_factors(w, k) > k:
                continue
            root = root_from_few_factors(w, k, t)
            assert root.letters == w.letters[:k]


def test_few_factors_imply_period_random():
    rng = random.Random(3)
    hits = 0
    for _ in range(500):
        k = rng.randint(1, 4)
        t = rng.randint(2, 5)
        base = tuple(rng.randint(1, 3) for _ in range(k))
        w = Word(base * t, Alphabet(3))
        if distinct_factors(w, k) <= k:
            hits += 1
            root_from_few_factors(w, k, t)
    assert hits == 500  # true periodic words always satisfy the hypothesis


def test_word_cycle():
    cycle = WordCycle.from_word(W("abab"))
    assert cycle.base.text == "ab"
    assert [s.text for s in cycle.shifts] == ["ab", "ba"]
    assert len(set(cycle.shifts)) == len(cycle.shifts)
    with pytest.raises(InputError):
        WordCycle(W("abab"))
    assert [r.text for r in rotations(W("abc"))] == ["abc", "bca", "cab"]


def test_power_occurrence_verify_rejects_bad_windows():
    w = W("abab")
    good = PowerOccurrence(w, 0, W("ab"), 2)
    assert good.verify()
    bad = PowerOccurrence(w, 1, W("ab"), 2)
    assert not bad.verify()
