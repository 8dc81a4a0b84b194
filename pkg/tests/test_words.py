import pytest
from hypothesis import given, settings, strategies as st

from divwords.errors import InputError, RangeError
from divwords.words import (
    Alphabet,
    BOTTOM,
    LexOutcome,
    TailRef,
    Word,
    compare,
    k_tail,
    leftmost_first,
)

A3 = Alphabet(3)


def W(text, l=3):
    return Word.from_text(text, l)


words = st.builds(
    lambda letters: Word(tuple(letters), A3),
    st.lists(st.integers(min_value=1, max_value=3), max_size=8),
)


def test_compare_examples():
    assert compare(W("ab"), W("ac")) is LexOutcome.LESS
    assert compare(W("a"), W("ab")) is LexOutcome.INCOMPARABLE_PREFIX
    assert compare(W("ba"), W("ba")) is LexOutcome.EQUAL
    assert compare(W("b"), W("ab")) is LexOutcome.GREATER


def test_compare_rejects_mixed_alphabets():
    with pytest.raises(InputError):
        compare(Word((1,), Alphabet(2)), Word((1,), Alphabet(3)))


@given(words, words)
def test_compare_antisymmetric(u, v):
    a, b = compare(u, v), compare(v, u)
    flips = {
        LexOutcome.LESS: LexOutcome.GREATER,
        LexOutcome.GREATER: LexOutcome.LESS,
        LexOutcome.EQUAL: LexOutcome.EQUAL,
        LexOutcome.INCOMPARABLE_PREFIX: LexOutcome.INCOMPARABLE_PREFIX,
    }
    assert b is flips[a]


@given(words, words, words)
def test_compare_transitive_on_comparable_triples(u, v, w):
    if compare(u, v) is LexOutcome.LESS and compare(v, w) is LexOutcome.LESS:
        assert compare(u, w) is LexOutcome.LESS


@given(words, words)
def test_incomparable_iff_strict_prefix(u, v):
    naive = u.letters != v.letters and (
        u.letters == v.letters[:len(u)] or v.letters == u.letters[:len(v)]
    )
    assert (compare(u, v) is LexOutcome.INCOMPARABLE_PREFIX) == naive


@given(words, words, words, words)
def test_appending_suffix_preserves_comparable_outcomes(u, v, s, t):
    outcome = compare(u, v)
    if outcome in (LexOutcome.LESS, LexOutcome.GREATER):
        assert compare(u + s, v + t) is outcome


@given(words)
def test_bottom_below_every_word(w):
    assert BOTTOM < w
    assert BOTTOM == BOTTOM
    assert not (BOTTOM < BOTTOM)


def test_k_tail_examples():
    assert k_tail(W("abcde", 5), 1, 3).text == "bcd"
    assert k_tail(W("abc"), 0, 3).text == "abc"
    with pytest.raises(RangeError):
        k_tail(W("abc"), 2, 2)


def test_tail_ref_snapshot_and_bounds():
    source = W("abcde", 5)
    assert TailRef(source, 2).word().text == "cde"
    assert TailRef(source, 1, truncation=3).word().text == "bcd"
    assert len(TailRef(source, 3)) == 2
    with pytest.raises(RangeError):
        TailRef(source, 5)
    with pytest.raises(RangeError):
        TailRef(source, 3, truncation=3)


def test_leftmost_first():
    source = W("abcdef", 6)
    assert leftmost_first(TailRef(source, 2), TailRef(source, 5))
    assert not leftmost_first(TailRef(source, 5), TailRef(source, 2))
    assert not leftmost_first(TailRef(source, 3), TailRef(source, 3))
    with pytest.raises(InputError):
        leftmost_first(TailRef(source, 0), TailRef(W("xy", 26), 0))


def test_text_round_trip():
    assert W("bca").text == "bca"
    dotted = Word.from_text("2.13.1", 30)
    assert dotted.letters == (2, 13, 1)
    assert dotted.text == "2.13.1"
    assert Word.from_text("", 4).letters == ()


def test_word_validates_ranks():
    with pytest.raises(InputError):
        Word((0,), A3)
    with pytest.raises(InputError):
        Word((4,), A3)
    with pytest.raises(InputError):
        Alphabet(0)
