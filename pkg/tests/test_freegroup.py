import pytest
from hypothesis import given, strategies as st

from sl3char.freegroup import (
    IDENTITY,
    Letter,
    Word,
    WordSyntaxError,
    cyclic_reduce,
    exponent_sums,
    invert,
    length,
    parse_word,
    weighted_length,
)

signed = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=14)


def test_parse_examples():
    assert parse_word("a*b").letters == (Letter(1, 1), Letter(2, 1))
    assert parse_word("a*A") == IDENTITY
    assert parse_word("a^2*B*a^-1").letters == (Letter(1, 2), Letter(2, -1), Letter(1, -1))


def test_parse_separators_and_identity():
    assert parse_word("a b  A") == parse_word("a*b*A")
    assert parse_word("1") == IDENTITY
    assert parse_word("") == IDENTITY
    assert parse_word("a a a") == parse_word("a^3")
    assert parse_word("A^-2") == parse_word("a^2")


@pytest.mark.parametrize("text", ["a*x", "a^0", "a^", "a**b", "*a", "a*", "a^b", "c"])
def test_parse_errors(text):
    with pytest.raises(WordSyntaxError):
        parse_word(text)


def test_printer():
    assert str(parse_word("A*A*b")) == "a^-2*b"
    assert str(IDENTITY) == "1"


@given(signed)
def test_print_parse_round_trip(seq):
    w = Word.from_signed(seq)
    assert parse_word(str(w)) == w


@given(signed)
def test_freely_reduced(seq):
    w = Word.from_signed(seq)
    gens = [l.generator for l in w.letters]
    assert all(g != h for g, h in zip(gens, gens[1:]))
    assert all(l.exponent != 0 for l in w.letters)


def test_invert_examples():
    assert invert(IDENTITY) == IDENTITY
    assert invert(parse_word("a*b")) == parse_word("B*A")


@given(signed)
def test_invert_properties(seq):
    w = Word.from_signed(seq)
    assert invert(invert(w)) == w
    assert length(invert(w)) == length(w)
    assert w * invert(w) == IDENTITY


def test_cyclic_reduce_examples():
    core, c = cyclic_reduce(parse_word("a*b*A"))
    assert core == parse_word("b") and c == parse_word("a")
    core, c = cyclic_reduce(parse_word("a*b"))
    assert core == parse_word("a*b") and c == IDENTITY
    w = parse_word("A*b*a^2*B*a")
    core, c = cyclic_reduce(w)
    assert c * core * invert(c) == w


@given(signed)
def test_cyclic_reduce_properties(seq):
    w = Word.from_signed(seq)
    core, c = cyclic_reduce(w)
    assert c * core * invert(c) == w
    assert cyclic_reduce(core) == (core, IDENTITY)
    if len(core.letters) > 1:
        assert core.letters[0].generator != core.letters[-1].generator


def test_lengths():
    assert length(parse_word("a*b")) == 2
    assert length(parse_word("a^3*b^-2")) == 5
    assert length(IDENTITY) == 0
    assert weighted_length(parse_word("a^3*b^-2")) == 7
    assert weighted_length(parse_word("a*b")) == 2
    assert weighted_length(parse_word("A*B")) == 4


@given(signed)
def test_weighted_length_bound(seq):
    w = Word.from_signed(seq)
    assert weighted_length(w) >= length(w)
    positive = all(l.exponent > 0 for l in w.letters)
    assert (weighted_length(w) == length(w)) == positive


def test_exponent_sums():
    assert exponent_sums(parse_word("a*b*A")) == (0, 1)
    assert exponent_sums(parse_word("A*B*A")) == (4, 2)


def test_substitute():
    eta = (parse_word("a*b"), parse_word("b"))
    assert parse_word("a*b").substitute(eta) == parse_word("a*b^2")
    assert parse_word("a*b*A").substitute(eta) == parse_word("a*b*A")
    assert parse_word("A").substitute(eta) == parse_word("B*A")
