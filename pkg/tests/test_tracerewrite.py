import random

import pytest

from sl3char.exactlinalg import adjugate, evaluate_word
from sl3char.freegroup import IDENTITY, Word, cyclic_reduce, exponent_sums, invert, parse_word
from sl3char.poly import P, PointEvaluator, parse_polynomial, var
from sl3char.tracerewrite import (
    FormalElement,
    Reducer,
    RewriteBudgetExceeded,
    RewriteTrace,
    canonical_key,
    eliminate_powers,
    gather_repeats,
    identity_suite,
    is_terminal,
    reduce_trace,
)
from sl3char.variety import chi
from sl3char.verify import enumerate_words, random_words


def rand_word(rng, n):
    seq = []
    while len(seq) < n:
        s = rng.choice([1, -1, 2, -2])
        if not seq or s != -seq[-1]:
            seq.append(s)
    return Word.from_signed(seq)


def assert_matches(w, pairs):
    poly = reduce_trace(w)
    for p in pairs:
        assert PointEvaluator(chi(p))(poly) == evaluate_word(w, p).trace(), str(w)


def test_reduce_examples():
    assert str(reduce_trace("a")) == "t(1)"
    assert str(reduce_trace("a^2")) == "t(1)^2 - 2*t(-1)"
    assert str(reduce_trace("a^3")) == "t(1)^3 - 3*t(1)*t(-1) + 3"
    assert reduce_trace("b*a*B*A") == P() - var(8)
    assert reduce_trace("a*b*A*B") == var(8)
    assert str(reduce_trace("a*A")) == "3"
    assert str(reduce_trace("")) == "3"


def test_generator_words():
    names = ["a", "A", "b", "B", "a*b", "A*B", "a*B", "A*b", "a*b*A*B"]
    for i, n in enumerate(names):
        assert reduce_trace(n) == var(i)
    # the other cyclic orders of the same words
    assert reduce_trace("B*a") == var(6)
    assert reduce_trace("b*A") == var(7)
    assert reduce_trace("B*A") == var(5)


def test_eliminate_powers():
    e = eliminate_powers(FormalElement.of("a^2"))
    assert e == FormalElement({"a": var(0), "": -var(1), "A": 1})
    assert eliminate_powers(FormalElement.of("a")) == FormalElement.of("a")
    e = eliminate_powers(FormalElement.of("a^-2"))
    assert e == FormalElement({"A": var(1), "": -var(0), "a": 1})


def test_eliminate_powers_matrix_value(pairs):
    for text in ["a^4*b^-3", "B^2*a^-5"]:
        e = eliminate_powers(FormalElement.of(text))
        assert all(abs(l.exponent) == 1 for w in e.terms for l in w.letters)
        for p in pairs[:4]:
            assert e.evaluate(p, chi(p)) == evaluate_word(parse_word(text), p)


def test_gather_repeats_matrix_oracle(pairs):
    rng = random.Random(7)
    for _ in range(8):
        w = rand_word(rng, rng.randint(3, 7))
        e = gather_repeats(FormalElement.of(w))
        assert all(is_terminal(u) for u in e.terms)
        for p in pairs[:6]:
            assert e.evaluate(p, chi(p)) == evaluate_word(w, p)


def test_gather_repeats_fixed_point():
    e = FormalElement.of("a*b*A*B")
    assert gather_repeats(e) == e


def test_cyclic_square(pairs):
    assert reduce_trace("a*b*a*b") == parse_polynomial("t(3)^2 - 2*t(-3)")
    assert_matches(parse_word("a*b*a*b*a*b"), pairs)


def test_oracle_short_words(pairs):
    for w in enumerate_words(5):
        assert_matches(w, pairs[:3])


def test_oracle_long_words(pairs):
    for w in random_words(11, 6, 9, 16):
        assert_matches(w, pairs[:2])


def test_conjugation_invariance():
    rng = random.Random(8)
    for _ in range(15):
        u, w = rand_word(rng, rng.randint(1, 4)), rand_word(rng, rng.randint(1, 6))
        assert reduce_trace(u * w * invert(u)) == reduce_trace(w)


def test_cyclic_invariance():
    rng = random.Random(9)
    for _ in range(10):
        core, _ = cyclic_reduce(rand_word(rng, 7))
        seq = core.signed()
        for k in range(len(seq)):
            assert reduce_trace(Word.from_signed(seq[k:] + seq[:k])) == reduce_trace(core)


def test_inverse_word(pairs):
    rng = random.Random(10)
    for _ in range(6):
        w = rand_word(rng, 6)
        for p in pairs[:3]:
            lhs = PointEvaluator(chi(p))(reduce_trace(invert(w)))
            assert lhs == adjugate(evaluate_word(w, p)).trace()


def test_bigrade_consistency():
    rng = random.Random(11)
    for _ in range(30):
        w = rand_word(rng, rng.randint(1, 9))
        g1, g2 = exponent_sums(w)
        assert reduce_trace(w).bigrades() <= {(g1 % 3, g2 % 3)}


def test_commutator_sum():
    assert reduce_trace("a*b*A*B") + reduce_trace("b*a*B*A") == P()


def test_streaming_agrees_with_direct():
    direct = Reducer(stream_threshold=100)
    stream = Reducer(stream_threshold=4)
    rng = random.Random(12)
    for _ in range(6):
        w = rand_word(rng, rng.randint(9, 12))
        assert direct.trace(w) == stream.trace(w)


def test_trace_log_and_replay():
    log = RewriteTrace()
    w = parse_word("a*b*a*B*a*b^2")
    poly = reduce_trace(w, trace=log)
    assert log.steps
    assert all('"rule"' in line for line in log.json_lines())
    assert log.replay(w) == poly


def test_budget_guard():
    with pytest.raises(RewriteBudgetExceeded) as info:
        reduce_trace("a*b*a*B*a*b^2*A*b", trace=RewriteTrace(), budget=3)
    assert info.value.trace is not None


def test_canonical_key_is_rotation_invariant():
    assert canonical_key(parse_word("a*b*A")) == canonical_key(parse_word("b"))
    assert canonical_key(parse_word("a*b*B")) == canonical_key(parse_word("a"))
    assert canonical_key(parse_word("b*a")) == canonical_key(parse_word("a*b"))
    assert canonical_key(IDENTITY) == ()


def test_identity_suite_small():
    report = identity_suite(seed=3, trials=5)
    assert report["ok"], [c for c in report["checks"] if not c["ok"]]
    assert {c["name"] for c in report["checks"]} >= {
        "cayley_hamilton", "adjugate_trace", "determinant_trace", "partial_polarization",
        "pol_consistency", "full_polarization", "right_multiplied_cayley_hamilton",
        "commutator_trace", "power_reduction", "three_x2zy2", "six_products",
    }
