from fractions import Fraction

import numpy as np
import pytest

from sl3char.exactlinalg import (
    DegenerateInputError,
    ExactComplex,
    Matrix3,
    SL3Pair,
    adjugate,
    det,
    embed_diag,
    embed_gl2,
    evaluate_word,
    float_evaluate_word,
    float_matrix,
    random_sl3,
    trial_rng,
    random_gaussian,
)
from sl3char.freegroup import parse_word

I3 = Matrix3.identity()


def general(seed):
    rng = trial_rng(seed, "general")
    return Matrix3([[random_gaussian(rng) for _ in range(3)] for _ in range(3)])


def test_exact_complex_normalization_and_parse():
    z = ExactComplex(Fraction(2, 4), Fraction(-6, 8))
    assert z.re == Fraction(1, 2) and z.im == Fraction(-3, 4)
    assert ExactComplex.parse("1/2-3/4i") == z
    assert ExactComplex.parse("7") == ExactComplex(7)
    assert ExactComplex.parse(-3) == ExactComplex(-3)
    assert ExactComplex.parse("i") == ExactComplex(0, 1)
    assert str(ExactComplex(0, Fraction(1, 2))) == "0+1/2i"
    assert str(ExactComplex(5, Fraction(-2, 3))) == "5-2/3i"
    for text in ["1/2+3i", "-4/7-1/3i", "0", "-5"]:
        assert ExactComplex.parse(str(ExactComplex.parse(text))) == ExactComplex.parse(text)


@pytest.mark.parametrize("bad", ["1/0", "abc", "1//2", "2+", ""])
def test_exact_complex_parse_errors(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        ExactComplex.parse(bad)


def test_exact_complex_field_ops():
    z = ExactComplex(Fraction(2, 3), -1)
    w = ExactComplex(1, Fraction(5, 7))
    assert (z * w) / w == z
    assert z - z == ExactComplex(0)
    assert z ** 3 == z * z * z
    assert z ** -2 * z ** 2 == ExactComplex(1)
    assert complex(z * w) == pytest.approx(complex(z) * complex(w))


def test_det_examples():
    assert det(I3) == ExactComplex(1)
    assert det(embed_diag(2, 3)) == ExactComplex(1)
    for s in range(10):
        m = general(s)
        assert det(m, 0) == det(m, 1) == det(m, 2)


def test_adjugate():
    assert adjugate(I3) == I3
    for s in range(10):
        m = general(s)
        d = det(m)
        assert m @ adjugate(m) == I3.scale(d)
        assert adjugate(m) @ m == I3.scale(d)
        n = general(s + 100)
        assert adjugate(m @ n) == adjugate(n) @ adjugate(m)


def test_trace_formulas():
    for s in range(10):
        m = general(s)
        t1, t2, t3 = m.trace(), (m @ m).trace(), (m @ m @ m).trace()
        assert det(m) == t3 * Fraction(1, 3) + t1 ** 3 * Fraction(1, 6) - t1 * t2 * Fraction(1, 2)
    for s in range(10):
        m = random_sl3(s)
        assert adjugate(m).trace() == (m.trace() ** 2 - (m @ m).trace()) * Fraction(1, 2)


def test_random_sl3_contract():
    for s in range(20):
        assert det(random_sl3(s, 7)) == ExactComplex(1)
    assert random_sl3(5, 6) == random_sl3(5, 6)
    assert random_sl3(5, 6) != random_sl3(6, 6)
    assert random_sl3(5, 0) == I3


def test_random_sl3_is_not_triangular():
    # every entry should generically be nonzero
    m = random_sl3(1, 6)
    assert sum(1 for x in m.entries if x.is_zero()) <= 2


def test_embeddings():
    assert embed_gl2(1, 0, 0, 1) == I3
    assert det(embed_gl2(2, 1, 1, 1)) == ExactComplex(1)
    m = embed_gl2(2, 1, 1, 1)
    assert m.rows()[2][2] == ExactComplex(1)
    assert embed_diag(1, 1) == I3
    with pytest.raises(DegenerateInputError):
        embed_gl2(1, 2, 2, 4)
    with pytest.raises(DegenerateInputError):
        embed_diag(0, 3)
    x, y = embed_diag(2, 3), embed_diag(5, 7)
    p = SL3Pair(x, y)
    assert evaluate_word(parse_word("a*b*A*B"), p) == I3


def test_pair_validation():
    with pytest.raises(DegenerateInputError, match="B"):
        SL3Pair(I3, I3.scale(2))


def test_evaluate_word(pairs):
    p = pairs[0]
    assert evaluate_word(parse_word(""), p) == I3
    assert evaluate_word(parse_word("a*A"), p) == I3
    assert evaluate_word(parse_word("a*b*A*B"), SL3Pair(I3, I3)).trace() == ExactComplex(3)
    u, v = parse_word("a*B^2"), parse_word("b*A*b")
    assert evaluate_word(u * v, p) == evaluate_word(u, p) @ evaluate_word(v, p)
    assert evaluate_word(parse_word("a^-3"), p) == adjugate(p.A @ p.A @ p.A)


def test_json_round_trip(pairs):
    p = pairs[1]
    q = SL3Pair.from_json(p.to_json())
    assert q.A == p.A and q.B == p.B
    data = {"A": [["1", "0", "0"], ["0", 1, "0"], ["0", "0", "1"]], "B": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}
    assert SL3Pair.from_json(data).A == I3


def test_float_path_matches_exact(pairs):
    p = pairs[2]
    A, B = float_matrix(p.A), float_matrix(p.B)
    w = parse_word("a^2*B*a*b^-3")
    exact = complex(evaluate_word(w, p).trace())
    assert np.trace(float_evaluate_word(w, A, B)) == pytest.approx(exact, rel=1e-9)
