import json

import numpy as np
import pytest

from sl3char.exactlinalg import ExactComplex, Matrix3, SL3Pair, adjugate, embed_diag, random_pair
from sl3char.poly import P, Q, T5, PointEvaluator, var
from sl3char.variety import (
    CharPoint,
    OffSurfaceError,
    bilinear_form,
    branching_family,
    chi,
    chi_float,
    discriminant,
    distinguishing_pair,
    fiber_over,
    is_branching,
    is_singular,
    jacobian_system,
    lambda_det,
    lambda_matrix,
    polynomial_P,
    polynomial_Q,
    quadratic_roots,
    sample_branching,
    sample_pair,
    surface_polynomial,
    surface_residual,
)

I3 = Matrix3.identity()
THREES = CharPoint(*([ExactComplex(3)] * 9))


def test_P_and_Q_values():
    assert polynomial_P().eval(THREES) == ExactComplex(6)
    assert polynomial_P().total_degree() == 4
    assert polynomial_P().constant() == -3
    assert polynomial_Q().constant() == 9
    assert polynomial_Q().eval(THREES) == ExactComplex(9)
    assert polynomial_Q().total_degree() == 6
    assert len(polynomial_P()) == 10


def test_chi_examples():
    assert chi(SL3Pair(I3, I3)) == THREES
    pt = chi(SL3Pair(embed_diag(2, 3), embed_diag(5, 7)))
    assert pt.t5 == ExactComplex(3)


def test_hypersurface_and_q_oracle(pairs):
    for p in pairs:
        pt = chi(p)
        assert surface_residual(pt) == ExactComplex(0)
        A, B = p.A, p.B
        c1 = (A @ B @ adjugate(A) @ adjugate(B)).trace()
        c2 = (B @ A @ adjugate(B) @ adjugate(A)).trace()
        assert Q().eval(pt) == c1 * c2
        assert P().eval(pt) == c1 + c2


def test_residual_examples():
    assert surface_residual(THREES) == ExactComplex(0)
    off = THREES._replace(t5=ExactComplex(4))
    assert surface_residual(off) == ExactComplex(1)


def test_discriminant_and_branching(pairs):
    assert discriminant(THREES.base) == ExactComplex(0)
    assert is_branching(THREES)
    for k in range(5):
        assert is_branching(chi(sample_pair("sl2", 1, k)))
    assert not is_branching(chi(pairs[0]))


def test_branching_iff_t5_equals_tm5(pairs):
    for p in list(pairs[:4]) + [sample_pair("gl2", 3, k) for k in range(4)]:
        pt = chi(p)
        assert is_branching(pt) == (pt.t5 == P().eval(pt) - pt.t5)


def test_fiber(pairs):
    r1, r2 = fiber_over(THREES.base)
    assert r1 == pytest.approx(3) and r2 == pytest.approx(3)
    for p in pairs[:4]:
        pt = chi(p)
        roots = sorted(fiber_over(pt.base), key=lambda z: (z.real, z.imag))
        expected = sorted([complex(pt.t5), complex(P().eval(pt) - pt.t5)], key=lambda z: (z.real, z.imag))
        assert roots == pytest.approx(expected, rel=1e-9)
        pe, qe = complex(P().eval(pt)), complex(Q().eval(pt))
        assert roots[0] + roots[1] == pytest.approx(pe, rel=1e-9)
        assert roots[0] * roots[1] == pytest.approx(qe, rel=1e-9)


def test_quadratic_roots_stable_at_cancellation():
    # roots 1e8 and 1e-8: the naive formula loses the small one entirely
    r1, r2 = quadratic_roots(1e8 + 1e-8, 1.0)
    assert abs(r1 - 1e8) < 1e-6
    assert abs(r2 - 1e-8) < 1e-20
    assert quadratic_roots(6, 9) == (3, 3)


def test_jacobian_system():
    jac = jacobian_system()
    assert len(jac) == 9
    assert jac.generators[T5] == var(T5).scale(2) - P()
    for i, g in enumerate(jac.generators[:8]):
        expected = (-var(T5) * P().partial(i) + Q().partial(i))
        assert g == expected
    # bigrade of the i-th generator is minus the bigrade of t_i
    from sl3char.poly import VAR_BIGRADES
    for i, g in enumerate(jac.generators[:8]):
        a, b = VAR_BIGRADES[i]
        assert g.bigrade() == ((-a) % 3, (-b) % 3)


def test_is_singular_families(pairs):
    for fam in ("gl2", "diag", "sl2"):
        for k in range(5):
            assert is_singular(chi(sample_pair(fam, 5, k)))
    assert not is_singular(chi(pairs[0]))


def test_is_singular_off_surface():
    with pytest.raises(OffSurfaceError):
        is_singular(THREES._replace(t5=ExactComplex(4)))


def test_branching_family():
    s = branching_family(2, 1)
    assert s.partial_t1 == pytest.approx(-343 / 64, abs=1e-9)
    assert s.partial_tm1 == pytest.approx(343 / 128, abs=1e-9)
    assert s.expected_t1 == pytest.approx(-343 / 64)
    assert abs(surface_residual(s.point)) < 1e-9
    assert abs(discriminant(s.point.base)) < 1e-9
    assert max(abs(v) for v in s.jacobian[2:]) < 1e-9
    assert not is_singular(s.point)
    with pytest.raises(ValueError):
        branching_family(1, 1)
    with pytest.raises(ValueError):
        branching_family(2, 0)


def test_branching_family_closed_forms():
    for a, c in [(3, 2), (1.5 + 0.5j, -1), (-2, 0.5j)]:
        s = branching_family(a, c)
        assert s.partial_t1 == pytest.approx(s.expected_t1, rel=1e-8)
        assert s.partial_tm1 == pytest.approx(s.expected_tm1, rel=1e-8)


def test_sample_branching():
    s = sample_branching(1, 0)
    assert abs(surface_residual(s.point)) < 1e-6 * max(1, abs(s.point.t5) ** 2)


def test_lambda():
    assert all(x == ExactComplex(0) for row in lambda_matrix(SL3Pair(I3, I3)) for x in row)
    assert lambda_det(SL3Pair(I3, I3)) == ExactComplex(0)
    for k in range(5):
        p = random_pair(9, k)
        assert lambda_det(p) == ExactComplex(0)
        x = p.A
        assert lambda_matrix(p)[0][0] == (x @ x).trace() * 3 - x.trace() ** 2
        assert bilinear_form(x, p.B) == (x @ p.B).trace() * 3 - x.trace() * p.B.trace()


def test_distinguishing_pair():
    a, b = distinguishing_pair()
    assert max(abs(complex(x) - complex(y)) for x, y in zip(a.base, b.base)) < 1e-9
    assert abs(complex(a.t5) - complex(b.t5)) > 1e-3
    assert abs(surface_residual(a)) < 1e-9 and abs(surface_residual(b)) < 1e-9


def test_sl2_restriction():
    for k in range(10):
        pt = chi(sample_pair("sl2", 4, k))
        assert pt.t5 * 2 == P().eval(pt)


def test_chi_float_matches_exact(pairs):
    p = pairs[3]
    from sl3char.exactlinalg import float_matrix
    f = chi_float(float_matrix(p.A), float_matrix(p.B))
    assert [complex(x) for x in f] == pytest.approx([complex(x) for x in chi(p)], rel=1e-9)


def test_charpoint_json(pairs):
    pt = chi(pairs[0])
    data = json.loads(json.dumps(pt.to_json()))
    assert list(data) == ["t1", "tm1", "t2", "tm2", "t3", "tm3", "t4", "tm4", "t5"]
    assert CharPoint.from_json(data) == pt
    fpt = distinguishing_pair()[0]
    back = CharPoint.from_json(json.loads(json.dumps(fpt.to_json())))
    assert [complex(x) for x in back] == [complex(x) for x in fpt]
    assert CharPoint.from_json({k: 3 for k in data}) == THREES
    with pytest.raises(ValueError):
        CharPoint.from_json({"t1": 3})


def test_surface_polynomial_free():
    f = surface_polynomial()
    assert f.total_degree() == 6
    assert f.normal_form().is_zero()
