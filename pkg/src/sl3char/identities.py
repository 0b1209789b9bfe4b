"""Exact checks of the Cayley-Hamilton family of matrix trace identities.

Each identity is a function of a random generator returning ``(lhs, rhs)``;
the suite evaluates both sides on fresh random exact matrices and compares
them exactly. Identities that hold for arbitrary matrices are checked on
general Gaussian-rational matrices; the ones that use inverses are checked on
determinant-one matrices.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Union

from .exactlinalg import (
    ExactComplex,
    Matrix3,
    _transvection_product,
    adjugate,
    det,
    random_gaussian,
    trial_rng,
)

__all__ = ["IDENTITIES", "pol_matrix", "identity_suite", "check_identity"]

Value = Union[Matrix3, ExactComplex]
I3 = Matrix3.identity()
HALF = Fraction(1, 2)


def tr(x: Matrix3) -> ExactComplex:
    return x.trace()


def _general(rng: random.Random) -> Matrix3:
    return Matrix3([[random_gaussian(rng) for _ in range(3)] for _ in range(3)])


def _unimodular(rng: random.Random) -> Matrix3:
    return _transvection_product(rng, 6)


def pol_matrix(x: Matrix3, y: Matrix3) -> Matrix3:
    """Trace-coefficient expression equal to ``y x^2 + x^2 y + x y x``."""
    x2 = x @ x
    tx, ty, tx2 = tr(x), tr(y), tr(x2)
    txy = tr(x @ y)
    out = x2.scale(ty) + (y @ x).scale(tx) + (x @ y).scale(tx) - x.scale(tx * ty) + x.scale(txy)
    out = out + I3.scale(tr(y @ x2) - tx * txy)
    inner = y.scale(tx * tx) - y.scale(tx2) - I3.scale(ty * tx * tx) + I3.scale(ty * tx2)
    return out - inner.scale(HALF)


def _cayley_hamilton(rng):
    x = _general(rng)
    x2 = x @ x
    lhs = x2 @ x - x2.scale(tr(x)) + x.scale(tr(adjugate(x))) - I3.scale(det(x))
    return lhs, Matrix3.zero()


def _adjugate_trace(rng):
    x = _general(rng)
    return tr(adjugate(x)), (tr(x) * tr(x) - tr(x @ x)) * HALF


def _det_trace(rng):
    x = _general(rng)
    t1, t2, t3 = tr(x), tr(x @ x), tr(x @ x @ x)
    return det(x), t3 * Fraction(1, 3) + t1 * t1 * t1 * Fraction(1, 6) - t1 * t2 * HALF


def _partial_polarization(rng):
    x, y = _general(rng), _general(rng)
    x2 = x @ x
    return y @ x2 + x2 @ y + x @ y @ x, pol_matrix(x, y)


def _pol_consistency(rng):
    # substituting x -> x + z into the definition agrees with the expanded pol
    x, y, z = _general(rng), _general(rng), _general(rng)
    s = x + z
    s2 = s @ s
    return y @ s2 + s2 @ y + s @ y @ s, pol_matrix(s, y)


def _full_polarization(rng):
    x, y, z = _general(rng), _general(rng), _general(rng)
    lhs = x @ z @ y + z @ x @ y + y @ x @ z + y @ z @ x + x @ y @ z + z @ y @ x
    rhs = pol_matrix(x + z, y) - pol_matrix(x, y) - pol_matrix(z, y)
    return lhs, rhs


def _full_polarization_zero(rng):
    x, y = _general(rng), _general(rng)
    z = Matrix3.zero()
    return Matrix3.zero(), pol_matrix(x + z, y) - pol_matrix(x, y) - pol_matrix(z, y)


def _right_multiplied_ch(rng):
    x, y = _unimodular(rng), _unimodular(rng)
    xi = adjugate(x)
    lhs = x @ x @ y - (x @ y).scale(tr(x)) + y.scale(tr(xi)) - xi @ y
    return lhs, Matrix3.zero()


def _commutator_trace(rng):
    x, y = _unimodular(rng), _unimodular(rng)
    X, Y = adjugate(x), adjugate(y)
    lhs = tr(x @ y @ X @ Y)
    rhs = (
        -tr(y @ x @ Y @ X)
        + tr(x) * tr(X) * tr(y) * tr(Y)
        + tr(x) * tr(X)
        + tr(y) * tr(Y)
        + tr(x @ y) * tr(X @ Y)
        + tr(x @ Y) * tr(X @ y)
        - tr(X) * tr(y) * tr(x @ Y)
        - tr(x) * tr(Y) * tr(X @ y)
        - tr(x) * tr(y) * tr(X @ Y)
        - tr(x @ y) * tr(X) * tr(Y)
        - 3
    )
    return lhs, rhs


def _power_reduction(rng):
    u, x, v = _unimodular(rng), _unimodular(rng), _unimodular(rng)
    n = rng.randint(2, 6)
    X = adjugate(x)

    def t(k):
        m = I3
        for _ in range(abs(k)):
            m = m @ (x if k > 0 else X)
        return tr(u @ m @ v)

    return t(n), tr(x) * t(n - 1) - tr(X) * t(n - 2) + t(n - 3)


def _x2zy2(rng):
    x, y, z = _general(rng), _general(rng), _general(rng)
    lhs = x @ x @ z @ y @ y
    rhs = (x @ y @ y @ x @ z).scale(-1) - x @ y @ x @ z @ y + x @ pol_matrix(y, x @ z)
    return lhs, rhs


def _x2zy2_expanded(rng):
    x, y, z = _general(rng), _general(rng), _general(rng)
    x2, y2 = x @ x, y @ y
    lhs = x2 @ z @ y2
    rhs = (y2 @ x2 + x2 @ y2 - pol_matrix(x, y2)) @ z
    rhs = rhs + (y @ x2 + x2 @ y - pol_matrix(x, y)) @ z @ y + x @ pol_matrix(y, x @ z)
    return lhs, rhs


def _three_x2zy2(rng):
    x, y, z = _general(rng), _general(rng), _general(rng)
    lhs = (x @ x @ z @ y @ y).scale(3)
    rhs = (
        pol_matrix(y, x @ x @ z)
        + x @ pol_matrix(y, x @ z)
        - pol_matrix(x, y @ y) @ z
        - pol_matrix(x, y) @ z @ y
        + x @ x @ pol_matrix(y, z)
    )
    return lhs, rhs


def _six_products(rng):
    x, y, z, u, v, w = (_general(rng) for _ in range(6))
    a, b, c = x @ y, v @ w, z @ u
    lhs = a @ b @ c + b @ a @ c + c @ a @ b + c @ b @ a + a @ c @ b + b @ c @ a
    rhs = pol_matrix(a + b, c) - pol_matrix(a, c) - pol_matrix(b, c)
    return lhs, rhs


IDENTITIES: dict[str, Callable[[random.Random], tuple[Value, Value]]] = {
    "cayley_hamilton": _cayley_hamilton,
    "adjugate_trace": _adjugate_trace,
    "determinant_trace": _det_trace,
    "partial_polarization": _partial_polarization,
    "pol_consistency": _pol_consistency,
    "full_polarization": _full_polarization,
    "full_polarization_z0": _full_polarization_zero,
    "right_multiplied_cayley_hamilton": _right_multiplied_ch,
    "commutator_trace": _commutator_trace,
    "power_reduction": _power_reduction,
    "x2zy2": _x2zy2,
    "x2zy2_expanded": _x2zy2_expanded,
    "three_x2zy2": _three_x2zy2,
    "six_products": _six_products,
}


def _json(v: Value):
    return v.to_json() if isinstance(v, Matrix3) else str(v)


def check_identity(name: str, seed: int, trials: int) -> dict:
    fn = IDENTITIES[name]
    failures = []
    for k in range(trials):
        rng = trial_rng(seed, f"{name}:{k}")
        lhs, rhs = fn(rng)
        if lhs != rhs:
            failures.append({"trial": k, "lhs": _json(lhs), "rhs": _json(rhs)})
    return {"name": name, "trials": trials, "passed": trials - len(failures),
            "ok": not failures, "counterexamples": failures[:3]}


def identity_suite(seed: int = 42, trials: int = 100) -> dict:
    results = [check_identity(name, seed, trials) for name in IDENTITIES]
    return {"suite": "identities", "seed": seed, "trials": trials,
            "ok": all(r["ok"] for r in results), "checks": results}
