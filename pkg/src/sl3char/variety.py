"""The character variety as a hypersurface in C^9.

Points are :class:`CharPoint` 9-tuples ordered
``(t1, tm1, t2, tm2, t3, tm3, t4, tm4, t5)``. Values are exact
:class:`ExactComplex` when they come from exact pairs, Python complex on the
float path (representations that need cube roots).
"""
from __future__ import annotations

import cmath
import random
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence, Union

import numpy as np

from .exactlinalg import (
    ExactComplex,
    Matrix3,
    SL3Pair,
    evaluate_word,
    float_evaluate_word,
    random_gaussian,
    embed_diag,
    embed_gl2,
    random_pair,
    trial_rng,
)
from .freegroup import Word, parse_word
from .poly import VAR_NAMES, CoordPolynomial, P, Q, T5, relation, var

__all__ = [
    "CharPoint",
    "GENERATOR_WORDS",
    "LAMBDA_WORDS",
    "DEFAULT_TOL",
    "OffSurfaceError",
    "JacobianSystem",
    "BranchingSample",
    "polynomial_P",
    "polynomial_Q",
    "surface_polynomial",
    "chi",
    "chi_float",
    "surface_residual",
    "discriminant",
    "is_branching",
    "fiber_over",
    "quadratic_roots",
    "jacobian_system",
    "jacobian_values",
    "is_singular",
    "branching_family",
    "lambda_matrix",
    "lambda_det",
    "bilinear_form",
    "distinguishing_pair",
    "sample_pair",
    "FAMILIES",
]

DEFAULT_TOL = 1e-9

# word for each coordinate, in CharPoint order
GENERATOR_WORDS: tuple[Word, ...] = tuple(
    parse_word(s) for s in ("a", "A", "b", "B", "a*b", "A*B", "a*B", "A*b", "a*b*A*B")
)
T_MINUS_5_WORD = parse_word("b*a*B*A")

# the nine matrices A_i = B_i used for the singular Lambda matrix
LAMBDA_WORDS: tuple[Word, ...] = tuple(
    parse_word(s) for s in ("a", "b", "A", "B", "a*b", "b*a", "a*B", "B*a", "b*A")
)


class CharPoint(NamedTuple):
    t1: object
    tm1: object
    t2: object
    tm2: object
    t3: object
    tm3: object
    t4: object
    tm4: object
    t5: object

    @property
    def base(self) -> tuple:
        """Projection to the first eight coordinates."""
        return tuple(self[:8])

    def is_exact(self) -> bool:
        return all(isinstance(x, ExactComplex) for x in self)

    def to_json(self) -> dict:
        return {k: _value_json(v) for k, v in zip(VAR_NAMES, self)}

    @classmethod
    def from_json(cls, data: dict) -> "CharPoint":
        if not isinstance(data, dict):
            raise ValueError("CharPoint JSON must be an object")
        missing = [k for k in VAR_NAMES if k not in data]
        if missing:
            raise ValueError(f"CharPoint JSON missing keys: {', '.join(missing)}")
        return cls(*(_value_from_json(data[k]) for k in VAR_NAMES))


def _value_json(v):
    if isinstance(v, ExactComplex):
        return str(v)
    z = complex(v)
    return {"re": z.real, "im": z.imag}


def _value_from_json(v):
    if isinstance(v, bool):
        raise ValueError("boolean is not a coordinate value")
    if isinstance(v, str) or isinstance(v, int):
        return ExactComplex.parse(v)
    if isinstance(v, float):
        return complex(v)
    if isinstance(v, dict) and set(v) <= {"re", "im"}:
        return complex(float(v.get("re", 0.0)), float(v.get("im", 0.0)))
    raise ValueError(f"cannot read coordinate value {v!r}")


class OffSurfaceError(ValueError):
    """The point does not satisfy the defining relation."""


def polynomial_P() -> CoordPolynomial:
    return P()


def polynomial_Q() -> CoordPolynomial:
    return Q()


def surface_polynomial() -> CoordPolynomial:
    """``t5^2 - P t5 + Q`` as a free-ring element (not reduced to zero)."""
    return relation()


def chi(p: SL3Pair) -> CharPoint:
    return CharPoint(*(evaluate_word(w, p).trace() for w in GENERATOR_WORDS))


def chi_float(A, B) -> CharPoint:
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    return CharPoint(*(complex(np.trace(float_evaluate_word(w, A, B))) for w in GENERATOR_WORDS))


def _point9(pt: Sequence) -> Sequence:
    if len(pt) == 9:
        return pt
    if len(pt) == 8:
        return tuple(pt) + (0,)
    raise ValueError("expected 8 or 9 coordinates")


def surface_residual(pt: Sequence):
    return relation().eval(pt)


def discriminant(pt8: Sequence):
    """``P^2 - 4Q`` at the first eight coordinates."""
    pt = _point9(pt8[:8])
    return (P() * P() - Q().scale(4)).eval(pt)


def _small(v, tol: float) -> bool:
    if isinstance(v, ExactComplex):
        return v.is_zero()
    return abs(v) < tol


def is_branching(pt: Sequence, tol: float = DEFAULT_TOL) -> bool:
    return _small(discriminant(pt), tol)


def quadratic_roots(p: complex, q: complex) -> tuple[complex, complex]:
    """Roots of ``t^2 - p t + q``, larger-magnitude root first."""
    p, q = complex(p), complex(q)
    disc = cmath.sqrt(p * p - 4 * q)
    # pick the sign that avoids cancellation, recover the other root from q
    big = p + disc if abs(p + disc) >= abs(p - disc) else p - disc
    if big == 0:
        return 0j, 0j
    r1 = big / 2
    return r1, q / r1


def fiber_over(pt8: Sequence) -> tuple[complex, complex]:
    """Both roots of ``t^2 - P t + Q`` over the 8-tuple (float path)."""
    pt = _point9(pt8[:8])
    return quadratic_roots(complex(P().eval(pt)), complex(Q().eval(pt)))


@dataclass(frozen=True)
class JacobianSystem:
    """Partials of ``t5^2 - P t5 + Q``; ``generators[i]`` is the partial in
    variable ``i`` (index 8 is ``2 t5 - P``)."""

    generators: tuple[CoordPolynomial, ...]

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


_JACOBIAN: Optional[JacobianSystem] = None


def jacobian_system() -> JacobianSystem:
    global _JACOBIAN
    if _JACOBIAN is None:
        f = relation()
        _JACOBIAN = JacobianSystem(tuple(f.partial(i).normal_form() for i in range(9)))
    return _JACOBIAN


def jacobian_values(pt: Sequence) -> list:
    return [g.eval(pt) for g in jacobian_system()]


def _max_coeff(g: CoordPolynomial) -> float:
    return max((abs(float(c)) for c in g.terms.values()), default=1.0)


def is_singular(pt: Sequence, tol: float = DEFAULT_TOL) -> bool:
    """True iff all nine Jacobian generators vanish at the (on-surface) point.

    Exact points are tested exactly; float points compare each value scaled
    by the generator's largest coefficient against ``tol``.
    """
    res = surface_residual(pt)
    if not _small(res, tol):
        raise OffSurfaceError(f"point is off the surface (residual {res})")
    exact = all(isinstance(x, ExactComplex) for x in pt)
    for g in jacobian_system():
        v = g.eval(pt)
        if exact:
            if not v.is_zero():
                return False
        elif abs(v) / _max_coeff(g) >= tol:
            return False
    return True


@dataclass(frozen=True)
class BranchingSample:
    point: CharPoint
    jacobian: tuple[complex, ...]
    partial_t1: complex
    partial_tm1: complex
    expected_t1: complex
    expected_tm1: complex


def branching_family(a: complex, c: complex) -> BranchingSample:
    """Non-singular point of the branching locus: ``x1 = diag(a, a, a^-2)``,
    ``x2 = (c/4)^(1/3) [[1,1,-1],[1,-1,1],[-1/c,-1/c,-1/c]]``."""
    a = complex(a)
    c = complex(c)
    if c == 0:
        raise ValueError("c must be nonzero")
    if abs(a**3 - 1) < 1e-12:
        raise ValueError("a^3 must differ from 1")
    A = np.diag([a, a, 1 / a**2])
    B = (c / 4) ** (1 / 3) * np.array([[1, 1, -1], [1, -1, 1], [-1 / c, -1 / c, -1 / c]], dtype=complex)
    pt = chi_float(A, B)
    vals = tuple(complex(v) for v in jacobian_values(pt))
    k = (a**3 - 1) ** 3 / 4
    return BranchingSample(pt, vals, vals[0], vals[1], -k / a**4, k / a**5)


def bilinear_form(x: Matrix3, y: Matrix3) -> ExactComplex:
    """``3 tr(xy) - tr(x) tr(y)``."""
    return (x @ y).trace() * 3 - x.trace() * y.trace()


def lambda_matrix(p: SL3Pair) -> list[list[ExactComplex]]:
    mats = [evaluate_word(w, p) for w in LAMBDA_WORDS]
    return [[bilinear_form(x, y) for y in mats] for x in mats]


def _exact_det(rows: list[list[ExactComplex]]) -> ExactComplex:
    m = [list(r) for r in rows]
    n = len(m)
    result = ExactComplex(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if pivot is None:
            return ExactComplex(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            result = -result
        pv = m[col][col]
        result = result * pv
        for r in range(col + 1, n):
            if m[r][col].is_zero():
                continue
            f = m[r][col] / pv
            m[r] = [m[r][k] - f * m[col][k] if k >= col else m[r][k] for k in range(n)]
    return result


def lambda_det(p: SL3Pair) -> ExactComplex:
    return _exact_det(lambda_matrix(p))


def distinguishing_pair(a: complex = 2, b: complex = 3) -> tuple[CharPoint, CharPoint]:
    """Two representations agreeing on the first eight coordinates but not on ``t5``."""
    A = np.diag([complex(a), complex(b), 1 / (complex(a) * complex(b))])
    s = 4 ** (-1 / 3)
    B1 = s * np.array([[1, 1, -1], [1, -1, 1], [-1, -1, -1]], dtype=complex)
    B2 = s * np.array([[1, -1, 1], [-1, -1, -1], [1, 1, -1]], dtype=complex)
    return chi_float(A, B1), chi_float(A, B2)


# --- sampling families ---------------------------------------------------

FAMILIES = ("generic", "gl2", "diag", "sl2", "branching")


def _gl2_block(rng: random.Random, unimodular: bool) -> Matrix3:
    while True:
        a, b, c = (random_gaussian(rng) for _ in range(3))
        if unimodular:
            if a.is_zero():
                continue
            # solve ad - bc = 1 for d
            d = (ExactComplex(1) + b * c) / a
        else:
            d = random_gaussian(rng)
        if not (a * d - b * c).is_zero():
            return embed_gl2(a, b, c, d)


def sample_pair(family: str, seed: int, index: int, complexity: int = 6) -> SL3Pair:
    """Deterministic exact pair from one of the exact families."""
    rng = trial_rng(seed, index)
    if family == "generic":
        return random_pair(seed, index, complexity)
    if family == "gl2":
        return SL3Pair(_gl2_block(rng, False), _gl2_block(rng, False))
    if family == "sl2":
        return SL3Pair(_gl2_block(rng, True), _gl2_block(rng, True))
    if family == "diag":
        return SL3Pair(
            embed_diag(random_gaussian(rng), random_gaussian(rng)),
            embed_diag(random_gaussian(rng), random_gaussian(rng)),
        )
    raise ValueError(f"unknown exact family {family!r}")


def sample_branching(seed: int, index: int) -> BranchingSample:
    rng = trial_rng(seed, index)
    while True:
        a = complex(random_gaussian(rng))
        c = complex(random_gaussian(rng))
        if abs(a**3 - 1) > 1e-6:
            return branching_family(a, c)
