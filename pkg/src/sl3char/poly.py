"""Polynomials in the nine trace coordinates.

Variables, in their fixed order::

    t(1) t(-1) t(2) t(-2) t(3) t(-3) t(4) t(-4) t(5)

``t(-5)`` is never a variable: it is replaced by ``P - t(5)``. Reduced
polynomials are kept in normal form modulo ``t(5)^2 - P t(5) + Q``, i.e.
with ``t(5)``-degree at most 1. Unreduced ("free ring") polynomials are
available for formal differentiation of the relation itself.

Monomials are packed into a single int, ``FIELD`` bits per exponent, so
monomial multiplication is integer addition.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, Optional, Sequence, Union

from .exactlinalg import ExactComplex

__all__ = [
    "VARIABLES",
    "VAR_NAMES",
    "VAR_BIGRADES",
    "CoordPolynomial",
    "PolynomialSyntaxError",
    "var",
    "const",
    "parse_polynomial",
    "bigrade_of",
    "P",
    "Q",
    "relation",
    "PointEvaluator",
]

# display tags, JSON keys, and (x1, x2) bigrades, in variable order
VARIABLES = ("t(1)", "t(-1)", "t(2)", "t(-2)", "t(3)", "t(-3)", "t(4)", "t(-4)", "t(5)")
VAR_NAMES = ("t1", "tm1", "t2", "tm2", "t3", "tm3", "t4", "tm4", "t5")
VAR_BIGRADES = ((1, 0), (2, 0), (0, 1), (0, 2), (1, 1), (2, 2), (1, 2), (2, 1), (0, 0))
_SUBSCRIPTS = (1, -1, 2, -2, 3, -3, 4, -4, 5)
T5 = 8

FIELD = 12
_MASK = (1 << FIELD) - 1
_T5_UNIT = 1 << (FIELD * T5)

Number = Union[int, Fraction]


def _pack(exps: Sequence[int]) -> int:
    m = 0
    for i, e in enumerate(exps):
        if e < 0 or e > _MASK:
            raise ValueError(f"exponent {e} out of range")
        m |= e << (FIELD * i)
    return m


@lru_cache(maxsize=None)
def _unpack(m: int) -> tuple[int, ...]:
    return tuple((m >> (FIELD * i)) & _MASK for i in range(9))


def _t5_exp(m: int) -> int:
    return (m >> (FIELD * T5)) & _MASK


def _clean(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class PolynomialSyntaxError(ValueError):
    pass


class CoordPolynomial:
    """Sparse polynomial with rational coefficients in the nine coordinates.

    ``reduced=True`` (the default) keeps the normal form; ``reduced=False``
    gives an element of the free polynomial ring in the same variables.
    """

    __slots__ = ("_t", "reduced")

    def __init__(self, terms: Optional[Mapping] = None, reduced: bool = True):
        raw: dict[int, Number] = {}
        for key, c in (terms or {}).items():
            m = key if isinstance(key, int) else _pack(key)
            c = _clean(Fraction(c)) if not isinstance(c, int) else c
            if c:
                raw[m] = raw.get(m, 0) + c
        self._t = {m: c for m, c in raw.items() if c}
        self.reduced = reduced
        if reduced:
            self._t = _normalize(self._t)

    @classmethod
    def _wrap(cls, t: dict[int, Number], reduced: bool) -> "CoordPolynomial":
        p = object.__new__(cls)
        p._t = t
        p.reduced = reduced
        return p

    # --- views -------------------------------------------------------------
    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return {_unpack(m): Fraction(c) for m, c in self._t.items()}

    def __len__(self) -> int:
        return len(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def constant(self) -> Fraction:
        return Fraction(self._t.get(0, 0))

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return Fraction(self._t.get(_pack(exps), 0))

    def free(self) -> "CoordPolynomial":
        """Same representative viewed in the free ring."""
        return CoordPolynomial._wrap(dict(self._t), False)

    def normal_form(self) -> "CoordPolynomial":
        if self.reduced:
            return self
        return CoordPolynomial._wrap(_normalize(self._t), True)

    def total_degree(self) -> int:
        """Largest monomial degree; 0 for the zero polynomial."""
        return max((sum(_unpack(m)) for m in self._t), default=0)

    def degree_in(self, v: int) -> int:
        return max((_unpack(m)[v] for m in self._t), default=0)

    def bigrades(self) -> set[tuple[int, int]]:
        return {bigrade_of(_unpack(m)) for m in self._t}

    def bigrade(self) -> Optional[tuple[int, int]]:
        """Common bigrade of all terms, or None if inhomogeneous or zero."""
        g = self.bigrades()
        return g.pop() if len(g) == 1 else None

    # --- arithmetic ----------------------------------------------------------
    def _coerce(self, other) -> Optional["CoordPolynomial"]:
        if isinstance(other, CoordPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return const(other, reduced=self.reduced)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        t = dict(self._t)
        for m, c in other._t.items():
            s = t.get(m, 0) + c
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        return CoordPolynomial._wrap(t, self.reduced or other.reduced)._renorm(self, other)

    __radd__ = __add__

    def _renorm(self, a: "CoordPolynomial", b: "CoordPolynomial") -> "CoordPolynomial":
        # mixing a free-ring operand into reduced arithmetic requires reduction
        if self.reduced and not (a.reduced and b.reduced):
            self._t = _normalize(self._t)
        return self

    def __neg__(self) -> "CoordPolynomial":
        return CoordPolynomial._wrap({m: -c for m, c in self._t.items()}, self.reduced)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c: Number) -> "CoordPolynomial":
        if not c:
            return CoordPolynomial._wrap({}, self.reduced)
        c = _clean(c)
        return CoordPolynomial._wrap({m: _clean(v * c) for m, v in self._t.items()}, self.reduced)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, CoordPolynomial):
            return NotImplemented
        t: dict[int, Number] = {}
        get = t.get
        for m1, c1 in self._t.items():
            for m2, c2 in other._t.items():
                m = m1 + m2
                t[m] = get(m, 0) + c1 * c2
        t = {m: _clean(c) for m, c in t.items() if c}
        reduced = self.reduced or other.reduced
        if reduced:
            t = _normalize(t)
        return CoordPolynomial._wrap(t, reduced)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CoordPolynomial":
        if n < 0:
            raise ValueError("negative power")
        result = const(1, reduced=self.reduced)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = const(other)
        if not isinstance(other, CoordPolynomial):
            return NotImplemented
        return self._t == other._t

    def __hash__(self) -> int:
        return hash(frozenset(self._t.items()))

    # --- calculus / evaluation / substitution --------------------------------
    def partial(self, v: int) -> "CoordPolynomial":
        """Formal partial derivative with respect to variable index ``v``."""
        shift = FIELD * v
        unit = 1 << shift
        t: dict[int, Number] = {}
        for m, c in self._t.items():
            e = (m >> shift) & _MASK
            if e:
                t[m - unit] = t.get(m - unit, 0) + c * e
        t = {m: _clean(c) for m, c in t.items() if c}
        return CoordPolynomial._wrap(t, self.reduced)

    def eval(self, point: Sequence):
        """Substitute ``point`` (nine values, exact or float) for the variables."""
        if len(point) != 9:
            raise ValueError("a point has nine coordinates")
        exact = all(isinstance(x, (ExactComplex, int, Fraction)) for x in point)
        if exact:
            pts = [ExactComplex.coerce(x) for x in point]
            one = ExactComplex.coerce(1)
        else:
            pts = [complex(x) for x in point]
            one = 1.0 + 0j
        powers: list[list] = [[one] for _ in range(9)]
        total = ExactComplex.coerce(0) if exact else 0j
        for m, c in self._t.items():
            exps = _unpack(m)
            term = None
            for i, e in enumerate(exps):
                if e:
                    pw = powers[i]
                    while len(pw) <= e:
                        pw.append(pw[-1] * pts[i])
                    term = pw[e] if term is None else term * pw[e]
            if exact:
                coef = ExactComplex.coerce(c)
                total = total + (coef if term is None else term * coef)
            else:
                total += float(c) * (1.0 if term is None else term)
        return total

    def substitute(self, images: Sequence["CoordPolynomial"]) -> "CoordPolynomial":
        """Ring map sending variable ``i`` to ``images[i]`` (result reduced)."""
        cache: list[dict[int, CoordPolynomial]] = [{} for _ in range(9)]

        def power(i: int, e: int) -> CoordPolynomial:
            if e not in cache[i]:
                cache[i][e] = images[i] ** e
            return cache[i][e]

        total = const(0)
        for m, c in self._t.items():
            term = const(c)
            for i, e in enumerate(_unpack(m)):
                if e:
                    term = term * power(i, e)
            total = total + term
        return total.normal_form()

    # --- text ---------------------------------------------------------------
    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in descending graded-lexicographic order."""
        items = [(_unpack(m), Fraction(c)) for m, c in self._t.items()]
        items.sort(key=lambda it: (sum(it[0]), it[0]), reverse=True)
        return items

    def __str__(self) -> str:
        if not self._t:
            return "0"
        out = []
        for exps, c in self.sorted_terms():
            factors = [
                VARIABLES[i] if e == 1 else f"{VARIABLES[i]}^{e}" for i, e in enumerate(exps) if e
            ]
            mag = abs(c)
            mag_s = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
            if not factors:
                body = mag_s
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([mag_s] + factors)
            sign = "-" if c < 0 else "+"
            if not out:
                out.append(body if sign == "+" else "-" + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"CoordPolynomial({str(self)!r})"


class PointEvaluator:
    """Exact evaluation of many polynomials at one fixed exact point.

    Coordinates are brought to a common denominator ``D`` once; monomial
    values are cached as Gaussian integers scaled by ``D^degree``, so
    polynomials sharing monomials share the work.
    """

    def __init__(self, point: Sequence):
        if len(point) != 9:
            raise ValueError("a point has nine coordinates")
        pts = [ExactComplex.coerce(x) for x in point]
        d = 1
        for z in pts:
            d = d * z._d // gcd(d, z._d)
        self.denominator = d
        self._gens = [(z._a * (d // z._d), z._b * (d // z._d)) for z in pts]
        self._mono: dict[int, tuple[int, int, int]] = {0: (1, 0, 0)}
        self._dpow = [1]

    def _monomial(self, m: int) -> tuple[int, int, int]:
        """(re, im, degree) of the scaled monomial value."""
        hit = self._mono.get(m)
        if hit is not None:
            return hit
        for i in range(9):
            if (m >> (FIELD * i)) & _MASK:
                re0, im0, deg = self._monomial(m - (1 << (FIELD * i)))
                a, b = self._gens[i]
                val = (re0 * a - im0 * b, re0 * b + im0 * a, deg + 1)
                self._mono[m] = val
                return val
        raise AssertionError("unreachable")

    def _d_power(self, k: int) -> int:
        while len(self._dpow) <= k:
            self._dpow.append(self._dpow[-1] * self.denominator)
        return self._dpow[k]

    def __call__(self, p: "CoordPolynomial") -> ExactComplex:
        vals = [(self._monomial(m), c) for m, c in p._t.items()]
        top = max((v[2] for v, _ in vals), default=0)
        by_den: dict[int, list[int]] = {}
        for (re_, im_, deg), c in vals:
            if isinstance(c, int):
                num, den = c, 1
            else:
                num, den = c.numerator, c.denominator
            scale = num * self._d_power(top - deg)
            acc = by_den.setdefault(den, [0, 0])
            acc[0] += scale * re_
            acc[1] += scale * im_
        total = ExactComplex(0)
        dk = self._d_power(top)
        for den, (re_, im_) in by_den.items():
            total = total + ExactComplex._raw(re_, im_, den * dk)
        return total


def const(c: Number, reduced: bool = True) -> CoordPolynomial:
    c = _clean(Fraction(c)) if not isinstance(c, int) else c
    return CoordPolynomial._wrap({0: c} if c else {}, reduced)


def var(v: Union[int, str], reduced: bool = True) -> CoordPolynomial:
    """Variable by index (0..8), name (``"tm1"``) or tag (``"t(-1)"``)."""
    if isinstance(v, str):
        if v in VAR_NAMES:
            v = VAR_NAMES.index(v)
        elif v in VARIABLES:
            v = VARIABLES.index(v)
        else:
            raise KeyError(v)
    return CoordPolynomial._wrap({1 << (FIELD * v): 1}, reduced)


def bigrade_of(exps: Sequence[int]) -> tuple[int, int]:
    g1 = sum(VAR_BIGRADES[i][0] * e for i, e in enumerate(exps)) % 3
    g2 = sum(VAR_BIGRADES[i][1] * e for i, e in enumerate(exps)) % 3
    return g1, g2


# --- normal form ---------------------------------------------------------

_RELATION: Optional[tuple[dict[int, Number], dict[int, Number]]] = None


def _relation_terms() -> tuple[dict[int, Number], dict[int, Number]]:
    global _RELATION
    if _RELATION is None:
        from . import relation

        p = parse_polynomial(relation.P_TEXT, reduced=False, allow_t_minus_5=False)
        q = parse_polynomial(relation.Q_TEXT, reduced=False, allow_t_minus_5=False)
        _RELATION = (p._t, q._t)
    return _RELATION


def _raw_mul(a: dict[int, Number], b: dict[int, Number]) -> dict[int, Number]:
    t: dict[int, Number] = {}
    get = t.get
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = m1 + m2
            t[m] = get(m, 0) + c1 * c2
    return t


# t5^k = A_k + B_k t5 with A_k, B_k free of t5
_T5_POWERS: list[tuple[dict[int, Number], dict[int, Number]]] = [({0: 1}, {}), ({}, {0: 1})]


def _t5_power(k: int) -> tuple[dict[int, Number], dict[int, Number]]:
    p_t, q_t = _relation_terms()
    while len(_T5_POWERS) <= k:
        a, b = _T5_POWERS[-1]
        # t5^(k+1) = A t5 + B (P t5 - Q)
        na = {m: -c for m, c in _raw_mul(b, q_t).items()}
        nb = dict(a)
        for m, c in _raw_mul(b, p_t).items():
            nb[m] = nb.get(m, 0) + c
        _T5_POWERS.append(({m: c for m, c in na.items() if c}, {m: c for m, c in nb.items() if c}))
    return _T5_POWERS[k]


def _normalize(t: dict[int, Number]) -> dict[int, Number]:
    """Reduce every t5^k (k >= 2) with the closed form A_k + B_k t5."""
    if all(_t5_exp(m) < 2 for m in t):
        return t
    out: dict[int, Number] = {}
    groups: dict[int, dict[int, Number]] = {}
    for m, c in t.items():
        k = _t5_exp(m)
        if k < 2:
            out[m] = out.get(m, 0) + c
        else:
            groups.setdefault(k, {})[m - k * _T5_UNIT] = c
    for k, rest in groups.items():
        a, b = _t5_power(k)
        for m, c in _raw_mul(rest, a).items():
            out[m] = out.get(m, 0) + c
        for m, c in _raw_mul(rest, b).items():
            out[m + _T5_UNIT] = out.get(m + _T5_UNIT, 0) + c
    return {m: _clean(c) for m, c in out.items() if c}


def P() -> CoordPolynomial:
    return CoordPolynomial._wrap(dict(_relation_terms()[0]), True)


def Q() -> CoordPolynomial:
    return CoordPolynomial._wrap(dict(_relation_terms()[1]), True)


def relation() -> CoordPolynomial:
    """``t5^2 - P t5 + Q`` in the free ring (it reduces to zero)."""
    t5 = var(T5, reduced=False)
    return t5 * t5 - P().free() * t5 + Q().free()


# --- parsing -------------------------------------------------------------

_TOKENS = re.compile(r"\s*(?:(\d+(?:/\d+)?)|t\(\s*([+-]?\d+)\s*\)|(\S))")


def parse_polynomial(text: str, reduced: bool = True, allow_t_minus_5: bool = True) -> CoordPolynomial:
    """Parse sums/products/powers of rationals and ``t(k)`` symbols.

    ``t(-5)`` is read as ``P - t(5)``.
    """
    tokens: list[tuple[str, object]] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKENS.match(text, pos)
        if m is None:
            break
        pos = m.end()
        if m.group(1) is not None:
            tokens.append(("num", Fraction(m.group(1))))
        elif m.group(2) is not None:
            k = int(m.group(2))
            if k == -5:
                if not allow_t_minus_5:
                    raise PolynomialSyntaxError("t(-5) not allowed here")
                tokens.append(("poly", P() - var(T5)))
            elif k in _SUBSCRIPTS:
                tokens.append(("poly", var(_SUBSCRIPTS.index(k), reduced=reduced)))
            else:
                raise PolynomialSyntaxError(f"unknown coordinate t({k})")
        else:
            tokens.append(("op", m.group(3)))
    tokens.append(("end", None))
    idx = 0

    def peek():
        return tokens[idx]

    def take():
        nonlocal idx
        tok = tokens[idx]
        idx += 1
        return tok

    def expr() -> CoordPolynomial:
        sign = 1
        if peek() == ("op", "-"):
            take()
            sign = -1
        elif peek() == ("op", "+"):
            take()
        acc = term().scale(sign) if sign < 0 else term()
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term() -> CoordPolynomial:
        acc = factor()
        while peek() == ("op", "*"):
            take()
            acc = acc * factor()
        return acc

    def factor() -> CoordPolynomial:
        kind, val = take()
        if kind == "num":
            base = const(val, reduced=reduced)
        elif kind == "poly":
            base = val
        elif (kind, val) == ("op", "("):
            base = expr()
            if take() != ("op", ")"):
                raise PolynomialSyntaxError("unbalanced parenthesis")
        elif (kind, val) == ("op", "-"):
            return -factor()
        else:
            raise PolynomialSyntaxError(f"unexpected token {val!r}")
        if peek() == ("op", "^"):
            take()
            k, e = take()
            if k != "num" or Fraction(e).denominator != 1:
                raise PolynomialSyntaxError("exponent must be a nonnegative integer")
            base = base ** int(e)
        return base

    if len(tokens) == 1:
        raise PolynomialSyntaxError("empty polynomial")
    result = expr()
    if peek()[0] != "end":
        raise PolynomialSyntaxError(f"trailing input near token {peek()[1]!r}")
    if pos < len(text):
        raise PolynomialSyntaxError(f"cannot tokenize {text[pos:]!r}")
    return result
