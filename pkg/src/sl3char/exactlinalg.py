"""Exact 3x3 matrices over the Gaussian rationals Q(i).

Entries are :class:`ExactComplex` values held as ``(re_num, im_num, den)``
integer triples in lowest terms, which keeps multiplication to a single gcd.
Inverses of unimodular matrices are taken through the adjugate.

A small float path (numpy complex arrays) covers representations whose
entries need cube roots and so leave Q(i).
"""
from __future__ import annotations

import random
import re
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

import numpy as np

from .freegroup import Word

__all__ = [
    "ExactComplex",
    "Matrix3",
    "SL3Pair",
    "DegenerateInputError",
    "det",
    "adjugate",
    "evaluate_word",
    "random_sl3",
    "random_pair",
    "random_gaussian",
    "trial_rng",
    "embed_gl2",
    "embed_diag",
    "float_matrix",
    "float_evaluate_word",
]


class DegenerateInputError(ValueError):
    """A constructor precondition (nonzero determinant, nonzero entry) failed."""


Scalar = Union["ExactComplex", int, Fraction]


class ExactComplex:
    """Gaussian rational ``(a + b i) / d`` with ``d > 0`` and ``gcd(a, b, d) = 1``."""

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re: Union[int, Fraction] = 0, im: Union[int, Fraction] = 0):
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        self._set(re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d)

    def _set(self, a: int, b: int, d: int) -> None:
        g = gcd(gcd(a, b), d)
        if g != 1:
            a //= g
            b //= g
            d //= g
        self._a, self._b, self._d = a, b, d

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "ExactComplex":
        z = object.__new__(cls)
        if d < 0:
            a, b, d = -a, -b, -d
        z._set(a, b, d)
        return z

    @classmethod
    def coerce(cls, x: Scalar) -> "ExactComplex":
        if isinstance(x, ExactComplex):
            return x
        if isinstance(x, int):
            return cls._raw(x, 0, 1)
        if isinstance(x, Fraction):
            return cls._raw(x.numerator, 0, x.denominator)
        if isinstance(x, complex):
            raise TypeError("float complex values are not exact")
        raise TypeError(f"cannot convert {type(x).__name__} to ExactComplex")

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def conjugate(self) -> "ExactComplex":
        return ExactComplex._raw(self._a, -self._b, self._d)

    def __complex__(self) -> complex:
        return complex(self._a / self._d, self._b / self._d)

    def __add__(self, other: Scalar) -> "ExactComplex":
        if not isinstance(other, ExactComplex):
            try:
                other = ExactComplex.coerce(other)
            except TypeError:
                return NotImplemented
        a, b, d = self._a, self._b, self._d
        c, e, f = other._a, other._b, other._d
        if d == f:
            return ExactComplex._raw(a + c, b + e, d)
        return ExactComplex._raw(a * f + c * d, b * f + e * d, d * f)

    __radd__ = __add__

    def __neg__(self) -> "ExactComplex":
        return ExactComplex._raw(-self._a, -self._b, self._d)

    def __sub__(self, other: Scalar) -> "ExactComplex":
        if not isinstance(other, ExactComplex):
            try:
                other = ExactComplex.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "ExactComplex":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "ExactComplex":
        if isinstance(other, int):
            return ExactComplex._raw(self._a * other, self._b * other, self._d)
        if not isinstance(other, ExactComplex):
            try:
                other = ExactComplex.coerce(other)
            except TypeError:
                return NotImplemented
        a, b, d = self._a, self._b, self._d
        c, e, f = other._a, other._b, other._d
        return ExactComplex._raw(a * c - b * e, a * e + b * c, d * f)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "ExactComplex":
        other = ExactComplex.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero in Q(i)")
        c, e, f = other._a, other._b, other._d
        # 1/((c+ei)/f) = f (c - ei) / (c^2 + e^2)
        n = c * c + e * e
        inv = ExactComplex._raw(f * c, -f * e, n)
        return self * inv

    def __rtruediv__(self, other: Scalar) -> "ExactComplex":
        return ExactComplex.coerce(other) / self

    def __pow__(self, n: int) -> "ExactComplex":
        if n < 0:
            return ExactComplex.coerce(1) / (self ** -n)
        result = ONE
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
            other = ExactComplex.coerce(other)
        if not isinstance(other, ExactComplex):
            return NotImplemented
        return self._a == other._a and self._b == other._b and self._d == other._d

    def __hash__(self) -> int:
        return hash((self._a, self._b, self._d))

    def __repr__(self) -> str:
        return f"ExactComplex({str(self)!r})"

    def __str__(self) -> str:
        re_s = _fmt_fraction(self.re)
        if self._b == 0:
            return re_s
        im = self.im
        sign = "-" if im < 0 else "+"
        return f"{re_s}{sign}{_fmt_fraction(abs(im))}i"

    @classmethod
    def parse(cls, text: Union[str, int]) -> "ExactComplex":
        """Parse ``"p/q"``, ``"p/q+r/si"``, ``"r/si"`` or a bare integer."""
        if isinstance(text, bool):
            raise ValueError("boolean is not a number")
        if isinstance(text, int):
            return cls.coerce(text)
        if not isinstance(text, str):
            raise ValueError(f"expected a string, got {type(text).__name__}")
        s = text.replace(" ", "")
        im_v = Fraction(0)
        re_s = s
        if s.endswith("i"):
            body = s[:-1]
            k = max(body.rfind("+"), body.rfind("-"))
            re_s, im_s = (body[:k], body[k:]) if k > 0 else ("", body)
            if im_s in ("", "+", "-"):
                im_v = Fraction(-1 if im_s == "-" else 1)
            elif _RAT.fullmatch(im_s):
                im_v = Fraction(im_s)
            else:
                raise ValueError(f"not an exact Gaussian rational: {text!r}")
        elif not s:
            raise ValueError("empty number")
        if re_s and not _RAT.fullmatch(re_s):
            raise ValueError(f"not an exact Gaussian rational: {text!r}")
        re_v = Fraction(re_s) if re_s else Fraction(0)
        return cls(re_v, im_v)


_RAT = re.compile(r"[+-]?\d+(?:/\d+)?")


def _fmt_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


ZERO = ExactComplex._raw(0, 0, 1)
ONE = ExactComplex._raw(1, 0, 1)


class Matrix3:
    """3x3 matrix over Q(i), entries stored row-major."""

    __slots__ = ("entries",)

    def __init__(self, rows: Iterable[Iterable[Scalar]]):
        flat = [ExactComplex.coerce(x) for row in rows for x in row]
        if len(flat) != 9:
            raise ValueError("Matrix3 needs exactly 9 entries")
        self.entries: tuple[ExactComplex, ...] = tuple(flat)

    @classmethod
    def _from_flat(cls, flat: Sequence[ExactComplex]) -> "Matrix3":
        m = object.__new__(cls)
        m.entries = tuple(flat)
        return m

    @classmethod
    def identity(cls) -> "Matrix3":
        return cls._from_flat([ONE, ZERO, ZERO, ZERO, ONE, ZERO, ZERO, ZERO, ONE])

    @classmethod
    def zero(cls) -> "Matrix3":
        return cls._from_flat([ZERO] * 9)

    def __getitem__(self, ij: tuple[int, int]) -> ExactComplex:
        i, j = ij
        return self.entries[3 * i + j]

    def rows(self) -> list[list[ExactComplex]]:
        e = self.entries
        return [list(e[0:3]), list(e[3:6]), list(e[6:9])]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Matrix3) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __add__(self, other: "Matrix3") -> "Matrix3":
        return Matrix3._from_flat([x + y for x, y in zip(self.entries, other.entries)])

    def __sub__(self, other: "Matrix3") -> "Matrix3":
        return Matrix3._from_flat([x - y for x, y in zip(self.entries, other.entries)])

    def __neg__(self) -> "Matrix3":
        return Matrix3._from_flat([-x for x in self.entries])

    def scale(self, c: Scalar) -> "Matrix3":
        c = ExactComplex.coerce(c)
        return Matrix3._from_flat([c * x for x in self.entries])

    def __rmul__(self, c: Scalar) -> "Matrix3":
        return self.scale(c)

    def __mul__(self, other):
        if isinstance(other, Matrix3):
            return self @ other
        return self.scale(other)

    def __matmul__(self, other: "Matrix3") -> "Matrix3":
        a = self.entries
        b = other.entries
        out = []
        for i in (0, 3, 6):
            a0, a1, a2 = a[i], a[i + 1], a[i + 2]
            for j in (0, 1, 2):
                out.append(a0 * b[j] + a1 * b[j + 3] + a2 * b[j + 6])
        return Matrix3._from_flat(out)

    def trace(self) -> ExactComplex:
        e = self.entries
        return e[0] + e[4] + e[8]

    def is_scalar(self, c: Scalar) -> bool:
        c = ExactComplex.coerce(c)
        e = self.entries
        return all(e[k] == (c if k in (0, 4, 8) else ZERO) for k in range(9))

    def __repr__(self) -> str:
        return "Matrix3(" + repr([[str(x) for x in row] for row in self.rows()]) + ")"

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.rows()]

    @classmethod
    def from_json(cls, data) -> "Matrix3":
        if not isinstance(data, list) or len(data) != 3 or any(
            not isinstance(r, list) or len(r) != 3 for r in data
        ):
            raise ValueError("matrix must be a 3x3 array")
        return cls([[ExactComplex.parse(x) for x in row] for row in data])


def _minor(e: Sequence[ExactComplex], r0: int, r1: int, c0: int, c1: int) -> ExactComplex:
    return e[3 * r0 + c0] * e[3 * r1 + c1] - e[3 * r0 + c1] * e[3 * r1 + c0]


def det(m: Matrix3, row: int = 0) -> ExactComplex:
    """Cofactor expansion along ``row`` (any choice gives the same value)."""
    e = m.entries
    others = [r for r in range(3) if r != row]
    total = ZERO
    for j in range(3):
        cols = [c for c in range(3) if c != j]
        term = e[3 * row + j] * _minor(e, others[0], others[1], cols[0], cols[1])
        total = total + term if (row + j) % 2 == 0 else total - term
    return total


def adjugate(m: Matrix3) -> Matrix3:
    """Transpose of the cofactor matrix: entry (i, j) is (-1)^(i+j) times the
    minor with row j and column i removed."""
    e = m.entries
    out = []
    for i in range(3):
        for j in range(3):
            rows = [r for r in range(3) if r != j]
            cols = [c for c in range(3) if c != i]
            minor = _minor(e, rows[0], rows[1], cols[0], cols[1])
            out.append(minor if (i + j) % 2 == 0 else -minor)
    return Matrix3._from_flat(out)


class SL3Pair:
    """Pair of unimodular matrices, i.e. a representation of F2 into SL(3)."""

    __slots__ = ("A", "B", "_inverses")

    def __init__(self, A: Matrix3, B: Matrix3):
        for name, m in (("A", A), ("B", B)):
            d = det(m)
            if d != ONE:
                raise DegenerateInputError(f"matrix {name} has determinant {d}, expected 1")
        self.A = A
        self.B = B
        self._inverses = (adjugate(A), adjugate(B))

    def image(self, generator: int, sign: int) -> Matrix3:
        if sign > 0:
            return self.A if generator == 1 else self.B
        return self._inverses[generator - 1]

    def to_json(self) -> dict:
        return {"A": self.A.to_json(), "B": self.B.to_json()}

    @classmethod
    def from_json(cls, data) -> "SL3Pair":
        if not isinstance(data, dict) or "A" not in data or "B" not in data:
            raise ValueError("pair JSON must be an object with keys 'A' and 'B'")
        return cls(Matrix3.from_json(data["A"]), Matrix3.from_json(data["B"]))

    def __repr__(self) -> str:
        return f"SL3Pair({self.A!r}, {self.B!r})"


def evaluate_word(w: Word, p: SL3Pair) -> Matrix3:
    result = None
    for gen, exp in w.letters:
        m = p.image(gen, exp)
        for _ in range(abs(exp)):
            result = m if result is None else result @ m
    return Matrix3.identity() if result is None else result


def trial_rng(seed: int, index: Union[int, str] = 0) -> random.Random:
    """Independent, reproducible generator for trial ``index`` under ``seed``."""
    return random.Random(f"sl3char:{seed}:{index}")


def random_gaussian(rng: random.Random, bound: int = 3, max_den: int = 3) -> ExactComplex:
    while True:
        re_q = Fraction(rng.randint(-bound, bound), rng.randint(1, max_den))
        im_q = Fraction(rng.randint(-bound, bound), rng.randint(1, max_den))
        if re_q or im_q:
            return ExactComplex(re_q, im_q)


def _transvection_product(rng: random.Random, complexity: int) -> Matrix3:
    m = [ONE, ZERO, ZERO, ZERO, ONE, ZERO, ZERO, ZERO, ONE]
    positions: list[tuple[int, int]] = []
    while len(positions) < complexity:
        # each block of six visits every off-diagonal slot once
        block = [(j, k) for j in range(3) for k in range(3) if j != k]
        rng.shuffle(block)
        positions.extend(block)
    for j, k in positions[:complexity]:
        q = random_gaussian(rng)
        # left-multiply by I + q E_jk: row j += q * row k
        for c in range(3):
            m[3 * j + c] = m[3 * j + c] + q * m[3 * k + c]
    return Matrix3._from_flat(m)


def random_sl3(seed: int, complexity: int = 6) -> Matrix3:
    """Product of ``complexity`` random transvections ``I + q E_jk``.

    Slots ``(j, k)`` are drawn as shuffled blocks of all six off-diagonal
    positions, so complexity >= 6 never leaves a row or column untouched.

    The determinant is exactly 1 by construction; the result depends only on
    ``(seed, complexity)``.
    """
    return _transvection_product(random.Random(f"sl3:{seed}:{complexity}"), complexity)


def random_pair(seed: int, index: int = 0, complexity: int = 6) -> SL3Pair:
    rng = trial_rng(seed, index)
    return SL3Pair(_transvection_product(rng, complexity), _transvection_product(rng, complexity))


def embed_gl2(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Matrix3:
    """``[[a, b, 0], [c, d, 0], [0, 0, 1/(ad - bc)]]``."""
    a, b, c, d = (ExactComplex.coerce(x) for x in (a, b, c, d))
    delta = a * d - b * c
    if delta.is_zero():
        raise DegenerateInputError("ad - bc = 0")
    return Matrix3._from_flat([a, b, ZERO, c, d, ZERO, ZERO, ZERO, ONE / delta])


def embed_diag(a: Scalar, b: Scalar) -> Matrix3:
    """``diag(a, b, 1/(ab))``."""
    a, b = ExactComplex.coerce(a), ExactComplex.coerce(b)
    if a.is_zero() or b.is_zero():
        raise DegenerateInputError("diagonal entries must be nonzero")
    return Matrix3._from_flat([a, ZERO, ZERO, ZERO, b, ZERO, ZERO, ZERO, ONE / (a * b)])


# float path --------------------------------------------------------------


def float_matrix(m: Union[Matrix3, Sequence[Sequence[complex]]]) -> np.ndarray:
    if isinstance(m, Matrix3):
        return np.array([[complex(x) for x in row] for row in m.rows()], dtype=complex)
    return np.asarray(m, dtype=complex)


def float_adjugate(m: np.ndarray) -> np.ndarray:
    out = np.empty((3, 3), dtype=complex)
    for i in range(3):
        for j in range(3):
            sub = np.delete(np.delete(m, j, axis=0), i, axis=1)
            out[i, j] = (-1) ** (i + j) * (sub[0, 0] * sub[1, 1] - sub[0, 1] * sub[1, 0])
    return out


def float_evaluate_word(w: Word, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Word evaluation on approximate matrices; inverses via adjugate, so
    ``A`` and ``B`` should have determinant 1 up to rounding."""
    images = {(1, 1): A, (2, 1): B, (1, -1): float_adjugate(A), (2, -1): float_adjugate(B)}
    result = np.eye(3, dtype=complex)
    for gen, exp in w.letters:
        m = images[(gen, 1 if exp > 0 else -1)]
        for _ in range(abs(exp)):
            result = result @ m
    return result
