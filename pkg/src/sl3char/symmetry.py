"""Dihedral symmetries of the coordinate ring and the Nielsen action.

The group is generated by the outer automorphisms ``iota: a -> A, b -> b``
and ``tau: a <-> b``. Elements are named by words in ``i`` (iota) and ``t``
(tau); the name ``it`` means iota after tau, i.e. tau is applied first.
Each element permutes the signed subscripts ``+-1 .. +-4`` and sends ``t5``
to itself or to ``P - t5`` according to the parity of its name.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

from .freegroup import Word, parse_word
from .poly import CoordPolynomial, P, Q, T5, const, parse_polynomial, var
from .relation import P_SEED_TEXT, Q_SEED_TEXT
from .tracerewrite import reduce_trace

__all__ = [
    "SignedPermutation",
    "DihedralElement",
    "ELEMENT_NAMES",
    "CAYLEY_TABLE",
    "LISTED_PERMUTATIONS",
    "element",
    "elements",
    "compose",
    "act_on_point",
    "act_on_poly",
    "symmetrize",
    "seed_p",
    "seed_q",
    "verify_group_structure",
    "nielsen_action",
    "NIELSEN_GENERATORS",
]

SIGNED = (1, -1, 2, -2, 3, -3, 4, -4)
# position of t(s) in the coordinate tuple
_INDEX = {s: i for i, s in enumerate(SIGNED)}


@dataclass(frozen=True)
class SignedPermutation:
    images: tuple[int, ...]  # images[k] is the image of SIGNED[k]

    def __post_init__(self):
        if sorted(self.images) != sorted(SIGNED):
            raise ValueError("not a bijection of the signed indices")

    @classmethod
    def from_mapping(cls, m: Mapping[int, int]) -> "SignedPermutation":
        return cls(tuple(m.get(s, s) for s in SIGNED))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]]) -> "SignedPermutation":
        m: dict[int, int] = {}
        for cyc in cycles:
            for k, s in enumerate(cyc):
                if s in m:
                    raise ValueError(f"index {s} repeated in cycles")
                m[s] = cyc[(k + 1) % len(cyc)]
        return cls.from_mapping(m)

    @classmethod
    def identity(cls) -> "SignedPermutation":
        return cls(SIGNED)

    def __call__(self, s: int) -> int:
        return self.images[_INDEX[s]]

    def __matmul__(self, other: "SignedPermutation") -> "SignedPermutation":
        """``(self @ other)(s) = self(other(s))``."""
        return SignedPermutation(tuple(self(other(s)) for s in SIGNED))

    def inverse(self) -> "SignedPermutation":
        inv = {self(s): s for s in SIGNED}
        return SignedPermutation.from_mapping(inv)

    def cycles(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for s in SIGNED:
            if s in seen or self(s) == s:
                continue
            cyc = [s]
            seen.add(s)
            nxt = self(s)
            while nxt != s:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self(nxt)
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cs = self.cycles()
        if not cs:
            return "(1)"
        return "".join("(" + ",".join(str(s) for s in c) + ")" for c in cs)


IOTA = SignedPermutation.from_cycles([(1, -1), (3, -4), (-3, 4)])
TAU = SignedPermutation.from_cycles([(1, 2), (-1, -2), (4, -4)])
_GENERATORS = {"i": IOTA, "t": TAU}

ELEMENT_NAMES = ("id", "i", "t", "it", "ti", "tit", "iti", "titi")

# permutations as listed alongside the multiplication table
LISTED_PERMUTATIONS = {
    "id": SignedPermutation.identity(),
    "i": SignedPermutation.from_cycles([(1, -1), (3, -4), (-3, 4)]),
    "t": SignedPermutation.from_cycles([(1, 2), (-1, -2), (4, -4)]),
    "it": SignedPermutation.from_cycles([(1, 2, -1, -2), (3, -4, -3, 4)]),
    "ti": SignedPermutation.from_cycles([(1, -2, -1, 2), (3, 4, -3, -4)]),
    "tit": SignedPermutation.from_cycles([(2, -2), (3, 4), (-3, -4)]),
    "iti": SignedPermutation.from_cycles([(1, -2), (2, -1), (3, -3)]),
    "titi": SignedPermutation.from_cycles([(1, -1), (2, -2), (3, -3), (4, -4)]),
}

# CAYLEY_TABLE[g][h] is the name of g*h, transcribed row by row
_TABLE_ROWS = {
    "id": ("id", "i", "t", "it", "ti", "tit", "iti", "titi"),
    "i": ("i", "id", "it", "t", "iti", "titi", "ti", "tit"),
    "t": ("t", "ti", "id", "tit", "i", "it", "titi", "iti"),
    "it": ("it", "iti", "i", "titi", "id", "t", "tit", "ti"),
    "ti": ("ti", "t", "tit", "id", "titi", "iti", "i", "it"),
    "tit": ("tit", "titi", "ti", "iti", "t", "id", "it", "i"),
    "iti": ("iti", "it", "titi", "i", "tit", "ti", "id", "t"),
    "titi": ("titi", "tit", "iti", "ti", "it", "i", "t", "id"),
}
CAYLEY_TABLE = {g: dict(zip(ELEMENT_NAMES, row)) for g, row in _TABLE_ROWS.items()}


def _canonical_name(name: str) -> str:
    s = name.strip().lower()
    for old, new in (("iota", "i"), ("tau", "t"), ("ι", "i"), ("τ", "t")):
        s = s.replace(old, new)
    s = "".join(ch for ch in s if ch not in " *.·∘")
    if s in ("", "id", "e", "1"):
        return "id"
    if set(s) - {"i", "t"}:
        raise ValueError(f"unknown dihedral element {name!r}")
    return s


@dataclass(frozen=True)
class DihedralElement:
    name: str
    perm: SignedPermutation
    parity: int = field(default=0)  # 1 if t5 goes to P - t5

    @classmethod
    def from_word(cls, name: str) -> "DihedralElement":
        s = _canonical_name(name)
        perm = SignedPermutation.identity()
        if s != "id":
            for ch in s:
                perm = perm @ _GENERATORS[ch]
        return cls(s, perm, 0 if s == "id" else len(s) % 2)

    def __mul__(self, other: "DihedralElement") -> "DihedralElement":
        perm = self.perm @ other.perm
        name = next((n for n in ELEMENT_NAMES if element(n).perm == perm), self.name + other.name)
        return DihedralElement(name, perm, (self.parity + other.parity) % 2)

    def inverse(self) -> "DihedralElement":
        inv = self.perm.inverse()
        return next(e for e in elements() if e.perm == inv)


_ELEMENTS = {n: DihedralElement.from_word(n) for n in ELEMENT_NAMES}


def element(name: str) -> DihedralElement:
    s = _canonical_name(name)
    if s in _ELEMENTS:
        return _ELEMENTS[s]
    # longer words reduce to one of the eight
    e = DihedralElement.from_word(s)
    return next(x for x in _ELEMENTS.values() if x.perm == e.perm)


def elements() -> list[DihedralElement]:
    return [_ELEMENTS[n] for n in ELEMENT_NAMES]


def compose(g: Union[str, DihedralElement], h: Union[str, DihedralElement]) -> DihedralElement:
    g = element(g) if isinstance(g, str) else g
    h = element(h) if isinstance(h, str) else h
    return g * h


def _as_element(g) -> DihedralElement:
    return element(g) if isinstance(g, str) else g


def act_on_point(g, pt: Sequence):
    """Move coordinate ``t(s)`` to position ``t(g(s))``; ``t5`` follows parity."""
    from .variety import CharPoint

    g = _as_element(g)
    out = [None] * 9
    for s in SIGNED:
        out[_INDEX[g.perm(s)]] = pt[_INDEX[s]]
    out[T5] = pt[T5] if g.parity == 0 else P().eval(list(pt)) - pt[T5]
    return CharPoint(*out)


def act_on_poly(g, p: CoordPolynomial) -> CoordPolynomial:
    """Substitute ``t(s) -> t(g(s))`` and ``t5 -> t5`` or ``P - t5``."""
    g = _as_element(g)
    images = [var(_INDEX[g.perm(s)]) for s in SIGNED]
    images.append(var(T5) if g.parity == 0 else P() - var(T5))
    return p.normal_form().substitute(images)


def symmetrize(p: CoordPolynomial) -> CoordPolynomial:
    total = const(0)
    for g in elements():
        total = total + act_on_poly(g, p)
    return total


def seed_p() -> CoordPolynomial:
    return parse_polynomial(P_SEED_TEXT)


def seed_q() -> CoordPolynomial:
    return parse_polynomial(Q_SEED_TEXT)


def _order(g: DihedralElement) -> int:
    k, x = 1, g.perm
    while x != SignedPermutation.identity():
        x = x @ g.perm
        k += 1
    return k


def verify_group_structure() -> dict:
    """Run the structural checks; returns ``{"checks": {...}, "failures": [...]}``."""
    checks: dict[str, bool] = {}
    failures: list[str] = []

    els = elements()
    for n in ELEMENT_NAMES:
        ok = _ELEMENTS[n].perm == LISTED_PERMUTATIONS[n]
        if not ok:
            failures.append(f"permutation of {n}: got {_ELEMENTS[n].perm}, listed {LISTED_PERMUTATIONS[n]}")
    checks["listed_permutations"] = all(_ELEMENTS[n].perm == LISTED_PERMUTATIONS[n] for n in ELEMENT_NAMES)
    checks["distinct"] = len({e.perm for e in els}) == 8

    table_ok = True
    closed = True
    perms = {e.perm for e in els}
    for g in els:
        for h in els:
            prod = g.perm @ h.perm
            closed &= prod in perms
            expected = _ELEMENTS[CAYLEY_TABLE[g.name][h.name]]
            if prod != expected.perm or (g.parity + h.parity) % 2 != expected.parity:
                table_ok = False
                failures.append(f"table entry ({g.name}, {h.name}) is {CAYLEY_TABLE[g.name][h.name]}")
    checks["cayley_table"] = table_ok
    checks["closure"] = closed

    a, b = _ELEMENTS["ti"], _ELEMENTS["i"]
    checks["order_a_is_4"] = _order(a) == 4
    checks["order_b_is_2"] = _order(b) == 2
    checks["ba_equals_a_inverse_b"] = (b.perm @ a.perm) == (a.perm.inverse() @ b.perm)
    checks["generated_by_a_b"] = len(_closure([a.perm, b.perm])) == 8

    p, q = P(), Q()
    checks["fixes_P"] = all(act_on_poly(g, p) == p for g in els)
    checks["fixes_Q"] = all(act_on_poly(g, q) == q for g in els)
    for k, v in checks.items():
        if not v and not any(f.startswith(k) for f in failures):
            failures.append(k)
    return {"checks": checks, "failures": failures}


def _closure(gens: list[SignedPermutation]) -> set[SignedPermutation]:
    seen = {SignedPermutation.identity()}
    frontier = list(seen)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x @ g
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


NIELSEN_GENERATORS = {
    "tau": (parse_word("b"), parse_word("a")),
    "iota": (parse_word("A"), parse_word("b")),
    "eta": (parse_word("a*b"), parse_word("b")),
}


def nielsen_action(images: Sequence[Union[Word, str]]) -> list[CoordPolynomial]:
    """Image of each coordinate under ``x1 -> images[0], x2 -> images[1]``."""
    from .variety import GENERATOR_WORDS

    if len(images) != 2:
        raise ValueError("need exactly two image words")
    imgs = tuple(parse_word(w) if isinstance(w, str) else w for w in images)
    return [reduce_trace(w.substitute(imgs)) for w in GENERATOR_WORDS]
