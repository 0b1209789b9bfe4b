"""Rewriting traces of words in F2 into polynomials in the nine coordinates.

Words are manipulated inside the group algebra as :class:`FormalElement`
values: finite sums ``sum c_w * w`` of reduced words with coordinate
polynomial coefficients. Two matrix identities do all the work, both valid
for unimodular 3x3 matrices:

* power elimination (Cayley-Hamilton times ``x^-1``)::

      x^2 = tr(x) x - tr(x^-1) I + x^-1

* gathering, from the partial polarization of Cayley-Hamilton::

      x y x = pol(x, y) - y x^2 - x^2 y

  where ``pol(x, y)`` expands ``y x^2 + x^2 y + x y x`` into lower terms
  with trace coefficients.

Every replacement turns a word into strictly shorter words, so rewriting
terminates. Words with no letter power and no repeated signed letter are
"terminal"; there are 29 of them (length at most 4) and their traces are
coordinates, ``t(5)``, or ``t(-5) = P - t(5)``.

Short traces are reduced directly (cyclic reduction, powers, gathering);
long words are first brought to a terminal combination one letter at a
time, which keeps the cost linear in the word length.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Union

from .exactlinalg import Matrix3, SL3Pair, evaluate_word
from .freegroup import IDENTITY, Word, cyclic_reduce, invert, parse_word
from .poly import CoordPolynomial, P, T5, const, parse_polynomial, var
from .identities import identity_suite

__all__ = [
    "identity_suite",
    "FormalElement",
    "RewriteTrace",
    "RewriteStep",
    "RewriteBudgetExceeded",
    "Reducer",
    "eliminate_powers",
    "gather_repeats",
    "pol",
    "reduce_trace",
    "is_terminal",
    "canonical_key",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10**6
STREAM_THRESHOLD = 8

_HALF = Fraction(1, 2)


def _letter_var(gen: int, sign: int) -> CoordPolynomial:
    return var({(1, 1): 0, (1, -1): 1, (2, 1): 2, (2, -1): 3}[(gen, sign)])


def _as_word(w: Union[Word, str]) -> Word:
    return parse_word(w) if isinstance(w, str) else w


class FormalElement:
    """Element of the group algebra of F2 over the coordinate ring."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict] = None):
        self.terms: dict[Word, CoordPolynomial] = {}
        for w, c in (terms or {}).items():
            self._accumulate(_as_word(w), c if isinstance(c, CoordPolynomial) else const(c))

    @classmethod
    def of(cls, w: Union[Word, str], coeff=1) -> "FormalElement":
        return cls({_as_word(w): coeff})

    def _accumulate(self, w: Word, c: CoordPolynomial) -> None:
        if c.is_zero():
            return
        cur = self.terms.get(w)
        s = c if cur is None else cur + c
        if s.is_zero():
            self.terms.pop(w, None)
        else:
            self.terms[w] = s

    def __iter__(self) -> Iterator[tuple[Word, CoordPolynomial]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FormalElement) and self.terms == other.terms

    def __add__(self, other: "FormalElement") -> "FormalElement":
        out = FormalElement()
        out.terms = dict(self.terms)
        for w, c in other.terms.items():
            out._accumulate(w, c)
        return out

    def __neg__(self) -> "FormalElement":
        out = FormalElement()
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other: "FormalElement") -> "FormalElement":
        return self + (-other)

    def scale(self, c) -> "FormalElement":
        c = c if isinstance(c, CoordPolynomial) else const(c)
        out = FormalElement()
        for w, d in self.terms.items():
            out._accumulate(w, d * c)
        return out

    def left(self, u: Word) -> "FormalElement":
        out = FormalElement()
        for w, c in self.terms.items():
            out._accumulate(u * w, c)
        return out

    def right(self, u: Word) -> "FormalElement":
        out = FormalElement()
        for w, c in self.terms.items():
            out._accumulate(w * u, c)
        return out

    def evaluate(self, pair: SL3Pair, point) -> Matrix3:
        """Matrix value at ``pair``; ``point`` is ``chi(pair)``."""
        total = Matrix3.zero()
        for w, c in self.terms.items():
            total = total + evaluate_word(w, pair).scale(c.eval(point))
        return total

    def __repr__(self) -> str:
        return "FormalElement(" + ", ".join(f"({c})*[{w}]" for w, c in self.terms.items()) + ")"


def is_terminal(w: Word) -> bool:
    """No letter power and no signed letter used twice."""
    seen = set()
    for gen, exp in w.letters:
        if abs(exp) != 1 or (gen, exp) in seen:
            return False
        seen.add((gen, exp))
    return True


def canonical_key(w: Word) -> tuple[int, ...]:
    """Least rotation of the cyclically reduced letter sequence."""
    core, _ = cyclic_reduce(w)
    s = core.signed()
    if not s:
        return s
    return min(s[i:] + s[:i] for i in range(len(s)))


def _key_word(key: tuple[int, ...]) -> Word:
    return Word.from_signed(key)


@dataclass
class RewriteStep:
    rule: str
    before: str
    after: list[tuple[str, Optional[str]]]

    def to_json(self) -> str:
        return json.dumps({"rule": self.rule, "before": self.before, "after": self.after})


@dataclass
class RewriteTrace:
    """Audit log of trace-level rewrites: ``tr(before) = sum coeff * tr(word)``
    (``word`` None for a pure polynomial term)."""

    steps: list[RewriteStep] = field(default_factory=list)

    def record(self, rule: str, before: Word, after: Iterable[tuple[CoordPolynomial, Optional[Word]]]) -> None:
        self.steps.append(
            RewriteStep(rule, str(before), [(str(c), None if w is None else str(w)) for c, w in after])
        )

    def json_lines(self) -> Iterator[str]:
        for s in self.steps:
            yield s.to_json()

    def replay(self, w: Union[Word, str]) -> CoordPolynomial:
        """Rebuild ``tr(w)`` from the recorded steps alone."""
        table: dict[tuple[int, ...], RewriteStep] = {}
        for s in self.steps:
            if s.rule != "cyclic":
                table.setdefault(canonical_key(parse_word(s.before)), s)
        done: dict[tuple[int, ...], CoordPolynomial] = {}

        def expand(word: Word) -> CoordPolynomial:
            key = canonical_key(word)
            if key in done:
                return done[key]
            step = table[key]
            total = const(0)
            for c_text, w_text in step.after:
                c = parse_polynomial(c_text)
                total = total + (c if w_text is None else c * expand(parse_word(w_text)))
            done[key] = total
            return total

        return expand(_as_word(w))


class RewriteBudgetExceeded(RuntimeError):
    """The rule budget ran out; indicates a rewriting bug, not bad input."""

    def __init__(self, message: str, trace: Optional[RewriteTrace]):
        super().__init__(message)
        self.trace = trace


class Reducer:
    """Trace reduction with memo tables.

    The memo dicts are only ever filled with final values, so concurrent
    use at worst recomputes an entry.
    """

    def __init__(self, trace: Optional[RewriteTrace] = None, budget: int = DEFAULT_BUDGET,
                 stream_threshold: int = STREAM_THRESHOLD):
        self.log = trace
        self.budget = budget
        self.stream_threshold = stream_threshold
        self.steps = 0
        self._traces: dict[tuple[int, ...], CoordPolynomial] = {}
        self._terminal: dict[Word, FormalElement] = {}
        self._base = _base_table()

    def _tick(self, n: int = 1) -> None:
        self.steps += n
        if self.steps > self.budget:
            raise RewriteBudgetExceeded(
                f"rewrite budget of {self.budget} rule applications exceeded", self.log
            )

    # --- matrix-level rules ----------------------------------------------

    def pol(self, x: Word, y: Word) -> FormalElement:
        """Trace-polynomial expansion of ``y x^2 + x^2 y + x y x``."""
        t = self.trace
        tx, ty = t(x), t(y)
        txy, tyxx, txx = t(x * y), t(y * x * x), t(x * x)
        e = FormalElement()
        e._accumulate(x * x, ty)
        e._accumulate(y * x, tx)
        e._accumulate(x * y, tx)
        e._accumulate(x, txy - tx * ty)
        e._accumulate(IDENTITY, tyxx - tx * txy + (ty * tx * tx - ty * txx).scale(_HALF))
        e._accumulate(y, (txx - tx * tx).scale(_HALF))
        return e

    def power_step(self, w: Word) -> Optional[FormalElement]:
        """Lower the first letter power ``|n| >= 2`` once, or None."""
        for i, (gen, exp) in enumerate(w.letters):
            n = abs(exp)
            if n < 2:
                continue
            s = 1 if exp > 0 else -1
            pre, post = w.letters[:i], w.letters[i + 1:]
            self._tick()
            e = FormalElement()
            e._accumulate(Word(pre + ((gen, s * (n - 1)),) + post), _letter_var(gen, s))
            e._accumulate(Word(pre + ((gen, s * (n - 2)),) + post), -_letter_var(gen, -s))
            e._accumulate(Word(pre + ((gen, s * (n - 3)),) + post), const(1))
            return e
        return None

    def gather_step(self, w: Word) -> Optional[FormalElement]:
        """Apply ``x y x = pol(x, y) - y x^2 - x^2 y`` to the innermost,
        leftmost repeated signed letter of ``w`` (exponents must be +-1)."""
        letters = w.letters
        best = None
        last: dict[tuple[int, int], int] = {}
        for j, lt in enumerate(letters):
            key = (lt[0], lt[1])
            if key in last:
                i = last[key]
                if best is None or j - i < best[1] - best[0]:
                    best = (i, j)
            last[key] = j
        if best is None:
            return None
        i, j = best
        self._tick()
        x = Word([letters[i]])
        y = Word(letters[i + 1:j])
        w1, w3 = Word(letters[:i]), Word(letters[j + 1:])
        xx = x * x
        middle = self.pol(x, y) - FormalElement({y * xx: 1, xx * y: 1})
        return middle.left(w1).right(w3)

    def eliminate_powers(self, e: FormalElement) -> FormalElement:
        out = FormalElement()
        todo = list(e.terms.items())
        while todo:
            w, c = todo.pop()
            step = self.power_step(w)
            if step is None:
                out._accumulate(w, c)
            else:
                todo.extend((u, d * c) for u, d in step.terms.items())
        return out

    def gather_repeats(self, e: FormalElement) -> FormalElement:
        """Rewrite until every word is terminal."""
        out = FormalElement()
        todo = list(self.eliminate_powers(e).terms.items())
        while todo:
            w, c = todo.pop()
            if is_terminal(w):
                out._accumulate(w, c)
                continue
            step = self.power_step(w) or self.gather_step(w)
            todo.extend((u, d * c) for u, d in step.terms.items())
        return out

    def terminal_form(self, w: Word) -> FormalElement:
        """Terminal combination equal to ``w`` as a matrix, built letter by letter."""
        acc = FormalElement.of(IDENTITY)
        for s in w.signed():
            letter = Word.from_signed((s,))
            nxt = FormalElement()
            for u, c in acc.terms.items():
                v = u * letter
                red = self._terminal.get(v)
                if red is None:
                    red = self.gather_repeats(FormalElement.of(v))
                    self._terminal[v] = red
                for t, d in red.terms.items():
                    nxt._accumulate(t, c * d)
            acc = nxt
        return acc

    # --- traces ------------------------------------------------------------

    def trace_element(self, e: FormalElement) -> CoordPolynomial:
        total = const(0)
        for w, c in e.terms.items():
            total = total + c * self.trace(w)
        return total

    def trace(self, w: Union[Word, str]) -> CoordPolynomial:
        w = _as_word(w)
        key = canonical_key(w)
        hit = self._traces.get(key)
        if hit is not None:
            return hit
        if self.log is not None:
            core = cyclic_reduce(w)[0]
            if core != w:
                self.log.record("cyclic", w, [(const(1), core)])
        result = self._reduce_key(key)
        self._traces[key] = result
        return result

    def _reduce_key(self, key: tuple[int, ...]) -> CoordPolynomial:
        word = _key_word(key)
        base = self._base.get(key)
        if base is not None:
            self._tick()
            if self.log is not None:
                self.log.record("base", word, [(base, None)])
            return base
        expansion, rule = self._expand(word, key)
        if self.log is not None:
            self.log.record(rule, word, [(c, u) for u, c in expansion.terms.items()])
        return self.trace_element(expansion)

    def _expand(self, word: Word, key: tuple[int, ...]) -> tuple[FormalElement, str]:
        step = self.power_step(word)
        if step is not None:
            return step, "power"
        root, k = _primitive_root(key)
        if k >= 2:
            # tr(u^k) = tr(u) tr(u^(k-1)) - tr(u^-1) tr(u^(k-2)) + tr(u^(k-3))
            self._tick()
            u = Word.from_signed(root)
            e = FormalElement()
            e._accumulate(u ** (k - 1), self.trace(u))
            e._accumulate(u ** (k - 2), -self.trace(invert(u)))
            e._accumulate(u ** (k - 3), const(1))
            return e, "composite_power"
        if len(key) > self.stream_threshold:
            return self.terminal_form(word), "terminal_form"
        # rotate so the innermost same-signed repeat starts the word; the
        # remainder after the second copy is then nonempty
        n = len(key)
        best = None
        for i in range(n):
            for gap in range(2, n - 1):
                if key[(i + gap) % n] == key[i] and (best is None or gap < best[1]):
                    best = (i, gap)
                    break
        if best is None:
            raise AssertionError(f"no reduction rule applies to {word}")  # pragma: no cover
        i, gap = best
        rot = key[i:] + key[:i]
        x = Word.from_signed(rot[:1])
        y = Word.from_signed(rot[1:gap])
        rest = Word.from_signed(rot[gap + 1:])
        self._tick()
        xx = x * x
        e = (self.pol(x, y) - FormalElement({y * xx: 1, xx * y: 1})).right(rest)
        return e, "gather"


def _primitive_root(key: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
    n = len(key)
    for d in range(1, n // 2 + 1):
        if n % d == 0 and key[:d] * (n // d) == key:
            return key[:d], n // d
    return key, 1


_BASE: Optional[dict[tuple[int, ...], CoordPolynomial]] = None


def _base_table() -> dict[tuple[int, ...], CoordPolynomial]:
    """Traces of the cyclic classes that are coordinates (plus ``t(-5)``)."""
    global _BASE
    if _BASE is None:
        t5 = var(T5)
        table = {
            "1": const(3),
            "a": var(0), "A": var(1), "b": var(2), "B": var(3),
            "a*b": var(4), "A*B": var(5), "a*B": var(6), "A*b": var(7),
            "a*b*A*B": t5,
            "b*a*B*A": P() - t5,
        }
        _BASE = {canonical_key(parse_word(k)): v for k, v in table.items()}
    return _BASE


_DEFAULT = Reducer()


def reduce_trace(w: Union[Word, str], trace: Optional[RewriteTrace] = None,
                 budget: int = DEFAULT_BUDGET) -> CoordPolynomial:
    """Polynomial in the nine coordinates equal to ``tr(w)`` on SL(3) pairs.

    With ``trace`` given, a fresh reducer records every rewrite into it.
    """
    w = _as_word(w)
    if trace is None and budget == DEFAULT_BUDGET:
        _DEFAULT.steps = 0
        return _DEFAULT.trace(w)
    return Reducer(trace=trace, budget=budget).trace(w)


def pol(x: Union[Word, str], y: Union[Word, str]) -> FormalElement:
    return _DEFAULT.pol(_as_word(x), _as_word(y))


def eliminate_powers(e: FormalElement) -> FormalElement:
    """Remove every letter power ``|n| >= 2`` (matrix-level rewrite)."""
    return _DEFAULT.eliminate_powers(e)


def gather_repeats(e: FormalElement) -> FormalElement:
    """Rewrite to a combination of terminal words (matrix-level rewrite)."""
    return _DEFAULT.gather_repeats(e)
