"""Words in the free group on two generators.

A word is stored as a tuple of ``Letter(generator, exponent)`` pairs with
adjacent letters on distinct generators, so every ``Word`` instance is
freely reduced. Powers are kept compressed (``a^3`` is one letter).

Text grammar::

    word   := term (("*" | ws) term)*
    term   := letter ("^" int)?
    letter := "a" | "b" | "A" | "B"

``A`` and ``B`` are the inverses of ``a`` and ``b``. The identity is
written ``1`` (the empty string is also accepted).
"""
from __future__ import annotations

import re
from typing import Iterable, Iterator, NamedTuple

__all__ = [
    "Letter",
    "Word",
    "WordSyntaxError",
    "parse_word",
    "invert",
    "cyclic_reduce",
    "length",
    "weighted_length",
    "exponent_sums",
]

_LETTER_NAMES = {1: "a", 2: "b"}
_SYMBOLS = {"a": (1, 1), "b": (2, 1), "A": (1, -1), "B": (2, -1)}
_TOKEN = re.compile(r"\s*([aAbB])(?:\s*\^\s*([+-]?\d+))?\s*")


class WordSyntaxError(ValueError):
    """Raised when a string is not a word in the grammar."""


class Letter(NamedTuple):
    generator: int
    exponent: int


def _reduce(pairs: Iterable[tuple[int, int]]) -> tuple[Letter, ...]:
    stack: list[list[int]] = []
    for gen, exp in pairs:
        if exp == 0:
            continue
        if gen not in (1, 2):
            raise ValueError(f"generator index must be 1 or 2, got {gen}")
        if stack and stack[-1][0] == gen:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([gen, exp])
    return tuple(Letter(g, e) for g, e in stack)


class Word:
    """Freely reduced element of F2. Immutable and hashable."""

    __slots__ = ("letters", "_hash")

    def __init__(self, pairs: Iterable[tuple[int, int]] = ()):
        self.letters = _reduce(pairs)
        self._hash = hash(self.letters)

    @classmethod
    def from_signed(cls, seq: Iterable[int]) -> "Word":
        """Build from single letters encoded as +-1, +-2."""
        return cls((abs(s), 1 if s > 0 else -1) for s in seq)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __len__(self) -> int:
        """Number of compressed letters (not the word length)."""
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.letters[i])
        return self.letters[i]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return invert(self) ** (-n)
        return Word(self.letters * n)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        for gen, exp in self.letters:
            name = _LETTER_NAMES[gen]
            parts.append(name if exp == 1 else f"{name}^{exp}")
        return "*".join(parts)

    def signed(self) -> tuple[int, ...]:
        """Expand to single letters: ``a^2*B`` -> ``(1, 1, -2)``."""
        out: list[int] = []
        for gen, exp in self.letters:
            s = gen if exp > 0 else -gen
            out.extend([s] * abs(exp))
        return tuple(out)

    def substitute(self, images: tuple["Word", "Word"]) -> "Word":
        """Apply the endomorphism x_i -> images[i-1]."""
        out: list[tuple[int, int]] = []
        for gen, exp in self.letters:
            img = images[gen - 1] if exp > 0 else invert(images[gen - 1])
            out.extend(img.letters * abs(exp))
        return Word(out)


IDENTITY = Word()


def parse_word(text: str) -> Word:
    """Parse ``text`` into a freely reduced word.

    >>> str(parse_word("a^2*B*a^-1"))
    'a^2*b^-1*a^-1'
    """
    stripped = text.strip()
    if stripped in ("", "1"):
        return IDENTITY
    pairs: list[tuple[int, int]] = []
    pos = 0
    expect_term = True
    while pos < len(stripped):
        if not expect_term:
            if stripped[pos] == "*":
                pos += 1
            elif not stripped[pos - 1].isspace():
                raise WordSyntaxError(f"expected '*' or whitespace at position {pos} in {text!r}")
        m = _TOKEN.match(stripped, pos)
        if m is None:
            raise WordSyntaxError(f"unexpected symbol at position {pos} in {text!r}")
        gen, sign = _SYMBOLS[m.group(1)]
        exp = 1 if m.group(2) is None else int(m.group(2))
        if exp == 0:
            raise WordSyntaxError(f"zero exponent in {text!r}")
        pairs.append((gen, sign * exp))
        pos = m.end()
        expect_term = False
    if stripped.endswith("*") or stripped.endswith("^"):
        raise WordSyntaxError(f"dangling operator in {text!r}")
    return Word(pairs)


def invert(w: Word) -> Word:
    return Word((g, -e) for g, e in reversed(w.letters))


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Split ``w`` as ``conjugator * core * conjugator^-1`` with ``core``
    cyclically reduced."""
    core = w
    conjugator = IDENTITY
    # x^m u x^n = x^-n (x^(m+n) u) x^n
    while len(core) >= 2 and core.letters[0][0] == core.letters[-1][0]:
        gen, n = core.letters[-1]
        step = Word([(gen, -n)])
        conjugator = conjugator * step
        core = Word(((gen, n),) + core.letters[:-1])
    return core, conjugator


def length(w: Word) -> int:
    return sum(abs(e) for _, e in w.letters)


def weighted_length(w: Word) -> int:
    """Positive letters count once, negative letters twice."""
    return sum(e if e > 0 else -2 * e for _, e in w.letters)


def exponent_sums(w: Word) -> tuple[int, int]:
    """Weighted lengths of ``w(x1, I)`` and ``w(I, x2)``."""
    net = [0, 0]
    for g, e in w.letters:
        net[g - 1] += e
    return tuple(n if n >= 0 else -2 * n for n in net)
