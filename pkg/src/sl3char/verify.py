"""Verification suites: exact oracles for every symbolic claim.

Each suite returns a JSON-ready report ``{"suite", "ok", "checks": [...]}``
where every check carries its own ``ok`` flag, trial count and (at most a
few) counterexamples that can be replayed from the seed.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .exactlinalg import ExactComplex, Matrix3, SL3Pair, adjugate, evaluate_word, random_pair, trial_rng
from .freegroup import Word, exponent_sums, parse_word
from .identities import identity_suite
from .poly import P, Q, T5, VAR_BIGRADES, PointEvaluator, relation, var
from .symmetry import (
    NIELSEN_GENERATORS,
    act_on_point,
    act_on_poly,
    elements,
    nielsen_action,
    seed_p,
    seed_q,
    symmetrize,
    verify_group_structure,
)
from .tracerewrite import reduce_trace
from .variety import (
    DEFAULT_TOL,
    GENERATOR_WORDS,
    T_MINUS_5_WORD,
    bilinear_form,
    branching_family,
    chi,
    distinguishing_pair,
    fiber_over,
    is_branching,
    is_singular,
    jacobian_system,
    lambda_det,
    sample_pair,
    surface_residual,
)

__all__ = [
    "RunConfig",
    "SUITES",
    "run_suite",
    "enumerate_words",
    "random_words",
    "trace_table",
    "rewrite_oracle",
    "generic_pair",
]

MAX_COUNTEREXAMPLES = 3


@dataclass(frozen=True)
class RunConfig:
    seed: int = 42
    trials: int = 100
    tolerance: float = DEFAULT_TOL


class _Check:
    """Accumulates outcomes of one named check."""

    def __init__(self, name: str):
        self.name = name
        self.trials = 0
        self.failures: list = []
        self.detail: dict = {}

    def record(self, ok: bool, counterexample=None) -> None:
        self.trials += 1
        if not ok:
            self.failures.append(counterexample)

    def report(self) -> dict:
        out = {
            "name": self.name,
            "ok": not self.failures,
            "trials": self.trials,
            "failed": len(self.failures),
            "counterexamples": self.failures[:MAX_COUNTEREXAMPLES],
        }
        out.update(self.detail)
        return out


def _suite(name: str, cfg: RunConfig, checks: Iterable[_Check]) -> dict:
    rows = [c.report() for c in checks]
    return {"suite": name, "seed": cfg.seed, "trials": cfg.trials,
            "ok": all(r["ok"] for r in rows), "checks": rows}


def _single(name: str, ok: bool, **detail) -> _Check:
    c = _Check(name)
    c.record(ok, detail or None)
    c.detail.update(detail)
    return c


def _pair_json(p: SL3Pair) -> dict:
    return p.to_json()


def generic_pair(seed: int, k: int) -> tuple[SL3Pair, bool]:
    """Generic pair for trial ``k`` whose character is non-branching and
    non-singular; regenerates once on a degenerate draw. Returns the pair and
    whether the retry also came out degenerate."""
    for index in (k, f"{k}:retry"):
        p = sample_pair("generic", seed, index)
        pt = chi(p)
        if not is_branching(pt) and not is_singular(pt):
            return p, True
    return p, False


# --- word enumeration and the rewrite oracle ------------------------------

_SIGNED_LETTERS = (1, -1, 2, -2)


def _signed_sequences(max_length: int) -> Iterator[tuple[int, ...]]:
    stack: list[tuple[int, ...]] = [()]
    while stack:
        seq = stack.pop()
        yield seq
        if len(seq) == max_length:
            continue
        for s in reversed(_SIGNED_LETTERS):
            if not seq or s != -seq[-1]:
                stack.append(seq + (s,))


def enumerate_words(max_length: int) -> list[Word]:
    """Every freely reduced word of length at most ``max_length``."""
    return [Word.from_signed(s) for s in _signed_sequences(max_length)]


def random_words(seed: int, count: int, lo: int, hi: int) -> list[Word]:
    rng = random.Random(f"words:{seed}:{count}:{lo}:{hi}")
    out = []
    for _ in range(count):
        n = rng.randint(lo, hi)
        seq: list[int] = []
        while len(seq) < n:
            s = rng.choice(_SIGNED_LETTERS)
            if not seq or s != -seq[-1]:
                seq.append(s)
        out.append(Word.from_signed(seq))
    return out


def trace_table(max_length: int, pair: SL3Pair) -> dict[tuple[int, ...], ExactComplex]:
    """Traces of all reduced words up to ``max_length``, sharing prefixes."""
    gens = {1: pair.A, -1: pair.image(1, -1), 2: pair.B, -2: pair.image(2, -1)}
    out: dict[tuple[int, ...], ExactComplex] = {}
    stack: list[tuple[tuple[int, ...], Matrix3]] = [((), Matrix3.identity())]
    while stack:
        seq, m = stack.pop()
        out[seq] = m.trace()
        if len(seq) == max_length:
            continue
        for s in _SIGNED_LETTERS:
            if not seq or s != -seq[-1]:
                stack.append((seq + (s,), m @ gens[s]))
    return out


def rewrite_oracle(max_length: int, pairs: Sequence[SL3Pair],
                   long_words: Sequence[Word] = (), long_pairs: Sequence[SL3Pair] = (),
                   name: str = "rewrite_oracle") -> _Check:
    """Compare ``reduce_trace`` with direct traces, exactly."""
    check = _Check(name)
    words = {s: reduce_trace(Word.from_signed(s)) for s in _signed_sequences(max_length)}
    for k, pair in enumerate(pairs):
        ev = PointEvaluator(chi(pair))
        table = trace_table(max_length, pair)
        for s, poly in words.items():
            ok = ev(poly) == table[s]
            check.record(ok, None if ok else {"word": str(Word.from_signed(s)), "pair": k})
    for w in long_words:
        poly = reduce_trace(w)
        for k, pair in enumerate(long_pairs):
            ok = PointEvaluator(chi(pair))(poly) == evaluate_word(w, pair).trace()
            check.record(ok, None if ok else {"word": str(w), "pair": k})
    check.detail["words"] = len(words) + len(long_words)
    return check


# --- suites -----------------------------------------------------------------

def suite_identities(cfg: RunConfig) -> dict:
    return identity_suite(cfg.seed, cfg.trials)


def _commutator_traces(p: SL3Pair) -> tuple[ExactComplex, ExactComplex]:
    A, B = p.A, p.B
    Ai, Bi = adjugate(A), adjugate(B)
    return (A @ B @ Ai @ Bi).trace(), (B @ A @ Bi @ Ai).trace()


def suite_surface(cfg: RunConfig) -> dict:
    residual = _Check("hypersurface_residual")
    q_oracle = _Check("q_oracle")
    p_oracle = _Check("p_sum_of_commutators")
    fiber = _Check("fiber_roots")
    for k in range(cfg.trials):
        p = random_pair(cfg.seed, k)
        pt = chi(p)
        ev = PointEvaluator(pt)
        c1, c2 = _commutator_traces(p)
        res = ev(relation())
        residual.record(res.is_zero(), {"trial": k, "residual": str(res)})
        q_oracle.record(ev(Q()) == c1 * c2, {"trial": k})
        p_oracle.record(ev(P()) == c1 + c2, {"trial": k})
        r1, r2 = fiber_over(pt)
        t5, tm5 = complex(c1), complex(c2)
        scale = max(1.0, abs(t5), abs(tm5))
        ok = (min(abs(r1 - t5) + abs(r2 - tm5), abs(r1 - tm5) + abs(r2 - t5)) / scale < cfg.tolerance)
        fiber.record(ok, {"trial": k, "roots": [str(r1), str(r2)]})

    branching = _Check("branching_iff_t5_equals_tm5")
    for k in range(cfg.trials):
        for fam in ("sl2", "gl2", "diag"):
            pt = chi(sample_pair(fam, cfg.seed, k))
            tm5 = P().eval(pt) - pt.t5
            branching.record(is_branching(pt) == (pt.t5 == tm5), {"family": fam, "trial": k})
        p, clean = generic_pair(cfg.seed, k)
        pt = chi(p)
        tm5 = P().eval(pt) - pt.t5
        branching.record(clean and is_branching(pt) == (pt.t5 == tm5), {"family": "generic", "trial": k})

    sl2 = _Check("sl2_t5_half_P")
    for k in range(cfg.trials):
        pt = chi(sample_pair("sl2", cfg.seed, k))
        sl2.record(pt.t5 * 2 == P().eval(pt), {"trial": k})

    f = relation()
    degrees = _single("degrees", P().total_degree() == 4 and Q().total_degree() == 6 and f.total_degree() == 6,
                      P=P().total_degree(), Q=Q().total_degree(), relation=f.total_degree())
    comm = reduce_trace(GENERATOR_WORDS[8]) + reduce_trace(T_MINUS_5_WORD)
    commutator = _single("commutator_relation", comm == P(), sum=str(comm))

    ptA, ptB = distinguishing_pair(2, 3)
    gap8 = max(abs(complex(x) - complex(y)) for x, y in zip(ptA.base, ptB.base))
    gap5 = abs(complex(ptA.t5) - complex(ptB.t5))
    resid = max(abs(surface_residual(ptA)), abs(surface_residual(ptB)))
    distinguishing = _single("distinguishing_pair", gap8 < cfg.tolerance and gap5 > 1e-3 and resid < cfg.tolerance,
                             base_gap=gap8, t5_gap=gap5, residual=resid)
    return _suite("surface", cfg, [residual, q_oracle, p_oracle, fiber, branching, sl2,
                                   degrees, commutator, distinguishing])


def suite_lambda(cfg: RunConfig) -> dict:
    dets = _Check("lambda_det_zero")
    entry = _Check("lambda_entry")
    for k in range(cfg.trials):
        p = random_pair(cfg.seed, k)
        d = lambda_det(p)
        dets.record(d.is_zero(), {"trial": k, "det": str(d)})
        x = p.A
        entry.record(bilinear_form(x, x) == (x @ x).trace() * 3 - x.trace() * x.trace(), {"trial": k})
    return _suite("lambda", cfg, [dets, entry])


def suite_singular(cfg: RunConfig) -> dict:
    checks = []
    for fam in ("gl2", "diag", "sl2"):
        c = _Check(f"{fam}_singular")
        for k in range(cfg.trials):
            c.record(is_singular(chi(sample_pair(fam, cfg.seed, k))), {"trial": k})
        checks.append(c)
    generic = _Check("generic_nonsingular")
    for k in range(cfg.trials):
        _, clean = generic_pair(cfg.seed, k)
        generic.record(clean, {"trial": k})
    checks.append(generic)

    jac = jacobian_system()
    checks.append(_single("jacobian_shape", len(jac) == 9 and jac.generators[T5] == var(T5).scale(2) - P()))

    s = branching_family(2, 1)
    tol = cfg.tolerance
    others = max(abs(v) for v in s.jacobian[2:])
    ok = (abs(s.partial_t1 - (-343 / 64)) < tol and abs(s.partial_tm1 - 343 / 128) < tol
          and others < tol and abs(surface_residual(s.point)) < tol
          and abs(P().eval(s.point) ** 2 - 4 * Q().eval(s.point)) < tol)
    checks.append(_single("branching_family", ok, partial_t1=str(s.partial_t1),
                          partial_tm1=str(s.partial_tm1), other_max=others))
    checks.append(_single("branching_family_nonsingular", not is_singular(s.point, tol)))
    return _suite("singular", cfg, checks)


def suite_grading(cfg: RunConfig) -> dict:
    words = _Check("word_bigrades")
    for w in enumerate_words(6):
        g1, g2 = exponent_sums(w)
        expected = (g1 % 3, g2 % 3)
        got = reduce_trace(w).bigrades()
        words.record(got <= {expected}, {"word": str(w), "bigrades": sorted(got)})
    homog = _single("P_Q_homogeneous", P().bigrade() == (0, 0) and Q().bigrade() == (0, 0))
    return _suite("grading", cfg, [words, homog])


def suite_symmetry(cfg: RunConfig) -> dict:
    structure = verify_group_structure()
    checks = [_single(f"group:{k}", v) for k, v in structure["checks"].items()]
    checks.append(_single("symmetrizer_P", symmetrize(seed_p()) == P() + 3))
    checks.append(_single("symmetrizer_Q", symmetrize(seed_q()) == Q() - 9))

    action = _Check("group_action")
    surface = _Check("surface_preserved")
    equivariant = _Check("projection_equivariant")
    els = elements()
    for k in range(min(cfg.trials, 20)):
        pt = chi(random_pair(cfg.seed, k))
        for g in els:
            moved = act_on_point(g, pt)
            surface.record(surface_residual(moved).is_zero(), {"trial": k, "g": g.name})
            perm8 = [None] * 8
            for i, s in enumerate((1, -1, 2, -2, 3, -3, 4, -4)):
                perm8[(1, -1, 2, -2, 3, -3, 4, -4).index(g.perm(s))] = pt[i]
            equivariant.record(list(moved.base) == perm8, {"trial": k, "g": g.name})
            for h in els:
                ok = act_on_point(g, act_on_point(h, pt)) == act_on_point(g * h, pt)
                action.record(ok, {"trial": k, "g": g.name, "h": h.name})
    checks += [action, surface, equivariant]

    nielsen = _Check("nielsen_consistency")
    images = {name: nielsen_action(im) for name, im in NIELSEN_GENERATORS.items()}
    for name in ("tau", "iota"):
        g = "t" if name == "tau" else "i"
        perm_images = [act_on_poly(g, var(i)) for i in range(9)]
        checks.append(_single(f"nielsen_{name}_matches_permutation", images[name] == perm_images))
    for k in range(cfg.trials):
        p = random_pair(cfg.seed, k)
        pt = chi(p)
        ev = PointEvaluator(pt)
        for name, (u, v) in NIELSEN_GENERATORS.items():
            moved = chi(SL3Pair(evaluate_word(u, p), evaluate_word(v, p)))
            ok = [ev(poly) for poly in images[name]] == list(moved)
            nielsen.record(ok, {"trial": k, "generator": name})
    checks.append(nielsen)
    return _suite("symmetry", cfg, checks)


def suite_rewrite(cfg: RunConfig, max_length: int = 6, long_count: int = 10) -> dict:
    pairs = [random_pair(cfg.seed, f"rewrite:{k}") for k in range(min(cfg.trials, 25))]
    long_words = random_words(cfg.seed, long_count, 9, 20)
    long_pairs = [random_pair(cfg.seed, f"rewrite-long:{k}") for k in range(3)]
    c = rewrite_oracle(max_length, pairs, long_words, long_pairs)
    return _suite("rewrite", cfg, [c])


SUITES: dict[str, Callable[[RunConfig], dict]] = {
    "identities": suite_identities,
    "surface": suite_surface,
    "lambda": suite_lambda,
    "symmetry": suite_symmetry,
    "singular": suite_singular,
    "grading": suite_grading,
    "rewrite": suite_rewrite,
}


def run_suite(name: str, cfg: RunConfig) -> dict:
    if name == "all":
        reports = [fn(cfg) for fn in SUITES.values()]
        return {"suite": "all", "seed": cfg.seed, "trials": cfg.trials,
                "ok": all(r["ok"] for r in reports), "suites": reports}
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    return SUITES[name](cfg)
