"""Command-line interface: ``sl3char <subcommand> ...``.

Exit codes: 0 success, 1 malformed input (word syntax, JSON, file),
2 a check or oracle failed (including off-surface points), 3 a matrix
without unit determinant.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Iterable, Iterator, Optional

from .exactlinalg import DegenerateInputError, SL3Pair, evaluate_word, random_pair
from .freegroup import WordSyntaxError, parse_word
from .poly import P, PointEvaluator, VAR_NAMES
from .symmetry import act_on_point, element, verify_group_structure
from .tracerewrite import RewriteTrace, reduce_trace
from .variety import (
    FAMILIES,
    CharPoint,
    OffSurfaceError,
    chi,
    discriminant,
    fiber_over,
    is_branching,
    is_singular,
    sample_branching,
    sample_pair,
    surface_residual,
)
from .verify import SUITES, RunConfig, run_suite

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CHECK = 2
EXIT_DET = 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# --- input helpers ------------------------------------------------------------

def _read_text(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_INPUT)


def _json_objects(text: str) -> list:
    """A single JSON value, an array of values, or one value per line."""
    text = text.strip()
    if not text:
        raise CliError("empty input", EXIT_INPUT)
    try:
        data = json.loads(text)
        return data if isinstance(data, list) else [data]
    except json.JSONDecodeError:
        pass
    out = []
    for n, line in enumerate(text.splitlines(), 1):
        if line.strip():
            try:
                out.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise CliError(f"line {n}: invalid JSON ({exc.msg})", EXIT_INPUT)
    return out


def _load_pair(obj) -> SL3Pair:
    try:
        return SL3Pair.from_json(obj)
    except DegenerateInputError as exc:
        raise CliError(str(exc), EXIT_DET)
    except (ValueError, TypeError, KeyError) as exc:
        raise CliError(f"malformed pair: {exc}", EXIT_INPUT)


def _load_point(obj, base_only: bool = False) -> CharPoint:
    if isinstance(obj, dict) and "A" in obj and "B" in obj:
        return chi(_load_pair(obj))
    if isinstance(obj, dict) and "point" in obj:
        obj = obj["point"]
    if base_only and isinstance(obj, dict) and "t5" not in obj:
        obj = dict(obj, t5="0")
    try:
        return CharPoint.from_json(obj)
    except (ValueError, TypeError) as exc:
        raise CliError(f"malformed point: {exc}", EXIT_INPUT)


def _value(v):
    if hasattr(v, "is_zero"):
        return str(v)
    z = complex(v)
    return {"re": z.real, "im": z.imag}


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=False)


# --- subcommands ----------------------------------------------------------------

def cmd_reduce(args, cfg: RunConfig) -> int:
    try:
        w = parse_word(args.word)
    except WordSyntaxError as exc:
        raise CliError(f"word syntax error: {exc}", EXIT_INPUT)
    trace = RewriteTrace() if args.trace else None
    poly = reduce_trace(w, trace=trace)
    code = EXIT_OK
    check = None
    if args.check:
        failures = []
        for k in range(args.check):
            pair = random_pair(cfg.seed, k)
            if PointEvaluator(chi(pair))(poly) != evaluate_word(w, pair).trace():
                failures.append(k)
        check = {"pairs": args.check, "seed": cfg.seed, "ok": not failures, "failed_trials": failures}
        if failures:
            code = EXIT_CHECK
    if trace is not None:
        for line in trace.json_lines():
            print(line)
    if args.json:
        out = {"word": str(w), "polynomial": str(poly)}
        if check is not None:
            out["check"] = check
        print(_dump(out))
    else:
        print(poly)
        if check is not None:
            status = "pass" if check["ok"] else "FAIL"
            print(f"check: {status} ({args.check} exact pairs, seed {cfg.seed})")
    return code


def cmd_chi(args, cfg: RunConfig) -> int:
    for obj in _json_objects(_read_text(args.pairfile)):
        pt = chi(_load_pair(obj))
        out = pt.to_json()
        if args.residual:
            out["residual"] = str(surface_residual(pt))
        print(_dump(out))
    return EXIT_OK


def cmd_check_surface(args, cfg: RunConfig) -> int:
    code = EXIT_OK
    for obj in _json_objects(_read_text(args.pointfile)):
        pt = _load_point(obj)
        res = surface_residual(pt)
        on = res.is_zero() if pt.is_exact() else abs(res) < cfg.tolerance
        if not on:
            code = EXIT_CHECK
        print(_dump({"residual": _value(res), "on_surface": on}))
    return code


def cmd_fiber(args, cfg: RunConfig) -> int:
    for obj in _json_objects(_read_text(args.pointfile)):
        pt = _load_point(obj, base_only=True)
        r1, r2 = fiber_over(pt.base)
        disc = discriminant(pt.base)
        print(_dump({"roots": [_value(r1), _value(r2)], "discriminant": _value(disc),
                     "branching": is_branching(pt.base, cfg.tolerance)}))
    return EXIT_OK


def cmd_singular(args, cfg: RunConfig) -> int:
    code = EXIT_OK
    for obj in _json_objects(_read_text(args.file)):
        pt = _load_point(obj)
        try:
            flag = is_singular(pt, cfg.tolerance)
        except OffSurfaceError as exc:
            print(f"error: {exc}", file=sys.stderr)
            code = EXIT_CHECK
            continue
        print(_dump({"singular": flag}))
    return code


def cmd_symmetry(args, cfg: RunConfig) -> int:
    if args.verify:
        report = verify_group_structure()
        ok = all(report["checks"].values())
        if args.json:
            print(_dump({"ok": ok, **report}))
        else:
            for name, v in report["checks"].items():
                print(f"{'PASS' if v else 'FAIL'} {name}")
            for f in report["failures"]:
                print(f"  {f}")
        return EXIT_OK if ok else EXIT_CHECK
    if not args.element or not args.pointfile:
        raise CliError("symmetry needs --verify, or --element NAME with a point file", EXIT_INPUT)
    try:
        g = element(args.element)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INPUT)
    for obj in _json_objects(_read_text(args.pointfile)):
        print(_dump(act_on_point(g, _load_point(obj)).to_json()))
    return EXIT_OK


def cmd_sample(args, cfg: RunConfig) -> int:
    for k in range(cfg.trials):
        if args.family == "branching":
            s = sample_branching(cfg.seed, k)
            print(_dump(s.point.to_json()))
        else:
            print(_dump(sample_pair(args.family, cfg.seed, k).to_json()))
    return EXIT_OK


def _print_report(report: dict, indent: str = "") -> None:
    if "suites" in report:
        for sub in report["suites"]:
            _print_report(sub)
        print(f"all suites: {'PASS' if report['ok'] else 'FAIL'}")
        return
    for c in report["checks"]:
        print(f"{indent}{'PASS' if c['ok'] else 'FAIL'} {report['suite']}/{c['name']} "
              f"({c.get('passed', c['trials'] - c.get('failed', 0))}/{c['trials']})")
        for ce in c.get("counterexamples", []):
            print(f"{indent}  counterexample: {json.dumps(ce)}")


def cmd_verify(args, cfg: RunConfig) -> int:
    report = run_suite(args.suite, cfg)
    if args.json:
        print(_dump(report))
    else:
        _print_report(report)
    return EXIT_OK if report["ok"] else EXIT_CHECK


# --- parser -----------------------------------------------------------------------

def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--seed", type=int, default=d(42), help="master random seed (default 42)")
    p.add_argument("--trials", type=int, default=d(100), help="number of random trials (default 100)")
    p.add_argument("--tolerance", type=float, default=d(1e-9), help="float-path tolerance (default 1e-9)")
    p.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sl3char",
        description="Trace coordinates and the defining relation of the SL(3,C) character variety of F2.",
    )
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        _global_flags(p, suppress=True)
        return p

    p = add("reduce", "rewrite tr(word) as a polynomial in the nine coordinates")
    p.add_argument("word", help='word over a, b, A, B, e.g. "a^2*B*a^-1"')
    p.add_argument("--check", type=int, default=0, metavar="N", help="verify exactly on N random pairs")
    p.add_argument("--trace", action="store_true", help="emit the rewrite log as JSON lines")
    p.set_defaults(func=cmd_reduce)

    p = add("chi", "trace coordinates of a pair of SL(3) matrices")
    p.add_argument("pairfile", help='pair JSON with keys "A", "B" ("-" for stdin)')
    p.add_argument("--residual", action="store_true", help="append the surface residual")
    p.set_defaults(func=cmd_chi)

    p = add("check-surface", "evaluate t5^2 - P t5 + Q at a point")
    p.add_argument("pointfile")
    p.set_defaults(func=cmd_check_surface)

    p = add("fiber", "both points over an 8-tuple of base coordinates")
    p.add_argument("pointfile")
    p.set_defaults(func=cmd_fiber)

    p = add("singular", "test points (or pairs) for membership in the singular locus")
    p.add_argument("file")
    p.set_defaults(func=cmd_singular)

    p = add("symmetry", "dihedral symmetries of the coordinates")
    p.add_argument("pointfile", nargs="?")
    p.add_argument("--element", help="element name: id, i, t, it, ti, tit, iti, titi")
    p.add_argument("--verify", action="store_true", help="check the group structure")
    p.set_defaults(func=cmd_symmetry)

    p = add("sample", "deterministic samples from a family of representations")
    p.add_argument("--family", choices=FAMILIES, default="generic")
    p.set_defaults(func=cmd_sample)

    p = add("verify", "run a verification suite")
    p.add_argument("suite", choices=tuple(SUITES) + ("all",))
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.trials < 1:
        parser.error("--trials must be positive")
    if args.tolerance < 0:
        parser.error("--tolerance must be nonnegative")
    cfg = RunConfig(seed=args.seed, trials=args.trials, tolerance=args.tolerance)
    try:
        return args.func(args, cfg)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
