"""Command-line front end.

Exit status is 0 on success, 1 on domain errors (inadmissible colors,
malformed diagrams, failed cross-checks) and 2 on usage errors.  Output is
deterministic for identical arguments.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import coeff, evaluate, families, tails, tl_oracle
from .diagram import load_fixture, parse_diagram, parse_graph
from .errors import CacheFormatError, SkeinError
from .qpoly import LaurentPoly, RationalFn

CACHE_ENV = "SINGJONES_CACHE"


class UsageError(Exception):
    pass


class CheckFailed(SkeinError):
    pass


@dataclass
class RunConfig:
    command: str
    fmt: str = "text"
    cache: str | None = None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# formatting
# ---------------------------------------------------------------------------

def _poly_text(p: LaurentPoly) -> str:
    return p.to_q_text() if p.q_integral() else p.to_text()


def value_text(v) -> str:
    """Human form: in q when every exponent allows it, otherwise in A."""
    if isinstance(v, LaurentPoly):
        return _poly_text(v)
    v = RationalFn.coerce(v)
    if v.is_poly():
        return _poly_text(v.to_poly())
    if v.num.q_integral() and v.den.q_integral():
        return f"({v.num.to_q_text()}) / ({v.den.to_q_text()})"
    return v.to_text()


def value_json(v) -> dict:
    return RationalFn.coerce(v).to_json()


def _emit(cfg: RunConfig, text: str, payload: dict, out):
    if cfg.fmt == "json":
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _read_diagram(args):
    if args.fixture:
        return load_fixture(args.fixture)
    if not args.file:
        raise UsageError("give --file or --fixture")
    with open(args.file, "rb") as fh:
        return parse_diagram(fh.read())


def _cmd_coeff(args, cfg, out):
    fn = {"theta": (coeff.theta, 3), "tet": (coeff.tet, 6),
          "sixj": (coeff.sixj, 6), "delta": (coeff.delta, 1)}
    f, k = fn[args.kind]
    if len(args.colors) != k:
        raise UsageError(f"coeff {args.kind} takes {k} colors")
    if any(c < 0 for c in args.colors):
        raise UsageError("colors must be non-negative")
    v = f(*args.colors)
    _emit(cfg, value_text(v), {"kind": args.kind, "colors": args.colors,
                               "value": value_json(v)}, out)


def _cmd_oracle(args, cfg, out):
    if args.what == "eval":
        d = _read_diagram(args)
        v = tl_oracle.eval_cabled_bruteforce(d, args.color, args.budget)
    else:
        if not args.file:
            raise UsageError("oracle graph needs --file")
        with open(args.file, "rb") as fh:
            g = parse_graph(fh.read())
        v = tl_oracle.eval_graph_bruteforce(g, args.budget)
    _emit(cfg, value_text(v), {"value": value_json(v)}, out)


def _cmd_eval(args, cfg, out):
    d = _read_diagram(args)
    v = evaluate.colored_jones(d, args.color, args.normalized, args.writhe_correct,
                               workers=args.workers)
    payload = {"color": args.color, "normalized": args.normalized,
               "writhe_correct": args.writhe_correct, "value": value_json(v)}
    text = value_text(v)
    if args.oracle_check:
        raw = evaluate.colored_jones(d, args.color) if (args.normalized or args.writhe_correct) else v
        ref = tl_oracle.eval_cabled_bruteforce(d, args.color)
        ok = raw == ref
        payload["oracle_check"] = ok
        text += f"\noracle check: {'match' if ok else 'MISMATCH'}"
        if not ok:
            _emit(cfg, text, payload, out)
            raise CheckFailed("evaluator and oracle disagree")
    _emit(cfg, text, payload, out)


def _cmd_st(args, cfg, out):
    if args.k < 1 or args.l < 0 or args.n < 0:
        raise UsageError("need --k >= 1, --l >= 0, --n >= 0")
    if args.normalized:
        v = families.st_invariant(args.k, args.l, args.n)
    else:
        v = families.st_bracket(args.k, args.l, args.n)
    payload = {"k": args.k, "l": args.l, "n": args.n,
               "normalized": args.normalized, "value": value_json(v)}
    text = value_text(v)
    if args.check_evaluator:
        ev = evaluate.colored_jones(families.st_diagram(args.k, args.l), 2 * args.n,
                                    normalized=args.normalized)
        ok = ev == v
        payload["evaluator_check"] = ok
        text += f"\nevaluator check: {'match' if ok else 'MISMATCH'}"
        if not ok:
            _emit(cfg, text, payload, out)
            raise CheckFailed("closed form and evaluator disagree")
    _emit(cfg, text, payload, out)


def _parse_colors(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            cols = list(range(int(lo), int(hi) + 1))
        else:
            cols = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad color list {text!r}") from None
    if len(cols) < 2 or min(cols) < 0:
        raise UsageError("need at least two non-negative colors")
    return cols


def _cmd_tail(args, cfg, out):
    cols = _parse_colors(args.colors)
    compare = [c for c in args.compare.split(",") if c] if args.compare else []
    for c in compare:
        if c not in tails.CANDIDATES:
            raise UsageError(f"unknown candidate {c!r}")
    if args.k < 1 or args.l < 0 or args.terms < 1:
        raise UsageError("need --k >= 1, --l >= 0, --terms >= 1")
    vals = [families.st_invariant(args.k, args.l, n) for n in cols]
    rep = tails.empirical_tail(vals, args.terms, cols, compare, k=args.k)
    payload = {"family": "st", "k": args.k, "l": args.l, **rep.to_json()}
    _emit(cfg, rep.to_text(), payload, out)


def _cmd_series(args, cfg, out):
    if args.order < 1:
        raise UsageError("--order must be at least 1")
    rep = tails.verify_corollary(args.order)
    _emit(cfg, tails.render_corollary(rep), rep, out)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="singjones", description="Colored Jones invariants of singular links.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--cache", help=f"coefficient cache file (default ${CACHE_ENV})")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    c = sub.add_parser("coeff", help="theta, tet, sixj or delta coefficients")
    c.add_argument("kind", choices=("theta", "tet", "sixj", "delta"))
    c.add_argument("colors", type=int, nargs="+")

    def diagram_args(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--file")
        g.add_argument("--fixture")

    o = sub.add_parser("oracle", help="brute-force evaluation")
    o.add_argument("what", choices=("eval", "graph"))
    diagram_args(o)
    o.add_argument("--color", type=int, default=2)
    o.add_argument("--budget", type=int, default=tl_oracle.DEFAULT_BUDGET)

    e = sub.add_parser("eval", help="colored bracket of a diagram")
    diagram_args(e)
    e.add_argument("--color", type=int, required=True)
    e.add_argument("--normalized", action="store_true")
    e.add_argument("--writhe-correct", action="store_true")
    e.add_argument("--oracle-check", action="store_true")
    e.add_argument("--workers", type=int, default=None)

    s = sub.add_parser("st", help="closed form for ST(k, l)")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--l", type=int, default=0)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--normalized", action="store_true")
    s.add_argument("--check-evaluator", action="store_true")

    t = sub.add_parser("tail", help="empirical tail of a family")
    t.add_argument("--family", choices=("st",), default="st")
    t.add_argument("--k", type=int, required=True)
    t.add_argument("--l", type=int, default=0)
    t.add_argument("--colors", required=True, help="range like 1..8 or list 1,2,3")
    t.add_argument("--terms", type=int, default=20)
    t.add_argument("--compare", default="")

    r = sub.add_parser("series", help="q-series identities")
    r.add_argument("what", choices=("verify-corollary",))
    r.add_argument("--order", type=int, default=100)
    return p


_COMMANDS = {"coeff": _cmd_coeff, "oracle": _cmd_oracle, "eval": _cmd_eval,
             "st": _cmd_st, "tail": _cmd_tail, "series": _cmd_series}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("missing subcommand")
        if getattr(args, "color", 0) is not None and getattr(args, "color", 0) < 0:
            raise UsageError("--color must be non-negative")
    except UsageError as exc:
        err.write(f"{exc}\n")
        return 2
    except SystemExit as exc:      # --help
        return int(exc.code or 0)
    cfg = RunConfig(args.command, args.format, args.cache or os.environ.get(CACHE_ENV))
    if cfg.cache and os.path.exists(cfg.cache):
        try:
            coeff.CACHE.load(cfg.cache)
        except CacheFormatError as exc:
            err.write(f"warning: ignoring cache ({exc})\n")
    try:
        _COMMANDS[args.command](args, cfg, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return 2
    except (SkeinError, OSError) as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1
    if cfg.cache:
        try:
            coeff.CACHE.dump(cfg.cache)
        except OSError as exc:
            err.write(f"warning: could not write cache ({exc})\n")
    return 0


def main():
    sys.exit(run())
