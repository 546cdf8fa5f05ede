"""Command line front end.

Exit codes: 0 success, 1 validation error (bad documents, words, flags, or a
failed ``verify``), 2 computation error (horizon too short, unsupported op).
Data goes to stdout (or ``--output``); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import series as S
from .chen_fliess import SimGrid, evaluate_operator, simulate_realization
from .entropy import entropy_estimate, profile_csv, support_profile
from .errors import SeriesError
from .expr import RunConfig, evaluate_expression, load_expression, read_input_signal, read_realization
from .interconnect import DELTA, devlin_polynomials, realization_to_series
from .verify import run_all
from .words import grading_by_name, parse_word

OUTDIR_ENV = "SERIES_ENTROPY_OUTDIR"


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; here that is a validation error
    def error(self, message):
        raise UsageError(message)


def _config(args, **overrides) -> RunConfig:
    kw = dict(
        horizon=getattr(args, "horizon", None),
        grading=getattr(args, "grading", None),
        window=getattr(args, "window", None),
        steps=getattr(args, "steps", None),
        T=getattr(args, "T", None),
        output=getattr(args, "output", None),
        m=getattr(args, "m", None),
    )
    kw.update(overrides)
    return RunConfig(**{k: v for k, v in kw.items() if v is not None})


def _series(path, cfg: RunConfig) -> S.Series:
    value = evaluate_expression(load_expression(path), cfg)
    if value is DELTA:
        raise UsageError("expression evaluates to delta, which has no coefficients")
    return value


def _emit(text: str, cfg: RunConfig):
    if cfg.output is None:
        sys.stdout.write(text)
        return
    path = Path(cfg.output)
    outdir = os.environ.get(OUTDIR_ENV)
    if outdir and not path.is_absolute():
        path = Path(outdir) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def cmd_coeff(args):
    word = parse_word(args.word)
    cfg = _config(args, horizon=args.horizon if args.horizon is not None else len(word))
    c = _series(args.expr, cfg)
    _emit(S.format_coefficient(c.coefficient(word)) + "\n", cfg)


def _profile(args, cfg):
    c = _series(args.expr, cfg)
    return support_profile(c, grading_by_name(cfg.grading, c.m))


def cmd_support(args):
    cfg = _config(args)
    _emit(profile_csv(_profile(args, cfg)), cfg)


def cmd_entropy(args):
    cfg = _config(args)
    p = _profile(args, cfg)
    est = entropy_estimate(p, cfg.window, polynomial_rule=not args.no_polynomial_rule)
    _emit(profile_csv(p, est), cfg)


def cmd_distance(args):
    cfg = _config(args)
    c, d = _series(args.expr, cfg), _series(args.other, cfg)
    g = grading_by_name(cfg.grading, c.m)
    est = entropy_estimate(support_profile(c - d, g), cfg.window)
    _emit(f"{est.estimate!r}\n", cfg)


def _dump(c: S.Series) -> str:
    return "".join(f"{S.format_coefficient(q)} {S.format_word(w)}\n" for w, q in c.items())


def cmd_eval_series(args):
    cfg = _config(args)
    _emit(_dump(_series(args.expr, cfg)), cfg)


def cmd_devlin(args):
    cfg = _config(args)
    lines = []
    for n, b in enumerate(devlin_polynomials(args.n), 1):
        lines.append(f"b{n} = {S.to_literal(S.Series(1, max(n - 1, 0), b))}\n")
    _emit("".join(lines), cfg)


def cmd_realize(args):
    cfg = _config(args)
    R = read_realization(Path(args.realization).read_text())
    _emit(_dump(realization_to_series(R, cfg.horizon)), cfg)


def cmd_simulate(args):
    if (args.expr is None) == (args.realization is None):
        raise UsageError("simulate needs exactly one of --expr or --realization")
    u = read_input_signal(Path(args.input).read_text())
    cfg = _config(args, T=args.T if args.T is not None else u.T)
    grid = SimGrid(cfg.T, cfg.steps)
    if args.expr is not None:
        trace = evaluate_operator(_series(args.expr, cfg), u, grid)
    else:
        trace = simulate_realization(read_realization(Path(args.realization).read_text()), u, grid)
    _emit(trace.csv(), cfg)


def cmd_verify(args):
    checks = run_all()
    cfg = _config(args)
    _emit("".join(ch.line() + "\n" for ch in checks), cfg)
    failed = sum(not ch.ok for ch in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed", file=sys.stderr)
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="series-entropy", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, expr=True, horizon=True, grading=False, sim=False):
        p = sub.add_parser(name, help=help)
        if expr:
            p.add_argument("--expr", required=expr == "required", help="JSON series-expression file")
        if horizon:
            p.add_argument("-L", "--horizon", type=int, help="word-length truncation horizon (default 12)")
        if grading:
            p.add_argument("--grading", choices=["wordlen", "alt"], default="wordlen")
            p.add_argument("--window", type=int, help="trailing window of the entropy estimate (default 8)")
        if sim:
            p.add_argument("--input", required=True, help="input-signal file")
            p.add_argument("--T", type=float, help="final time (default: end of the input)")
            p.add_argument("--steps", type=int, help="grid steps (default 512)")
        p.add_argument("--m", type=int, help="number of controlled letters when the document omits it")
        p.add_argument("-o", "--output", help=f"write data here (relative to ${OUTDIR_ENV} if set)")
        p.set_defaults(func=func)
        return p

    p = add("coeff", cmd_coeff, "print one exact coefficient", expr="required")
    p.add_argument("--word", required=True, help='word such as "x0 x1" or "e"')
    add("support", cmd_support, "per-degree support counts as CSV", expr="required", grading=True)
    p = add("entropy", cmd_entropy, "support CSV plus the entropy estimate", expr="required", grading=True)
    p.add_argument("--no-polynomial-rule", action="store_true", help="never force polynomial-looking series to 0")
    p = add("distance", cmd_distance, "entropy distance h(c - d)", expr="required", grading=True)
    p.add_argument("--other", required=True, help="second expression file")
    add("eval-series", cmd_eval_series, "dump nonzero coefficients", expr="required")
    p = add("devlin", cmd_devlin, "print Devlin polynomials b1..bn", expr=False, horizon=False)
    p.add_argument("-n", type=int, default=6)
    p = add("realize", cmd_realize, "series of a bilinear realization", expr=False)
    p.add_argument("--realization", required=True)
    p = add("simulate", cmd_simulate, "operator or ODE trace as CSV", horizon=True, sim=True)
    p.add_argument("--realization")
    add("verify", cmd_verify, "run the built-in identity suite", expr=False, horizon=False)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args) or 0
    except SeriesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1 if isinstance(exc, ValueError) else 2
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
