"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage or domain error,
3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from decimal import ROUND_HALF_EVEN, Context, Decimal

from mpmath import mp

from . import values
from .cfengine import CFKind, evaluate_bounded, value_bounded
from .config import EvalConfig, to_real
from .errors import CFError
from .reciprocity import FAMILY_IDS, DEFAULT_FAMILY, reciprocity_residual, registry

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


def fmt(x, digits: int) -> str:
    """``digits`` significant digits, round-half-even, plain positional notation."""
    with mp.workdps(max(mp.dps, digits + 20)):
        x = mp.mpf(x)
        if x == 0:
            return "0"
        # enough extra digits that the decimal rounding is the only rounding step
        exact = Decimal(mp.nstr(x, digits + 20, strip_zeros=False, min_fixed=-mp.inf, max_fixed=mp.inf))
    rounded = Context(prec=digits, rounding=ROUND_HALF_EVEN).plus(exact)
    return f"{rounded:f}"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise _Usage()


class _Usage(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rrcf", description="Ramanujan-type continued fractions and their reciprocity laws")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def digits(sp, default):
        sp.add_argument("--digits", type=int, default=default, help="significant decimal digits")

    e = sub.add_parser("eval", help="evaluate a continued fraction")
    e.add_argument("--cf", required=True, help="R S R5 S5 V Vneg Rp13 Sp13 G G3 selberg")
    where = e.add_mutually_exclusive_group(required=True)
    where.add_argument("--q", help="nome (decimal)")
    where.add_argument("--alpha", help="exponent, e.g. 1.2, pi, pi/sqrt5, sqrt2*pi")
    e.add_argument("--family", help="reciprocity family fixing the nome map (default: the kind's own)")
    e.add_argument("--route", choices=("auto", "direct", "reciprocal"), default="auto")
    digits(e, 30)

    v = sub.add_parser("verify", help="check reciprocity laws")
    v.add_argument("--family", default="all", help=f"one of {', '.join(FAMILY_IDS)} or all")
    digits(v, 40)

    it = sub.add_parser("iterate", help="walk an explicit-value chain")
    it.add_argument("--start", required=True, help="catalog id, e.g. R_2pi")
    it.add_argument("--steps", type=int, default=3)
    it.add_argument("--out", help="CSV output path")
    digits(it, 30)

    s = sub.add_parser("scan", help="error of the two-branch approximation of R(e^-2alpha)")
    s.add_argument("--grid", type=int, default=4096)
    s.add_argument("--alpha-max", default="4pi")
    s.add_argument("--out", help="CSV output path")
    digits(s, 20)

    f = sub.add_parser("figure", help="CSV data for figures 1-4")
    f.add_argument("--id", type=int, required=True, choices=(1, 2, 3, 4))
    f.add_argument("--grid", type=int, default=512)
    f.add_argument("--out", help="CSV output path (default: standard output)")
    digits(f, 20)

    inv = sub.add_parser("invert-selberg", help="alpha with s^8(e^-alpha) = x")
    inv.add_argument("--x", required=True, help="target in (0, 1/16), e.g. 0.03125")
    digits(inv, 30)
    return p


def _write_csv(path, header, rows, digits, stdout):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([c if isinstance(c, str) else fmt(c, digits) for c in row])
    if path is None:
        stdout.write(buf.getvalue())
    else:
        with open(path, "w", newline="") as fh:
            fh.write(buf.getvalue())


def _cmd_eval(args, cfg, out):
    kind = CFKind.parse(args.cf)
    with mp.workdps(cfg.working_digits):
        if args.q is not None:
            value = value_bounded(kind, to_real(args.q), cfg).value
        else:
            fam = registry(args.family or DEFAULT_FAMILY[kind])
            value = evaluate_bounded(kind, to_real(args.alpha), fam, cfg, args.route).value
        print(fmt(value, cfg.digits), file=out)
    return EXIT_OK


def _cmd_verify(args, cfg, out):
    ids = FAMILY_IDS if args.family == "all" else (registry(args.family).id,)
    ok = True
    for fid in ids:
        fam = registry(fid)
        with mp.workdps(cfg.working_digits):
            sd = fam.self_dual_alpha
            checks = [reciprocity_residual(fam, a, cfg) for a in (sd, sd / 2)]
            passed = all(r.passes for r in checks)
            ok &= passed
            worst = max(abs(r.value) for r in checks)
            bound = min(r.bound for r in checks)
            print(
                f"{'PASS' if passed else 'FAIL'} {fid:8s} residual={mp.nstr(worst, 3)} bound={mp.nstr(bound, 3)}",
                file=out,
            )
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_iterate(args, cfg, out):
    steps = values.iterate_chain(args.start, args.steps, cfg)
    rows = [(s.kind.value, str(s.exponent), s.alpha, s.value) for s in steps]
    if args.out:
        _write_csv(args.out, ("kind", "nome_exponent", "alpha", "value"), rows, cfg.digits, out)
    for kind, t, _, val in rows:
        print(f"{kind}(e^-{t}) = {fmt(val, cfg.digits)}", file=out)
    return EXIT_OK


def _cmd_scan(args, cfg, out):
    res = values.error_scan(args.grid, args.alpha_max, cfg)
    if args.out:
        _write_csv(args.out, ("alpha", "approx", "exact", "error"), res.rows, cfg.digits, out)
    with mp.workdps(cfg.working_digits):
        print(f"max_err = {fmt(res.max_err, 8)}", file=out)
        print(f"argmax  = {fmt(res.argmax, 12)} (alpha/pi = {fmt(res.argmax / mp.pi, 8)})", file=out)
    return EXIT_OK


def _cmd_figure(args, cfg, out):
    header, rows = values.figure_data(args.id, args.grid, cfg)
    _write_csv(args.out, header, rows, cfg.digits, out)
    return EXIT_OK


def _cmd_invert(args, cfg, out):
    alpha = values.invert_selberg(args.x, cfg)
    print(fmt(alpha, cfg.digits), file=out)
    return EXIT_OK


_COMMANDS = {
    "eval": _cmd_eval,
    "verify": _cmd_verify,
    "iterate": _cmd_iterate,
    "scan": _cmd_scan,
    "figure": _cmd_figure,
    "invert-selberg": _cmd_invert,
}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = _parser().parse_args(argv)
    except _Usage:
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        cfg = EvalConfig(digits=args.digits)
        return _COMMANDS[args.command](args, cfg, out)
    except ArithmeticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC if not isinstance(exc, ZeroDivisionError) else EXIT_USAGE
    except (CFError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
