"""Command-line interface: ``primeheur <command> ...`` or ``python -m primeheur``.

Exit codes: 0 success, 1 selftest failure, 2 usage error, 3 capacity error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass

from . import constants as K
from . import golden
from .census import count, goldbach_reps
from .families import BIGNUM_FAMILIES, DISCRETE_SUM_FAMILIES, family_label, parse_family
from .predictor import goldbach_prediction, predict
from .sieve import CapacityError, is_prime_table, primorial
from .values import ConstantValue

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3

CONSTANT_NAMES = ("C2", "C2k", "ck", "Akd", "Dk", "Bk", "Cplus", "gamma")
FIGURE_BASES = {"mersenne": 2, "repunit-base-10": 10}
_LOG = {2: math.log2, 10: math.log10}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class ComparisonRow:
    N: int
    actual: int
    integral: int
    ratio: int


@dataclass(frozen=True)
class RunConfig:
    family: object
    bounds: tuple[int, ...]
    format: str = "text"
    digits: int = 15
    threads: int = 1

    def __post_init__(self):
        if not self.bounds:
            raise UsageError("at least one bound is required")
        if any(b2 <= b1 for b1, b2 in zip(self.bounds, self.bounds[1:])):
            raise UsageError("bounds must be strictly increasing")


def round_half_away(x: float) -> int:
    return int(math.copysign(math.floor(abs(x) + 0.5), x))


# --- output -------------------------------------------------------------

class Table:
    """Rows written as they arrive (text/csv) or all at the end (json)."""

    def __init__(self, header, fmt, out, widths=None):
        self.header = list(header)
        self.fmt = fmt
        self.out = out
        self.rows = []
        self.widths = widths or [max(12, len(h)) for h in self.header]
        if fmt == "csv":
            self._csv = csv.writer(out, lineterminator="\n")
            self._csv.writerow(self.header)
        elif fmt == "text":
            out.write(self._line(self.header) + "\n")
            out.write(self._line(["-" * w for w in self.widths]) + "\n")

    def _line(self, cells):
        return "  ".join(str(c).rjust(w) for c, w in zip(cells, self.widths)).rstrip()

    def add(self, row):
        self.rows.append(dict(zip(self.header, row)))
        if self.fmt == "csv":
            self._csv.writerow(row)
        elif self.fmt == "text":
            self.out.write(self._line(row) + "\n")
        self.out.flush()

    def close(self):
        if self.fmt == "json":
            json.dump(self.rows, self.out, indent=2)
            self.out.write("\n")
        self.out.flush()


def _progress_printer(label):
    last = [-1]

    def report(done, total):
        pct = 100 * done // total
        if pct != last[0] and total > 1:
            last[0] = pct
            print(f"{label}: {pct}%", file=sys.stderr, flush=True)

    return report


# --- commands -----------------------------------------------------------

def _constant(name, args, cfg) -> ConstantValue:
    def need(attr):
        v = getattr(args, attr)
        if v is None:
            raise UsageError(f"{name} needs --{attr}")
        return v

    try:
        if name == "C2":
            return K.twin_constant(cfg)
        if name == "C2k":
            return K.pair_constant(need("k"), cfg)
        if name == "ck":
            return K.hl_ck(need("k"), cfg)
        if name == "Akd":
            return K.ap_constant(need("k"), need("d"), cfg)
        if name == "Dk":
            return K.grosswald_constant(need("k"), cfg)
        if name == "Bk":
            return K.cunningham_constant(need("k"), cfg)
        if name == "Cplus":
            if args.direct_cutoff:
                return K.quadratic_constant_direct(args.direct_cutoff)
            return K.quadratic_constant(cfg)
        if name == "gamma":
            return ConstantValue(K.euler_gamma(), 1e-68, "closed-combination")
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    raise UsageError(f"unknown constant {name!r}; choose from {', '.join(CONSTANT_NAMES)}")


def cmd_constants(args, out):
    cfg = K.PrecisionConfig(target_digits=max(6, args.digits))
    c = _constant(args.name, args, cfg)
    value = c.digits(args.digits)
    if args.format == "text":
        out.write(f"{value}\n  error bound {c.error_bound:.3g}, route {c.route}\n")
    else:
        t = Table(["name", "value", "error_bound", "route"], args.format, out)
        t.add([args.name, value, f"{c.error_bound:.6g}", c.route])
        t.close()
    return EXIT_OK


def _family(text):
    try:
        return parse_family(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _footnote(family, args):
    if isinstance(family, BIGNUM_FAMILIES):
        msg = "note: counts use strong probable-prime tests (certainty: probable)"
        print(msg, file=sys.stderr if args.format != "text" else args._out)


def cmd_predict(args, out):
    family = _family(args.family)
    cfg = RunConfig(family, tuple(args.N), args.format, args.digits, args.threads)
    t = Table(["N", "integral", "ratio", "constant"], args.format, out, [14, 22, 22, 22])
    for N in cfg.bounds:
        try:
            r = predict(family, N)
        except ValueError as exc:
            t.close()
            raise UsageError(str(exc)) from None
        t.add([N, f"{r.integral_estimate:.10g}", f"{r.ratio_estimate:.10g}",
               r.constant_used.digits(min(args.digits, 15))])
    t.close()
    return EXIT_OK


def cmd_census(args, out):
    family = _family(args.family)
    cfg = RunConfig(family, tuple(args.N), args.format, args.digits, args.threads)
    t = Table(["N", "count", "certainty"], args.format, out)
    try:
        for N in cfg.bounds:
            r = count(family, N, workers=cfg.threads,
                      progress=_progress_printer(f"{family_label(family)} N={N}"))
            t.add([N, r.count, r.certainty])
    finally:
        t.close()
    _footnote(family, args)
    return EXIT_OK


def comparison_rows(cfg: RunConfig, progress=True):
    """Yield one :class:`ComparisonRow` per bound."""
    for N in cfg.bounds:
        report = _progress_printer(f"{family_label(cfg.family)} N={N}") if progress else None
        actual = count(cfg.family, N, workers=cfg.threads, progress=report).count
        p = predict(cfg.family, N)
        yield ComparisonRow(N, actual, round_half_away(p.integral_estimate),
                            round_half_away(p.ratio_estimate))


def cmd_compare(args, out):
    family = _family(args.family)
    cfg = RunConfig(family, tuple(args.N), args.format, args.digits, args.threads)
    t = Table(["N", "actual", "integral", "ratio"], args.format, out)
    try:
        for row in comparison_rows(cfg, progress=not args.quiet):
            t.add([row.N, row.actual, row.integral, row.ratio])
    except ValueError as exc:
        if isinstance(exc, CapacityError):
            raise
        raise UsageError(str(exc)) from None
    finally:
        t.close()
    if isinstance(family, DISCRETE_SUM_FAMILIES) and args.format == "text":
        out.write("integral = partial sum of the per-index probabilities; "
                  "ratio = closed form\n")
    _footnote(family, args)
    return EXIT_OK


def cmd_goldbach(args, out):
    m = args.m
    if m < 6 or m % 2:
        raise UsageError("m must be even and >= 6")
    actual = goldbach_reps(m, args.convention)
    pred = goldbach_prediction(m, args.shah_wilson, args.convention)
    t = Table(["m", "actual", "predicted", "convention"], args.format, out)
    t.add([m, actual, f"{pred:.6f}", args.convention])
    t.close()
    return EXIT_OK


def read_exponents(path):
    try:
        with open(path) as fh:
            lines = [ln.strip() for ln in fh]
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    values = []
    for i, ln in enumerate(lines, 1):
        if not ln or ln.startswith("#"):
            continue
        try:
            v = int(ln)
        except ValueError:
            raise UsageError(f"{path}:{i}: not an integer: {ln!r}") from None
        if v < 2 or (values and v <= values[-1]):
            raise UsageError(f"{path}:{i}: exponents must be >= 2 and ascending")
        values.append(v)
    return values


def figure_rows(form, exponents):
    """(n, log_a log_a a^p) = (n, log_a p) for the n-th exponent p."""
    log = _LOG[FIGURE_BASES[form]]
    return [(n, log(p)) for n, p in enumerate(exponents, 1)]


def cmd_figure(args, out):
    rows = figure_rows(args.form, read_exponents(args.exponent_file))
    fmt = "csv" if args.format == "text" else args.format
    t = Table(["n", "loglog"], fmt, out)
    for n, v in rows:
        t.add([n, repr(v) if fmt == "csv" else v])
    t.close()
    return EXIT_OK


def _check(results, label, ok):
    results.append((label, bool(ok)))


def selftest_results(threads=1):
    """Golden checks at reduced bounds as (label, passed) pairs."""
    from .families import AP, Cullen, Factorial, Pair, Primorial, Quadratic, SophieGermain, Twin, Woodall
    from mpmath import mpf

    res = []

    def rel(c, text):
        return abs(c.value / mpf(text) - 1)

    _check(res, "C2 digits", golden.matches_printed(K.twin_constant().value, golden.C2))
    _check(res, "A for d = k# table", all(rel(K.ap_constant(k, primorial(k)), v) < 1e-12
                                      for k, v in golden.A_PRIMORIAL.items() if k <= 10))
    _check(res, "D_k table", all(rel(K.grosswald_constant(k), v) < 1e-11
                                 for k, v in golden.GROSSWALD.items()))
    _check(res, "B_k table", all(rel(K.cunningham_constant(k), v) < 1e-10
                                 for k, v in golden.CUNNINGHAM_B.items()))
    _check(res, "C+ digits", golden.matches_printed(K.quadratic_constant().value, golden.CPLUS))

    def table(label, family, rows, cols=(0, 1)):
        ok = True
        for N, vals in rows.items():
            a = count(family, N, workers=threads).count
            p = round_half_away(predict(family, N).integral_estimate)
            ok &= a == vals[cols[0]] and abs(p - vals[cols[1]]) <= 1
        _check(res, label, ok)

    small = {N: v for N, v in golden.TWIN.items() if N <= 10**6}
    table("twin table", Twin(), small)
    for gap, rows in golden.PAIRS.items():
        table(f"pair table gap {gap}", Pair(gap), {N: v for N, v in rows.items() if N <= 10**5})
    table("Sophie Germain table", SophieGermain(),
          {N: v for N, v in golden.SOPHIE_GERMAIN.items() if N <= 10**6})
    table("n^2+1 table", Quadratic(), {N: v for N, v in golden.QUADRATIC.items() if N <= 10**8})
    cw = golden.CULLEN_WOODALL[1000]
    _check(res, "Cullen/Woodall at 1000",
           count(Woodall(), 1000).count == cw[0] and count(Cullen(), 1000).count == cw[1]
           and round_half_away(predict(Cullen(), 1000).integral_estimate) == cw[2]
           and round_half_away(predict(Cullen(), 1000).ratio_estimate) == cw[3])
    _check(res, "primorial table", all(
        (count(Primorial(1), N).count, count(Primorial(-1), N).count) == v[:2]
        for N, v in golden.PRIMORIAL.items() if N <= 100))
    _check(res, "factorial table", all(
        (count(Factorial(1), N).count, count(Factorial(-1), N).count) == v[:2]
        for N, v in golden.FACTORIAL.items() if N <= 100))
    table_1e5 = is_prime_table(10**5 + 12)
    brute = sum(1 for q in range(2, 10**5 + 1) if table_1e5[q] and table_1e5[q + 6] and table_1e5[q + 12])
    _check(res, "AP k=3 d=6 brute force", count(AP(3, 6), 10**5).count == brute)
    return res


def cmd_selftest(args, out):
    results = selftest_results(args.threads)
    t = Table(["check", "result"], args.format, out, [32, 6])
    for label, ok in results:
        t.add([label, "PASS" if ok else "FAIL"])
    t.close()
    return EXIT_OK if all(ok for _, ok in results) else EXIT_FAIL


# --- argument parsing ---------------------------------------------------

def _positive_int(text):
    try:
        v = int(float(text)) if "e" in text.lower() else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv", "json"), default=argparse.SUPPRESS)
    common.add_argument("--threads", type=_positive_int, default=argparse.SUPPRESS,
                        help="cap on census worker threads (default: all cores)")
    common.add_argument("--digits", type=_positive_int, default=argparse.SUPPRESS,
                        help="significant digits for constants (default 15)")
    common.add_argument("--out", default=argparse.SUPPRESS, help="write to FILE instead of stdout")

    parser = argparse.ArgumentParser(
        prog="primeheur", parents=[common],
        description="Heuristic prime counts: constants, predictions, exact counts.",
        epilog="Families: twin, pair:GAP, ap:K:D, apany:K, sg, cunningham:first|second:K, "
               "quadratic, goldbach, cullen, woodall, primorial:+|-, factorial:+|-, repunit:A",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", parents=[common], help="print an adjustment constant")
    p.add_argument("name", help=", ".join(CONSTANT_NAMES))
    p.add_argument("--k", type=_positive_int)
    p.add_argument("--d", type=_positive_int)
    p.add_argument("--direct-cutoff", type=_positive_int,
                   help="Cplus only: use the truncated product over p <= this cutoff")
    p.set_defaults(func=cmd_constants)

    for name, func, helptext in (
        ("predict", cmd_predict, "predicted counts"),
        ("census", cmd_census, "exact counts"),
        ("compare", cmd_compare, "actual vs predicted table"),
    ):
        p = sub.add_parser(
            name, parents=[common], help=helptext,
            description="For primorial, factorial and repunit families the integral column "
                        "is a partial sum over the index and the ratio column is the closed "
                        "form." if name == "compare" else None,
        )
        p.add_argument("family")
        p.add_argument("N", nargs="+", type=_positive_int)
        if name == "compare":
            p.add_argument("--quiet", action="store_true", help="no progress on stderr")
        p.set_defaults(func=func)

    p = sub.add_parser("goldbach", parents=[common], help="representations of m as p + q")
    p.add_argument("m", type=_positive_int)
    p.add_argument("--convention", choices=("ordered", "unordered"), default="unordered")
    p.add_argument("--shah-wilson", action="store_true")
    p.set_defaults(func=cmd_goldbach)

    p = sub.add_parser("figure", parents=[common], help="doubly-logarithmic exponent data")
    p.add_argument("form", choices=sorted(FIGURE_BASES))
    p.add_argument("exponent_file")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("selftest", parents=[common], help="golden table checks at small bounds")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    args.format = getattr(args, "format", "text")
    args.threads = getattr(args, "threads", os.cpu_count() or 1)
    args.digits = getattr(args, "digits", 15)
    args.quiet = getattr(args, "quiet", False)
    out_path = getattr(args, "out", None)
    buf = io.StringIO() if out_path else sys.stdout
    args._out = buf
    try:
        code = args.func(args, buf)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_USAGE
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        code = EXIT_CAPACITY
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
