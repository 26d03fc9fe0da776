"""``scoreseq`` command-line interface.

Exit codes: 0 success, 1 usage error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from decimal import Decimal
from fractions import Fraction
from typing import Callable

from . import asympt, decomp, egz, oracle, scores
from .cache import cached_values, document, resolve_dir
from .errors import ConsistencyError, GuardError, VerificationError
from .exact import ceil_decimal, round_decimal

EXIT_USAGE = 1
EXIT_VERIFY = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _text(v) -> str:
    if v is None:
        return ""
    if isinstance(v, Decimal):
        return format(v, "f")
    return str(v)


def _emit(out, header: list[str], rows: list[list], fmt: str) -> None:
    if fmt == "json":
        records = [{k: _text(v) for k, v in zip(header, row)} for row in rows]
        out.write(json.dumps(records, indent=2) + "\n")
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows([[_text(v) for v in row] for row in rows])
    out.write(buf.getvalue())


def _positive(name: str, value, minimum: int = 1) -> int:
    if value is None:
        raise UsageError(f"--{name} is required")
    if value < minimum:
        raise UsageError(f"--{name} must be >= {minimum}, got {value}")
    return value


# -- commands -------------------------------------------------------------

def cmd_egz(args, out) -> int:
    if (args.n is None) == (args.upto is None):
        raise UsageError("give exactly one of --n or --upto")
    directory = resolve_dir(args.cache_dir)
    if args.n is not None:
        n = _positive("n", args.n)
        value = cached_values("egz", n, directory)[n - 1]
        if args.format == "json":
            out.write(json.dumps({"n": n, "N_n": str(value)}) + "\n")
        else:
            out.write(f"{value}\n")
        return 0
    upto = _positive("upto", args.upto)
    values = cached_values("egz", upto, directory)
    _emit(out, ["n", "N_n"], [[n, v] for n, v in enumerate(values, start=1)], args.format)
    return 0


def cmd_scores(args, out) -> int:
    upto = _positive("upto", args.upto, minimum=0)
    values = cached_values("scores", upto, resolve_dir(args.cache_dir))
    _emit(out, ["n", "S_n"], [[n, v] for n, v in enumerate(values)], args.format)
    return 0


def _decomp_rows(n: int, m_max: int | None, precision: int):
    pmf = decomp.subscore_pmf(n, m_max)
    total = scores.count_scores(n)[n]
    rows = [[m, p * total, round_decimal(p, precision)] for m, p in enumerate(pmf.probs, 1)]
    if pmf.tail:
        rows.append([f">{len(pmf.probs)}", pmf.tail * total, round_decimal(pmf.tail, precision)])
    return pmf, rows


def cmd_decomp(args, out) -> int:
    n = _positive("n", args.n)
    m_max = None if args.m_max is None else _positive("m-max", args.m_max)
    _warm_cache(n, args)
    _, rows = _decomp_rows(n, m_max, args.precision)
    _emit(out, ["m", "S_nm", "prob"], rows, args.format)
    return 0


def _warm_cache(n: int, args) -> None:
    # Pull S_n and S_{n,1} from the cache directory so the in-memory tables start full.
    directory = resolve_dir(args.cache_dir)
    if directory is not None:
        cached_values("scores", n, directory)
        cached_values("strong", n, directory)


def _lambda(args):
    terms = _positive("terms", args.terms, minimum=10)
    return asympt.lambda_enclosure(terms, args.precision)


def cmd_lambda(args, out) -> int:
    lam = _lambda(args)
    e = lam.enclosure
    _emit(out, ["terms", "partial_sum", "lo", "hi", "width"],
          [[lam.terms, round_decimal(lam.partial_sum, args.precision), e.lo, e.hi, e.width]],
          args.format)
    return 0


def cmd_constants(args, out) -> int:
    consts = asympt.constants(_lambda(args), args.precision)
    _emit(out, ["name", "lo", "hi", "width"],
          [[name, c.lo, c.hi, c.width] for name, c in consts.items()], args.format)
    return 0


def _parse_grid(text: str) -> list[int]:
    try:
        grid = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise UsageError(f"--grid must be a comma-separated list of integers, got {text!r}")
    if not grid or min(grid) < 1:
        raise UsageError("--grid needs positive integers")
    return grid


def cmd_converge(args, out) -> int:
    grid = _parse_grid(args.grid)
    directory = resolve_dir(args.cache_dir)
    if directory is not None:
        for kind in ("egz", "scores", "strong"):
            cached_values(kind, max(grid), directory)
    lam = _lambda(args)
    consts = asympt.constants(lam, args.precision)
    lam_mid = lam.enclosure.midpoint
    p = args.precision

    def gap(value, target):
        return ceil_decimal(abs(Fraction(value) - target), p)

    rows = []
    for row in asympt.diagnostics(grid, p):
        rows.append([
            row.n,
            row.takacs_ratio, gap(row.takacs_ratio, consts.takacs.midpoint),
            row.strong_ratio, gap(row.strong_ratio, consts.strong_frac.midpoint),
            row.inv_mean, gap(row.inv_mean, consts.inv_e_lambda.midpoint),
            row.beta_conv_ratio, gap(row.beta_conv_ratio, lam_mid),
            row.partial_gf, gap(row.partial_gf, consts.e_lambda.midpoint),
        ])
    _emit(out, ["n", "takacs_ratio", "takacs_gap", "strong_ratio", "strong_gap",
                "inv_mean", "inv_gap", "beta_conv_ratio", "beta_gap",
                "partial_gf", "gf_gap"], rows, args.format)
    return 0


def cmd_dist(args, out) -> int:
    n = _positive("n", args.n)
    m_max = None if args.m_max is None else _positive("m-max", args.m_max)
    _warm_cache(n, args)
    pmf, rows = _decomp_rows(n, m_max, args.precision)
    header = ["m", "S_nm", "prob"]
    if args.limit:
        lam = _lambda(args)
        header += ["nb_lo", "nb_hi"]
        for row in rows:
            if isinstance(row[0], int):
                nb = asympt.nb_pmf(row[0], lam, args.precision)
            else:
                nb = asympt.nb_tail(len(pmf.probs), lam, args.precision)
            row += [nb.lo, nb.hi]
    _emit(out, header, rows, args.format)
    return 0


def cmd_sample(args, out) -> int:
    n = _positive("n", args.n)
    count = _positive("count", args.count)
    if args.seed < 0:
        raise UsageError("--seed must be non-negative")
    samples = oracle.sample_uniform(n, args.seed, count)
    if args.format == "json":
        out.write(json.dumps([list(s) for s in samples]) + "\n")
    else:
        out.writelines(" ".join(map(str, s)) + "\n" for s in samples)
    return 0


def cmd_export(args, out) -> int:
    upto = _positive("upto", args.upto, minimum=1 if args.kind in ("egz", "strong") else 0)
    directory = resolve_dir(args.cache_dir)
    if args.kind == "tournament":
        pmf = asympt.tournament_pmf(upto, _lambda(args), args.precision)
        _emit(out, ["n", "p_lo", "p_hi"],
              [[n, p.lo, p.hi] for n, p in enumerate(pmf.probs)], args.format)
        return 0
    values = cached_values(args.kind, upto, directory)
    if args.format == "json":
        out.write(json.dumps(document(args.kind, upto, values), indent=2) + "\n")
        return 0
    start = 1 if args.kind == "egz" else 0
    _emit(out, ["n", args.kind], [[n, v] for n, v in enumerate(values, start=start)], "csv")
    return 0


# -- verify ---------------------------------------------------------------

def _verification_checks(upto: int, max_oracle: int) -> list[tuple[str, Callable[[], None]]]:
    state: dict = {}

    def expect(condition: bool, message: str) -> None:
        if not condition:
            raise VerificationError(message)

    def egz_divisibility():
        state["N"] = [egz.egz_number(n) for n in range(1, upto + 1)]

    def egz_table_agreement():
        expect(list(egz.egz_table(upto).values) == state["N"],
               "gcd-sum and divisor-sum evaluations of N_n differ")

    def score_divisibility():
        state["S"] = scores.score_recurrence(state["N"], upto)

    def log_transform():
        expect(list(scores.log_transform(state["S"]))[1:] == state["N"],
               "log transform of S_n is not N_n")

    def egz_identity():
        table = decomp.subscore_counts(upto, upto)
        for n in range(1, upto + 1):
            expect(sum(table.row(n)) == state["S"][n], f"row sum of S_(n,m) != S_{n}")
            expect(decomp.egz_identity_value(table, n) == state["N"][n - 1],
                   f"n*sum S_(n,m)/m != N_n at n={n}")

    def oracle_egz():
        for n in range(1, max_oracle + 1):
            expect(egz.egz_brute_force(n) == state["N"][n - 1], f"brute-force N_{n} differs")

    def oracle_scores():
        table = decomp.subscore_counts(max_oracle, max_oracle)
        for n in range(1, max_oracle + 1):
            expect(len(oracle.enumerate_scores(n)) == state["S"][n], f"enumerated S_{n} differs")
            hist = oracle.count_by_subscores_brute(n)
            expect(all(hist.get(m, 0) == table.count(n, m) for m in range(1, n + 1)),
                   f"brute-force S_({n},m) histogram differs")

    def bijection():
        for n in range(1, min(max_oracle, 10) + 1):
            images = [oracle.score_to_subset(s) for s in oracle.enumerate_scores(n)]
            expect(len(set(images)) == len(images), f"subset map not injective at n={n}")

    def appendix_bounds():
        for n in range(10, max(upto, 10) + 1):
            lo, hi = egz.egz_bounds(n)
            value = egz.egz_number(n) if n > upto else state["N"][n - 1]
            expect(lo.hi < value < hi.lo, f"N_{n} outside its bounds")
        for n in range(1, upto + 1):
            lo, hi = egz.central_binomial_bounds(n)
            c = math.comb(2 * n, n)
            expect(lo.hi < c < hi.lo, f"C(2n,n) outside its bounds at n={n}")

    def cycle_types():
        for n in range(1, min(upto, 15) + 1):
            expect(scores.scores_via_cycle_types(n) == state["S"][n], f"cycle-type S_{n} differs")

    def lambda_nesting():
        encs = [asympt.lambda_enclosure(t).enclosure for t in (10, 50, 100)]
        expect(encs[0].contains(encs[1]) and encs[1].contains(encs[2]),
               "lambda enclosures are not nested")

    return [
        ("egz-divisibility", egz_divisibility),
        ("egz-table-agreement", egz_table_agreement),
        ("score-divisibility", score_divisibility),
        ("log-transform", log_transform),
        ("egz-identity", egz_identity),
        ("oracle-egz", oracle_egz),
        ("oracle-scores", oracle_scores),
        ("bijection", bijection),
        ("appendix-bounds", appendix_bounds),
        ("cycle-types", cycle_types),
        ("lambda-nesting", lambda_nesting),
    ]


def cmd_verify(args, out) -> int:
    max_oracle = _positive("max-oracle", args.max_oracle)
    if max_oracle > oracle.ENUMERATION_MAX:
        raise UsageError(f"--max-oracle must be <= {oracle.ENUMERATION_MAX}")
    upto = _positive("upto", args.upto if args.upto is not None else 200)
    upto = max(upto, max_oracle)
    failed = []
    for name, check in _verification_checks(upto, max_oracle):
        try:
            check()
        except (ConsistencyError, VerificationError, KeyError) as exc:
            reason = "depends on an earlier failed check" if isinstance(exc, KeyError) else exc
            out.write(f"FAIL {name}: {reason}\n")
            failed.append(name)
        else:
            out.write(f"PASS {name}\n")
    if failed:
        out.write(f"verification failed: {', '.join(failed)}\n")
        return EXIT_VERIFY
    return 0


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--precision", type=int, default=12,
                        help="decimal places in printed decimals (default 12)")
    common.add_argument("--cache-dir", help="cache directory (overrides $SCORESEQ_CACHE_DIR)")

    parser = _Parser(prog="scoreseq", description="Tournament score sequences, exactly.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("egz", parents=[common], help="EGZ numbers N_n")
    p.add_argument("--n", type=int)
    p.add_argument("--upto", type=int)
    p.set_defaults(func=cmd_egz)

    p = sub.add_parser("scores", parents=[common], help="score-sequence counts S_0..S_upto")
    p.add_argument("--upto", type=int, required=True)
    p.set_defaults(func=cmd_scores)

    p = sub.add_parser("decomp", parents=[common], help="S_{n,m} by irreducible subscores")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m-max", type=int)
    p.set_defaults(func=cmd_decomp)

    for name, func, text in (("lambda", cmd_lambda, "certified enclosure of lambda"),
                             ("constants", cmd_constants, "derived limit constants")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--terms", type=int, default=100)
        p.set_defaults(func=func)

    p = sub.add_parser("converge", parents=[common], help="finite-n convergence diagnostics")
    p.add_argument("--grid", default="250,500,1000,2000")
    p.add_argument("--terms", type=int, default=100)
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("dist", parents=[common], help="law of the irreducible-subscore count")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m-max", type=int)
    p.add_argument("--limit", action="store_true", help="add the negative-binomial limit")
    p.add_argument("--terms", type=int, default=100)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("sample", parents=[common], help="uniform random score sequences")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify", parents=[common], help="run the identity suite")
    p.add_argument("--max-oracle", type=int, default=10)
    p.add_argument("--upto", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", parents=[common], help="dump a sequence or figure table")
    p.add_argument("--kind", choices=["egz", "scores", "strong", "tournament"], required=True)
    p.add_argument("--upto", type=int, required=True)
    p.add_argument("--terms", type=int, default=100)
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.precision < 1:
        sys.stderr.write("scoreseq: error: --precision must be >= 1\n")
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except (UsageError, GuardError, ValueError) as exc:
        sys.stderr.write(f"scoreseq {args.command}: error: {exc}\n")
        return EXIT_USAGE
    except (ConsistencyError, VerificationError) as exc:
        sys.stderr.write(f"scoreseq {args.command}: verification failure: {exc}\n")
        return EXIT_VERIFY


if __name__ == "__main__":
    raise SystemExit(main())
