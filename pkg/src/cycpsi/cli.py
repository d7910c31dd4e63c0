"""Command-line front end: single coefficients, tables, verification sweeps,
operator checks, and conjecture exploration.

Exit codes: 0 all checks pass, 1 mathematical mismatch, 2 usage or
validation error.
"""

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from .coefficients import CoeffQuery, fleck_sum_general, normalized_parts, t_coeff
from .exactmath import is_prime
from .psi_series import monomial_twisted
from .verifier import CHECK_IDS, CHECKS, SweepGrid, run_explore, run_sweep

OUT_DIR_ENV = "CYCPSI_OUT_DIR"

_GRID_DEFAULTS = SweepGrid()


class CliError(Exception):
    """Invalid flags or values; mapped to exit code 2."""


def _parse_int_list(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise CliError(f"{what} must be a comma-separated list of integers, got {text!r}")


def _parse_primes(text: str) -> tuple[int, ...]:
    primes = _parse_int_list(text, "--p")
    for p in primes:
        if not is_prime(p):
            raise CliError(f"p must be prime, got {p}")
    return primes


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise CliError(f"p must be prime, got {p}")


def _span(single, lo, hi, default: tuple[int, int]) -> tuple[int, int]:
    if single is not None:
        return (single, single)
    return (
        lo if lo is not None else default[0],
        hi if hi is not None else default[1],
    )


def _grid_from_args(args) -> SweepGrid:
    kwargs = {}
    if args.p is not None:
        kwargs["primes"] = _parse_primes(args.p)
    kwargs["a_range"] = _span(args.a, args.a_min, args.a_max, _GRID_DEFAULTS.a_range)
    kwargs["n_range"] = _span(args.n, args.n_min, args.n_max, _GRID_DEFAULTS.n_range)
    kwargs["l_range"] = _span(args.l, args.l_min, args.l_max, _GRID_DEFAULTS.l_range)
    kwargs["m_range"] = _span(None, args.m_min, args.m_max, _GRID_DEFAULTS.m_range)
    kwargs["d_range"] = _span(None, None, args.d_max, _GRID_DEFAULTS.d_range)
    kwargs["q_range"] = _span(None, None, args.q_max, _GRID_DEFAULTS.q_range)
    if args.r is not None:
        kwargs["r_values"] = _parse_int_list(args.r, "--r")
    if args.s is not None:
        kwargs["s_values"] = _parse_int_list(args.s, "--s")
    if args.t is not None:
        kwargs["t_values"] = _parse_int_list(args.t, "--t")
    if args.abs_r_max is not None:
        kwargs["abs_r_max"] = args.abs_r_max
    if args.coeff_degree is not None:
        kwargs["coeff_degree"] = args.coeff_degree
    try:
        return SweepGrid(**kwargs)
    except ValueError as err:
        raise CliError(str(err))


def _resolve_out(out: str | None) -> Path | None:
    if out is None:
        return None
    path = Path(out)
    base = os.environ.get(OUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    return path


def _emit(text: str, out: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    path = _resolve_out(out)
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text, encoding="utf-8")


def _csv_text(header: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# coeff

_TABLE_HEADER = ["p", "a", "n", "r", "l", "raw", "exponent", "normalized", "normalized_mod_p"]


def _coeff_row(p: int, a: int, n: int, r: int, l: int) -> dict:
    raw, exponent, normalized = normalized_parts(p, a, n, r, l)
    return {
        "p": p,
        "a": a,
        "n": n,
        "r": r,
        "l": l,
        "raw": str(raw),
        "exponent": exponent,
        "normalized": str(normalized),
        "normalized_mod_p": normalized % p,
    }


def _cmd_coeff(args) -> int:
    _require_prime(args.p)
    try:
        query = CoeffQuery(args.p, args.a, args.n, args.r, args.l)
    except ValueError as err:
        raise CliError(str(err))
    raw, exponent, normalized = normalized_parts(args.p, args.a, args.n, args.r, args.l)
    t_value = t_coeff(query) if args.t_coeff else None
    if args.format == "json":
        doc = _coeff_row(args.p, args.a, args.n, args.r, args.l)
        if t_value is not None:
            doc["t_coeff"] = str(t_value)
        _emit(json.dumps(doc, indent=2), args.out)
    elif args.format == "csv":
        row = _coeff_row(args.p, args.a, args.n, args.r, args.l)
        header = list(_TABLE_HEADER)
        values = [str(row[k]) for k in _TABLE_HEADER]
        if t_value is not None:
            header.append("t_coeff")
            values.append(str(t_value))
        _emit(_csv_text(header, [values]), args.out)
    else:
        lines = [
            f"query: p={args.p} a={args.a} n={args.n} r={args.r} l={args.l}",
            f"raw_sum = {raw}",
            f"exponent = {exponent}",
            f"normalized = {normalized}",
        ]
        if t_value is not None:
            lines.append(f"t_coeff = {t_value}")
        _emit("\n".join(lines), args.out)
    return 0


# ---------------------------------------------------------------------------
# table

def _cmd_table(args) -> int:
    _require_prime(args.p)
    if args.a < 1:
        raise CliError(f"a must be >= 1, got {args.a}")
    if args.n_min < 0:
        raise CliError(f"n must be >= 0, got {args.n_min}")
    r_values = _parse_int_list(args.r, "--r")
    l_values = _parse_int_list(args.l, "--l")
    if any(l < 0 for l in l_values):
        raise CliError("l values must be >= 0")
    rows = [
        _coeff_row(args.p, args.a, n, r, l)
        for n in range(args.n_min, args.n_max + 1)
        for r in r_values
        for l in l_values
    ]
    if args.format == "json":
        _emit(json.dumps(rows, indent=2), args.out)
    elif args.format == "plain":
        widths = [max(len(str(row[k])) for row in rows + [dict(zip(_TABLE_HEADER, _TABLE_HEADER))]) for k in _TABLE_HEADER]
        lines = ["  ".join(k.ljust(w) for k, w in zip(_TABLE_HEADER, widths))]
        for row in rows:
            lines.append("  ".join(str(row[k]).ljust(w) for k, w in zip(_TABLE_HEADER, widths)))
        _emit("\n".join(lines), args.out)
    else:
        _emit(_csv_text(_TABLE_HEADER, [[str(row[k]) for k in _TABLE_HEADER] for row in rows]), args.out)
    return 0


# ---------------------------------------------------------------------------
# verify / explore

def _report_text(report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_json_dict(), indent=2)
    if fmt == "csv":
        header = ["theorem", "checked", "verdict", "elapsed_ms", "params", "expected", "actual"]
        base = [report.theorem, str(report.checked), report.verdict, str(report.elapsed_ms)]
        if report.failures:
            rows = [
                base + [json.dumps(f.params, sort_keys=True, separators=(",", ":")), f.expected, f.actual]
                for f in report.failures
            ]
        else:
            rows = [base + ["", "", ""]]
        return _csv_text(header, rows)
    lines = [
        f"check   : {report.theorem}",
        f"checked : {report.checked}",
        f"verdict : {report.verdict}",
        f"elapsed : {report.elapsed_ms} ms",
    ]
    if report.failures:
        lines.append(f"failures: {len(report.failures)}")
        for failure in report.failures[:10]:
            lines.append(f"  params={failure.params} expected={failure.expected} actual={failure.actual}")
        if len(report.failures) > 10:
            lines.append(f"  ... and {len(report.failures) - 10} more")
    for key, value in report.extra.items():
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def _cmd_verify(args) -> int:
    if args.check not in CHECKS:
        print(
            f"error: unknown check id {args.check!r}; valid ids: {', '.join(CHECK_IDS)}",
            file=sys.stderr,
        )
        return 2
    if args.workers < 1:
        raise CliError(f"--workers must be >= 1, got {args.workers}")
    grid = _grid_from_args(args)
    report = run_sweep(args.check, grid, workers=args.workers)
    _emit(_report_text(report, args.format), args.out)
    return 0 if report.verdict == "pass" else 1


def _cmd_explore(args) -> int:
    if args.target != "rem1.2":
        print(f"error: unknown explore target {args.target!r}; valid: rem1.2", file=sys.stderr)
        return 2
    if args.workers < 1:
        raise CliError(f"--workers must be >= 1, got {args.workers}")
    grid = _grid_from_args(args)
    report = run_explore(grid, workers=args.workers)
    _emit(_report_text(report, args.format), args.out)
    return 0


# ---------------------------------------------------------------------------
# psi-check

def _cmd_psi_check(args) -> int:
    _require_prime(args.p)
    if args.a < 1:
        raise CliError(f"a must be >= 1, got {args.a}")
    if args.l_max < 0:
        raise CliError(f"--l-max must be >= 0, got {args.l_max}")
    if args.n is None and args.n_max is None:
        raise CliError("give --n for a single row or --n-max for a grid")
    if args.n is not None:
        if args.n < 0:
            raise CliError(f"n must be >= 0, got {args.n}")
        got = monomial_twisted(args.n, args.r, args.p, args.a, args.l_max).coefficients()
        sign = -1 if args.n & 1 else 1
        want = tuple(
            sign * fleck_sum_general(args.n, args.r, args.p ** args.a, l)
            for l in range(args.l_max + 1)
        )
        match = got == want
        if args.format == "json":
            doc = {
                "p": args.p,
                "a": args.a,
                "n": args.n,
                "r": args.r,
                "rows": [
                    {"l": l, "psi": str(got[l]), "expected": str(want[l])}
                    for l in range(args.l_max + 1)
                ],
                "match": match,
            }
            _emit(json.dumps(doc, indent=2), args.out)
        else:
            lines = [
                f"psi^{args.a} coefficients vs sign-adjusted sums (p={args.p} n={args.n} r={args.r})",
                "l  psi  expected",
            ]
            for l in range(args.l_max + 1):
                lines.append(f"{l}  {got[l]}  {want[l]}")
            lines.append(f"match: {'yes' if match else 'NO'}")
            _emit("\n".join(lines), args.out)
        return 0 if match else 1
    grid_kwargs = {
        "primes": (args.p,),
        "a_range": (args.a, args.a),
        "n_range": (0, args.n_max),
        "coeff_degree": args.l_max,
    }
    if args.r_list is not None:
        grid_kwargs["r_values"] = _parse_int_list(args.r_list, "--r-list")
    try:
        grid = SweepGrid(**grid_kwargs)
    except ValueError as err:
        raise CliError(str(err))
    report = run_sweep("psi-identity", grid, workers=args.workers)
    _emit(_report_text(report, args.format), args.out)
    return 0 if report.verdict == "pass" else 1


# ---------------------------------------------------------------------------
# parser

def _add_grid_flags(sp) -> None:
    sp.add_argument("--p", help="comma-separated primes (default 2,3,5)")
    sp.add_argument("--a", type=int, help="fix the power exponent a")
    sp.add_argument("--a-min", type=int)
    sp.add_argument("--a-max", type=int)
    sp.add_argument("--n", type=int, help="fix the row n")
    sp.add_argument("--n-min", type=int)
    sp.add_argument("--n-max", type=int)
    sp.add_argument("--l", type=int, help="fix the order index l")
    sp.add_argument("--l-min", type=int)
    sp.add_argument("--l-max", type=int)
    sp.add_argument("--r", help="explicit comma-separated r values (default: full residue systems)")
    sp.add_argument("--s", help="explicit digit values for s (default: 0..p-1)")
    sp.add_argument("--t", help="explicit digit values for t (default: 0..p-1)")
    sp.add_argument("--m-min", type=int)
    sp.add_argument("--m-max", type=int, help="multiplier bound (thm1.5) / modulus bound (lem2.2)")
    sp.add_argument("--d-max", type=int, help="outer modulus bound (lem3.1)")
    sp.add_argument("--q-max", type=int, help="inner modulus bound (lem3.1)")
    sp.add_argument("--abs-r-max", type=int, help="|r| bound for arbitrary-modulus identities")
    sp.add_argument("--coeff-degree", type=int, help="comparison depth for psi-identity")


def _add_output_flags(sp, default_format: str) -> None:
    sp.add_argument("--format", choices=("json", "csv", "plain"), default=default_format)
    sp.add_argument("--out", help=f"output path (relative paths honor ${OUT_DIR_ENV})")
    sp.add_argument("--workers", type=int, default=1, help="worker processes (default 1)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cycpsi",
        description="Exact Fleck sums, normalized cyclotomic psi-coefficients, "
        "and sweep verification of their Lucas-type congruences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("coeff", help="compute one coefficient")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--t-coeff", action="store_true", help="also print the rational T-coefficient")
    _add_output_flags(sp, "plain")
    sp.set_defaults(handler=_cmd_coeff)

    sp = sub.add_parser("table", help="emit a table of coefficients")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--n-min", type=int, default=0)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--r", default="0", help="comma-separated r values (default 0)")
    sp.add_argument("--l", default="0", help="comma-separated l values (default 0)")
    _add_output_flags(sp, "csv")
    sp.set_defaults(handler=_cmd_table)

    sp = sub.add_parser("verify", help="run one verification sweep")
    sp.add_argument("check", metavar="CHECK_ID", help=f"one of: {', '.join(CHECK_IDS)}")
    _add_grid_flags(sp)
    _add_output_flags(sp, "json")
    sp.set_defaults(handler=_cmd_verify)

    sp = sub.add_parser("psi-check", help="compare operator coefficients against the sums")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--n", type=int, help="single row mode")
    sp.add_argument("--n-max", type=int, help="grid mode over 0..n-max")
    sp.add_argument("--r", type=int, default=0, help="class r for single row mode (default 0)")
    sp.add_argument("--r-list", help="comma-separated r values for grid mode")
    sp.add_argument("--l-max", type=int, default=4)
    _add_output_flags(sp, "plain")
    sp.set_defaults(handler=_cmd_psi_check)

    sp = sub.add_parser("explore", help="tabulate margins for an open conjecture")
    sp.add_argument("target", metavar="TARGET", help="rem1.2")
    _add_grid_flags(sp)
    _add_output_flags(sp, "json")
    sp.set_defaults(handler=_cmd_explore)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except CliError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
