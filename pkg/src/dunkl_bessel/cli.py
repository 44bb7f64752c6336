"""Command-line front end.

    dunkl-bessel eval   --family jmu --n 2 --mu 0.5 --x 1.3
    dunkl-bessel table  --family d2 --n-range 0:3 --mu-list 0,0.5 --x-range 0:10:0.5 --format csv
    dunkl-bessel coeffs --family jmu --n 1 --mu 1/2 --order 8
    dunkl-bessel verify --all --parallel 4

Exit status: 0 success, 1 domain error (or a failing verification), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction

from . import deformed, verify
from ._summation import DomainError
from .deformed import Family
from .series import fraction_str

FORMATS = ("csv", "jsonl", "pretty")
EVAL_FIELDS = ("family", "n", "mu", "x", "value", "abs_err_est", "terms")
TABLE_FIELDS = ("family", "n", "mu", "x", "value", "abs_err_est")
COEFF_FIELDS = ("family", "n", "mu", "index", "coeff")
VERIFY_FIELDS = ("id", "status", "mode", "cases_run", "residual", "elapsed_ms", "reason")

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


# -- value parsing ------------------------------------------------------------------


def parse_decimal_mu(text: str) -> float:
    if "/" in text:
        raise DomainError(f"mu {text!r} is rational; float commands take a decimal mu (use coeffs for p/q)")
    try:
        return float(text)
    except ValueError:
        raise DomainError(f"mu {text!r} is not a number") from None


def parse_rational_mu(text: str) -> Fraction:
    if not _RATIONAL.match(text.strip()):
        raise DomainError(f"mu {text!r} must be a rational 'p/q'; decimals are not converted")
    q = Fraction(text.strip())
    if q < 0:
        raise DomainError(f"mu must be >= 0, got {text}")
    return q


def parse_int_range(text: str) -> list[int]:
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return [int(parts[0])]
        if len(parts) == 2:
            a, b = int(parts[0]), int(parts[1])
            if b < a:
                raise ValueError
            return list(range(a, b + 1))
    except ValueError:
        pass
    raise UsageError(f"bad n-range {text!r}; expected N or A:B with A <= B")


def parse_x_range(text: str) -> list[float]:
    parts = text.split(":")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise UsageError(f"bad x-range {text!r}") from None
    if len(vals) == 1:
        return vals
    if len(vals) == 2:
        vals.append(1.0)
    if len(vals) != 3:
        raise UsageError(f"bad x-range {text!r}; expected START:STOP[:STEP]")
    start, stop, step = vals
    if not step > 0:
        raise UsageError("x-range step must be > 0")
    if stop < start:
        raise UsageError("x-range stop must be >= start")
    count = int((stop - start) / step + 1e-9) + 1
    return [start + k * step for k in range(count)]


def parse_mu_list(text: str) -> list[float]:
    return [parse_decimal_mu(t.strip()) for t in text.split(",") if t.strip()]


# -- output -------------------------------------------------------------------------


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def emit(records: list[dict], fields, fmt: str, out) -> None:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(fields)
        for r in records:
            w.writerow([_cell(r.get(f)) for f in fields])
        out.write(buf.getvalue())
    elif fmt == "jsonl":
        for r in records:
            out.write(json.dumps({f: r.get(f) for f in fields if f in r}) + "\n")
    else:
        rows = [[_cell(r.get(f)) for f in fields] for r in records]
        widths = [max([len(f)] + [len(row[i]) for row in rows]) for i, f in enumerate(fields)]
        out.write("  ".join(f.ljust(w) for f, w in zip(fields, widths)).rstrip() + "\n")
        for row in rows:
            out.write("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() + "\n")


# -- commands -----------------------------------------------------------------------


def _eval_record(family: Family, n: int, mu: float, x: float, tol: float) -> dict:
    ev = deformed.eval(family, n, mu, x, tol)
    return {"family": family.value, "n": n, "mu": mu, "x": x, "value": float(ev.value),
            "abs_err_est": float(ev.abs_err_est), "terms": ev.work}


def cmd_eval(args) -> tuple[list, tuple, int]:
    family = Family.parse(args.family)
    mu = parse_decimal_mu(args.mu)
    return [_eval_record(family, args.n, mu, args.x, args.tol)], EVAL_FIELDS, 0


def cmd_table(args):
    family = Family.parse(args.family)
    ns = parse_int_range(args.n_range)
    mus = parse_mu_list(args.mu_list)
    xs = parse_x_range(args.x_range)
    if not mus:
        raise UsageError("mu-list is empty")
    records = [_eval_record(family, n, mu, x, args.tol) for n in ns for mu in mus for x in xs]
    return records, TABLE_FIELDS, 0


def cmd_coeffs(args):
    family = Family.parse(args.family)
    mu = parse_rational_mu(args.mu)
    if args.order < 0:
        raise DomainError("order must be >= 0")
    s = deformed.coeffs(family, args.n, mu, args.order)
    records = [{"family": family.value, "n": args.n, "mu": fraction_str(mu), "index": k, "coeff": c}
               for k, c in enumerate(s.to_strings())]
    return records, COEFF_FIELDS, 0


def cmd_verify(args):
    if args.all == bool(args.ids):
        raise UsageError("give identity ids or --all (not both)")
    ids = list(verify.REGISTRY) if args.all else args.ids
    unknown = [i for i in ids if i not in verify.REGISTRY]
    if unknown:
        raise UsageError(f"unknown identity {', '.join(unknown)}; valid ids: {' '.join(verify.REGISTRY)}")
    if args.parallel < 1:
        raise UsageError("--parallel must be >= 1")
    reports = verify.run_suite(ids, args.parallel)
    records = []
    for r in reports:
        d = r.to_dict()
        d["residual"] = d["worst_case"]["residual"]
        if args.format != "jsonl":
            d.pop("worst_case")
        records.append(d)
    fields = VERIFY_FIELDS if args.format != "jsonl" else VERIFY_FIELDS[:4] + ("worst_case", "elapsed_ms", "reason")
    return records, fields, 0 if verify.suite_passed(reports) else 1


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS)

    p = _Parser(prog="dunkl-bessel", description="Dunkl-deformed Bessel functions.")
    p.add_argument("--format", choices=FORMATS, default="pretty")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--out", default=None, help="output path (default stdout)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    families = [f.value for f in Family]
    e = sub.add_parser("eval", parents=[common], help="evaluate one point")
    e.add_argument("--family", required=True, choices=families)
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--mu", default="0")
    e.add_argument("--x", type=float, required=True)
    e.set_defaults(run=cmd_eval)

    t = sub.add_parser("table", parents=[common], help="grid of values")
    t.add_argument("--family", required=True, choices=families)
    t.add_argument("--n-range", required=True, help="N or A:B (inclusive)")
    t.add_argument("--mu-list", default="0", help="comma-separated decimals")
    t.add_argument("--x-range", required=True, help="START:STOP[:STEP] (inclusive)")
    t.set_defaults(run=cmd_table)

    c = sub.add_parser("coeffs", parents=[common], help="exact series coefficients")
    c.add_argument("--family", required=True, choices=families)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--mu", default="0", help="rational p/q")
    c.add_argument("--order", type=int, required=True)
    c.set_defaults(run=cmd_coeffs)

    v = sub.add_parser("verify", parents=[common], help="run identity checks")
    v.add_argument("ids", nargs="*")
    v.add_argument("--all", action="store_true")
    v.add_argument("--parallel", type=int, default=1)
    v.set_defaults(run=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.tol > 0:
            raise UsageError("--tol must be positive")
        records, fields, status = args.run(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except (DomainError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            emit(records, fields, args.format, fh)
    else:
        emit(records, fields, args.format, sys.stdout)
    return status


if __name__ == "__main__":
    sys.exit(main())
