"""Command-line interface: ``lisgen count|table|prob|validate``.

Exit status: 0 success, 1 mismatch or invariant violation, 2 usage error,
3 brute-force cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import decimal
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from .gessel import (
    count_via_gessel,
    count_via_gessel_r2,
    count_via_gessel_tr_eliminated,
    gessel_r1_series,
    gessel_row,
    poissonized_partial_sum,
    prob_lis_le,
    total_words,
)
from .oracles import DEFAULT_CAP, EnumerationTooLarge, count_via_brute, count_via_rsk
from .polyring import factorial

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_CAP = 3

CONFIG_ENV = "LISGEN_CONFIG"
CONFIG_KEYS = {"cap": int, "method": str, "digits": int, "format": str}
METHODS = ("gessel", "rsk", "brute", "all")
FORMATS = ("csv", "json", "markdown")


class UsageError(Exception):
    pass


@dataclass
class TableRequest:
    r: int
    d_values: list[int]
    n_max: int
    method: str = "gessel"
    format: str = "markdown"

    def __post_init__(self):
        if self.n_max < 1:
            raise UsageError("--n-max must be at least 1")
        if not self.d_values or any(d < 1 for d in self.d_values):
            raise UsageError("--d-list needs one or more values >= 1")
        if self.r < 1:
            raise UsageError("--r must be at least 1")
        if self.method not in METHODS:
            raise UsageError(f"unknown method {self.method!r}")
        if self.format not in FORMATS:
            raise UsageError(f"unknown format {self.format!r}")


def load_config(path: str | None) -> dict:
    """Read ``key = value`` lines; blank lines and ``#`` comments are skipped."""
    if path is None:
        path = os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    config = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: expected one of {sorted(CONFIG_KEYS)} = value")
        try:
            config[key] = CONFIG_KEYS[key](value)
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc
    return config


def parse_rational(text: str) -> Fraction:
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed rational {text!r}; expected p/q") from exc
    if value < 0:
        raise UsageError("theta must be nonnegative")
    return value


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"malformed integer list {text!r}") from exc


def to_decimal(value: Fraction, digits: int) -> str:
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        return str(decimal.Decimal(value.numerator) / decimal.Decimal(value.denominator))


def poisson_decimal(partial: Fraction, theta: Fraction, digits: int) -> str:
    with decimal.localcontext() as ctx:
        ctx.prec = digits + 10
        weight = (-(decimal.Decimal(theta.numerator) / theta.denominator)).exp()
        value = weight * decimal.Decimal(partial.numerator) / partial.denominator
        ctx.prec = digits
        return str(+value)


def _methods_for(d: int, r: int, n: int, cap: int) -> dict[str, Callable[[], int]]:
    methods = {
        "gessel": lambda: count_via_gessel(d, r, n).value,
        "gessel-tr": lambda: count_via_gessel_tr_eliminated(d, r, n).value,
        "rsk": lambda: count_via_rsk(d, r, n).value,
    }
    if r == 2:
        methods["gessel-r2"] = lambda: count_via_gessel_r2(d, n).value
    if r == 1:
        methods["bessel-r1"] = lambda: _bessel_value(d, n)
    if total_words(r, n) <= cap:
        methods["brute"] = lambda: count_via_brute(d, r, n, cap).value
    return methods


def _bessel_value(d: int, n: int) -> int:
    value = gessel_r1_series(d, n)[n] * factorial(n) ** 2
    if value.denominator != 1:
        raise ArithmeticError(f"Bessel series gave non-integer {value}")
    return int(value)


def cmd_count(args, out) -> int:
    d, r, n = args.d, args.r, args.n
    label = f"A_{{{d + 1},{r}}}({n})"
    if args.method == "gessel":
        print(f"{label} = {count_via_gessel(d, r, n).value}  [gessel]", file=out)
    elif args.method == "rsk":
        print(f"{label} = {count_via_rsk(d, r, n).value}  [rsk]", file=out)
    elif args.method == "brute":
        print(f"{label} = {count_via_brute(d, r, n, args.cap).value}  [brute]", file=out)
    else:
        results = {name: fn() for name, fn in _methods_for(d, r, n, args.cap).items()}
        if "brute" not in results:
            print(
                f"# brute skipped: {total_words(r, n)} words exceeds cap {args.cap}",
                file=out,
            )
        width = max(map(len, results))
        for name, value in results.items():
            print(f"{label} = {value}  [{name:<{width}}]", file=out)
        if len(set(results.values())) == 1:
            print("MATCH", file=out)
        else:
            print("MISMATCH", file=out)
            return EXIT_MISMATCH
    return EXIT_OK


def compute_table(req: TableRequest, cap: int = DEFAULT_CAP) -> tuple[dict[int, list[int]], bool]:
    """Rows {d: [A(1), ..., A(n_max)]} and whether every requested method agreed."""
    rows: dict[int, list[int]] = {}
    agree = True
    for d in req.d_values:
        if req.method == "gessel":
            rows[d] = list(gessel_row(d, req.r, req.n_max)[1:])
        elif req.method == "rsk":
            rows[d] = [count_via_rsk(d, req.r, n).value for n in range(1, req.n_max + 1)]
        elif req.method == "brute":
            rows[d] = [
                count_via_brute(d, req.r, n, cap).value for n in range(1, req.n_max + 1)
            ]
        else:
            values = list(gessel_row(d, req.r, req.n_max)[1:])
            for n, value in enumerate(values, 1):
                others = _methods_for(d, req.r, n, cap)
                others.pop("gessel")
                if any(fn() != value for fn in others.values()):
                    agree = False
            rows[d] = values
    return rows, agree


def render_table(req: TableRequest, rows: dict[int, list[int]]) -> str:
    if req.format == "json":
        payload = {
            "r": req.r,
            "rows": [{"d": d, "values": [str(v) for v in vals]} for d, vals in rows.items()],
            "method": req.method,
        }
        return json.dumps(payload, indent=2) + "\n"
    if req.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["d", "n", "value", "method"])
        for d, vals in rows.items():
            for n, v in enumerate(vals, 1):
                writer.writerow([d, n, v, req.method])
        return buf.getvalue()
    ns = range(1, req.n_max + 1)
    lines = [
        "| d\\n | " + " | ".join(str(n) for n in ns) + " |",
        "|---|" + "---|" * req.n_max,
    ]
    for d, vals in rows.items():
        lines.append(f"| {d} | " + " | ".join(str(v) for v in vals) + " |")
    return "\n".join(lines) + "\n"


def cmd_table(args, out) -> int:
    req = TableRequest(
        r=args.r,
        d_values=parse_int_list(args.d_list),
        n_max=args.n_max,
        method=args.method,
        format=args.format,
    )
    rows, agree = compute_table(req, args.cap)
    out.write(render_table(req, rows))
    if not agree:
        print("MISMATCH", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_prob(args, out) -> int:
    p = prob_lis_le(args.d, args.r, args.n)
    print(f"Prob(L <= {args.d}) = {p}", file=out)
    print(f"                 ~ {to_decimal(p, args.digits)}", file=out)
    if args.poisson is not None:
        theta = parse_rational(args.poisson)
        partial = poissonized_partial_sum(args.d, args.r, theta, args.terms)
        print(f"partial sum (n <= {args.terms}, theta = {theta}) = {partial}", file=out)
        print(
            f"exp(-theta) * partial sum ~ {poisson_decimal(partial, theta, args.digits)}",
            file=out,
        )
    return EXIT_OK


def validation_instances(r_max: int, d_max: int, cap: int) -> list[tuple[int, int, int]]:
    instances = []
    for r in range(1, r_max + 1):
        n = 1
        while total_words(r, n) <= cap:
            for d in range(1, d_max + 1):
                instances.append((d, r, n))
            n += 1
    return instances


def cmd_validate(args, out) -> int:
    if args.r_max < 0 or args.d_max < 0 or args.cap < 0:
        raise UsageError("caps must be nonnegative")
    instances = validation_instances(args.r_max, args.d_max, args.cap)
    failures = 0
    for d, r, n in instances:
        results = {name: fn() for name, fn in _methods_for(d, r, n, args.cap).items()}
        ok = len(set(results.values())) == 1
        failures += not ok
        detail = " ".join(f"{k}={v}" for k, v in results.items())
        print(f"d={d} r={r} n={n}: {'MATCH' if ok else 'MISMATCH'}  {detail}", file=out)
    print(f"{len(instances)} instances, {failures} mismatches", file=out)
    return EXIT_MISMATCH if failures else EXIT_OK


def build_parser(config: dict) -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--config", help=f"key=value defaults file (or ${CONFIG_ENV})")
    parser = argparse.ArgumentParser(
        prog="lisgen",
        parents=[shared],
        description="Count words with each letter repeated r times and no increasing "
        "subsequence longer than d.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n=True):
        p.add_argument("--d", type=int, required=True, help="maximum allowed LIS length")
        p.add_argument("--r", type=int, required=True, help="occurrences of each letter")
        if n:
            p.add_argument("--n", type=int, required=True, help="alphabet size")
        p.add_argument("--cap", type=int, default=config.get("cap", DEFAULT_CAP))

    p = sub.add_parser("count", parents=[shared], help="compute A_{d+1,r}(n)")
    common(p)
    p.add_argument("--method", choices=METHODS, default=config.get("method", "gessel"))
    p.set_defaults(func=cmd_count)

    p = sub.add_parser(
        "table", parents=[shared], help="tabulate A_{d+1,r}(n) for several d, n = 1..n_max"
    )
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--d-list", default="1,2,3,4")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--method", choices=METHODS, default=config.get("method", "gessel"))
    p.add_argument("--format", choices=FORMATS, default=config.get("format", "markdown"))
    p.add_argument("--cap", type=int, default=config.get("cap", DEFAULT_CAP))
    p.set_defaults(func=cmd_table)

    p = sub.add_parser(
        "prob", parents=[shared], help="probability that the LIS is at most d"
    )
    common(p)
    p.add_argument("--poisson", metavar="p/q", help="Poisson parameter theta")
    p.add_argument("--terms", type=int, default=None, help="number of Poisson terms N")
    p.add_argument("--digits", type=int, default=config.get("digits", 12))
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser(
        "validate", parents=[shared], help="cross-check every method on small instances"
    )
    p.add_argument("--r-max", type=int, default=3)
    p.add_argument("--d-max", type=int, default=3)
    p.add_argument("--cap", type=int, default=config.get("cap", 10**6))
    p.set_defaults(func=cmd_validate)
    return parser


def _config_path(argv: Sequence[str]) -> str | None:
    for i, arg in enumerate(argv):
        if arg == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if arg.startswith("--config="):
            return arg.split("=", 1)[1]
    return None


def main(argv: Sequence[str] | None = None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = sys.stdout if out is None else out
    try:
        config = load_config(_config_path(argv))
        parser = build_parser(config)
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            return EXIT_OK if exc.code == 0 else EXIT_USAGE
        if getattr(args, "terms", None) is None and getattr(args, "poisson", None):
            args.terms = args.n
        if getattr(args, "digits", 12) < 1:
            raise UsageError("--digits must be positive")
        return args.func(args, out)
    except UsageError as exc:
        print(f"lisgen: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EnumerationTooLarge as exc:
        print(f"lisgen: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"lisgen: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"lisgen: invariant violation: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


def main_entry() -> None:
    sys.exit(main())
