"""Command-line front end: ``verify``, ``compute`` and ``report-schema``.

Exit codes: 0 all checks pass (skips allowed), 1 some check failed,
2 usage error.  Setting QSMANIN_OUTPUT_DIR makes ``verify`` also write the
JSON report to ``$QSMANIN_OUTPUT_DIR/report.json``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .berezinian import ber, qdet, with_split
from .freesuper import IndexRangeError, ParseError, format_expr, parse_expr
from .quotient import RIGHT, AlgebraSpec, DegreeOverflow, get_context
from .report import report_schema
from .scalars import DEFAULT_PRIMES, EXACT, default_modular_fields
from .series import generating_series, generic_manin_series
from .suites import SUITES, ConfigError, SuiteConfig, build_report, run

OUTPUT_DIR_ENV = "QSMANIN_OUTPUT_DIR"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _parse_suites(text: str) -> tuple:
    if text == "all":
        return SUITES
    items = tuple(s.strip() for s in text.split(",") if s.strip())
    if not items:
        raise UsageError("empty suite list")
    return items


def _parse_primes(text: str | None) -> tuple:
    if not text:
        return DEFAULT_PRIMES
    try:
        primes = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"bad prime list {text!r}") from None
    if any(p < 5 for p in primes):
        raise UsageError("primes must be at least 5")
    return primes


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--m", type=int, default=1, help="even dimension")
    p.add_argument("--n", type=int, default=1, help="odd dimension")
    p.add_argument("--k", type=int, default=3, help="largest tensor power / degree")
    p.add_argument("--trunc", type=int, default=None, help="truncation order D of series")
    p.add_argument("--backend", choices=("exact", "modular"), default="exact")
    p.add_argument("--primes", default=None, help="comma-separated primes (modular)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.add_argument("--degree-cap-override", type=int, default=None,
                   help="replace the degree-cap table (sizes are then unchecked)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qsmanin",
                                     description="q-super Manin matrix identity checker")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="verb", required=True)

    v = sub.add_parser("verify", help="run verification suites")
    _add_common(v)
    v.add_argument("--suites", default="all", help="comma list of suites or 'all'")

    c = sub.add_parser("compute", help="compute a single object")
    c.add_argument("what", choices=("normal-form", "ber", "qdet", "series-coeff"))
    c.add_argument("expr", nargs="?", default=None, help="expression for normal-form")
    _add_common(c)
    c.add_argument("--model", choices=("twisted", "naive"), default="twisted",
                   help="series model for ber/qdet")
    c.add_argument("--series", choices=("S", "A", "T"), default="T",
                   help="generating series for series-coeff")

    sub.add_parser("report-schema", help="print the JSON report layout")
    return parser


def _config(args, suites=SUITES) -> SuiteConfig:
    return SuiteConfig(m=args.m, n=args.n, k=args.k, trunc=args.trunc, backend=args.backend,
                       primes=_parse_primes(args.primes), seed=args.seed, suites=suites,
                       degree_cap=args.degree_cap_override)


def _format_text(report: dict) -> str:
    lines = []
    for c in report["checks"]:
        params = ", ".join(f"{k}={v}" for k, v in c["params"].items())
        line = f"[{c['status'].upper():4}] {c['suite']}/{c['name']}({params})"
        if c.get("witness"):
            line += f"  witness: {c['witness']}"
        elif c.get("detail") and c["status"] == "skip":
            line += f"  ({c['detail']})"
        lines.append(line)
    s = report["summary"]
    lines.append(f"pass {s['pass']}, fail {s['fail']}, skip {s['skip']}, total {s['total']}")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    cfg = _config(args, _parse_suites(args.suites))
    report = build_report(cfg, run(cfg))
    text = json.dumps(report, indent=2, sort_keys=True)
    out_dir = os.environ.get(OUTPUT_DIR_ENV)
    if out_dir:
        path = Path(out_dir)
        path.mkdir(parents=True, exist_ok=True)
        (path / "report.json").write_text(text + "\n")
    print(text if args.output == "json" else _format_text(report))
    return EXIT_FAIL if report["summary"]["fail"] else EXIT_OK


def _compute_field(args):
    if args.backend == "exact":
        return EXACT
    return default_modular_fields(args.seed, _parse_primes(args.primes))[0]


def cmd_compute(args) -> int:
    cfg = _config(args)
    F = _compute_field(args)
    ctx = get_context(AlgebraSpec(RIGHT, cfg.m, cfg.n), F, cfg.degree_cap)
    if args.what == "normal-form":
        if args.expr is None:
            raise UsageError("normal-form needs an expression")
        value = format_expr(ctx.normal_form(parse_expr(args.expr, cfg.m, cfg.n, F)))
        payload = {"what": "normal-form", "input": args.expr, "value": value}
    elif args.what in ("ber", "qdet"):
        M = generic_manin_series(ctx, cfg.D, model=args.model)
        if args.what == "qdet":
            # det_q of the even block
            if cfg.m == 0:
                raise UsageError("qdet needs m >= 1 (it is taken on the even block)")
            head = tuple(range(1, cfg.m + 1))
            value = qdet(with_split(M.sub(head, head), cfg.m, 0)).format()
        else:
            value = ber(M).format()
        payload = {"what": args.what, "model": args.model, "trunc": cfg.D, "value": value}
    else:
        S, A, T = generating_series(ctx, cfg.D)
        series = {"S": S, "A": A, "T": T}[args.series]
        coeffs = [format_expr(c) for c in series.coeffs]
        payload = {"what": "series-coeff", "series": args.series, "coefficients": coeffs}
        value = "\n".join(f"t^{d}: {c}" for d, c in enumerate(coeffs))
    if args.output == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(value)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.verb == "verify":
            return cmd_verify(args)
        if args.verb == "compute":
            return cmd_compute(args)
        print(json.dumps(report_schema(), indent=2, sort_keys=True))
        return EXIT_OK
    except (UsageError, ConfigError, DegreeOverflow, ParseError, IndexRangeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
