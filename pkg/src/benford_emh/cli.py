"""Command-line interface.

Exit codes: 0 success, 2 input or validation error, 3 numeric failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import os
import sys
import time
import warnings
from pathlib import Path

from . import __version__
from .digits import benford_expected, chi_square_gof, digit_histogram, uniform_expected
from .distribution import anderson_darling, jarque_bera, ks_test, parse_reference
from .generators import GeneratorConfig, generate
from .kernels import NumericError
from .randomness import bds_test, parse_epsilon_method, runs_test
from .report import (
    build_document,
    dumps_json,
    markdown_adf,
    markdown_bds,
    markdown_dist,
    markdown_gof,
    markdown_runs,
    render_markdown,
    to_jsonable,
)
from .timeseries import InputError, load_csv, read_csv_text, write_csv
from .unit_root import AdfSpec, adf_test, parse_deterministic, parse_lag_mode
from .verdict import DEFAULT_WINDOW, BatteryConfig, MissingPrerequisiteError, render_verdict, run_battery, window_scan

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3

REPORT_ENV = "BENFORD_EMH_REPORT"
_VALUE_COLUMNS = ("Close", "close", "Price", "price", "value", "Value")
_DATE_COLUMNS = ("Date", "date")


def _read_header(path: str) -> tuple[list[str], str | None]:
    """Header of the input; for stdin also returns the buffered text."""
    if path == "-":
        text = sys.stdin.read()
        first = text.splitlines()[0] if text else ""
        return next(csv.reader([first]), []), text
    p = Path(path)
    if not p.is_file():
        raise InputError(f"file not found: {p}")
    with p.open(newline="", encoding="utf-8") as fh:
        first = fh.readline()
    return next(csv.reader([first]), []), None


def _load(args):
    header, text = _read_header(args.path)
    header = [h.strip().lstrip("\ufeff") for h in header]
    column = args.column
    if column is None:
        column = next((c for c in _VALUE_COLUMNS if c in header), header[-1] if header else None)
        if column is None:
            raise InputError("empty CSV: header row required")
    date_column = args.date_column
    if date_column is None:
        date_column = next((c for c in _DATE_COLUMNS if c in header), None)
    elif date_column == "":
        date_column = None
    if text is None:
        return load_csv(args.path, column, date_column)
    return read_csv_text(text, column, date_column, label="stdin")


def _adf_spec(args) -> AdfSpec:
    kw = parse_lag_mode(args.lag)
    return AdfSpec(deterministic=parse_deterministic(args.spec), p_max=args.max_lag, **kw)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _metadata(args, extra: dict | None = None) -> dict:
    meta = {
        "input": args.path,
        "artifact": "benford-emh",
        "version": __version__,
        "timestamp": None,
    }
    if getattr(args, "timestamp", False):
        meta["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    elif os.environ.get("SOURCE_DATE_EPOCH"):
        epoch = int(os.environ["SOURCE_DATE_EPOCH"])
        meta["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(epoch))
    if extra:
        meta.update(extra)
    return meta


# -- commands ----------------------------------------------------------------------


def cmd_analyze(args) -> int:
    parse_epsilon_method(args.eps_method)
    ts, ingest = _load(args)
    cfg = BatteryConfig(
        alpha=args.alpha,
        runs_cutoff=args.cutoff,
        paper_variance=args.paper_variance,
        bds_max_dim=args.max_dim,
        eps_method=args.eps_method,
        adf_spec=_adf_spec(args),
        ks_reference=args.ks_ref,
        ad_reference=args.ad_ref,
        randomness_on=args.randomness_on,
        benford_decimals=args.benford_decimals,
    )
    battery = run_battery(ts, cfg, ingest)
    try:
        verdict = render_verdict(battery)
    except MissingPrerequisiteError as exc:
        # still write the partial report; the per-test errors explain the gap
        print(f"error: numeric failure: {exc}", file=sys.stderr)
        verdict = None
    scan = None
    if args.windows:
        length, _, step = args.windows.partition(":")
        scan = window_scan(ts, int(length), int(step) if step else None, args.alpha, args.benford_decimals)
    meta = _metadata(args, {"config": to_jsonable(cfg)})
    if args.report == "md":
        _emit(render_markdown(battery, verdict, scan, {k: v for k, v in meta.items() if k != "config"}), args.out)
    else:
        _emit(dumps_json(build_document(battery, verdict, scan, meta)), args.out)
    return EXIT_OK if verdict is not None else EXIT_NUMERIC


def cmd_benford(args) -> int:
    ts, _ = _load(args)
    hist = digit_histogram(ts)
    refs = ("benford", "uniform") if args.ref == "both" else (args.ref,)
    results = []
    for ref in refs:
        exp = benford_expected(hist.total, args.benford_decimals) if ref == "benford" else uniform_expected(hist.total)
        results.append(chi_square_gof(hist, exp, args.alpha))
    if args.report == "md":
        _emit("\n\n".join(markdown_gof(g) for g in results) + "\n", args.out)
    else:
        _emit(dumps_json({"metadata": _metadata(args), "gof": to_jsonable(results)}), args.out)
    return EXIT_OK


def cmd_runs(args) -> int:
    ts, _ = _load(args)
    r = runs_test(ts, args.cutoff, args.alpha, args.paper_variance)
    if args.report == "md":
        _emit(markdown_runs(r) + "\n", args.out)
    else:
        _emit(dumps_json({"metadata": _metadata(args), "runs": to_jsonable(r)}), args.out)
    return EXIT_OK


def cmd_bds(args) -> int:
    ts, _ = _load(args)
    r = bds_test(ts, args.max_dim, args.eps_method, args.alpha)
    if args.report == "md":
        _emit(markdown_bds(r) + "\n", args.out)
    else:
        _emit(dumps_json({"metadata": _metadata(args), "bds": to_jsonable(r)}), args.out)
    return EXIT_OK


def cmd_adf(args) -> int:
    ts, _ = _load(args)
    r = adf_test(ts, _adf_spec(args), args.alpha)
    if args.report == "md":
        _emit(markdown_adf(r) + "\n", args.out)
    else:
        _emit(dumps_json({"metadata": _metadata(args), "adf": to_jsonable(r)}), args.out)
    return EXIT_OK


def cmd_dist(args) -> int:
    ts, _ = _load(args)
    ks_ref = args.ref or args.ks_ref
    ad_ref = args.ref or args.ad_ref
    results = [
        jarque_bera(ts, args.alpha),
        anderson_darling(ts, parse_reference(ad_ref), args.alpha),
        ks_test(ts, parse_reference(ks_ref), args.alpha),
    ]
    if args.report == "md":
        _emit(markdown_dist(results) + "\n", args.out)
    else:
        _emit(dumps_json({"metadata": _metadata(args), "dist_tests": to_jsonable(results)}), args.out)
    return EXIT_OK


_SIM_PARAMS = {
    "random_walk": ("x0", "sigma"),
    "ar1": ("phi", "sigma"),
    "logistic_map": ("r", "x0"),
    "ratio_uniform": (),
    "ratio_exponential": ("lam1", "lam2"),
    "benford_exact": ("decades",),
}


def cmd_simulate(args) -> int:
    kind = args.kind.replace("-", "_")
    params = {name: getattr(args, name) for name in _SIM_PARAMS[kind] if getattr(args, name) is not None}
    ts = generate(GeneratorConfig(kind, args.n, args.seed, params))
    buf = io.StringIO()
    write_csv(ts, buf)
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


# -- parser --------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, report: bool = True) -> None:
    p.add_argument("path", help="CSV file, or - for standard input")
    p.add_argument("--column", default=None,
                   help="value column (default: Close/Price/value if present, else the last column)")
    p.add_argument("--date-column", default=None,
                   help="date column for the gap audit (default: Date/date if present; '' disables)")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    if report:
        p.add_argument("--report", choices=("json", "md"), default=os.environ.get(REPORT_ENV, "json"),
                       help=f"report format (default from ${REPORT_ENV}, else json)")


def _runs_flags(p):
    p.add_argument("--cutoff", default="mean", help="mean, median or value:V")
    p.add_argument("--paper-variance", action="store_true",
                   help="add 1 to the runs variance (literal printed formula)")


def _bds_flags(p):
    p.add_argument("--max-dim", type=int, default=6)
    p.add_argument("--eps-method", default="fraction:0.7", help="fraction:Q, std:K or raw:V")


def _digit_flags(p):
    p.add_argument("--benford-decimals", type=int, default=None, metavar="N",
                   help="round Benford probabilities to N places (4 reproduces printed tables)")


def _adf_flags(p):
    p.add_argument("--spec", default="const", help="none, const or trend")
    p.add_argument("--lag", default="auto:sbc", help="auto:sbc, auto:aic or fixed:N")
    p.add_argument("--max-lag", type=int, default=None, help="largest lag for auto selection")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="benford-emh", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full battery, verdict and optional window scan")
    _common(p)
    _runs_flags(p)
    _bds_flags(p)
    _adf_flags(p)
    _digit_flags(p)
    p.add_argument("--ks-ref", default="uniform", help="KS reference: normal, uniform or uniform:a,b")
    p.add_argument("--ad-ref", default="normal", help="AD reference: normal, uniform or uniform:a,b")
    p.add_argument("--randomness-on", choices=("levels", "increments"), default="levels")
    p.add_argument("--windows", default=None, metavar="LEN[:STEP]",
                   help=f"also scan Benford conformity over windows (e.g. {DEFAULT_WINDOW}:250)")
    p.add_argument("--timestamp", action="store_true", help="stamp the report with the current UTC time")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("benford", help="first-digit chi-square test")
    _common(p)
    p.add_argument("--ref", choices=("benford", "uniform", "both"), default="both")
    _digit_flags(p)
    p.set_defaults(func=cmd_benford)

    p = sub.add_parser("runs", help="Wald-Wolfowitz runs test")
    _common(p)
    _runs_flags(p)
    p.set_defaults(func=cmd_runs)

    p = sub.add_parser("bds", help="BDS independence test")
    _common(p)
    _bds_flags(p)
    p.set_defaults(func=cmd_bds)

    p = sub.add_parser("adf", help="augmented Dickey-Fuller unit root test")
    _common(p)
    _adf_flags(p)
    p.set_defaults(func=cmd_adf)

    p = sub.add_parser("dist", help="Jarque-Bera, Anderson-Darling and Kolmogorov-Smirnov")
    _common(p)
    p.add_argument("--ref", default=None, help="reference for both KS and AD: normal, uniform or uniform:a,b")
    p.add_argument("--ks-ref", default="uniform")
    p.add_argument("--ad-ref", default="normal")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("simulate", help="write a synthetic series as CSV")
    p.add_argument("kind", choices=[k.replace("_", "-") for k in _SIM_PARAMS])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--x0", type=float, default=None)
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--phi", type=float, default=None)
    p.add_argument("--r", type=float, default=None)
    p.add_argument("--lam1", type=float, default=None)
    p.add_argument("--lam2", type=float, default=None)
    p.add_argument("--decades", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_simulate)
    return ap


def _show_warning(message, category, filename, lineno, file=None, line=None):
    print(f"warning: {message}", file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    warnings.showwarning = _show_warning
    try:
        return args.func(args)
    except NumericError as exc:
        print(f"error: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (InputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ArithmeticError as exc:
        print(f"error: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
