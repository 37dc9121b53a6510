"""JSON and markdown rendering of battery results.

JSON keeps full float precision (``repr`` round-trips exactly), so
``battery_from_dict(battery_to_dict(b)) == b``. Markdown tables follow the
usual layout of published test tables, at two decimals.
"""
from __future__ import annotations

import dataclasses
import json
import types
import typing
from typing import Any

from .digits import GofResult
from .verdict import BatteryResult, VerdictReport, WindowScanResult

__all__ = [
    "SCHEMA",
    "to_jsonable",
    "from_jsonable",
    "battery_to_dict",
    "battery_from_dict",
    "build_document",
    "dumps_json",
    "render_markdown",
    "markdown_gof",
    "markdown_runs",
    "markdown_bds",
    "markdown_adf",
    "markdown_dist",
    "markdown_summary",
]

SCHEMA = "benford-emh/report/v1"


def to_jsonable(obj: Any) -> Any:
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalar
        return obj.item()
    return obj


def from_jsonable(tp: Any, data: Any) -> Any:
    """Rebuild a value of annotated type ``tp`` from :func:`to_jsonable` output."""
    if data is None:
        return None
    origin = typing.get_origin(tp)
    if origin in (typing.Union, types.UnionType):
        args = [a for a in typing.get_args(tp) if a is not type(None)]
        return from_jsonable(args[0], data)
    if dataclasses.is_dataclass(tp):
        hints = typing.get_type_hints(tp)
        kwargs = {f.name: from_jsonable(hints[f.name], data[f.name])
                  for f in dataclasses.fields(tp) if f.name in data}
        return tp(**kwargs)
    if origin is tuple:
        args = typing.get_args(tp)
        if len(args) == 2 and args[1] is Ellipsis:
            return tuple(from_jsonable(args[0], v) for v in data)
        return tuple(from_jsonable(a, v) for a, v in zip(args, data))
    if origin is list:
        (arg,) = typing.get_args(tp)
        return [from_jsonable(arg, v) for v in data]
    if origin is dict:
        _, vt = typing.get_args(tp)
        return {k: from_jsonable(vt, v) for k, v in data.items()}
    if tp is float:
        return float(data)
    return data


def battery_to_dict(battery: BatteryResult) -> dict:
    return to_jsonable(battery)


def battery_from_dict(data: dict) -> BatteryResult:
    return from_jsonable(BatteryResult, data)


def build_document(battery: BatteryResult, verdict: VerdictReport | None,
                   scan: WindowScanResult | None = None, metadata: dict | None = None) -> dict:
    return {
        "schema": SCHEMA,
        "metadata": metadata or {},
        "battery": battery_to_dict(battery),
        "verdict": to_jsonable(verdict),
        "window_scan": to_jsonable(scan),
    }


def dumps_json(doc: Any) -> str:
    return json.dumps(doc, indent=2) + "\n"


# -- markdown --------------------------------------------------------------------


def _f(v: float | None, digits: int = 2) -> str:
    if v is None:
        return "n/a"
    return f"{v:.{digits}f}"


def _table(header: list[str], rows: list[list[str]]) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(r) + " |" for r in rows]
    return "\n".join(lines)


def markdown_summary(s) -> str:
    head = ["Statistic", "Mean", "Median", "Std. Dev", "Skewness", "Kurtosis", "Max.", "Min."]
    row = ["Value"] + [_f(v) for v in (s.mean, s.median, s.std_dev, s.skewness, s.kurtosis, s.max, s.min)]
    return "### Descriptive Statistics\n\n" + _table(head, [row])


_DIST_NAMES = {"jarque_bera": "Jarque-Bera", "anderson_darling": "Anderson-Darling",
               "kolmogorov_smirnov": "Kolmogorov-Smirnov"}


def markdown_dist(results) -> str:
    rows = [[_DIST_NAMES[r.test], r.reference, _f(r.statistic), _f(r.p_value)] for r in results]
    return "### Data Distribution\n\n" + _table(["Test", "Reference", "Stat.", "Prob."], rows)


def markdown_runs(r) -> str:
    rows = [
        [f"Test Value ({r.cutoff_policy.capitalize()})", _f(r.cutoff)],
        ["Cases Less Than Test Value", str(r.n2)],
        ["Cases Greater Than Test Value", str(r.n1)],
        ["Total Cases", str(r.n1 + r.n2 + r.ties_dropped)],
        ["Number of Runs", str(r.runs)],
        ["Z Statistic", _f(r.z)],
        ["Prob.", _f(r.p_value)],
    ]
    return "### Runs Test\n\n" + _table(["Item", "Value"], rows)


def markdown_bds(b) -> str:
    rows = [[str(r.m), _f(r.raw_stat), _f(r.z), _f(r.p_value)] for r in b.rows]
    head = f"Method: {b.epsilon_method}; Raw Epsilon: {b.epsilon:.4f}"
    return "### BDS Test\n\n" + head + "\n\n" + _table(["Dimension", "BDS-Stat.", "Z-Stat.", "Prob."], rows)


def markdown_gof(g: GofResult) -> str:
    title = "Benford" if g.reference == "benford" else "Uniform"
    rows = [[str(r.digit), _f(r.expected), str(r.actual), _f(r.expected_share, 4), _f(r.actual_share, 4),
             _f(r.deviation), _f(r.contribution)] for r in g.per_digit]
    rows.append(["Sum", str(g.total), str(g.total), "1", "1", "", _f(g.statistic)])
    tail = (f"\n\nCritical value ({g.alpha:g}, df={g.df}): {g.critical_value:.3f}; "
            f"p-value: {_f(g.p_value)}; reject: {'yes' if g.reject else 'no'}")
    head = ["Digit", "Expected", "Actual", "Expected (%)", "Actual (%)", "Deviation", "Chi-sq"]
    return f"### Testing a {title} Distribution for First Digit\n\n" + _table(head, rows) + tail


def markdown_adf(a) -> str:
    key = f"{a.alpha * 100:g}%"
    crit = a.critical_values.get(key, a.critical_values.get("5%"))
    crit_label = key if key in a.critical_values else "5%"
    lines = [
        "### ADF Unit Root Test",
        "",
        f"Null Hypothesis: {a.null_hypothesis}",
        f"Lag Selection: {a.spec.lag_selection()} (p = {a.chosen_lag}, n = {a.n_effective}, "
        f"deterministic: {a.spec.deterministic})",
        "",
        _table(["ADF-Stat.", f"Critical Value ({crit_label})", "P-Value"],
               [[_f(a.statistic), _f(crit), _f(a.p_value)]]),
    ]
    return "\n".join(lines)


def _markdown_verdict(v: VerdictReport) -> str:
    rows = [
        ["Randomness", v.randomness_verdict],
        ["Unit root (EMH)", v.emh_verdict],
        ["Benford", v.benford_verdict],
        ["Conclusion", v.nexus_conclusion],
        ["Concordance", "yes" if v.concordance else "no"],
    ]
    return "### Verdict\n\n" + _table(["Item", "Outcome"], rows) + "\n\n" + v.narrative


def _markdown_scan(s: WindowScanResult) -> str:
    rows = [[str(w.start), str(w.end), _f(w.statistic), _f(w.p_value), "yes" if w.reject else "no"]
            for w in s.windows]
    return (f"### Window Scan (length {s.window_length}, step {s.step})\n\n"
            + _table(["Start", "End", "Chi-sq", "Prob.", "Reject"], rows)
            + f"\n\nConforming fraction: {s.conforming_fraction:.2f}")


def render_markdown(battery: BatteryResult, verdict: VerdictReport | None = None,
                    scan: WindowScanResult | None = None, metadata: dict | None = None) -> str:
    parts = ["# Benford / market-efficiency report"]
    if metadata:
        parts.append("\n".join(f"- {k}: {v}" for k, v in metadata.items()))
    if battery.summary is not None:
        parts.append(markdown_summary(battery.summary))
    if battery.dist_tests:
        parts.append(markdown_dist(battery.dist_tests))
    if battery.runs is not None:
        parts.append(markdown_runs(battery.runs))
    if battery.bds is not None:
        parts.append(markdown_bds(battery.bds))
    for g in (battery.benford_gof, battery.uniform_gof):
        if g is not None:
            parts.append(markdown_gof(g))
    if battery.adf is not None:
        parts.append(markdown_adf(battery.adf))
    if verdict is not None:
        parts.append(_markdown_verdict(verdict))
    if scan is not None:
        parts.append(_markdown_scan(scan))
    if battery.errors:
        parts.append("### Errors\n\n" + "\n".join(f"- {k}: {v}" for k, v in battery.errors.items()))
    if battery.warnings:
        parts.append("### Warnings\n\n" + "\n".join(f"- {w}" for w in battery.warnings))
    return "\n\n".join(parts) + "\n"
