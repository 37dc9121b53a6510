"""Full test battery, the randomness/efficiency/Benford verdict, and window scans."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .digits import GofResult, benford_expected, chi_square_gof, digit_histogram, uniform_expected
from .distribution import DistTestResult, anderson_darling, jarque_bera, ks_test
from .randomness import BdsResult, RunsResult, bds_test, runs_test
from .timeseries import IngestReport, InputError, SummaryStats, TimeSeries, summarize
from .unit_root import AdfResult, AdfSpec, adf_test

__all__ = [
    "BatteryConfig",
    "BatteryResult",
    "VerdictReport",
    "WindowRow",
    "WindowScanResult",
    "MissingPrerequisiteError",
    "run_battery",
    "decide",
    "render_verdict",
    "window_scan",
    "MIN_BATTERY_LENGTH",
    "DEFAULT_WINDOW",
]

MIN_BATTERY_LENGTH = 10
RECOMMENDED_LENGTH = 500
DEFAULT_WINDOW = 500

EMH_CONSISTENT = "emh_consistent_benford_possible"
INEFFICIENT = "inefficient_benford_not_expected"


class MissingPrerequisiteError(ValueError):
    """A verdict was requested from a battery lacking runs/BDS/ADF/Benford results."""


@dataclass(frozen=True)
class BatteryConfig:
    """Per-test settings for :func:`run_battery`.

    ``randomness_on`` selects the series given to the runs and BDS tests:
    ``"levels"`` (the prices themselves) or ``"increments"`` (first
    differences, the IID shocks of a random walk). ``benford_decimals``
    rounds the Benford probabilities (4 reproduces published tables).
    """

    alpha: float = 0.05
    runs_cutoff: str = "mean"
    paper_variance: bool = False
    bds_max_dim: int = 6
    eps_method: str = "fraction:0.7"
    adf_spec: AdfSpec = field(default_factory=AdfSpec)
    ks_reference: str = "uniform"
    ad_reference: str = "normal"
    randomness_on: str = "levels"
    benford_decimals: int | None = None

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1)")
        if self.randomness_on not in ("levels", "increments"):
            raise ValueError("randomness_on must be 'levels' or 'increments'")


@dataclass(frozen=True)
class BatteryResult:
    n: int
    alpha: float
    config: BatteryConfig
    ingest: IngestReport | None
    summary: SummaryStats | None
    dist_tests: tuple[DistTestResult, ...]
    runs: RunsResult | None
    bds: BdsResult | None
    adf: AdfResult | None
    benford_gof: GofResult | None
    uniform_gof: GofResult | None
    errors: dict[str, str]
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class VerdictReport:
    randomness_verdict: str  # consistent_with_iid | rejected
    emh_verdict: str  # unit_root_not_rejected | unit_root_rejected
    benford_verdict: str  # conforms | rejected
    nexus_conclusion: str
    narrative: str
    predicted_benford_plausible: bool
    concordance: bool
    drivers: tuple[str, ...]


def run_battery(ts: TimeSeries, config: BatteryConfig | None = None,
                ingest: IngestReport | None = None) -> BatteryResult:
    """Run every test on one series, in the order descriptive -> distribution ->
    randomness -> first digits -> unit root.

    A failing test is recorded in ``errors`` under its name and the remaining
    tests still run. Only a series shorter than 10 points is refused outright.
    """
    cfg = config or BatteryConfig()
    n = len(ts)
    if n < MIN_BATTERY_LENGTH:
        raise InputError(f"the battery needs at least {MIN_BATTERY_LENGTH} observations, got {n}")
    errors: dict[str, str] = {}
    notes: list[str] = []
    if n < RECOMMENDED_LENGTH:
        notes.append(f"series length {n} is below {RECOMMENDED_LENGTH}; BDS asymptotics are unreliable")

    def attempt(name, fn):
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                return fn()
        except (ValueError, ArithmeticError, np.linalg.LinAlgError) as exc:
            errors[name] = f"{type(exc).__name__}: {exc}"
            return None

    alpha = cfg.alpha
    summary = attempt("summary", lambda: summarize(ts))
    dist = tuple(r for r in (
        attempt("jarque_bera", lambda: jarque_bera(ts, alpha)),
        attempt("anderson_darling", lambda: anderson_darling(ts, cfg.ad_reference, alpha)),
        attempt("kolmogorov_smirnov", lambda: ks_test(ts, cfg.ks_reference, alpha)),
    ) if r is not None)

    rand_series = ts.diff() if cfg.randomness_on == "increments" else ts
    runs = attempt("runs", lambda: runs_test(rand_series, cfg.runs_cutoff, alpha, cfg.paper_variance))
    bds = attempt("bds", lambda: bds_test(rand_series, cfg.bds_max_dim, cfg.eps_method, alpha))

    hist = attempt("digit_histogram", lambda: digit_histogram(ts))
    benford = uniform = None
    if hist is not None:
        benford = attempt("benford_gof", lambda: chi_square_gof(hist, benford_expected(hist.total, cfg.benford_decimals), alpha))
        uniform = attempt("uniform_gof", lambda: chi_square_gof(hist, uniform_expected(hist.total), alpha))
    adf = attempt("adf", lambda: adf_test(ts, cfg.adf_spec, alpha))

    return BatteryResult(
        n=n,
        alpha=alpha,
        config=cfg,
        ingest=ingest,
        summary=summary,
        dist_tests=dist,
        runs=runs,
        bds=bds,
        adf=adf,
        benford_gof=benford,
        uniform_gof=uniform,
        errors=errors,
        warnings=tuple(notes),
    )


def decide(runs_reject: bool, bds_reject: bool, adf_reject: bool, benford_reject: bool) -> VerdictReport:
    """Decision table linking randomness, the unit root and Benford conformity.

    Benford's law is predicted plausible only when neither randomness test
    rejects IID and the unit root is not rejected. Concordance holds when the
    direct digit test agrees with that prediction.
    """
    randomness_rejected = runs_reject or bds_reject
    plausible = not randomness_rejected and not adf_reject
    conforms = not benford_reject
    drivers = tuple(name for name, flag in (
        ("runs", runs_reject), ("bds", bds_reject), ("adf", adf_reject)) if flag)

    if plausible:
        conclusion = EMH_CONSISTENT
        story = ("IID randomness is not rejected and the unit root is not rejected: "
                 "the series is consistent with an efficient market, so Benford's law may hold.")
    else:
        conclusion = INEFFICIENT
        parts = []
        if runs_reject:
            parts.append("the runs test rejects IID")
        if bds_reject:
            parts.append("the BDS test rejects IID")
        if adf_reject:
            parts.append("the ADF test rejects the unit root")
        joined = "; ".join(parts)
        story = (joined[0].upper() + joined[1:]
                 + ". The market is judged inefficient, so Benford's law is not expected to hold.")
    observed = "conforms to" if conforms else "rejects"
    story += f" The first-digit chi-square test {observed} Benford's law"
    story += ", in agreement with the prediction." if plausible == conforms else ", contradicting the prediction."

    return VerdictReport(
        randomness_verdict="rejected" if randomness_rejected else "consistent_with_iid",
        emh_verdict="unit_root_rejected" if adf_reject else "unit_root_not_rejected",
        benford_verdict="conforms" if conforms else "rejected",
        nexus_conclusion=conclusion,
        narrative=story,
        predicted_benford_plausible=plausible,
        concordance=plausible == conforms,
        drivers=drivers,
    )


def render_verdict(battery: BatteryResult) -> VerdictReport:
    missing = [name for name in ("runs", "bds", "adf", "benford_gof") if getattr(battery, name) is None]
    if missing:
        raise MissingPrerequisiteError(f"verdict needs results for: {', '.join(missing)}")
    return decide(battery.runs.reject, battery.bds.any_reject, battery.adf.reject, battery.benford_gof.reject)


@dataclass(frozen=True)
class WindowRow:
    start: int
    end: int  # exclusive
    statistic: float
    p_value: float
    reject: bool


@dataclass(frozen=True)
class WindowScanResult:
    window_length: int
    step: int
    alpha: float
    windows: tuple[WindowRow, ...]
    conforming_fraction: float


def window_scan(ts: TimeSeries, window_length: int = DEFAULT_WINDOW, step: int | None = None,
                alpha: float = 0.05, benford_decimals: int | None = None) -> WindowScanResult:
    """Benford GOF on every full window ``[s, s + window_length)``, s = 0, step, 2*step, ...

    ``step`` defaults to ``window_length`` (non-overlapping windows).
    """
    step = window_length if step is None else step
    n = len(ts)
    if window_length < 100:
        raise InputError("window_length must be at least 100")
    if step < 1:
        raise InputError("step must be at least 1")
    if window_length > n:
        raise InputError(f"window of {window_length} is longer than the series ({n})")
    rows = []
    for start in range(0, n - window_length + 1, step):
        hist = digit_histogram(ts.values[start:start + window_length])
        g = chi_square_gof(hist, benford_expected(hist.total, benford_decimals), alpha)
        rows.append(WindowRow(start, start + window_length, g.statistic, g.p_value, g.reject))
    conforming = sum(not r.reject for r in rows) / len(rows)
    return WindowScanResult(window_length, step, alpha, tuple(rows), conforming)
