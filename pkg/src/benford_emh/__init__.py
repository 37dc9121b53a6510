"""Benford first-digit conformity and market-efficiency tests for price series."""

__version__ = "0.1.0"

from .digits import (
    DigitHistogram,
    GofResult,
    benford_expected,
    chi_square_gof,
    digit_histogram,
    first_significant_digit,
    uniform_expected,
)
from .distribution import DistTestResult, anderson_darling, jarque_bera, ks_test
from .generators import GeneratorConfig, generate
from .kernels import chi_square_sf, ols_fit, std_normal_cdf
from .randomness import BdsResult, RunsResult, bds_test, correlation_integral, runs_test, select_epsilon
from .timeseries import IngestReport, InputError, SummaryStats, TimeSeries, detect_gaps, load_csv, summarize
from .unit_root import AdfResult, AdfSpec, adf_critical_values, adf_test, select_lag
from .verdict import BatteryConfig, BatteryResult, VerdictReport, render_verdict, run_battery, window_scan

__all__ = [
    "AdfResult", "AdfSpec", "BatteryConfig", "BatteryResult", "BdsResult", "DigitHistogram",
    "DistTestResult", "GeneratorConfig", "GofResult", "IngestReport", "InputError", "RunsResult",
    "SummaryStats", "TimeSeries", "VerdictReport", "adf_critical_values", "adf_test",
    "anderson_darling", "bds_test", "benford_expected", "chi_square_gof", "chi_square_sf",
    "correlation_integral", "detect_gaps", "digit_histogram", "first_significant_digit",
    "generate", "jarque_bera", "ks_test", "load_csv", "ols_fit", "render_verdict", "run_battery",
    "runs_test", "select_epsilon", "select_lag", "std_normal_cdf", "summarize",
    "uniform_expected", "window_scan",
]
