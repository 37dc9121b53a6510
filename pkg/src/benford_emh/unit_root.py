"""Augmented Dickey-Fuller test with information-criterion lag selection.

Regression, for t over the usable sample::

    dy_t = gamma * y_{t-1} + sum_{i=1}^{p-1} delta_i dy_{t-i} + [alpha] + [beta t] + e_t

``p`` counts the lagged level plus ``p - 1`` lagged differences, so ``p = 1``
is the plain Dickey-Fuller regression.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .kernels import DegenerateTestError, OlsFit, ols_fit, std_normal_cdf
from .timeseries import InputError, TimeSeries

__all__ = [
    "DETERMINISTIC",
    "AdfSpec",
    "AdfResult",
    "parse_lag_mode",
    "parse_deterministic",
    "build_adf_design",
    "default_max_lag",
    "select_lag",
    "adf_critical_values",
    "adf_pvalue",
    "adf_test",
]

DETERMINISTIC = ("none", "constant", "constant_and_trend")

# Quantile response surfaces q(n) = b0 + b1/n + b2/n^2 (+ b3/n^3) in the number
# of regression observations n. The 1%, 5% and 10% rows are MacKinnon (2010),
# single-regressor case. The other rows were fitted by tools/fit_adf_surface.py
# (400k replications per n, n in 25..1000); their asymptotes agree with
# Fuller's tables to the printed two decimals.
_SURFACE = {
    "none": {
        0.01: (-2.56574, -2.2358, -3.627, 0.0),
        0.025: (-2.22700, -0.9728, -2.356),
        0.05: (-1.94100, -0.2686, -3.365, 31.223),
        0.10: (-1.61682, 0.2656, -2.714, 25.364),
        0.25: (-1.08982, 0.4109, 5.455),
        0.50: (-0.49929, 0.6369, 0.935),
        0.75: (0.21924, 0.9042, -3.135),
        0.90: (0.88847, 1.0148, -1.988),
        0.95: (1.28428, 1.3137, 0.525),
        0.975: (1.62277, 1.8427, 2.971),
        0.99: (2.00937, 3.2625, 0.326),
    },
    "constant": {
        0.01: (-3.43035, -6.5393, -16.786, -79.433),
        0.025: (-3.12382, -4.1675, -16.697),
        0.05: (-2.86154, -2.8903, -4.234, -40.040),
        0.10: (-2.56677, -1.5384, -2.809, 0.0),
        0.25: (-2.08717, -0.0425, -0.826),
        0.50: (-1.56587, 0.7027, 2.796),
        0.75: (-1.01533, 1.1611, 3.954),
        0.90: (-0.43996, 1.6490, 2.943),
        0.95: (-0.07853, 2.2181, -9.032),
        0.975: (0.23991, 2.2284, -5.176),
        0.99: (0.60944, 2.5542, 1.676),
    },
    "constant_and_trend": {
        0.01: (-3.95877, -9.0531, -28.428, -134.155),
        0.025: (-3.66222, -6.2479, -18.768),
        0.05: (-3.41049, -4.3904, -9.036, -45.374),
        0.10: (-3.12705, -2.5856, -3.925, -22.380),
        0.25: (-2.66892, -0.3462, -1.715),
        0.50: (-2.18041, 0.8898, 3.547),
        0.75: (-1.70421, 1.7068, 1.629),
        0.90: (-1.24686, 2.3366, 3.458),
        0.95: (-0.94153, 2.8970, 3.973),
        0.975: (-0.66221, 3.3823, 2.864),
        0.99: (-0.32777, 3.7969, 3.989),
    },
}

REPORTED_LEVELS = (0.01, 0.025, 0.05, 0.10)
MIN_CRITICAL_NOBS = 25
P_CLAMP = (0.001, 0.999)

_DET_ALIASES = {
    "none": "none", "n": "none", "nc": "none",
    "constant": "constant", "const": "constant", "c": "constant",
    "constant_and_trend": "constant_and_trend", "trend": "constant_and_trend", "ct": "constant_and_trend",
}


def parse_deterministic(s: str) -> str:
    try:
        return _DET_ALIASES[s.strip().lower()]
    except KeyError:
        raise ValueError(f"unknown deterministic spec {s!r}; use none, const or trend") from None


@dataclass(frozen=True)
class AdfSpec:
    """Deterministic terms and lag rule.

    ``lag_mode`` is ``"fixed"`` (uses ``lag``) or ``"auto"`` (minimizes
    ``criterion`` over p = 1..p_max; ``p_max=None`` means the Schwert rule).
    """

    deterministic: str = "constant"
    lag_mode: str = "auto"
    lag: int | None = None
    criterion: str = "SBC"
    p_max: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "deterministic", parse_deterministic(self.deterministic))
        object.__setattr__(self, "criterion", self.criterion.upper())
        if self.lag_mode not in ("fixed", "auto"):
            raise ValueError("lag_mode must be 'fixed' or 'auto'")
        if self.lag_mode == "fixed" and (self.lag is None or self.lag < 1):
            raise ValueError("fixed lag mode needs lag p >= 1")
        if self.criterion not in ("AIC", "SBC"):
            raise ValueError("criterion must be AIC or SBC")
        if self.p_max is not None and self.p_max < 1:
            raise ValueError("p_max must be at least 1")

    @property
    def n_deterministic(self) -> int:
        return DETERMINISTIC.index(self.deterministic)

    def lag_selection(self) -> str:
        return self.criterion if self.lag_mode == "auto" else f"fixed({self.lag})"


def parse_lag_mode(s: str) -> dict:
    """``auto:sbc``, ``auto:aic`` or ``fixed:N`` as AdfSpec keyword arguments."""
    kind, _, arg = s.strip().lower().partition(":")
    if kind == "auto":
        crit = {"": "SBC", "sbc": "SBC", "bic": "SBC", "aic": "AIC"}.get(arg)
        if crit is None:
            raise ValueError(f"unknown criterion in {s!r}")
        return {"lag_mode": "auto", "criterion": crit}
    if kind == "fixed":
        try:
            lag = int(arg)
        except ValueError:
            lag = 0
        if lag < 1:
            raise ValueError(f"bad fixed lag in {s!r}; need an integer p >= 1")
        return {"lag_mode": "fixed", "lag": lag}
    raise ValueError(f"bad lag mode {s!r}; use auto:sbc, auto:aic or fixed:N")


@dataclass(frozen=True)
class AdfResult:
    statistic: float
    gamma_hat: float
    gamma_se: float
    chosen_lag: int
    spec: AdfSpec
    critical_values: dict[str, float]
    p_value: float
    alpha: float
    reject: bool
    n_effective: int
    p_max: int | None = None
    null_hypothesis: str = "The time series has a unit root"


def _values(ts) -> np.ndarray:
    return ts.values if isinstance(ts, TimeSeries) else np.asarray(ts, dtype=float)


def build_adf_design(ts, deterministic: str, p: int, start: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Design matrix and response for the lag-``p`` ADF regression.

    Columns: y_{t-1}, dy_{t-1}..dy_{t-p+1}, then 1 and/or t. Rows run over
    the 0-based indices ``start..T-1`` (default ``start = p``, the maximal
    sample); the time trend uses the 1-based observation index.
    """
    y = _values(ts)
    det = parse_deterministic(deterministic)
    if p < 1:
        raise ValueError("p must be at least 1")
    start = p if start is None else start
    if start < p:
        raise ValueError("start must be at least p")
    t_len = y.size
    k = p + DETERMINISTIC.index(det)
    if t_len - start <= k:
        raise InputError(f"series of length {t_len} too short for an ADF regression with p={p} ({det})")
    idx = np.arange(start, t_len)
    dy = np.diff(y, prepend=np.nan)  # dy[t] = y[t] - y[t-1]
    cols = [y[idx - 1]]
    for i in range(1, p):
        cols.append(dy[idx - i])
    if det != "none":
        cols.append(np.ones(idx.size))
    if det == "constant_and_trend":
        cols.append((idx + 1).astype(float))
    return np.column_stack(cols), dy[idx]


def default_max_lag(t_len: int) -> int:
    """Schwert's rule floor(12 (T/100)^(1/4))."""
    return int(math.floor(12.0 * (t_len / 100.0) ** 0.25))


def _feasible_max_lag(t_len: int, n_det: int) -> int:
    # keep at least MIN_CRITICAL_NOBS rows beyond the parameter count
    return max(1, (t_len - n_det - MIN_CRITICAL_NOBS) // 2)


def _criterion(fit: OlsFit, criterion: str) -> float:
    return fit.aic() if criterion == "AIC" else fit.sbc()


def select_lag(ts, spec: AdfSpec | str = "constant", criterion: str = "SBC", p_max: int | None = None) -> int:
    """Lag p in 1..p_max minimizing AIC or SBC on the common sample.

    All candidates share the rows t >= p_max so the criteria are comparable;
    ties go to the smaller p.
    """
    det = spec.deterministic if isinstance(spec, AdfSpec) else parse_deterministic(spec)
    n_det = DETERMINISTIC.index(det)
    y = _values(ts)
    criterion = criterion.upper()
    if p_max is None:
        p_max = min(default_max_lag(y.size), _feasible_max_lag(y.size, n_det))
    if p_max < 1:
        raise ValueError("p_max must be at least 1")
    if y.size - p_max <= p_max + n_det:
        raise InputError(f"p_max={p_max} too large for a series of length {y.size}")
    best_p, best_ic = 1, math.inf
    for p in range(1, p_max + 1):
        x, r = build_adf_design(y, det, p, start=p_max)
        ic = _criterion(ols_fit(x, r), criterion)
        if ic < best_ic:
            best_p, best_ic = p, ic
    return best_p


def _surface_value(coefs, n: float) -> float:
    if math.isinf(n):
        return coefs[0]
    return sum(b / n ** i for i, b in enumerate(coefs))


def adf_critical_values(deterministic: str = "constant", n_effective: float = math.inf,
                        levels=REPORTED_LEVELS) -> dict[float, float]:
    """Finite-sample critical values keyed by left-tail probability."""
    det = parse_deterministic(deterministic)
    if n_effective < MIN_CRITICAL_NOBS:
        raise InputError(f"critical values need at least {MIN_CRITICAL_NOBS} regression observations")
    table = _SURFACE[det]
    out = {}
    for lvl in levels:
        if lvl not in table:
            raise ValueError(f"no response surface for level {lvl}")
        out[lvl] = _surface_value(table[lvl], n_effective)
    return out


def adf_pvalue(statistic: float, deterministic: str = "constant", n_effective: float = math.inf) -> float:
    """Left-tail p-value by interpolating the quantile grid in probit space.

    Beyond the outermost grid points the end segments are extended linearly
    and the result is clamped to [0.001, 0.999].
    """
    det = parse_deterministic(deterministic)
    grid = adf_critical_values(det, n_effective, levels=tuple(sorted(_SURFACE[det])))
    levels = np.array(list(grid))
    cvs = np.array(list(grid.values()))
    z = special.ndtri(levels)
    i = int(np.clip(np.searchsorted(cvs, statistic), 1, cvs.size - 1))
    slope = (z[i] - z[i - 1]) / (cvs[i] - cvs[i - 1])
    zhat = z[i - 1] + slope * (statistic - cvs[i - 1])
    return float(min(P_CLAMP[1], max(P_CLAMP[0], std_normal_cdf(zhat))))


def _level_key(lvl: float) -> str:
    return f"{lvl * 100:g}%"


def adf_test(ts, spec: AdfSpec | None = None, alpha: float = 0.05) -> AdfResult:
    """Left-tailed ADF test of a unit root (gamma = 0) against gamma < 0.

    In auto mode the lag is chosen on the common sample and the reported
    regression is re-fitted on the maximal sample for that lag.
    """
    spec = spec or AdfSpec()
    y = _values(ts)
    p_max = None
    if spec.lag_mode == "auto":
        p_max = spec.p_max
        if p_max is None:
            p_max = min(default_max_lag(y.size), _feasible_max_lag(y.size, spec.n_deterministic))
        p = select_lag(y, spec, spec.criterion, p_max)
    else:
        p = spec.lag
    x, r = build_adf_design(y, spec.deterministic, p)
    fit = ols_fit(x, r)
    gamma, se = float(fit.coefficients[0]), float(fit.standard_errors[0])
    if not se > 0:
        raise DegenerateTestError("ADF regression fits exactly; the statistic is undefined")
    stat = gamma / se
    n_eff = fit.n_obs
    cvs = adf_critical_values(spec.deterministic, n_eff)
    pval = adf_pvalue(stat, spec.deterministic, n_eff)
    if alpha in cvs:
        reject = stat < cvs[alpha]
    else:
        reject = pval < alpha
    return AdfResult(
        statistic=stat,
        gamma_hat=gamma,
        gamma_se=se,
        chosen_lag=p,
        spec=spec,
        critical_values={_level_key(k): v for k, v in cvs.items()},
        p_value=pval,
        alpha=alpha,
        reject=bool(reject),
        n_effective=n_eff,
        p_max=p_max,
    )
