"""Shared numerical primitives: reference CDFs and least-squares fitting."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg, optimize, special

__all__ = [
    "OlsFit",
    "NumericError",
    "RankDeficientError",
    "DegenerateTestError",
    "std_normal_cdf",
    "std_normal_cdf_array",
    "std_normal_sf",
    "regularized_gamma_q",
    "chi_square_sf",
    "chi_square_isf",
    "kolmogorov_sf",
    "ols_fit",
]

_SQRT2 = math.sqrt(2.0)


class NumericError(ValueError):
    """A computation is undefined for the given data (degenerate input)."""


class RankDeficientError(NumericError):
    """Raised when a regression design does not have full column rank."""


class DegenerateTestError(NumericError):
    """The data make a test statistic undefined (no variation, empty class, ...)."""


def std_normal_cdf(z: float) -> float:
    """Standard normal CDF, accurate to ~1e-16 absolute across the real line."""
    z = float(z)
    if not math.isfinite(z):
        raise ValueError(f"z must be finite, got {z}")
    return 0.5 * math.erfc(-z / _SQRT2)


def std_normal_sf(z: float) -> float:
    """Upper tail ``1 - Phi(z)`` without cancellation."""
    return 0.5 * math.erfc(float(z) / _SQRT2)


def std_normal_cdf_array(z) -> np.ndarray:
    z = np.asarray(z, dtype=float)
    return 0.5 * special.erfc(-z / _SQRT2)


# Incomplete gamma: power series below a+1, Lentz continued fraction above.
_GAMMA_EPS = 1e-15
_GAMMA_MAXITER = 10_000
_TINY = 1e-300


def _gamma_p_series(a: float, x: float) -> float:
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(_GAMMA_MAXITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _GAMMA_EPS:
            break
    else:
        raise ArithmeticError("incomplete gamma series did not converge")
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gamma_q_contfrac(a: float, x: float) -> float:
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _GAMMA_MAXITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _GAMMA_EPS:
            break
    else:
        raise ArithmeticError("incomplete gamma continued fraction did not converge")
    return math.exp(-x + a * math.log(x) - math.lgamma(a)) * h


def regularized_gamma_q(a: float, x: float) -> float:
    """Regularized upper incomplete gamma function Q(a, x)."""
    if a <= 0:
        raise ValueError("a must be positive")
    if x < 0:
        raise ValueError("x must be non-negative")
    if x == 0:
        return 1.0
    if x < a + 1.0:
        return max(0.0, 1.0 - _gamma_p_series(a, x))
    return _gamma_q_contfrac(a, x)


def chi_square_sf(x: float, df: int) -> float:
    """Upper-tail probability of a chi-square variate with ``df`` degrees of freedom."""
    if df <= 0:
        raise ValueError("df must be a positive integer")
    if x < 0:
        raise ValueError("x must be non-negative")
    return regularized_gamma_q(df / 2.0, x / 2.0)


def chi_square_isf(alpha: float, df: int) -> float:
    """Critical value ``c`` with ``chi_square_sf(c, df) == alpha``."""
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    hi = float(df) + 10.0 * math.sqrt(2.0 * df) + 50.0
    while chi_square_sf(hi, df) > alpha:
        hi *= 2.0
    return optimize.brentq(lambda c: chi_square_sf(c, df) - alpha, 0.0, hi, xtol=1e-12, rtol=1e-14)


def kolmogorov_sf(lam: float) -> float:
    """Survival function of the limiting Kolmogorov distribution, P(K > lam)."""
    return float(special.kolmogorov(max(float(lam), 0.0)))


@dataclass(frozen=True)
class OlsFit:
    coefficients: np.ndarray
    standard_errors: np.ndarray
    residual_variance: float
    log_likelihood: float
    ssr: float
    n_obs: int
    n_params: int
    residuals: np.ndarray

    def aic(self) -> float:
        return -2.0 * self.log_likelihood + 2.0 * self.n_params

    def sbc(self) -> float:
        return -2.0 * self.log_likelihood + self.n_params * math.log(self.n_obs)


def ols_fit(design, response, rcond: float = 1e-10) -> OlsFit:
    """Least squares via a QR decomposition of the design matrix.

    Standard errors use ``residual_variance = SSR / (n_obs - n_params)``; the
    stored Gaussian log-likelihood is ``-(n/2)(ln 2pi + ln(SSR/n) + 1)``.

    Raises
    ------
    RankDeficientError
        If a diagonal entry of R is negligible relative to the largest one.
    """
    x = np.asarray(design, dtype=float)
    y = np.asarray(response, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    n, k = x.shape
    if y.shape != (n,):
        raise ValueError(f"response has shape {y.shape}, expected ({n},)")
    if n <= k:
        raise ValueError(f"need n_obs > n_params, got {n} <= {k}")
    q, r = linalg.qr(x, mode="economic")
    diag = np.abs(np.diag(r))
    if diag.min() <= rcond * max(diag.max(), 1.0):
        raise RankDeficientError("design matrix is rank deficient")
    coef = linalg.solve_triangular(r, q.T @ y)
    resid = y - x @ coef
    ssr = float(resid @ resid)
    sigma2 = ssr / (n - k)
    rinv = linalg.solve_triangular(r, np.eye(k))
    xtx_inv_diag = np.sum(rinv * rinv, axis=1)
    se = np.sqrt(sigma2 * xtx_inv_diag)
    if ssr > 0:
        loglik = -(n / 2.0) * (math.log(2.0 * math.pi) + math.log(ssr / n) + 1.0)
    else:
        loglik = math.inf
    return OlsFit(
        coefficients=coef,
        standard_errors=se,
        residual_variance=sigma2,
        log_likelihood=loglik,
        ssr=ssr,
        n_obs=n,
        n_params=k,
        residuals=resid,
    )
