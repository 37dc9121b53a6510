import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special, stats

from benford_emh.kernels import (
    RankDeficientError,
    chi_square_isf,
    chi_square_sf,
    kolmogorov_sf,
    ols_fit,
    regularized_gamma_q,
    std_normal_cdf,
    std_normal_sf,
)


def quad_normal_cdf(z):
    """High-precision oracle: integrate the normal density numerically."""
    mpmath.mp.dps = 30
    dens = lambda t: mpmath.exp(-t * t / 2) / mpmath.sqrt(2 * mpmath.pi)
    return float(mpmath.mpf("0.5") + mpmath.quad(dens, [0, z]))


class TestNormal:
    def test_zero(self):
        assert std_normal_cdf(0.0) == 0.5

    @pytest.mark.parametrize("z", [1.959964, -1.2, 0.3, 3.7, -5.5])
    def test_against_quadrature(self, z):
        assert std_normal_cdf(z) == pytest.approx(quad_normal_cdf(z), abs=1e-15, rel=1e-13)

    def test_975(self):
        assert std_normal_cdf(1.959964) == pytest.approx(0.975, abs=1e-7)

    def test_deep_tail_underflows_to_zero(self):
        p = 2.0 * std_normal_cdf(-74.90)
        assert p < 1e-300
        assert f"{p:.2f}" == "0.00"

    def test_sf_no_cancellation(self):
        assert std_normal_sf(10.0) == pytest.approx(stats.norm.sf(10.0), rel=1e-12)

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            std_normal_cdf(float("nan"))


class TestChiSquare:
    def test_zero(self):
        assert chi_square_sf(0.0, 8) == 1.0

    def test_published_critical_value(self):
        assert chi_square_sf(15.507, 8) == pytest.approx(0.05, abs=5e-4)
        assert chi_square_isf(0.05, 8) == pytest.approx(15.5073, abs=1e-4)

    def test_huge_statistic(self):
        p = chi_square_sf(4397.26, 8)
        assert p < 1e-300 or f"{p:.2f}" == "0.00"

    @settings(max_examples=200, deadline=None)
    @given(a=st.floats(0.1, 200.0), x=st.floats(0.0, 500.0))
    def test_gamma_q_matches_scipy(self, a, x):
        assert regularized_gamma_q(a, x) == pytest.approx(special.gammaincc(a, x), rel=1e-9, abs=1e-14)

    @pytest.mark.parametrize("df", [1, 2, 8, 30])
    def test_isf_roundtrip(self, df):
        for alpha in (0.01, 0.05, 0.5):
            assert chi_square_isf(alpha, df) == pytest.approx(stats.chi2.isf(alpha, df), rel=1e-9)

    def test_bad_args(self):
        with pytest.raises(ValueError):
            chi_square_sf(1.0, 0)
        with pytest.raises(ValueError):
            chi_square_sf(-1.0, 3)


@pytest.mark.parametrize("lam", [0.2, 0.5, 0.9, 1.0, 1.36, 2.5])
def test_kolmogorov_sf(lam):
    assert kolmogorov_sf(lam) == pytest.approx(stats.kstwobign.sf(lam), abs=1e-12)


class TestOls:
    def test_exact_fit_no_intercept(self):
        fit = ols_fit(np.array([[1.0], [2.0], [3.0]]), np.array([2.0, 4.0, 6.0]))
        assert fit.coefficients[0] == pytest.approx(2.0)
        assert fit.residual_variance == pytest.approx(0.0, abs=1e-25)

    def test_intercept_only_is_mean(self):
        fit = ols_fit(np.ones((3, 1)), np.array([1.0, 2.0, 3.0]))
        assert fit.coefficients[0] == pytest.approx(2.0)

    def test_noisy_slope(self, rng):
        x = rng.normal(size=1000)
        y = x + rng.normal(size=1000)
        fit = ols_fit(np.column_stack([x, np.ones(1000)]), y)
        assert abs(fit.coefficients[0] - 1.0) < 3 * fit.standard_errors[0]

    def test_matches_lstsq_and_statsmodels(self, rng):
        import statsmodels.api as sm

        x = np.column_stack([rng.normal(size=200), rng.normal(size=200), np.ones(200)])
        y = x @ [0.5, -1.0, 2.0] + rng.normal(size=200)
        fit = ols_fit(x, y)
        ref = sm.OLS(y, x).fit()
        np.testing.assert_allclose(fit.coefficients, ref.params, rtol=1e-10)
        np.testing.assert_allclose(fit.standard_errors, ref.bse, rtol=1e-10)
        assert fit.log_likelihood == pytest.approx(ref.llf, rel=1e-12)
        assert fit.aic() == pytest.approx(ref.aic, rel=1e-12)
        assert fit.sbc() == pytest.approx(ref.bic, rel=1e-12)

    def test_rank_deficient(self):
        x = np.column_stack([np.arange(10.0), 2 * np.arange(10.0)])
        with pytest.raises(RankDeficientError):
            ols_fit(x, np.arange(10.0))

    def test_needs_more_rows_than_columns(self):
        with pytest.raises(ValueError):
            ols_fit(np.eye(2), np.ones(2))


@settings(max_examples=200)
@given(st.floats(-40.0, 40.0))
def test_normal_symmetry(z):
    assert std_normal_cdf(z) + std_normal_cdf(-z) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("df", [1, 2, 8, 25])
def test_chi_square_sf_decreasing(df):
    xs = np.linspace(0.0, 3 * df + 20, 500)
    p = [chi_square_sf(x, df) for x in xs]
    assert all(a >= b for a, b in zip(p, p[1:]))
    # strict wherever the value is not saturated at 1 or 0 in double precision
    assert all(a > b for a, b in zip(p, p[1:]) if 1e-300 < b and a < 1 - 1e-15)


def test_ols_residuals_orthogonal(rng):
    x = np.column_stack([rng.normal(size=300) * 1e3, rng.normal(size=300), np.ones(300)])
    y = x @ [1e-3, 2.0, -5.0] + rng.normal(size=300)
    fit = ols_fit(x, y)
    scale = np.linalg.norm(x, axis=0) * np.linalg.norm(fit.residuals)
    assert np.all(np.abs(x.T @ fit.residuals) <= 1e-8 * scale)
