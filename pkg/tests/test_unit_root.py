import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from statsmodels.tsa.adfvalues import mackinnoncrit, mackinnonp
from statsmodels.tsa.stattools import adfuller

from benford_emh.generators import GeneratorConfig, generate
from benford_emh.kernels import NumericError, ols_fit
from benford_emh.timeseries import InputError
from benford_emh.unit_root import (
    AdfSpec,
    adf_critical_values,
    adf_pvalue,
    adf_test,
    build_adf_design,
    default_max_lag,
    parse_deterministic,
    parse_lag_mode,
    select_lag,
)

SM_REG = {"none": "n", "constant": "c", "constant_and_trend": "ct"}


def walk(n, seed):
    return generate(GeneratorConfig("random_walk", n, seed)).values


class TestDesign:
    def test_no_lagged_differences(self):
        x, r = build_adf_design([1.0, 3.0, 2.0, 5.0], "none", 1)
        assert x.shape == (3, 1)
        assert list(x[:, 0]) == [1.0, 3.0, 2.0]
        assert list(r) == [2.0, -1.0, 3.0]

    def test_constant_example(self):
        x, r = build_adf_design([1.0, 2.0, 3.0, 4.0], "constant", 1)
        assert list(r) == [1.0, 1.0, 1.0]
        np.testing.assert_array_equal(x, [[1.0, 1.0], [2.0, 1.0], [3.0, 1.0]])

    def test_rows_and_columns(self):
        y = np.arange(10.0) ** 2
        x, r = build_adf_design(y, "constant_and_trend", 3)
        assert x.shape == (7, 5) and r.size == 7
        t = 3  # first response is y[3] - y[2]
        assert r[0] == y[t] - y[t - 1]
        assert list(x[0]) == [y[t - 1], y[t - 1] - y[t - 2], y[t - 2] - y[t - 3], 1.0, t + 1.0]

    def test_too_short(self):
        with pytest.raises(InputError):
            build_adf_design([1.0, 2.0, 3.0], "constant", 2)


class TestAgainstStatsmodels:
    @pytest.mark.parametrize("det", ["none", "constant", "constant_and_trend"])
    @pytest.mark.parametrize("p", [1, 3])
    def test_fixed_lag(self, det, p):
        y = walk(400, 5)
        r = adf_test(y, AdfSpec(det, lag_mode="fixed", lag=p))
        ref = adfuller(y, maxlag=p - 1, regression=SM_REG[det], autolag=None)
        assert r.statistic == pytest.approx(ref[0], rel=1e-10)
        assert r.n_effective == ref[3]

    @pytest.mark.parametrize("seed", [0, 1, 2])
    @pytest.mark.parametrize("crit,sm", [("SBC", "BIC"), ("AIC", "AIC")])
    def test_auto_lag(self, seed, crit, sm):
        rng = np.random.default_rng(seed)
        e = rng.normal(size=801)
        y = np.cumsum(e[1:] + 0.6 * e[:-1])
        r = adf_test(y, AdfSpec("constant", criterion=crit))
        ref = adfuller(y, regression="c", autolag=sm)
        assert r.chosen_lag - 1 == ref[2]
        assert r.statistic == pytest.approx(ref[0], rel=1e-10)

    @pytest.mark.parametrize("det", ["none", "constant", "constant_and_trend"])
    @pytest.mark.parametrize("n", [50, 200, 1000])
    def test_critical_values(self, det, n):
        ours = adf_critical_values(det, n, (0.01, 0.05, 0.10))
        ref = mackinnoncrit(1, SM_REG[det], n)
        np.testing.assert_allclose(list(ours.values()), ref, atol=2e-3)

    @pytest.mark.parametrize("det", ["none", "constant", "constant_and_trend"])
    def test_pvalue_tracks_mackinnon(self, det):
        for stat in np.linspace(-4.5, -1.0, 30):
            ours = adf_pvalue(stat, det)
            ref = mackinnonp(stat, SM_REG[det])
            assert abs(ours - ref) < 0.01 + 0.02 * ref


class TestCriticalValues:
    @pytest.mark.parametrize("det,cv", [("constant", -2.86), ("constant_and_trend", -3.41), ("none", -1.94)])
    def test_asymptotic_five_percent(self, det, cv):
        assert adf_critical_values(det, math.inf)[0.05] == pytest.approx(cv, abs=0.01)

    def test_too_few_obs(self):
        with pytest.raises(InputError):
            adf_critical_values("constant", 20)

    def test_pvalue_published_statistic(self):
        p = adf_pvalue(-3.27, "constant", 5000)
        assert 0.01 <= p <= 0.05
        assert p == pytest.approx(0.03, abs=0.015)

    def test_pvalue_clamped_and_monotone(self):
        grid = np.linspace(-20, 10, 400)
        p = [adf_pvalue(s) for s in grid]
        assert p[0] == 0.001 and p[-1] == 0.999
        assert all(a <= b for a, b in zip(p, p[1:]))

    def test_pvalue_at_grid_points(self):
        cv = adf_critical_values("constant", 500, (0.01, 0.025, 0.05, 0.10))
        for level, value in cv.items():
            assert adf_pvalue(value, "constant", 500) == pytest.approx(level, rel=1e-9)


class TestSelectLag:
    def test_single_candidate(self):
        assert select_lag(walk(200, 1), "constant", "SBC", p_max=1) == 1

    def test_random_walk_mostly_lag_one(self):
        ones = sum(select_lag(walk(2000, s), "constant") == 1 for s in range(200))
        assert ones > 100

    def test_ma_noise_needs_lags(self):
        rng = np.random.default_rng(3)
        e = rng.normal(size=2001)
        y = np.cumsum(e[1:] - 0.7 * e[:-1])
        assert select_lag(y, "constant") > 1

    def test_schwert(self):
        assert default_max_lag(100) == 12 and default_max_lag(5757) == 33

    def test_p_max_too_large(self):
        with pytest.raises(InputError):
            select_lag(walk(30, 0), "constant", p_max=20)


class TestAdfTest:
    def test_statistic_is_ratio(self):
        r = adf_test(walk(500, 2))
        assert r.statistic == pytest.approx(r.gamma_hat / r.gamma_se)
        assert r.reject == (r.statistic < r.critical_values["5%"])
        assert set(r.critical_values) == {"1%", "2.5%", "5%", "10%"}

    def test_auto_equals_fixed_at_chosen_lag(self):
        y = walk(600, 8)
        auto = adf_test(y)
        fixed = adf_test(y, AdfSpec(lag_mode="fixed", lag=auto.chosen_lag))
        assert auto.statistic == fixed.statistic

    def test_direct_ols(self):
        y = walk(300, 4)
        x, r = build_adf_design(y, "constant", 2)
        fit = ols_fit(x, r)
        res = adf_test(y, AdfSpec(lag_mode="fixed", lag=2))
        assert res.statistic == pytest.approx(fit.coefficients[0] / fit.standard_errors[0], rel=1e-12)

    def test_white_noise_rejected(self):
        y = generate(GeneratorConfig("ar1", 1000, 0)).values
        assert adf_test(y).reject

    def test_constant_series(self):
        with pytest.raises(NumericError):
            adf_test(np.full(100, 3.0))

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10_000), st.floats(0.01, 1000.0), st.floats(-1e4, 1e4))
    def test_scale_and_shift_invariance(self, seed, c, b):
        y = walk(120, seed)
        spec = AdfSpec(lag_mode="fixed", lag=2)
        base = adf_test(y, spec).statistic
        assert adf_test(c * y, spec).statistic == pytest.approx(base, abs=1e-8, rel=1e-8)
        assert adf_test(y + b, spec).statistic == pytest.approx(base, abs=1e-8, rel=1e-8)


class TestParsing:
    @pytest.mark.parametrize("s,det", [("const", "constant"), ("c", "constant"), ("trend", "constant_and_trend"),
                                       ("none", "none"), ("nc", "none")])
    def test_deterministic(self, s, det):
        assert parse_deterministic(s) == det

    def test_lag_mode(self):
        assert parse_lag_mode("auto:aic") == {"lag_mode": "auto", "criterion": "AIC"}
        assert parse_lag_mode("fixed:4") == {"lag_mode": "fixed", "lag": 4}
        for bad in ("fixed:0", "auto:hq", "x"):
            with pytest.raises(ValueError):
                parse_lag_mode(bad)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            AdfSpec(lag_mode="fixed")
        assert AdfSpec().lag_selection() == "SBC"
