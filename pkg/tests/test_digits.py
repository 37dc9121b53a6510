import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from benford_emh.digits import (
    DigitHistogram,
    benford_expected,
    benford_probabilities,
    chi_square_gof,
    digit_histogram,
    first_digits,
    first_significant_digit,
    uniform_expected,
)
from benford_emh.timeseries import TimeSeries

PUBLISHED_COUNTS = (2695, 2396, 397, 0, 10, 45, 52, 139, 23)


def digit_by_string(v):
    """Oracle: first nonzero character of the scientific representation."""
    return int(f"{abs(v):.15e}"[0])


@pytest.mark.parametrize("v,d", [(2005.85, 2), (577.90, 5), (0.0046, 4), (1.0, 1), (9.99, 9),
                                 (1000.0, 1), (1e-300, 1), (-37.0, 3), (0.1, 1), (999.9999999, 9)])
def test_first_digit_examples(v, d):
    assert first_significant_digit(v) == d


@pytest.mark.parametrize("v", [0.0, float("nan"), float("inf")])
def test_first_digit_rejects(v):
    with pytest.raises(ValueError):
        first_significant_digit(v)


@settings(max_examples=300)
@given(st.floats(min_value=1e-200, max_value=1e200))
def test_first_digit_matches_string_oracle(v):
    assert first_significant_digit(v) == digit_by_string(v)


@settings(max_examples=100)
@given(st.floats(min_value=1e-100, max_value=1e100), st.integers(-20, 20))
def test_scale_invariance_by_powers_of_ten(v, k):
    w = v * 10.0 ** k
    if 1e-300 < w < 1e300 and digit_by_string(w) == digit_by_string(v):
        assert first_significant_digit(w) == first_significant_digit(v)


def test_vectorized_agrees(rng):
    x = rng.lognormal(0, 5, size=2000)
    assert list(first_digits(x)) == [first_significant_digit(v) for v in x]


class TestHistogram:
    def test_powers_of_ten(self):
        assert digit_histogram(TimeSeries([1.0, 10.0, 100.0])).count(1) == 3

    def test_small_example(self):
        h = digit_histogram([1.5, 2.5, 3.5, 2.1])
        assert h.counts[:3] == (1, 2, 1) and h.total == 4

    def test_error_names_index(self):
        with pytest.raises(ValueError, match="index 2"):
            digit_histogram([1.0, 2.0, -3.0])

    def test_addition(self):
        a = DigitHistogram.from_counts([1] * 9)
        assert (a + a).total == 18

    def test_inconsistent_total(self):
        with pytest.raises(ValueError):
            DigitHistogram((1,) * 9, 10)


class TestExpected:
    def test_probabilities_table(self):
        want = (0.3010, 0.1761, 0.1249, 0.0969, 0.0792, 0.0669, 0.0580, 0.0512, 0.0458)
        assert [round(p, 4) for p in benford_probabilities()] == list(want)

    def test_sum_to_one(self):
        assert math.fsum(benford_probabilities()) == pytest.approx(1.0, abs=1e-15)

    def test_benford_5757_published_table(self):
        e = benford_expected(5757, decimals=4)
        assert e.counts[0] == pytest.approx(1732.86, abs=0.01)
        assert e.counts[8] == pytest.approx(263.68, abs=0.01)
        assert math.fsum(e.probabilities) == pytest.approx(1.0, abs=1e-12)

    def test_benford_5757_exact(self):
        e = benford_expected(5757)
        assert e.counts[0] == pytest.approx(5757 * math.log10(2.0), rel=1e-15)
        assert max(abs(a - b) for a, b in zip(e.counts, benford_expected(5757, 4).counts)) < 0.3

    def test_uniform(self):
        assert uniform_expected(9).counts == (1.0,) * 9
        assert uniform_expected(5757).counts[0] == pytest.approx(639.66, abs=0.01)


class TestGof:
    def test_perfect_fit(self):
        e = benford_expected(10000)
        h = DigitHistogram.from_counts(round(c) for c in e.counts)
        g = chi_square_gof(h, e)
        assert g.statistic < 0.01 and not g.reject

    def test_published_benford_gof(self):
        h = DigitHistogram.from_counts(PUBLISHED_COUNTS)
        g = chi_square_gof(h, benford_expected(h.total))
        assert g.statistic == pytest.approx(4397.26, abs=1.0)
        assert g.reject and g.df == 8
        assert g.critical_value == pytest.approx(15.507, abs=0.005)

    def test_published_uniform_gof(self):
        h = DigitHistogram.from_counts(PUBLISHED_COUNTS)
        g = chi_square_gof(h, uniform_expected(h.total))
        assert g.statistic == pytest.approx(14857.1, abs=1.0) and g.reject

    def test_rows_sum_to_statistic(self):
        h = DigitHistogram.from_counts(PUBLISHED_COUNTS)
        g = chi_square_gof(h, benford_expected(h.total))
        assert math.fsum(r.contribution for r in g.per_digit) == pytest.approx(g.statistic, rel=1e-12)
        assert all(r.deviation == pytest.approx(r.actual - r.expected) for r in g.per_digit)

    def test_matches_scipy(self, rng):
        from scipy import stats

        h = digit_histogram(rng.lognormal(3, 2, size=3000))
        e = benford_expected(h.total)
        g = chi_square_gof(h, e)
        ref = stats.chisquare(h.counts, e.counts)
        assert g.statistic == pytest.approx(ref.statistic, rel=1e-12)
        assert g.p_value == pytest.approx(ref.pvalue, rel=1e-8, abs=1e-15)

    def test_total_mismatch(self):
        with pytest.raises(ValueError):
            chi_square_gof(DigitHistogram.from_counts([1] * 9), benford_expected(10))
