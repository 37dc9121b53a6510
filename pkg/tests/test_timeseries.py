import datetime as dt
import io

import numpy as np
import pytest

from benford_emh.timeseries import (
    InputError,
    TimeSeries,
    detect_gaps,
    load_csv,
    read_csv_text,
    summarize,
    write_csv,
)


def brute_moments(x):
    n = len(x)
    mean = sum(x) / n
    m2 = sum((v - mean) ** 2 for v in x) / n
    m3 = sum((v - mean) ** 3 for v in x) / n
    m4 = sum((v - mean) ** 4 for v in x) / n
    return m3 / m2 ** 1.5, m4 / m2 ** 2


class TestTimeSeries:
    def test_values_read_only(self):
        ts = TimeSeries([1.0, 2.0])
        with pytest.raises(ValueError):
            ts.values[0] = 5.0

    def test_rejects_non_finite(self):
        with pytest.raises(InputError, match="index 1"):
            TimeSeries([1.0, float("inf")])

    def test_dates_must_increase(self):
        d = dt.date(2020, 1, 1)
        with pytest.raises(InputError):
            TimeSeries([1.0, 2.0], (d, d))

    def test_slice_and_diff(self):
        ts = TimeSeries([1.0, 4.0, 9.0, 16.0])
        assert list(ts.slice(1, 3).values) == [4.0, 9.0]
        assert list(ts.diff().values) == [3.0, 5.0, 7.0]


class TestCsv:
    def test_two_rows(self):
        ts, rep = read_csv_text("Close\n2005.85\n1952.63\n", "Close")
        assert len(ts) == 2 and rep.rows_dropped == 0
        assert ts.values[0] == 2005.85

    def test_blank_cell_dropped(self):
        rows = ["Close"] + ["1.5"] * 4 + [""] + ["2.5"] * 5
        ts, rep = read_csv_text("\n".join(rows) + "\n", "Close")
        assert len(ts) == 9 and rep.rows_dropped == 1 and rep.rows_read == 10

    def test_thousands_separator_and_bom(self):
        ts, _ = read_csv_text('﻿Date,Close\n2020-01-02,"1,234.5"\n', "Close", "Date")
        assert ts.values[0] == 1234.5

    def test_missing_column(self):
        with pytest.raises(InputError, match="Price"):
            read_csv_text("Close\n1\n", "Price")

    def test_european_dates(self):
        ts, rep = read_csv_text("Date,Close\n03.01.2020,1\n06.01.2020,2\n", "Close", "Date")
        assert ts.dates == (dt.date(2020, 1, 3), dt.date(2020, 1, 6))
        assert rep.gap_count == 0

    def test_roundtrip(self, tmp_path, rng):
        dates = tuple(dt.date(2021, 1, 1) + dt.timedelta(days=i) for i in range(50))
        ts = TimeSeries(rng.lognormal(size=50) * 100, dates)
        path = tmp_path / "s.csv"
        with path.open("w", newline="") as fh:
            write_csv(ts, fh)
        back, rep = load_csv(path, "value", "date")
        np.testing.assert_array_equal(back.values, ts.values)
        assert back.dates == ts.dates
        assert not rep.gap_audit_skipped

    def test_no_dates_skips_audit(self, tmp_path):
        path = tmp_path / "v.csv"
        path.write_text("value\n1\n2\n")
        _, rep = load_csv(path, "value")
        assert rep.gap_audit_skipped

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError):
            load_csv(tmp_path / "nope.csv", "value")


class TestSummary:
    def test_symmetric_triple(self):
        s = summarize([1.0, 2.0, 3.0])
        assert (s.mean, s.median, s.std_dev) == pytest.approx((2.0, 2.0, 1.0))

    def test_moments_against_brute_force(self):
        s = summarize([0.0, 0.0, 0.0, 4.0])
        assert s.skewness == pytest.approx(1.1547, abs=1e-4)
        assert s.kurtosis == pytest.approx(2.3333, abs=1e-4)
        skew, kurt = brute_moments([0.0, 0.0, 0.0, 4.0])
        assert (s.skewness, s.kurtosis) == pytest.approx((skew, kurt), rel=1e-12)

    def test_random_against_brute_force(self, rng):
        x = list(rng.gamma(2.0, size=300))
        s = summarize(x)
        assert (s.skewness, s.kurtosis) == pytest.approx(brute_moments(x), rel=1e-10)
        assert (s.max, s.min) == (max(x), min(x))


def _series(*days):
    base = dt.date(2024, 1, 1)  # a Monday
    return TimeSeries(np.ones(len(days)), tuple(base + dt.timedelta(days=d) for d in days))


@pytest.mark.parametrize("days,gaps", [
    ((0, 1), 0),      # Mon -> Tue
    ((4, 7), 0),      # Fri -> Mon
    ((4, 11), 1),     # Fri -> next Fri
    ((0, 1, 9, 10, 30), 2),
])
def test_gap_detection(days, gaps):
    rep = detect_gaps(_series(*days))
    assert rep.gap_count == gaps
    assert len(rep.gap_spans) == gaps
