"""First significant digits, Benford and uniform references, chi-square GOF."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .kernels import chi_square_isf, chi_square_sf
from .timeseries import InputError, TimeSeries

__all__ = [
    "DIGITS",
    "DigitHistogram",
    "ExpectedCounts",
    "DigitRow",
    "GofResult",
    "first_significant_digit",
    "first_digits",
    "digit_histogram",
    "benford_probabilities",
    "benford_expected",
    "uniform_expected",
    "chi_square_gof",
]

DIGITS = tuple(range(1, 10))


@dataclass(frozen=True)
class DigitHistogram:
    counts: tuple[int, ...]
    total: int

    def __post_init__(self):
        if len(self.counts) != 9:
            raise ValueError("a digit histogram has exactly 9 counts")
        if any(c < 0 for c in self.counts):
            raise ValueError("digit counts must be non-negative")
        if sum(self.counts) != self.total:
            raise ValueError(f"counts sum to {sum(self.counts)}, total says {self.total}")

    @classmethod
    def from_counts(cls, counts) -> "DigitHistogram":
        counts = tuple(int(c) for c in counts)
        return cls(counts, sum(counts))

    def count(self, digit: int) -> int:
        return self.counts[digit - 1]

    def __add__(self, other: "DigitHistogram") -> "DigitHistogram":
        return DigitHistogram.from_counts(a + b for a, b in zip(self.counts, other.counts))


@dataclass(frozen=True)
class ExpectedCounts:
    probabilities: tuple[float, ...]
    counts: tuple[float, ...]
    total: int
    reference: str  # "benford" | "uniform"


@dataclass(frozen=True)
class DigitRow:
    digit: int
    expected: float
    actual: int
    expected_share: float
    actual_share: float
    deviation: float
    contribution: float


@dataclass(frozen=True)
class GofResult:
    reference: str
    statistic: float
    df: int
    alpha: float
    critical_value: float
    p_value: float
    per_digit: tuple[DigitRow, ...]
    reject: bool
    total: int


_POW10 = np.array([float(10 ** k) for k in range(23)])  # exactly representable


def _digit_from_repr(a: float) -> int:
    return int(repr(a).lstrip("0.")[0])


def first_digits(values) -> np.ndarray:
    """Leading nonzero decimal digit of each ``|v|``, vectorized.

    The value is scaled into [1, 10) by an exactly representable power of
    ten, multiplying for negative exponents, so inputs such as 0.6 give 6
    rather than the 5 that ``0.6 / 10**-1`` would produce.
    """
    a = np.abs(np.asarray(values, dtype=float))
    if a.size and (np.any(a == 0) or not np.all(np.isfinite(a))):
        raise ValueError("first significant digit undefined for zero or non-finite values")
    e = np.floor(np.log10(a)).astype(np.int64)
    exact = np.abs(e) <= 22
    ee = np.where(exact, e, 0)
    scaled = np.where(ee >= 0, a / _POW10[np.abs(ee)], a * _POW10[np.abs(ee)])
    scaled[~exact] = 1.0
    d = np.floor(scaled).astype(np.int64)
    # log10 can land one off on power-of-ten boundaries
    d[d >= 10] = 1
    d[d == 0] = 9
    for i in np.flatnonzero(~exact):
        d[i] = _digit_from_repr(float(a[i]))
    return d


def first_significant_digit(v: float) -> int:
    """Leading nonzero decimal digit of ``|v|``.

    >>> first_significant_digit(2005.85), first_significant_digit(0.0046)
    (2, 4)
    """
    v = float(v)
    if v == 0.0 or not math.isfinite(v):
        raise ValueError(f"first significant digit undefined for {v!r}")
    return int(first_digits([v])[0])


def digit_histogram(ts: TimeSeries) -> DigitHistogram:
    """Count first significant digits; every value must be strictly positive."""
    x = ts.values if isinstance(ts, TimeSeries) else np.asarray(ts, dtype=float)
    bad = np.flatnonzero(~(x > 0))
    if bad.size:
        i = int(bad[0])
        raise InputError(f"digit analysis needs positive values; index {i} holds {x[i]!r}")
    counts = np.bincount(first_digits(x), minlength=10)[1:]
    return DigitHistogram(tuple(int(c) for c in counts), int(x.size))


def benford_probabilities(decimals: int | None = None) -> tuple[float, ...]:
    """P(d) = log10(1 + 1/d) for d = 1..9, optionally rounded.

    ``decimals=4`` gives the four-place table that printed expected counts
    are usually built from (0.3010, 0.1761, ...); those still sum to 1.
    """
    p = tuple(math.log10(1.0 + 1.0 / d) for d in DIGITS)
    return p if decimals is None else tuple(round(q, decimals) for q in p)


def benford_expected(total: int, decimals: int | None = None) -> ExpectedCounts:
    if total < 1:
        raise ValueError("total must be at least 1")
    p = benford_probabilities(decimals)
    return ExpectedCounts(p, tuple(total * q for q in p), int(total), "benford")


def uniform_expected(total: int) -> ExpectedCounts:
    if total < 1:
        raise ValueError("total must be at least 1")
    p = (1.0 / 9.0,) * 9
    return ExpectedCounts(p, tuple(total * q for q in p), int(total), "uniform")


def chi_square_gof(hist: DigitHistogram, expected: ExpectedCounts, alpha: float = 0.05) -> GofResult:
    """Pearson chi-square of observed first-digit counts against a reference (df = 8).

    The null is rejected when the statistic exceeds the upper-``alpha``
    chi-square quantile, which is computed rather than tabulated.
    """
    if hist.total != expected.total or hist.total <= 0:
        raise ValueError(f"histogram total {hist.total} does not match expected total {expected.total}")
    rows = []
    stat = 0.0
    for d, obs, exp, p in zip(DIGITS, hist.counts, expected.counts, expected.probabilities):
        dev = obs - exp
        contrib = dev * dev / exp
        stat += contrib
        rows.append(DigitRow(d, exp, obs, p, obs / hist.total, dev, contrib))
    df = 8
    crit = chi_square_isf(alpha, df)
    return GofResult(
        reference=expected.reference,
        statistic=stat,
        df=df,
        alpha=alpha,
        critical_value=crit,
        p_value=chi_square_sf(stat, df),
        per_digit=tuple(rows),
        reject=stat > crit,
        total=hist.total,
    )
