"""IID randomness tests: Wald-Wolfowitz runs test and the BDS test.

The BDS kernel builds one boolean closeness matrix for the 1-dimensional
series and carries the joint indicator from dimension m to m+1 by a shifted
elementwise AND, so every dimension costs one O(T^2) pass. All pair counts are
integers, which keeps the result reproducible bit for bit.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .kernels import DegenerateTestError, std_normal_sf
from .timeseries import InputError, TimeSeries

__all__ = [
    "RunsResult",
    "EpsilonMethod",
    "PairCounts",
    "BdsRow",
    "BdsResult",
    "DegenerateTestError",
    "runs_statistics",
    "runs_test",
    "parse_epsilon_method",
    "select_epsilon",
    "closeness_matrix",
    "pair_counts",
    "correlation_integral",
    "bds_variance",
    "bds_test",
]

BDS_MIN_LENGTH = 500
RUNS_MIN_LENGTH = 10
_BLOCK_ROWS = 512


def _values(ts) -> np.ndarray:
    return ts.values if isinstance(ts, TimeSeries) else np.asarray(ts, dtype=float)


# -- runs test ---------------------------------------------------------------


@dataclass(frozen=True)
class RunsResult:
    cutoff_policy: str
    cutoff: float
    n1: int  # above the cutoff
    n2: int  # below the cutoff
    ties_dropped: int
    runs: int
    expected_runs: float
    variance: float
    z: float
    p_value: float
    alpha: float
    reject: bool
    paper_variance: bool = False


def runs_statistics(n1: int, n2: int, runs: int, paper_variance: bool = False) -> tuple[float, float, float]:
    """Expected runs, runs variance and the standardized Z for given counts.

    ``paper_variance=True`` adds 1 to the Wald-Wolfowitz variance, the form
    printed in some applied write-ups; the default is the textbook variance.
    """
    if n1 <= 0 or n2 <= 0:
        raise DegenerateTestError(f"runs test needs both classes non-empty (n1={n1}, n2={n2})")
    n = n1 + n2
    prod = 2.0 * n1 * n2
    expected = prod / n + 1.0
    var = prod * (prod - n) / (n * n * (n - 1.0))
    if paper_variance:
        var += 1.0
    if var <= 0:
        raise DegenerateTestError("runs variance is zero")
    z = (runs - expected) / math.sqrt(var)
    return expected, var, z


def _resolve_cutoff(x: np.ndarray, cutoff) -> tuple[str, float]:
    if isinstance(cutoff, str):
        key = cutoff.lower()
        if key == "mean":
            return "mean", float(np.mean(x))
        if key == "median":
            return "median", float(np.median(x))
        if key.startswith("value:"):
            return "value", float(key.split(":", 1)[1])
        raise ValueError(f"unknown cutoff policy {cutoff!r}; use mean, median or value:V")
    return "value", float(cutoff)


def runs_test(ts, cutoff="mean", alpha: float = 0.05, paper_variance: bool = False) -> RunsResult:
    """Two-sided runs test above/below a cutoff.

    Observations equal to the cutoff are dropped before runs are counted.
    Fewer than 10 observations still give a result, with a warning.
    """
    x = _values(ts)
    if x.size < 2:
        raise InputError(f"runs test needs at least 2 observations, got {x.size}")
    if x.size < RUNS_MIN_LENGTH:
        warnings.warn(f"runs test normal approximation is poor below {RUNS_MIN_LENGTH} observations; "
                      f"got {x.size}", UserWarning, stacklevel=2)
    policy, c = _resolve_cutoff(x, cutoff)
    keep = x != c
    signs = x[keep] > c
    n1 = int(np.count_nonzero(signs))
    n2 = int(signs.size - n1)
    if n1 == 0 or n2 == 0:
        raise DegenerateTestError(
            f"degenerate dichotomy around cutoff {c!r}: {n1} above, {n2} below"
        )
    runs = 1 + int(np.count_nonzero(signs[1:] != signs[:-1]))
    expected, var, z = runs_statistics(n1, n2, runs, paper_variance)
    p = min(1.0, 2.0 * std_normal_sf(abs(z)))
    return RunsResult(
        cutoff_policy=policy,
        cutoff=c,
        n1=n1,
        n2=n2,
        ties_dropped=int(x.size - signs.size),
        runs=runs,
        expected_runs=expected,
        variance=var,
        z=z,
        p_value=p,
        alpha=alpha,
        reject=p < alpha,
        paper_variance=paper_variance,
    )


# -- epsilon selection -------------------------------------------------------


@dataclass(frozen=True)
class EpsilonMethod:
    kind: str  # "fraction_of_pairs" | "std_multiple" | "raw"
    value: float

    def __post_init__(self):
        if self.kind not in ("fraction_of_pairs", "std_multiple", "raw"):
            raise ValueError(f"unknown epsilon method {self.kind!r}")
        if not math.isfinite(self.value) or self.value <= 0:
            raise ValueError(f"{self.kind} parameter must be positive, got {self.value}")
        if self.kind == "fraction_of_pairs" and self.value > 1.0:
            raise ValueError("pair fraction must lie in (0, 1]")

    def __str__(self) -> str:
        return f"{self.kind}({self.value:g})"


_EPS_ALIASES = {
    "fraction": "fraction_of_pairs",
    "pairs": "fraction_of_pairs",
    "fraction_of_pairs": "fraction_of_pairs",
    "std": "std_multiple",
    "std_multiple": "std_multiple",
    "raw": "raw",
}


def parse_epsilon_method(spec: str | EpsilonMethod) -> EpsilonMethod:
    """Parse ``"fraction:0.7"``, ``"std:1.5"`` or ``"raw:993.1419"``."""
    if isinstance(spec, EpsilonMethod):
        return spec
    name, sep, val = spec.partition(":")
    kind = _EPS_ALIASES.get(name.strip().lower())
    try:
        value = float(val)
    except ValueError:
        value = None
    if kind is None or not sep or value is None:
        raise ValueError(f"bad epsilon method {spec!r}; expected fraction:Q, std:K or raw:V")
    return EpsilonMethod(kind, value)


def _count_pairs_within(xs: np.ndarray, v: float) -> int:
    """Number of pairs i<j of sorted ``xs`` with ``xs[j] - xs[i] <= v``."""
    n = xs.size
    idx = np.arange(n)
    lo = idx + 1
    hi = np.full(n, n)
    while True:
        active = lo < hi
        if not active.any():
            break
        mid = (lo + hi) // 2
        ok = (xs[np.minimum(mid, n - 1)] - xs) <= v
        lo = np.where(active & ok, mid + 1, lo)
        hi = np.where(active & ~ok, mid, hi)
    return int(np.sum(lo - idx - 1))


def _kth_pair_distance(x: np.ndarray, k: int) -> float:
    """k-th smallest (1-based) pairwise absolute difference, found by bisection."""
    xs = np.sort(x)
    lo = 0
    hi = int(np.float64(xs[-1] - xs[0]).view(np.int64))
    # non-negative doubles order like their int64 bit patterns
    while lo < hi:
        mid = (lo + hi) // 2
        if _count_pairs_within(xs, float(np.int64(mid).view(np.float64))) >= k:
            hi = mid
        else:
            lo = mid + 1
    return float(np.int64(lo).view(np.float64))


def select_epsilon(ts, method: str | EpsilonMethod = "fraction:0.7") -> float:
    """Distance threshold for the BDS indicator.

    ``fraction_of_pairs(q)`` returns the smallest epsilon for which at least a
    fraction ``q`` of pairs lie strictly closer than epsilon.
    ``std_multiple(k)`` is ``k`` times the sample standard deviation (n-1).
    """
    m = parse_epsilon_method(method)
    x = _values(ts)
    if x.size < 2:
        raise InputError("epsilon selection needs at least 2 observations")
    if m.kind == "raw":
        return float(m.value)
    if m.kind == "std_multiple":
        return float(m.value * np.std(x, ddof=1))
    q = m.value
    npairs = x.size * (x.size - 1) // 2
    k = max(1, math.ceil(q * npairs))
    if k > 1 and (k - 1) / npairs >= q:
        k -= 1
    return float(np.nextafter(_kth_pair_distance(x, k), np.inf))


# -- correlation integrals ----------------------------------------------------


def closeness_matrix(x, eps: float) -> np.ndarray:
    """Boolean matrix ``|x_i - x_j| < eps`` (diagonal true), built in row blocks."""
    x = np.asarray(x, dtype=float)
    n = x.size
    out = np.empty((n, n), dtype=bool)
    for r0 in range(0, n, _BLOCK_ROWS):
        r1 = min(n, r0 + _BLOCK_ROWS)
        np.less(np.abs(x[r0:r1, None] - x[None, :]), eps, out=out[r0:r1])
    return out


@dataclass(frozen=True)
class PairCounts:
    """Integer pair counts behind every correlation integral of one series.

    ``joint[m-1]`` counts pairs s<t of m-histories that are close in every
    coordinate; ``trailing[m-1]`` counts close pairs of single observations
    among the last ``T - m + 1`` points (the sample matching dimension m).
    ``neighbor_pairs`` is the sum over t of n_t (n_t - 1) with n_t the number
    of other observations within epsilon of x_t.
    """

    length: int
    eps: float
    joint: tuple[int, ...]
    trailing: tuple[int, ...]
    neighbor_pairs: int

    def n_embedded(self, m: int) -> int:
        return self.length - m + 1

    def _integral(self, count: int, m: int) -> float:
        tm = self.n_embedded(m)
        return 2.0 * count / (tm * (tm - 1.0))

    def c_m(self, m: int) -> float:
        return self._integral(self.joint[m - 1], m)

    def c1_trailing(self, m: int) -> float:
        return self._integral(self.trailing[m - 1], m)

    def k_triple(self) -> float:
        t = self.length
        return self.neighbor_pairs / (t * (t - 1.0) * (t - 2.0))


def pair_counts(x, eps: float, max_dim: int) -> PairCounts:
    x = np.asarray(x, dtype=float)
    t = x.size
    if max_dim < 1:
        raise ValueError("max_dim must be at least 1")
    if t < max_dim + 1:
        raise InputError(f"series of length {t} too short for embedding dimension {max_dim}")
    if not eps > 0:
        raise ValueError("eps must be positive")
    close = closeness_matrix(x, eps)
    rowsum = close.sum(axis=1, dtype=np.int64) - 1
    neighbor_pairs = int(np.sum(rowsum * (rowsum - 1)))
    joint = [(int(rowsum.sum()) // 2)]
    trailing = [joint[0]]
    cur = close
    for m in range(2, max_dim + 1):
        tm = t - m + 1
        tail = close[m - 1:, m - 1:]
        cur = cur[:tm, :tm] & tail
        joint.append((int(np.count_nonzero(cur)) - tm) // 2)
        trailing.append((int(np.count_nonzero(tail)) - tm) // 2)
    return PairCounts(t, float(eps), tuple(joint), tuple(trailing), neighbor_pairs)


def correlation_integral(ts, m: int, eps: float) -> float:
    """Fraction of distinct m-history pairs whose coordinates all lie within ``eps``."""
    x = _values(ts)
    if m < 1:
        raise ValueError("embedding dimension must be at least 1")
    if x.size < m + 1:
        raise InputError(f"series of length {x.size} too short for embedding dimension {m}")
    return pair_counts(x, eps, m).c_m(m)


# -- BDS -----------------------------------------------------------------------


@dataclass(frozen=True)
class BdsRow:
    m: int
    c_m: float
    c1_m: float
    raw_stat: float
    sigma: float
    z: float
    p_value: float
    reject: bool


@dataclass(frozen=True)
class BdsResult:
    epsilon: float
    epsilon_method: str
    rows: tuple[BdsRow, ...]
    c1: float
    k_triple: float
    n: int
    alpha: float
    small_sample: bool

    @property
    def any_reject(self) -> bool:
        return any(r.reject for r in self.rows)


def bds_variance(c: float, k: float, m: int) -> float:
    """Asymptotic variance of sqrt(T)(C_m - C_1^m) under IID."""
    s = sum(k ** (m - j) * c ** (2 * j) for j in range(1, m))
    return 4.0 * (k ** m + 2.0 * s + (m - 1) ** 2 * c ** (2 * m) - m * m * k * c ** (2 * m - 2))


def bds_test(ts, max_dim: int = 6, eps_method: str | EpsilonMethod = "fraction:0.7",
             alpha: float = 0.05) -> BdsResult:
    """BDS test of the IID null for embedding dimensions 2..max_dim.

    For each m the statistic is ``sqrt(T_m) (C_m - C_1^m) / sigma_m`` with
    C_1 taken over the same trailing T_m observations, and sigma_m from the
    full-sample C_1 and triple statistic k. Two-sided normal p-values.
    Samples shorter than 500 trigger a warning and set ``small_sample``.
    """
    x = _values(ts)
    if not 2 <= max_dim <= 6:
        raise ValueError("max_dim must lie in [2, 6]")
    method = parse_epsilon_method(eps_method)
    eps = select_epsilon(x, method)
    small = x.size < BDS_MIN_LENGTH
    if small:
        warnings.warn(f"BDS asymptotics need T >= {BDS_MIN_LENGTH}; got {x.size}", stacklevel=2)
    counts = pair_counts(x, eps, max_dim)
    c = counts.c_m(1)
    k = counts.k_triple()
    if c <= 0.0 or c >= 1.0:
        raise DegenerateTestError(f"epsilon={eps!r} gives C_1={c}; choose a different epsilon")
    rows = []
    for m in range(2, max_dim + 1):
        cm = counts.c_m(m)
        c1m = counts.c1_trailing(m)
        raw = cm - c1m ** m
        var = bds_variance(c, k, m)
        if not var > 0:
            raise DegenerateTestError(f"BDS variance non-positive at m={m}")
        sigma = math.sqrt(var)
        z = math.sqrt(counts.n_embedded(m)) * raw / sigma
        p = min(1.0, 2.0 * std_normal_sf(abs(z)))
        rows.append(BdsRow(m, cm, c1m, raw, sigma, z, p, p < alpha))
    return BdsResult(
        epsilon=eps,
        epsilon_method=str(method),
        rows=tuple(rows),
        c1=c,
        k_triple=k,
        n=int(x.size),
        alpha=alpha,
        small_sample=small,
    )
