"""Augmented Dickey-Fuller: lag choice, critical values and p-values."""
import numpy as np

from benford_emh import AdfSpec, GeneratorConfig, adf_critical_values, adf_test, generate, select_lag
from benford_emh.report import markdown_adf
from benford_emh.unit_root import adf_pvalue

# Finite-sample critical values from response surfaces, for each deterministic spec
for det in ("none", "constant", "constant_and_trend"):
    cv = adf_critical_values(det, 500)
    print(f"{det:>20}: " + "  ".join(f"{k * 100:g}%={v:.3f}" for k, v in cv.items()))

# p-values interpolate between those quantiles
for stat in (-4.0, -3.27, -2.86, -1.5):
    print(f"p({stat}) = {adf_pvalue(stat, 'constant', 5000):.4f}")

# A random walk keeps its unit root; white noise loses it immediately
walk = generate(GeneratorConfig("random_walk", 2000, 11))
noise = generate(GeneratorConfig("ar1", 2000, 11, {"phi": 0.0}))
print()
print(markdown_adf(adf_test(walk)))
print()
print(markdown_adf(adf_test(noise)))

# SBC picks p = 1 (no lagged differences) for a pure walk, but needs more
# when the increments are moving-average noise
rng = np.random.default_rng(2)
e = rng.normal(size=2001)
ma_walk = np.cumsum(e[1:] - 0.7 * e[:-1])
print("\nchosen p, pure walk:", select_lag(walk, "constant"))
print("chosen p, MA increments:", select_lag(ma_walk, "constant"), "(SBC)",
      select_lag(ma_walk, "constant", "AIC"), "(AIC)")

# A trend-stationary series needs the trend term to be recognised
t = np.arange(1000.0)
trendy = 0.05 * t + generate(GeneratorConfig("ar1", 1000, 4, {"phi": 0.5})).values
for det in ("constant", "constant_and_trend"):
    r = adf_test(trendy, AdfSpec(det))
    print(f"{det:>20}: tau = {r.statistic:.2f}, p = {r.p_value:.3f}")
