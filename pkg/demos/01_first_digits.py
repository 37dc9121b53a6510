"""First-digit frequencies and the chi-square test against Benford's law."""
import numpy as np

from benford_emh import (
    DigitHistogram,
    GeneratorConfig,
    benford_expected,
    chi_square_gof,
    digit_histogram,
    first_significant_digit,
    generate,
    uniform_expected,
)
from benford_emh.report import markdown_gof

# The leading digit ignores scale and sign
for v in (2005.85, 577.90, 0.0046, -31.2, 6e-9):
    print(f"{v!r:>10} -> {first_significant_digit(v)}")

# Benford probabilities log10(1 + 1/d); expected counts simply scale them
exp = benford_expected(5757)
print("\nP(d):", np.round(exp.probabilities, 4))
print("E(d), n=5757:", np.round(exp.counts, 2))

# Printed tables are often built from four-place probabilities, which shifts
# the expected counts by a fraction of a unit
print("E(d), 4-place:", np.round(benford_expected(5757, decimals=4).counts, 2))

# A price index whose digits cluster on 1 and 2 fails both references badly
hist = DigitHistogram.from_counts([2695, 2396, 397, 0, 10, 45, 52, 139, 23])
print()
print(markdown_gof(chi_square_gof(hist, benford_expected(hist.total))))
print()
print(markdown_gof(chi_square_gof(hist, uniform_expected(hist.total))))

# The exact sampler (mantissa 10**U in a random decade) passes about 95% of the time
passes = 0
for seed in range(200):
    h = digit_histogram(generate(GeneratorConfig("benford_exact", 5000, seed)))
    passes += not chi_square_gof(h, benford_expected(h.total)).reject
print(f"\nexact sampler conforms in {passes}/200 samples")

# A ratio of two uniforms looks Benford-like but is not: P(1) is exactly 1/3
h = digit_histogram(generate(GeneratorConfig("ratio_uniform", 200_000, 1)))
print("U1/U2 first-digit shares:", np.round(np.array(h.counts) / h.total, 4))
