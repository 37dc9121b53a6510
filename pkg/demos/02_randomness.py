"""Runs and BDS tests: what IID noise, a random walk and chaos look like."""
import warnings

from benford_emh import GeneratorConfig, bds_test, generate, runs_test
from benford_emh.randomness import runs_statistics
from benford_emh.report import markdown_bds, markdown_runs

# The runs test only needs three counts. 38 runs among 5757 points is
# absurdly few; a trending index stays on one side of its mean for years.
expected, variance, z = runs_statistics(2973, 2784, 38)
print(f"expected runs {expected:.2f}, variance {variance:.1f}, Z {z:.2f}")

noise = generate(GeneratorConfig("ar1", 1000, 5, {"phi": 0.0}))
walk = generate(GeneratorConfig("random_walk", 1000, 5))
print()
print(markdown_runs(runs_test(noise)))
print()
print(markdown_runs(runs_test(walk, cutoff="median")))

# BDS compares C_m with C_1^m. The epsilon (distance) choice matters: the
# default takes the distance below which 70% of all pairs fall.
print()
print(markdown_bds(bds_test(noise, 5)))

# Deterministic chaos: the logistic map at r = 4 is uncorrelated but not
# independent. At small epsilon BDS sees the structure at once; at a very
# large epsilon nearly every pair is close and the signal fades.
chaos = generate(GeneratorConfig("logistic_map", 1000, 0, {"r": 4.0, "x0": 0.2}))
for method in ("std:0.5", "std:1.0", "std:1.5", "fraction:0.7"):
    rows = bds_test(chaos, 6, method).rows
    print(f"{method:>13}: z = " + ", ".join(f"{r.z:8.1f}" for r in rows))

# Under 500 points the normal approximation for BDS is shaky; the test says so
with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    bds_test(noise.slice(0, 300), 3)
print("\nwarning:", caught[0].message)
