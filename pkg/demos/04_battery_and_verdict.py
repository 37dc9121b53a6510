"""The whole battery on a simulated price path, and what the verdict means."""
from benford_emh import BatteryConfig, GeneratorConfig, generate, render_verdict, run_battery, window_scan
from benford_emh.report import render_markdown

prices = generate(GeneratorConfig("random_walk", 3000, 7, {"x0": 300.0, "sigma": 6.0}))

# Testing IID on price levels: a random walk is anything but IID in levels,
# so runs and BDS reject and the verdict calls the market inefficient
levels = run_battery(prices)
v = render_verdict(levels)
print(v.nexus_conclusion, "| drivers:", ", ".join(v.drivers))
print(v.narrative)

# Testing IID on the increments instead matches the random-walk hypothesis
# itself: shocks IID, level non-stationary. The prediction now allows
# Benford's law, yet a path that wanders between 100 and 600 cannot have
# Benford digits, so the concordance flag comes out false.
incr = run_battery(prices, BatteryConfig(randomness_on="increments"))
v = render_verdict(incr)
print()
print(v.nexus_conclusion, "| drivers:", ", ".join(v.drivers) or "none")
print(v.narrative)
print("concordance:", v.concordance)

# Conformity can come and go over time; a window scan shows where
scan = window_scan(prices, 500)
for w in scan.windows:
    print(f"[{w.start:4d}, {w.end:4d})  chi2 = {w.statistic:8.2f}  {'reject' if w.reject else 'conforms'}")

# The same markdown the CLI writes with --report md
print()
print(render_markdown(incr, v, scan, {"input": "simulated random walk"}))
