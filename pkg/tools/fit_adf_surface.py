"""Fit Dickey-Fuller tau quantile response surfaces by simulation.

Produces the coefficient rows embedded in ``benford_emh.unit_root`` for the
quantiles not covered by MacKinnon (2010). Each row is (b_inf, b1, b2) in

    q(n) = b_inf + b1/n + b2/n**2

where n is the number of observations in the test regression.

Usage::

    python tools/fit_adf_surface.py --reps 400000 --seed 20240601
"""
import argparse

import numpy as np

SIZES = (25, 30, 40, 50, 75, 100, 150, 200, 300, 500, 750, 1000)
LEVELS = (0.01, 0.025, 0.05, 0.10, 0.25, 0.50, 0.75, 0.90, 0.95, 0.975, 0.99)


def _residualize(v, x):
    # v: (R, n); x: (n, k) shared design
    if x is None:
        return v
    q, _ = np.linalg.qr(x)
    return v - (v @ q) @ q.T


def simulate_tau(n, reps, det, rng, batch=20000):
    if det == "none":
        x = None
    elif det == "constant":
        x = np.ones((n, 1))
    else:
        x = np.column_stack([np.ones(n), np.arange(1, n + 1, dtype=float)])
    k = 1 + (0 if x is None else x.shape[1])
    out = np.empty(reps)
    done = 0
    while done < reps:
        b = min(batch, reps - done)
        e = rng.standard_normal((b, n + 1))
        y = np.cumsum(e, axis=1)
        dy = np.diff(y, axis=1)
        ylag = y[:, :-1]
        dy = _residualize(dy, x)
        ylag = _residualize(ylag, x)
        sxx = np.einsum("ij,ij->i", ylag, ylag)
        sxy = np.einsum("ij,ij->i", ylag, dy)
        g = sxy / sxx
        resid = dy - g[:, None] * ylag
        s2 = np.einsum("ij,ij->i", resid, resid) / (n - k)
        out[done:done + b] = g / np.sqrt(s2 / sxx)
        done += b
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--reps", type=int, default=400000)
    ap.add_argument("--seed", type=int, default=20240601)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    for det in ("none", "constant", "constant_and_trend"):
        qs = np.array([np.quantile(simulate_tau(n, args.reps, det, rng), LEVELS) for n in SIZES])
        inv = 1.0 / np.array(SIZES, dtype=float)
        design = np.column_stack([np.ones_like(inv), inv, inv**2])
        coef, *_ = np.linalg.lstsq(design, qs, rcond=None)
        resid = qs - design @ coef
        print(f"# {det}: max |resid| = {np.abs(resid).max():.4f}")
        for lvl, row in zip(LEVELS, coef.T):
            print(f"    {lvl}: ({row[0]:.5f}, {row[1]:.4f}, {row[2]:.3f}),")


if __name__ == "__main__":
    main()
