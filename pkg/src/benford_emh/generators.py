"""Seeded generators for null and alternative processes.

Every stream comes from NumPy's PCG64 bit generator (PCG-XSL-RR 128/64, a
published algorithm with reference streams), seeded directly with the user
seed. Uniforms are built from the top 53 bits of each 64-bit draw and mapped
to the open interval (0, 1); normal variates are their inverse-CDF images.
No rejection sampling is used anywhere, so one uniform is consumed per
variate and streams line up across platforms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .timeseries import TimeSeries

__all__ = ["GeneratorConfig", "KINDS", "generate", "uniforms", "normals"]

KINDS = ("random_walk", "ar1", "logistic_map", "ratio_uniform", "ratio_exponential", "benford_exact")

_DEFAULTS = {
    "random_walk": {"x0": 100.0, "sigma": 1.0},
    "ar1": {"phi": 0.0, "sigma": 1.0},
    "logistic_map": {"r": 4.0},  # x0 drawn from the seed unless given
    "ratio_uniform": {},
    "ratio_exponential": {"lam1": 1.0, "lam2": 1.0},
    "benford_exact": {"decades": 4},
}


@dataclass(frozen=True)
class GeneratorConfig:
    kind: str
    length: int
    seed: int
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator {self.kind!r}; choose from {', '.join(KINDS)}")
        if self.length < 1:
            raise ValueError("length must be at least 1")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")
        unknown = set(self.params) - set(_DEFAULTS[self.kind]) - ({"x0"} if self.kind == "logistic_map" else set())
        if unknown:
            raise ValueError(f"unknown parameters for {self.kind}: {sorted(unknown)}")
        p = self.resolved()
        if self.kind in ("random_walk", "ar1") and not p["sigma"] > 0:
            raise ValueError("sigma must be positive")
        if self.kind == "ar1" and not abs(p["phi"]) < 1:
            raise ValueError("ar1 needs |phi| < 1 for a stationary start")
        if self.kind == "logistic_map":
            x0 = p.get("x0")
            if x0 is not None and not 0.0 < x0 < 1.0:
                raise ValueError("logistic map x0 must lie in (0, 1)")
            if not 0.0 < p["r"] <= 4.0:
                raise ValueError("logistic map r must lie in (0, 4]")
        if self.kind == "ratio_exponential" and not (p["lam1"] > 0 and p["lam2"] > 0):
            raise ValueError("exponential rates must be positive")
        if self.kind == "benford_exact" and not int(p["decades"]) >= 1:
            raise ValueError("decades must be at least 1")

    def resolved(self) -> dict:
        return {**_DEFAULTS[self.kind], **self.params}


def uniforms(rng: np.random.Generator, n: int) -> np.ndarray:
    """n draws on the open interval (0, 1): (k + 0.5) / 2**53 from 53 random bits."""
    k = rng.bit_generator.random_raw(n) >> np.uint64(11)
    return (k.astype(np.float64) + 0.5) * 2.0 ** -53


def normals(rng: np.random.Generator, n: int) -> np.ndarray:
    return special.ndtri(uniforms(rng, n))


def generate(config: GeneratorConfig) -> TimeSeries:
    """Draw one series. The same config always yields the same values."""
    rng = np.random.Generator(np.random.PCG64(config.seed))
    n = config.length
    p = config.resolved()
    kind = config.kind
    if kind == "random_walk":
        steps = p["sigma"] * normals(rng, n - 1)
        x = np.concatenate([[p["x0"]], p["x0"] + np.cumsum(steps)])
    elif kind == "ar1":
        phi, sigma = p["phi"], p["sigma"]
        e = sigma * normals(rng, n)
        x = np.empty(n)
        x[0] = e[0] / math.sqrt(1.0 - phi * phi)
        for t in range(1, n):
            x[t] = phi * x[t - 1] + e[t]
    elif kind == "logistic_map":
        r = p["r"]
        x0 = p.get("x0")
        if x0 is None:
            x0 = float(uniforms(rng, 1)[0])
        x = np.empty(n)
        x[0] = x0
        for t in range(1, n):
            x[t] = r * x[t - 1] * (1.0 - x[t - 1])
    elif kind == "ratio_uniform":
        u = uniforms(rng, 2 * n)
        x = u[0::2] / u[1::2]
    elif kind == "ratio_exponential":
        u = uniforms(rng, 2 * n)
        e1 = -np.log(u[0::2]) / p["lam1"]
        e2 = -np.log(u[1::2]) / p["lam2"]
        x = e1 / e2
    else:
        decades = int(p["decades"])
        u = uniforms(rng, 2 * n)
        mantissa = 10.0 ** u[0::2]
        decade = np.floor(u[1::2] * decades)
        x = mantissa * 10.0 ** decade
    return TimeSeries(x, label=kind)
