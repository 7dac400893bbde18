"""Seeded generators for the four simulation scenarios.

Randomness discipline
---------------------
All draws come from numpy's Philox counter-based generator.  A stream is
addressed by an integer path: `substream(seed, ...tags)` feeds the whole
tuple to `numpy.random.SeedSequence`, so every (seed, tag...) combination is
an independent, platform-stable stream.  Within one dataset three streams
are used, in fixed order of their tags:

    0  design entries (Gaussian z's, or genotype uniforms)
    1  allele frequencies (SNP designs only)
    2  response noise

`simulate` derives the replicate path (config.seed, scenario, replicate), so
replicates may be generated concurrently and in any order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError

STREAM_DESIGN = 0
STREAM_ALLELE = 1
STREAM_NOISE = 2

PAPER_GRID = ((100, 100), (200, 400), (300, 900), (400, 1600))


def substream(seed, *tags: int) -> np.random.Generator:
    """Philox generator for the stream addressed by (seed, *tags)."""
    if isinstance(seed, (tuple, list)):
        path = tuple(int(s) for s in seed) + tuple(int(t) for t in tags)
    else:
        path = (int(seed),) + tuple(int(t) for t in tags)
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(path)))


@dataclass(frozen=True)
class ScenarioConfig:
    """Full description of one synthetic experiment cell."""

    scenario: int
    n: int
    p: int
    p0: int
    beta_value: float = 3.0
    corr_b: float = 0.3
    seed: int = 0

    def __post_init__(self):
        if self.scenario not in (1, 2, 3, 4):
            raise InvalidInputError("scenario must be 1, 2, 3 or 4")
        if self.n < 2:
            raise InvalidInputError("n must be at least 2")
        if not 0 <= self.p0 <= self.p:
            raise InvalidInputError("need 0 <= p0 <= p")
        if not 0.0 <= self.corr_b < 1.0:
            raise InvalidInputError("corr_b must lie in [0, 1)")

    @property
    def beta(self) -> np.ndarray:
        b = np.zeros(self.p)
        b[:self.p0] = self.beta_value
        return b


@dataclass(frozen=True)
class SimulatedDataset:
    X: np.ndarray
    y: np.ndarray
    beta: np.ndarray
    support: np.ndarray = field(repr=False)


def gen_gaussian_design(n: int, p: int, b: float, seed) -> np.ndarray:
    """Rows i.i.d. N(0, (1-b) I + b 11') via the one-factor representation."""
    if not 0.0 <= b < 1.0:
        raise InvalidInputError("b must lie in [0, 1)")
    rng = substream(seed, STREAM_DESIGN)
    z = rng.standard_normal((n, p))
    if b == 0.0:
        return z
    z0 = rng.standard_normal((n, 1))
    return math.sqrt(b) * z0 + math.sqrt(1.0 - b) * z


def gen_snp_design(n: int, p: int, seed) -> np.ndarray:
    """Standardized genotypes of p independent SNPs under Hardy-Weinberg.

    Minor-allele frequencies are U(0.1, 0.5) per column; raw genotypes take
    values 0/1/2 with probabilities (pi^2, 2 pi (1-pi), (1-pi)^2) and are
    then sample-standardized (mean 0, second moment 1).
    """
    if n < 2 or p < 1:
        raise InvalidInputError("need n >= 2 and p >= 1")
    freqs = substream(seed, STREAM_ALLELE).uniform(0.1, 0.5, size=p)
    u = substream(seed, STREAM_DESIGN).random((n, p))
    p_aa = freqs ** 2
    p_het = 2.0 * freqs * (1.0 - freqs)
    geno = (u >= p_aa).astype(np.float64) + (u >= p_aa + p_het)
    means = geno.mean(axis=0)
    centered = geno - means
    scales = np.sqrt(np.mean(centered * centered, axis=0))
    dead = np.flatnonzero(scales == 0.0)
    if dead.size:
        raise InvalidInputError(f"SNP column {int(dead[0])} is monomorphic in sample")
    return centered / scales


def _standard_cauchy(rng: np.random.Generator, size: int) -> np.ndarray:
    # inverse CDF keeps the draw count fixed at one uniform per variate
    return np.tan(np.pi * (rng.random(size) - 0.5))


def gen_response(X, beta, scenario: int, seed) -> np.ndarray:
    """Response under the given scenario with standard Cauchy noise."""
    if scenario not in (1, 2, 3, 4):
        raise InvalidInputError("scenario must be 1, 2, 3 or 4")
    mat = np.asarray(X, dtype=np.float64)
    signal = mat @ np.asarray(beta, dtype=np.float64)
    eps = _standard_cauchy(substream(seed, STREAM_NOISE), mat.shape[0])
    if scenario == 4:
        return np.exp(4.0 + 0.05 * signal) + eps
    return signal + eps


def simulate(config: ScenarioConfig, replicate: int = 0) -> SimulatedDataset:
    """Generate one replicate of the configured scenario."""
    path = (config.seed, config.scenario, int(replicate))
    if config.scenario == 2:
        X = gen_snp_design(config.n, config.p, path)
    else:
        b = 0.0 if config.scenario == 1 else config.corr_b
        X = gen_gaussian_design(config.n, config.p, b, path)
    beta = config.beta
    y = gen_response(X, beta, config.scenario, path)
    return SimulatedDataset(X=X, y=y, beta=beta, support=np.flatnonzero(beta))


def dataset_to_csv(dataset: SimulatedDataset, path) -> None:
    """Write a dataset as CSV with predictor columns x1..xp and y last."""
    p = dataset.X.shape[1]
    header = ",".join([f"x{j + 1}" for j in range(p)] + ["y"])
    body = np.column_stack([dataset.X, dataset.y])
    with open(path, "w", newline="\n") as fh:
        fh.write(header + "\n")
        for row in body:
            fh.write(",".join(format(v, ".17g") for v in row) + "\n")
