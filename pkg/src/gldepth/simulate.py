"""Two-term Karhunen-Loeve curve models and their score densities.

Each model draws curves

    x(t) = 2t + xi1 + xi2 * sqrt(7) * (20 t^3 - 30 t^2 + 12 t) + eps(t)

with ``xi2 ~ N(0, lambda2)`` and white noise ``eps(t) ~ N(0, sigma2)``.
Only the law of the dominant score ``xi1`` changes between models:

1. ``N(0, lambda1)``
2. ``sqrt(3 lambda1 / 5) * t_5``                 (heavy tails)
3. ``sqrt(lambda1 / 10) * chi2_5``               (asymmetry)
4. ``N(-m, 1/10)`` or ``N(m, 1/10)``, ``m = sqrt(lambda1 - 1/10)`` (bimodal)

All four have ``Var(xi1) = lambda1``. The density of ``xi1`` serves as the
ground-truth centrality against which depths are scored.

Random numbers come from numpy's PCG64 bit generator. Curve ``k`` of a
sample generated with seed ``s`` uses its own stream
``SeedSequence(s, spawn_key=(k,))``, so output is independent of
evaluation order and identical across platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .sample import FunctionalSample, Grid, make_grid

MODEL_IDS = (1, 2, 3, 4)
MIXTURE_VARIANCE = 0.1


def default_grid() -> Grid:
    """50 midpoints ``(s - 0.5) / 50`` of a uniform partition of [0, 1]."""
    return make_grid((np.arange(1, 51) - 0.5) / 50)


def second_eigenfunction(t):
    t = np.asarray(t, dtype=np.float64)
    return math.sqrt(7.0) * (20 * t**3 - 30 * t**2 + 12 * t)


@dataclass(frozen=True)
class ModelSpec:
    model_id: int = 1
    n: int = 100
    grid: Grid = field(default_factory=default_grid)
    lambda1: float = 1.98
    lambda2: float = 0.02
    sigma2: float = 0.01

    def __post_init__(self):
        if self.model_id not in MODEL_IDS:
            raise ValueError(f"unknown model id {self.model_id!r}, expected 1-4")
        if int(self.n) != self.n or self.n < 2:
            raise ValueError("n must be an integer >= 2")
        if not self.lambda1 > self.lambda2 > 0:
            raise ValueError("need lambda1 > lambda2 > 0")
        if not self.sigma2 > 0:
            raise ValueError("sigma2 must be positive")
        if self.model_id == 4 and not self.lambda1 > MIXTURE_VARIANCE:
            raise ValueError("model 4 needs lambda1 > 1/10")

    @property
    def mixture_offset(self) -> float:
        return math.sqrt(self.lambda1 - MIXTURE_VARIANCE)


@dataclass(frozen=True, eq=False)
class SimulatedSample:
    sample: FunctionalSample
    xi1: np.ndarray
    benchmark: np.ndarray
    model_id: int


def _draw_xi1(rng, spec):
    lam = spec.lambda1
    if spec.model_id == 1:
        return math.sqrt(lam) * rng.standard_normal()
    if spec.model_id == 2:
        return math.sqrt(lam * 3 / 5) * rng.standard_t(5)
    if spec.model_id == 3:
        return math.sqrt(lam / 10) * rng.chisquare(5)
    centre = spec.mixture_offset if rng.random() < 0.5 else -spec.mixture_offset
    return centre + math.sqrt(MIXTURE_VARIANCE) * rng.standard_normal()


def curve_stream(seed: int, index: int) -> np.random.Generator:
    """Independent generator for curve ``index`` under master ``seed``."""
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))


def generate(spec: ModelSpec, seed: int) -> SimulatedSample:
    """Draw ``spec.n`` curves from the model on ``spec.grid``."""
    seed = int(seed)
    if seed < 0:
        raise ValueError("seed must be a non-negative integer")
    t = spec.grid.points
    phi2 = second_eigenfunction(t)
    mean = 2.0 * t
    values = np.empty((spec.n, t.size))
    xi1 = np.empty(spec.n)
    for k in range(spec.n):
        rng = curve_stream(seed, k)
        xi1[k] = _draw_xi1(rng, spec)
        xi2 = math.sqrt(spec.lambda2) * rng.standard_normal()
        eps = math.sqrt(spec.sigma2) * rng.standard_normal(t.size)
        values[k] = mean + xi1[k] + xi2 * phi2 + eps
    bench = benchmark_density(spec.model_id, xi1, spec.lambda1)
    xi1.setflags(write=False)
    bench.setflags(write=False)
    return SimulatedSample(FunctionalSample(values, spec.grid), xi1, bench,
                           spec.model_id)


def benchmark_density(model_id: int, xi, lambda1: float = 1.98):
    """Density of the dominant score ``xi1`` under each model.

    Returns a float for scalar ``xi`` and an array otherwise.

    >>> round(benchmark_density(1, 0.0), 6)
    0.283516
    """
    x = np.asarray(xi, dtype=np.float64)
    if model_id == 1:
        out = stats.norm.pdf(x, scale=math.sqrt(lambda1))
    elif model_id == 2:
        c = math.sqrt(lambda1 * 3 / 5)
        out = stats.t.pdf(x / c, df=5) / c
    elif model_id == 3:
        c = math.sqrt(lambda1 / 10)
        out = np.where(x > 0, stats.chi2.pdf(np.maximum(x, 0) / c, df=5) / c, 0.0)
    elif model_id == 4:
        m = math.sqrt(lambda1 - MIXTURE_VARIANCE)
        s = math.sqrt(MIXTURE_VARIANCE)
        out = 0.5 * stats.norm.pdf(x, -m, s) + 0.5 * stats.norm.pdf(x, m, s)
    else:
        raise ValueError(f"unknown model id {model_id!r}, expected 1-4")
    out = np.asarray(out, dtype=np.float64)
    return float(out) if out.ndim == 0 else out


def study_seed(seed: int, model_id: int, rep: int) -> int:
    """Seed of replication ``rep`` of ``model_id`` derived from a master seed."""
    state = np.random.SeedSequence([int(seed), int(model_id), int(rep)]).generate_state(
        2, np.uint64)
    return (int(state[0]) << 64) | int(state[1])
