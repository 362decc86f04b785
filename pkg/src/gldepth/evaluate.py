"""Rank statistics and the depth-versus-density simulation study."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from .depths import METHODS, Method, all_depths
from .exceptions import (DepthError, InsufficientSampleError,
                         UndefinedCorrelationError)
from .sample import FunctionalSample
from .simulate import ModelSpec, default_grid, generate, study_seed

log = logging.getLogger(__name__)

SUMMARY_FIELDS = ("min", "q1", "median", "q3", "max")


def ranks(values) -> np.ndarray:
    """Ascending ranks with ties averaged; the largest value gets rank ``n``.

    >>> ranks([2, 2, 1])
    array([2.5, 2.5, 1. ])
    """
    v = np.asarray(values, dtype=np.float64)
    if v.size == 0:
        raise ValueError("cannot rank an empty sequence")
    if not np.all(np.isfinite(v)):
        raise ValueError("ranks require finite values")
    return rankdata(v, method="average")


def spearman(a, b) -> float:
    """Spearman's rho as the Pearson correlation of average ranks.

    Exact under ties, unlike the ``1 - 6 sum d^2 / (n (n^2 - 1))`` shortcut.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("spearman needs two 1-d sequences of equal length")
    if a.size < 2:
        raise InsufficientSampleError("spearman needs at least two observations")
    ra = ranks(a) - (a.size + 1) / 2
    rb = ranks(b) - (b.size + 1) / 2
    saa = ra @ ra
    sbb = rb @ rb
    if saa == 0 or sbb == 0:
        raise UndefinedCorrelationError("rank correlation of a constant sequence")
    rho = (ra @ rb) / np.sqrt(saa * sbb)
    return float(np.clip(rho, -1.0, 1.0))


def corr_matrix(sample: FunctionalSample, bandwidth_quantile: float = 0.25,
                bandwidth_override: float | None = None, methods=METHODS,
                depths: dict | None = None) -> np.ndarray:
    """Spearman correlation matrix between leave-in depth vectors.

    Rows and columns follow ``methods`` (FSD, FMD, MBD, KFSD, HMD by default).
    Precomputed ``depths`` (as returned by ``all_depths``) may be passed in.
    """
    if sample.n < 3:
        raise InsufficientSampleError("a correlation matrix needs at least 3 curves")
    methods = [Method.parse(m) for m in methods]
    if depths is None:
        depths = all_depths(sample, methods, bandwidth_quantile, bandwidth_override)
    k = len(methods)
    out = np.eye(k)
    for i in range(k):
        for j in range(i + 1, k):
            out[i, j] = out[j, i] = spearman(depths[methods[i]].values,
                                             depths[methods[j]].values)
    return out


@dataclass(frozen=True, eq=False)
class StudyResult:
    """Spearman coefficients of one model, one row per completed replication.

    ``coefficients`` columns follow :data:`METHODS`; ``reps`` holds the
    replication index of each row and ``failures`` the skipped ones.
    """

    model_id: int
    reps: np.ndarray
    coefficients: np.ndarray
    failures: tuple = ()

    @property
    def summary(self) -> dict:
        """Per method ``{min, q1, median, q3, max}`` of the coefficients."""
        out = {}
        for j, method in enumerate(METHODS):
            col = self.coefficients[:, j]
            if col.size == 0:
                out[method] = dict.fromkeys(SUMMARY_FIELDS, float("nan"))
                continue
            q = np.quantile(col, [0.0, 0.25, 0.5, 0.75, 1.0])
            out[method] = dict(zip(SUMMARY_FIELDS, map(float, q)))
        return out

    def medians(self) -> dict:
        return {m: s["median"] for m, s in self.summary.items()}


def replicate(model_id: int, rep: int, n: int = 100, seed: int = 0,
              bandwidth_quantile: float = 0.25, grid=None) -> np.ndarray:
    """Spearman coefficients of the five depths for one simulated sample."""
    spec = ModelSpec(model_id, n, grid if grid is not None else default_grid())
    sim = generate(spec, study_seed(seed, model_id, rep))
    depths = all_depths(sim.sample, METHODS, bandwidth_quantile)
    return np.array([spearman(depths[m].values, sim.benchmark) for m in METHODS])


def run_study(models=(1, 2, 3, 4), reps: int = 100, n: int = 100, seed: int = 0,
              bandwidth_quantile: float = 0.25, grid=None) -> list:
    """Replicate the depth-versus-density comparison for each model.

    Replication ``r`` of model ``m`` is driven by its own seed derived from
    ``(seed, m, r)``, so running a subset of models or fewer replications
    never changes the others. Replications that raise a ``DepthError`` are
    logged, counted in ``StudyResult.failures`` and skipped.
    """
    if reps < 1:
        raise ValueError("reps must be at least 1")
    results = []
    for model_id in sorted(set(int(m) for m in models)):
        rows, done, failed = [], [], []
        for r in range(reps):
            try:
                rows.append(replicate(model_id, r, n, seed, bandwidth_quantile, grid))
                done.append(r)
            except DepthError as exc:
                log.warning("model %d replication %d failed: %s", model_id, r, exc)
                failed.append(r)
        if failed:
            log.warning("model %d: %d of %d replications failed",
                        model_id, len(failed), reps)
        coefs = np.array(rows).reshape(len(rows), len(METHODS))
        results.append(StudyResult(model_id, np.array(done, dtype=int), coefs,
                                   tuple(failed)))
    return results
