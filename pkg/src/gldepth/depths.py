"""Global (FMD, MBD, FSD) and local (HMD, KFSD) functional depths.

Every depth is computed for a batch of query curves against a reference
sample. ``depth_all`` is the leave-in case where the queries are the
sample curves themselves. Larger values mean more central curves.

The kernel depths use the Gaussian kernel
``k(x, y) = exp(-||x - y||^2 / (2 h^2))`` whose bandwidth ``h`` defaults to
the 25% quantile of the pairwise L2 distances between sample curves.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .exceptions import DegenerateSampleError, InsufficientSampleError
from .sample import (FunctionalSample, PairwiseGeometry, conform,
                     cross_distances, pairwise_geometry, query_chunks)


class Method(str, enum.Enum):
    FSD = "FSD"
    FMD = "FMD"
    MBD = "MBD"
    KFSD = "KFSD"
    HMD = "HMD"

    @classmethod
    def parse(cls, value) -> "Method":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise ValueError(f"unknown depth method {value!r}") from None

    @property
    def is_local(self) -> bool:
        return self in (Method.KFSD, Method.HMD)

    def __str__(self):
        return self.value


#: Column order used by correlation matrices and study outputs.
METHODS = (Method.FSD, Method.FMD, Method.MBD, Method.KFSD, Method.HMD)
GLOBAL_METHODS = (Method.FSD, Method.FMD, Method.MBD)
LOCAL_METHODS = (Method.KFSD, Method.HMD)


@dataclass(frozen=True)
class DepthParams:
    method: Method = Method.FSD
    bandwidth_quantile: float = 0.25
    bandwidth_override: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "method", Method.parse(self.method))
        if not 0.0 < self.bandwidth_quantile < 1.0:
            raise ValueError("bandwidth_quantile must lie in (0, 1)")
        if self.bandwidth_override is not None and not self.bandwidth_override > 0:
            raise ValueError("bandwidth override must be positive")


@dataclass(frozen=True, eq=False)
class DepthResult:
    values: np.ndarray
    method: Method
    bandwidth_used: Optional[float] = None


def bandwidth(geometry: PairwiseGeometry, quantile: float = 0.25) -> float:
    """Quantile of the pairwise distances ``{||y_i - y_j||, i < j}``.

    Uses linear interpolation between order statistics (``numpy``'s
    default, Hyndman-Fan type 7).

    Raises
    ------
    InsufficientSampleError
        Fewer than two curves.
    DegenerateSampleError
        The quantile is zero, e.g. every curve is identical.
    """
    if not 0.0 < quantile < 1.0:
        raise ValueError("quantile must lie in (0, 1)")
    n = geometry.dist.shape[0]
    if n < 2:
        raise InsufficientSampleError("bandwidth selection needs at least two curves")
    upper = geometry.dist[np.triu_indices(n, k=1)]
    h = float(np.quantile(upper, quantile))
    if not h > 0:
        raise DegenerateSampleError(
            f"bandwidth is zero: the {quantile:g} quantile of the pairwise "
            "distances vanishes (identical curves), kernel depths are undefined")
    return h


def gaussian_kernel(dist, h: float) -> np.ndarray:
    d = np.asarray(dist, dtype=np.float64)
    return np.exp(-(d * d) / (2.0 * h * h))


# -- batch kernels ---------------------------------------------------------
# X: (m, N) queries, Y: (n, N) reference curves, w: (N,) weights.

def _fmd(X, Y, grid):
    n = Y.shape[0]
    out = np.empty(X.shape[0])
    for sl in query_chunks(X.shape[0], n, len(grid)):
        ecdf = np.count_nonzero(Y[None, :, :] <= X[sl, None, :], axis=1) / n
        pointwise = 1.0 - np.abs(0.5 - ecdf)
        out[sl] = np.sum(pointwise * grid.weights, axis=-1) / grid.length
    # weights sum to the interval length only up to rounding
    return np.clip(out, 0.0, 1.0)


def _mbd(X, Y, grid):
    n = Y.shape[0]
    if n < 2:
        raise InsufficientSampleError("MBD needs at least two sample curves")
    pairs = n * (n - 1) // 2
    out = np.empty(X.shape[0])
    for sl in query_chunks(X.shape[0], n, len(grid)):
        below = np.count_nonzero(Y[None, :, :] < X[sl, None, :], axis=1)
        above = np.count_nonzero(Y[None, :, :] > X[sl, None, :], axis=1)
        # A band misses x(t) only when both curves are strictly on one side.
        inside = pairs - below * (below - 1) // 2 - above * (above - 1) // 2
        out[sl] = np.sum(inside * grid.weights, axis=-1) / (pairs * grid.length)
    return np.clip(out, 0.0, 1.0)


def _fsd(X, Y, DX, grid):
    n = Y.shape[0]
    out = np.empty(X.shape[0])
    with np.errstate(divide="ignore"):
        coef = np.where(DX > 0, 1.0 / DX, 0.0)
    for sl in query_chunks(X.shape[0], n, len(grid)):
        diff = X[sl, None, :] - Y[None, :, :]
        direction = np.sum(diff * coef[sl, :, None], axis=1)
        norm = np.sqrt(np.sum(direction * direction * grid.weights, axis=-1))
        out[sl] = 1.0 - norm / n
    return np.clip(out, 0.0, 1.0)


def _hmd(DX, h):
    return np.mean(gaussian_kernel(DX, h), axis=1)


def _kfsd(DX, DY, h):
    m, n = DX.shape
    kx = gaussian_kernel(DX, h)
    ky = gaussian_kernel(DY, h)
    # Feature-space squared distance ||phi(x) - phi(y_i)||^2, k(z, z) = 1.
    sq = 1.0 + 1.0 - 2.0 * kx
    keep = (DX > 0) & (sq > 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        inv = np.where(keep, 1.0 / np.sqrt(sq), 0.0)
    total = np.empty(m)
    for sl in query_chunks(m, n, n):
        num = 1.0 + ky[None, :, :] - kx[sl, :, None] - kx[sl, None, :]
        terms = num * inv[sl, :, None] * inv[sl, None, :]
        total[sl] = np.sum(terms, axis=(1, 2))
    return np.clip(1.0 - np.sqrt(np.maximum(total, 0.0)) / n, 0.0, 1.0)


# -- public API ------------------------------------------------------------

def _canonical_order(values):
    """Row order that depends only on the multiset of curves."""
    return np.lexsort(values.T[::-1])


def _resolve_bandwidth(params, geometry):
    if params.bandwidth_override is not None:
        return float(params.bandwidth_override)
    return bandwidth(geometry, params.bandwidth_quantile)


def _evaluate(method, X, sample, geometry, params, DX):
    Y = sample.values
    if method is Method.FMD:
        return _fmd(X, Y, sample.grid), None
    if method is Method.MBD:
        return _mbd(X, Y, sample.grid), None
    if method is Method.FSD:
        return _fsd(X, Y, DX, sample.grid), None
    h = _resolve_bandwidth(params, geometry)
    if method is Method.HMD:
        return _hmd(DX, h), h
    return _kfsd(DX, geometry.dist, h), h


def depth(sample: FunctionalSample, queries, params: DepthParams | None = None,
          geometry: PairwiseGeometry | None = None) -> DepthResult:
    """Depth of each query curve with respect to ``sample``.

    Parameters
    ----------
    sample : FunctionalSample
        Reference curves ``Y_n``.
    queries : array_like
        One curve (length ``N``) or a ``(m, N)`` matrix of curves.
    params : DepthParams, optional
        Method and bandwidth settings; FSD with the default bandwidth rule
        when omitted.
    geometry : PairwiseGeometry, optional
        Precomputed geometry of ``sample``, in the same row order.

    Returns
    -------
    DepthResult
        One value per query. Kernel bandwidths are selected on ``sample``
        alone.
    """
    params = params or DepthParams()
    X = np.atleast_2d(conform(queries, sample.grid))
    order = _canonical_order(sample.values)
    ref = sample.take(order)
    if geometry is None:
        geometry = pairwise_geometry(ref)
    else:
        geometry = geometry.take(order)
    DX = cross_distances(X, ref.values, ref.grid)
    values, h = _evaluate(params.method, X, ref, geometry, params, DX)
    return DepthResult(values, params.method, h)


def _single(sample, query, params, geometry=None):
    query = conform(query, sample.grid)
    if query.ndim != 1:
        raise ValueError("expected a single query curve")
    return float(depth(sample, query, params, geometry).values[0])


def fmd(sample: FunctionalSample, query) -> float:
    """Integrated univariate depth ``1 - |1/2 - F_t(x(t))|`` averaged over the grid."""
    return _single(sample, query, DepthParams(Method.FMD))


def mbd(sample: FunctionalSample, query) -> float:
    """Mean fraction of the interval spent inside each pairwise band."""
    return _single(sample, query, DepthParams(Method.MBD))


def fsd(sample: FunctionalSample, query, geometry=None) -> float:
    return _single(sample, query, DepthParams(Method.FSD), geometry)


def hmd(sample: FunctionalSample, query, params: DepthParams | None = None,
        geometry=None) -> float:
    params = DepthParams(Method.HMD, *_bw_args(params))
    return _single(sample, query, params, geometry)


def kfsd(sample: FunctionalSample, query, params: DepthParams | None = None,
         geometry=None) -> float:
    params = DepthParams(Method.KFSD, *_bw_args(params))
    return _single(sample, query, params, geometry)


def _bw_args(params):
    if params is None:
        return 0.25, None
    return params.bandwidth_quantile, params.bandwidth_override


def depth_all(sample: FunctionalSample, params: DepthParams | None = None) -> DepthResult:
    """Leave-in depths: every sample curve against the full sample.

    The sample geometry and bandwidth are computed once, including the
    query curves themselves. Results do not depend on the row order of
    ``sample``.
    """
    params = params or DepthParams()
    return all_depths(sample, (params.method,), params.bandwidth_quantile,
                      params.bandwidth_override)[params.method]


def all_depths(sample: FunctionalSample, methods=METHODS,
               bandwidth_quantile: float = 0.25,
               bandwidth_override: float | None = None) -> dict:
    """Leave-in depths for several methods sharing one geometry.

    Returns a dict mapping each :class:`Method` to its :class:`DepthResult`.
    """
    methods = [Method.parse(m) for m in methods]
    order = _canonical_order(sample.values)
    ref = sample.take(order)
    geometry = pairwise_geometry(ref)
    X = ref.values
    out = {}
    for method in methods:
        params = DepthParams(method, bandwidth_quantile, bandwidth_override)
        values, h = _evaluate(method, X, ref, geometry, params, geometry.dist)
        restored = np.empty_like(values)
        restored[order] = values
        out[method] = DepthResult(restored, method, h)
    return out
