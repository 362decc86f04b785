"""Discretized curves and their L2 geometry.

Curves are stored as rows of an ``n x N`` matrix evaluated on a shared
:class:`Grid`. Integrals over the observation interval are approximated
with the trapezoid rule on the grid, which is used for inner products,
norms and every interval measure the depths need.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionError, GridError

# Bounds the size of the (queries x curves x grid) difference tensors.
_CHUNK_ELEMENTS = 4_000_000


def _frozen(a):
    a = np.array(a, dtype=np.float64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Grid:
    """Strictly increasing evaluation points with trapezoid weights."""

    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        points = _frozen(self.points)
        weights = _frozen(self.weights)
        if points.ndim != 1 or points.size < 2:
            raise GridError("a grid needs at least two points")
        if not np.all(np.isfinite(points)):
            raise GridError("grid points must be finite")
        if np.any(np.diff(points) <= 0):
            bad = int(np.argmax(np.diff(points) <= 0))
            raise GridError(
                f"grid points must be strictly increasing "
                f"(t[{bad}]={points[bad]!r}, t[{bad + 1}]={points[bad + 1]!r})")
        if weights.shape != points.shape:
            raise GridError("weights and points must have the same length")
        if np.any(weights <= 0):
            raise GridError("quadrature weights must be positive")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return self.points.size

    @property
    def length(self) -> float:
        """Lebesgue measure of the observation interval."""
        return float(self.points[-1] - self.points[0])

    def __eq__(self, other):
        if not isinstance(other, Grid):
            return NotImplemented
        return (np.array_equal(self.points, other.points)
                and np.array_equal(self.weights, other.weights))

    __hash__ = None


def make_grid(points) -> Grid:
    """Build a :class:`Grid` with trapezoid weights.

    Parameters
    ----------
    points : array_like
        Strictly increasing abscissae, at least two of them.

    Returns
    -------
    Grid
        ``w[0] = (t[1]-t[0])/2``, ``w[-1] = (t[-1]-t[-2])/2`` and
        ``w[s] = (t[s+1]-t[s-1])/2`` in between, so the weights sum to
        the interval length.

    Examples
    --------
    >>> make_grid([0.0, 0.5, 1.0]).weights
    array([0.25, 0.5 , 0.25])
    """
    t = np.asarray(points, dtype=np.float64)
    if t.ndim != 1 or t.size < 2:
        raise GridError("a grid needs at least two points")
    if np.any(np.diff(t) <= 0):
        bad = int(np.argmax(np.diff(t) <= 0))
        raise GridError(
            f"grid points must be strictly increasing "
            f"(t[{bad}]={t[bad]!r}, t[{bad + 1}]={t[bad + 1]!r})")
    w = np.empty_like(t)
    w[0] = (t[1] - t[0]) / 2
    w[-1] = (t[-1] - t[-2]) / 2
    w[1:-1] = (t[2:] - t[:-2]) / 2
    return Grid(t, w)


@dataclass(frozen=True, eq=False)
class FunctionalSample:
    """``n`` curves evaluated on one grid; row ``k`` is curve ``k``."""

    values: np.ndarray
    grid: Grid

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.ndim == 1:
            values = values[None, :]
        if values.ndim != 2 or values.shape[0] < 1:
            raise DimensionError("a sample needs at least one curve")
        if values.shape[1] != len(self.grid):
            raise DimensionError(
                f"curves have {values.shape[1]} values but the grid has "
                f"{len(self.grid)} points")
        if not np.all(np.isfinite(values)):
            row = int(np.argmax(~np.all(np.isfinite(values), axis=1)))
            raise DimensionError(f"curve {row} has non-finite values")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def __len__(self):
        return self.n

    def take(self, index) -> "FunctionalSample":
        """Sub-sample (or reordering) of the curves."""
        return FunctionalSample(self.values[np.asarray(index)], self.grid)


@dataclass(frozen=True, eq=False)
class PairwiseGeometry:
    """Cached L2 inner products and distances between sample curves."""

    gram: np.ndarray
    dist: np.ndarray

    def take(self, index) -> "PairwiseGeometry":
        index = np.asarray(index)
        return PairwiseGeometry(self.gram[np.ix_(index, index)],
                                self.dist[np.ix_(index, index)])


def conform(curve, grid: Grid) -> np.ndarray:
    """Return ``curve`` as a float array, checking it matches ``grid``."""
    x = np.asarray(curve, dtype=np.float64)
    if x.shape[-1:] != (len(grid),):
        raise DimensionError(
            f"curve has shape {x.shape}, expected {len(grid)} grid values")
    return x


def l2_inner(x, y, grid: Grid) -> float:
    """Trapezoid approximation of the L2 inner product of two curves."""
    x = conform(x, grid)
    y = conform(y, grid)
    if x.ndim != 1 or y.ndim != 1:
        raise DimensionError("l2_inner expects single curves")
    return float(np.sum(grid.weights * x * y))


def l2_dist(x, y, grid: Grid) -> float:
    x = conform(x, grid)
    y = conform(y, grid)
    d = x - y
    return float(np.sqrt(l2_inner(d, d, grid)))


def query_chunks(m: int, n: int, n_points: int):
    """Yield slices over ``m`` queries keeping chunk tensors bounded."""
    step = max(1, _CHUNK_ELEMENTS // max(1, n * n_points))
    for start in range(0, m, step):
        yield slice(start, min(m, start + step))


def cross_distances(queries, values, grid: Grid) -> np.ndarray:
    """L2 distances between every query row and every sample row.

    Distances are computed from explicit differences, so identical curves
    are at distance exactly 0 and ``d[i, j] == d[j, i]`` bit for bit.
    """
    X = np.atleast_2d(conform(queries, grid))
    Y = np.atleast_2d(conform(values, grid))
    out = np.empty((X.shape[0], Y.shape[0]))
    for sl in query_chunks(X.shape[0], Y.shape[0], len(grid)):
        diff = X[sl, None, :] - Y[None, :, :]
        out[sl] = np.sqrt(np.sum(diff * diff * grid.weights, axis=-1))
    return out


def pairwise_geometry(sample: FunctionalSample) -> PairwiseGeometry:
    """Gram matrix and distance matrix of a sample.

    Examples
    --------
    >>> g = make_grid([0.0, 1.0])
    >>> s = FunctionalSample([[0.0, 0.0], [2.0, 2.0]], g)
    >>> pairwise_geometry(s).dist
    array([[0., 2.],
           [2., 0.]])
    """
    Y = sample.values
    gram = (Y * sample.grid.weights) @ Y.T
    gram = (gram + gram.T) / 2
    dist = cross_distances(Y, Y, sample.grid)
    gram.setflags(write=False)
    dist.setflags(write=False)
    return PairwiseGeometry(gram, dist)
