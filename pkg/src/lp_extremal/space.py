"""Weighted p-norm geometry on a finite discretization of a measure space.

A :class:`WeightedSpace` is a finite list of cells with positive measures;
functions on it are dense coefficient vectors (one value per cell). The
norm is ``(sum_k mu_k |v_k|^p)^(1/p)``. Counting measure gives ``l_p^n``,
dyadic cells of measure ``2**-K`` give step functions in ``L_p[0, 1]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .errors import InputError

__all__ = [
    "ATOL",
    "P_MAX",
    "WeightedSpace",
    "PointSet",
    "alpha_exponent",
    "as_points",
    "as_vector",
    "norm",
    "norms",
    "distance",
    "pairwise_distances",
    "diameter",
    "combine",
    "dual_norm",
]

#: Absolute tolerance for pure arithmetic identities.
ATOL = 1e-12

#: Largest exponent accepted by :class:`WeightedSpace`.
P_MAX = 64.0


def alpha_exponent(p: float) -> float:
    """Return the power used in the Williams-Wells inequality.

    ``p / (p - 1)`` (the conjugate exponent) for ``1 < p <= 2`` and ``p``
    itself for ``p >= 2``. Both rules give 2 at ``p = 2``.
    """
    p = float(p)
    if not np.isfinite(p) or p <= 1.0:
        raise InputError(f"exponent p must satisfy 1 < p < inf, got {p!r}")
    if p <= 2.0:
        return p / (p - 1.0)
    return p


@dataclass(frozen=True)
class WeightedSpace:
    """Finite weighted discretization of ``L_p``.

    Parameters
    ----------
    p : float
        Norm exponent, ``1 < p <= p_max``.
    cells : sequence of float
        Positive cell measures. At least one cell.
    p_max : float, optional
        Upper cap on ``p``; large exponents lose precision in ``|v|**p``.
    """

    p: float
    cells: np.ndarray
    p_max: float = P_MAX
    alpha: float = field(init=False)

    def __post_init__(self):
        p = float(self.p)
        if not np.isfinite(p) or p <= 1.0 or p > self.p_max:
            raise InputError(
                f"exponent p must lie in (1, {self.p_max:g}], got {self.p!r}"
                " (p = 1 and p = inf are not strictly convex)")
        cells = np.array(self.cells, dtype=float).reshape(-1)
        if cells.size == 0:
            raise InputError("a space needs at least one cell")
        if not np.all(np.isfinite(cells)) or np.any(cells <= 0):
            raise InputError("cell measures must be finite and positive")
        cells.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "alpha", alpha_exponent(p))

    @property
    def dim(self) -> int:
        return int(self.cells.size)

    @property
    def q(self) -> float:
        """Conjugate exponent ``p / (p - 1)``."""
        return self.p / (self.p - 1.0)

    @property
    def total_measure(self) -> float:
        return float(self.cells.sum())

    @classmethod
    def counting(cls, p: float, n: int) -> "WeightedSpace":
        """``l_p^n``: ``n`` cells of measure one."""
        return cls(p, np.ones(int(n)))

    @classmethod
    def dyadic(cls, p: float, K: int) -> "WeightedSpace":
        """``2**K`` cells of measure ``2**-K`` (step functions on [0, 1])."""
        K = int(K)
        return cls(p, np.full(2 ** K, 2.0 ** -K))

    def __eq__(self, other):
        if not isinstance(other, WeightedSpace):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.cells, other.cells)

    def __hash__(self):
        return hash((self.p, self.cells.tobytes()))


@dataclass(frozen=True)
class PointSet:
    """A non-empty ordered finite subset of a :class:`WeightedSpace`.

    ``coords`` has one row per point and one column per cell.
    """

    space: WeightedSpace
    coords: np.ndarray

    def __post_init__(self):
        coords = _validated_matrix(self.space, self.coords)
        object.__setattr__(self, "coords", coords)

    def __len__(self):
        return self.coords.shape[0]

    def __getitem__(self, i):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def subset(self, indices: Sequence[int]) -> "PointSet":
        return PointSet(self.space, self.coords[list(indices)])


PointsLike = Union[PointSet, Sequence[Sequence[float]], np.ndarray]


def _validated_matrix(space, data) -> np.ndarray:
    arr = np.array(data, dtype=float)
    if arr.ndim == 1 and space.dim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.shape[0] == 0:
        raise InputError("a point set must be a non-empty 2-d array (points x cells)")
    if arr.shape[1] != space.dim:
        raise InputError(
            f"dimension mismatch: points have {arr.shape[1]} coefficients,"
            f" space has {space.dim} cells")
    if not np.all(np.isfinite(arr)):
        raise InputError("point coefficients must be finite")
    arr.setflags(write=False)
    return arr


def as_points(space: WeightedSpace, points: PointsLike) -> np.ndarray:
    """Validated read-only ``(n, cells)`` array for ``points``."""
    if isinstance(points, PointSet):
        if points.space != space:
            raise InputError("point set belongs to a different space")
        return points.coords
    return _validated_matrix(space, points)


def as_vector(space: WeightedSpace, v) -> np.ndarray:
    arr = np.asarray(v, dtype=float).reshape(-1) if np.ndim(v) else np.array([float(v)])
    if arr.size != space.dim:
        raise InputError(
            f"dimension mismatch: vector has {arr.size} coefficients,"
            f" space has {space.dim} cells")
    if not np.all(np.isfinite(arr)):
        raise InputError("vector coefficients must be finite")
    return arr


def _rownorms(cells: np.ndarray, p: float, v: np.ndarray) -> np.ndarray:
    # Scale by the largest entry so |v|**p stays in range for large p.
    a = np.abs(v)
    m = a.max(axis=-1, keepdims=True)
    safe = np.where(m > 0, m, 1.0)
    s = np.sum(cells * (a / safe) ** p, axis=-1) ** (1.0 / p)
    return np.where(m[..., 0] > 0, m[..., 0] * s, 0.0)


def norm(space: WeightedSpace, v) -> float:
    """Weighted p-norm ``(sum_k mu_k |v_k|^p)^(1/p)``."""
    return float(_rownorms(space.cells, space.p, as_vector(space, v)))


def norms(space: WeightedSpace, vs: np.ndarray) -> np.ndarray:
    """Norms of the rows (last axis) of ``vs``; no validation."""
    return _rownorms(space.cells, space.p, np.asarray(vs, dtype=float))


def distance(space: WeightedSpace, a, b) -> float:
    return norm(space, as_vector(space, a) - as_vector(space, b))


def pairwise_distances(space: WeightedSpace, points: PointsLike) -> np.ndarray:
    """Vectorized ``(n, n)`` distance matrix."""
    X = as_points(space, points)
    D = norms(space, X[:, None, :] - X[None, :, :])
    # Force exact symmetry; the two halves can differ in the last bit.
    D = np.triu(D, 1)
    return D + D.T


def diameter(space: WeightedSpace, points: PointsLike) -> float:
    """Largest pairwise distance; 0 for a singleton."""
    X = as_points(space, points)
    if X.shape[0] < 2:
        return 0.0
    return float(pairwise_distances(space, X).max())


def combine(space: WeightedSpace, points: PointsLike, weights) -> np.ndarray:
    """Convex combination ``sum_i w_i x_i``."""
    X = as_points(space, points)
    w = np.asarray(getattr(weights, "values", weights), dtype=float).reshape(-1)
    if w.size != X.shape[0]:
        raise InputError(f"{w.size} weights given for {X.shape[0]} points")
    return w @ X


def dual_norm(space: WeightedSpace, g) -> float:
    """Norm of the functional ``h -> <g, h>`` (plain dot product) on the space.

    Equals ``(sum_k mu_k^(1-q) |g_k|^q)^(1/q)`` with ``q`` the conjugate exponent.
    """
    g = np.abs(np.asarray(g, dtype=float))
    q = space.q
    m = g.max() if g.size else 0.0
    if m == 0:
        return 0.0
    return float(m * np.sum(space.cells ** (1.0 - q) * (g / m) ** q) ** (1.0 / q))
