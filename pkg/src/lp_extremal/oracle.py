"""Brute-force references for the solvers, usable only on small instances."""

from __future__ import annotations

import itertools

import numpy as np

from .errors import OracleLimitError
from .space import WeightedSpace, as_points, distance, norms

__all__ = ["grid_radius", "exhaustive_simplex", "pairwise_table",
           "GRID_MAX_POINTS", "EXHAUSTIVE_MAX_POINTS", "EXHAUSTIVE_MAX_M"]

GRID_MAX_POINTS = 5
EXHAUSTIVE_MAX_POINTS = 12
EXHAUSTIVE_MAX_M = 4


def _tail_compositions(rem: int, parts: int) -> np.ndarray:
    """All ways to write ``rem`` as an ordered sum of ``parts`` non-negative integers."""
    if parts == 1:
        return np.array([[rem]])
    if parts == 2:
        a = np.arange(rem + 1)
        return np.stack([a, rem - a], axis=1)
    a, b = np.meshgrid(np.arange(rem + 1), np.arange(rem + 1), indexing="ij")
    ok = a + b <= rem
    a, b = a[ok], b[ok]
    return np.stack([a, b, rem - a - b], axis=1)


def _prefixes(total: int, parts: int):
    if parts == 0:
        yield ()
        return
    for first in range(total + 1):
        for rest in _prefixes(total - first, parts - 1):
            yield (first,) + rest


def grid_radius(space: WeightedSpace, points, resolution: int) -> float:
    """Minimax distance over all weights on the ``1/resolution`` simplex grid.

    Upper-bounds the relative Chebyshev radius, and exceeds it by at most
    ``diameter / resolution``. The grid is enumerated in blocks: a Python
    loop over leading coordinates, the last (up to) three vectorized.
    """
    X = as_points(space, points)
    n = X.shape[0]
    if n > GRID_MAX_POINTS:
        raise OracleLimitError(f"grid oracle accepts at most {GRID_MAX_POINTS} points, got {n}")
    R = int(resolution)
    if R < 1:
        raise OracleLimitError("resolution must be positive")
    tail = min(n, 3)
    best = np.inf
    for head in _prefixes(R, n - tail):
        rem = R - sum(head)
        comp = _tail_compositions(rem, tail)
        W = np.hstack([np.broadcast_to(np.array(head, dtype=float), (comp.shape[0], n - tail)),
                       comp]) / R
        C = W @ X
        dist = norms(space, X[None, :, :] - C[:, None, :])
        best = min(best, float(dist.max(axis=1).min()))
    return best


def pairwise_table(space: WeightedSpace, points) -> np.ndarray:
    """Distance matrix from a plain double loop; exactly symmetric."""
    X = as_points(space, points)
    n = X.shape[0]
    T = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            T[i, j] = T[j, i] = distance(space, X[i], X[j])
    return T


def exhaustive_simplex(space: WeightedSpace, points, m: int) -> tuple[float, tuple]:
    """Max over ``(m + 1)``-subsets of the smallest pairwise distance.

    Returns ``(best_min_edge, indices)`` with the lexicographically first
    maximizing subset; ``(-inf, ())`` if there are fewer than ``m + 1`` points.
    """
    X = as_points(space, points)
    n = X.shape[0]
    if n > EXHAUSTIVE_MAX_POINTS or m > EXHAUSTIVE_MAX_M:
        raise OracleLimitError(
            f"exhaustive oracle accepts at most {EXHAUSTIVE_MAX_POINTS} points and"
            f" m <= {EXHAUSTIVE_MAX_M}, got {n} points and m={m}")
    if m < 1:
        raise OracleLimitError("m must be positive")
    T = pairwise_table(space, X)
    best, arg = -np.inf, ()
    for sub in itertools.combinations(range(n), m + 1):
        edge = min(T[i, j] for i, j in itertools.combinations(sub, 2))
        if edge > best:
            best, arg = edge, sub
    return float(best), arg
