"""Both sides of the Williams-Wells inequality in weighted ``L_p``.

For points ``x_1..x_n``, weights ``t`` on the simplex and ``a = alpha_exponent(p)``::

    2 * sum_i t_i ||x_i - sum_j t_j x_j||^a  <=  sum_{i,j} t_i t_j ||x_i - x_j||^a
"""

from __future__ import annotations

import math

import numpy as np

from .chebyshev import SimplexWeights
from .errors import InputError
from .space import WeightedSpace, alpha_exponent, as_points, norms

__all__ = ["alpha_exponent", "ww_sides", "ww_gap", "drop_zero_weights", "ZERO_WEIGHT"]

#: Weights below this are exact zeros for the point-removal reduction.
ZERO_WEIGHT = 1e-15


def ww_sides(space: WeightedSpace, points, t=None) -> tuple[float, float]:
    """Return ``(lhs, rhs)``; ``t`` defaults to uniform weights.

    Sums run in ascending index order through :func:`math.fsum`.
    """
    X = as_points(space, points)
    w = SimplexWeights.coerce(t, X.shape[0]).values
    a = space.alpha
    center = w @ X
    to_center = norms(space, X - center) ** a
    lhs = 2.0 * math.fsum(w * to_center)

    D = norms(space, X[:, None, :] - X[None, :, :]) ** a
    rhs = math.fsum((np.outer(w, w) * D).ravel())
    return lhs, rhs


def ww_gap(space: WeightedSpace, points, t=None) -> float:
    """``rhs - lhs``; non-negative up to rounding."""
    lhs, rhs = ww_sides(space, points, t)
    return rhs - lhs


def drop_zero_weights(points: np.ndarray, t, threshold: float = ZERO_WEIGHT):
    """Remove points whose weight is below ``threshold``; renormalize the rest."""
    w = np.asarray(getattr(t, "values", t), dtype=float)
    keep = w >= threshold
    if not keep.any():
        raise InputError("all weights are zero")
    w = w[keep]
    return np.asarray(points)[keep], w / math.fsum(w)
