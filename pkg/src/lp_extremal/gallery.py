"""Generators for structured and random point families.

``indicator_family`` and ``rademacher_family`` are finite truncations of
infinite self-extremal sets; their metric facts (equal pairwise distances,
unit norms) hold exactly on the discretization.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .errors import InputError
from .space import PointSet, WeightedSpace, as_vector

__all__ = [
    "indicator_family",
    "rademacher_family",
    "rademacher_vector",
    "random_family",
    "pairing_lower_bound",
]


def indicator_family(n: int, p: float) -> tuple[WeightedSpace, PointSet]:
    """Normalized indicators of ``n`` disjoint cells of measure one.

    Any two points are ``2**(1/p)`` apart and each has norm one. Only
    ``p >= 2`` is accepted: below 2 the family is not self-extremal.
    """
    n = int(n)
    if n < 2:
        raise InputError("indicator family needs n >= 2")
    if p < 2:
        raise InputError(
            f"indicator family requires p >= 2 (the indicator example assumes it), got p={p!r}")
    space = WeightedSpace(p, np.ones(n))
    return space, PointSet(space, np.eye(n))


def rademacher_vector(i: int, K: int) -> np.ndarray:
    """Rademacher function ``r_i`` sampled on ``2**K`` dyadic cells.

    Constant on blocks of ``2**(K - i - 1)`` cells, alternating sign, first
    block positive.
    """
    if not 0 <= i < K:
        raise InputError(f"r_{i} is not representable on 2**{K} cells")
    block = 2 ** (K - i - 1)
    return np.where((np.arange(2 ** K) // block) % 2 == 0, 1.0, -1.0)


def rademacher_family(n: int, p: float, K: Optional[int] = None
                      ) -> tuple[WeightedSpace, PointSet]:
    """``r_0 .. r_{n-1}`` in ``L_p[0, 1]`` on a dyadic grid of ``2**K`` cells.

    ``K`` defaults to ``max(n, 6)``. Pairwise distances are all ``2**(1 - 1/p)``.
    """
    n = int(n)
    if n < 1:
        raise InputError("rademacher family needs n >= 1")
    if not 1 < p < 2:
        raise InputError(f"rademacher family requires 1 < p < 2, got p={p!r}")
    K = max(n, 6) if K is None else int(K)
    if K < n:
        raise InputError(f"K={K} is too coarse for {n} Rademacher functions (need K >= n)")
    space = WeightedSpace.dyadic(p, K)
    return space, PointSet(space, np.stack([rademacher_vector(i, K) for i in range(n)]))


def random_family(seed: int, n: int, cells: int, p: float,
                  coeff_range: tuple[float, float] = (-3.0, 3.0),
                  measure_range: tuple[float, float] = (0.1, 2.0)
                  ) -> tuple[WeightedSpace, PointSet]:
    """Seeded random space (measures uniform on ``measure_range``) and point set."""
    if n < 1 or cells < 1:
        raise InputError("random family needs n >= 1 and cells >= 1")
    rng = np.random.default_rng(seed)
    mu = rng.uniform(*measure_range, size=cells)
    X = rng.uniform(*coeff_range, size=(n, cells))
    space = WeightedSpace(p, mu)
    return space, PointSet(space, X)


def pairing_lower_bound(space: WeightedSpace, y, g) -> float:
    """Hoelder lower bound ``|<y - g, g>| / ||g||_q`` on ``||y - g||_p``.

    For a Rademacher ``g`` outside the span of ``y`` the pairing is one.
    """
    y = as_vector(space, y)
    g = as_vector(space, g)
    q = space.q
    gq = np.sum(space.cells * np.abs(g) ** q) ** (1.0 / q)
    if gq == 0:
        raise InputError("pairing functional is zero")
    return float(abs(np.sum(space.cells * (y - g) * g)) / gq)
