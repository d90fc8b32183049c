"""Jung constants, self-extremality, heavy indices and simplex extraction.

Distances are compared in power space throughout: ``||y_i - y_j||^alpha``
against a threshold already raised to ``alpha``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .chebyshev import SimplexWeights, SolverConfig, relative_radius
from .errors import InputError
from .space import ATOL, WeightedSpace, as_points, pairwise_distances

__all__ = [
    "jung_constant",
    "Extremality",
    "Classification",
    "extremality_ratio",
    "classify_ratio",
    "gulevich_margin",
    "HeavyIndexReport",
    "heavy_indices",
    "heavy_threshold",
    "neighbor_indices",
    "SimplexWitness",
    "Infeasible",
    "extract_simplex",
    "chain_conditions",
    "separated_subset",
]


def jung_constant(p: float) -> float:
    """Jung (and self-Jung) constant of infinite-dimensional ``L_p``.

    ``max(2**(1/p - 1), 2**(-1/p))``; defined for ``1 <= p < inf``.
    """
    p = float(p)
    if not np.isfinite(p) or p < 1.0:
        raise InputError(f"Jung constant needs 1 <= p < inf, got {p!r}")
    return max(2.0 ** (1.0 / p - 1.0), 2.0 ** (-1.0 / p))


class Extremality(enum.Enum):
    SELF_EXTREMAL = "self-extremal"
    SUBEXTREMAL = "subextremal"


@dataclass(frozen=True)
class Classification:
    kind: Extremality
    margin: float  # jung - ratio
    tol: float

    def __str__(self):
        if self.kind is Extremality.SELF_EXTREMAL:
            return f"self-extremal within {self.tol:g} (margin {self.margin:.3g})"
        return f"subextremal (margin {self.margin:.6g})"


def _radius_and_diameter(space, points, cfg):
    X = as_points(space, points)
    if X.shape[0] < 2:
        raise InputError("need at least two points")
    D = pairwise_distances(space, X)
    d = float(D.max())
    if d == 0:
        raise InputError("diameter is zero")
    sol = relative_radius(space, X, cfg)
    return sol, d


def extremality_ratio(space: WeightedSpace, points, cfg: Optional[SolverConfig] = None
                      ) -> tuple[float, Classification]:
    """Ratio ``r(A) / d(A)`` and its classification against the self-Jung constant."""
    cfg = cfg or SolverConfig()
    sol, d = _radius_and_diameter(space, points, cfg)
    ratio = sol.radius / d
    return ratio, classify_ratio(ratio, space.p, cfg.class_tol)


def classify_ratio(ratio: float, p: float, tol: float) -> Classification:
    margin = jung_constant(p) - ratio
    kind = Extremality.SELF_EXTREMAL if abs(margin) <= tol else Extremality.SUBEXTREMAL
    return Classification(kind, margin, tol)


def gulevich_margin(space: WeightedSpace, points, cfg: Optional[SolverConfig] = None) -> float:
    """``jung_constant(p) * d(A) - r(A)``; strictly positive for finite sets."""
    sol, d = _radius_and_diameter(space, points, cfg or SolverConfig())
    return jung_constant(space.p) * d - sol.radius


@dataclass(frozen=True)
class HeavyIndexReport:
    T: np.ndarray
    threshold: float
    S: tuple
    lambda_: float
    r_used: float
    alpha: float

    @property
    def heavy_mass(self) -> float:
        return 1.0 - self.lambda_

    @property
    def lambda_bound(self) -> float:
        """``sqrt(1 - r^alpha)``, the bound on ``lambda`` under the certificate."""
        return math.sqrt(max(0.0, 1.0 - self.r_used ** self.alpha))


def heavy_threshold(r: float, alpha: float) -> float:
    """``2 r^a (1 - sqrt(1 - r^a))`` with the root argument clamped at zero."""
    ra = r ** alpha
    return 2.0 * ra * (1.0 - math.sqrt(max(0.0, 1.0 - ra)))


def heavy_indices(space: WeightedSpace, points, w, r: float) -> HeavyIndexReport:
    """Weighted power-distance sums ``T_j`` and the indices above the threshold.

    ``T_j = sum_i w_i ||y_i - y_j||^alpha``; ``S = {j : T_j >= threshold}``;
    ``lambda_`` is the weight outside ``S``.
    """
    X = as_points(space, points)
    w = SimplexWeights.coerce(w, X.shape[0]).values
    r = float(r)
    if not r > 0:
        raise InputError(f"radius must be positive, got {r!r}")
    if r > 1.0 + ATOL:
        raise InputError(f"radius must not exceed 1 (threshold undefined), got {r!r}")
    a = space.alpha
    P = pairwise_distances(space, X) ** a
    T = np.array([math.fsum(w * P[:, j]) for j in range(X.shape[0])])
    thr = heavy_threshold(min(r, 1.0), a)
    heavy = T >= thr
    lam = math.fsum(w[~heavy])
    return HeavyIndexReport(T=T, threshold=thr, S=tuple(int(j) for j in np.nonzero(heavy)[0]),
                            lambda_=lam, r_used=r, alpha=a)


def neighbor_indices(space: WeightedSpace, points, j: int, delta_alpha: float) -> tuple:
    """Indices ``i`` with ``||y_i - y_j||^alpha >= delta_alpha``."""
    X = as_points(space, points)
    if not 0 <= j < X.shape[0]:
        raise InputError(f"index {j} out of range")
    P = pairwise_distances(space, X)[j] ** space.alpha
    return tuple(int(i) for i in np.nonzero(P >= delta_alpha)[0])


@dataclass(frozen=True)
class SimplexWitness:
    indices: tuple
    min_edge: float
    epsilon: float
    m: int
    greedy: bool = True  # False when only the backtracking phase found it


@dataclass(frozen=True)
class Infeasible:
    m: int
    epsilon: float
    threshold: float

    def __bool__(self):
        return False


def _validated_m_eps(m, epsilon, d):
    if int(m) != m or m < 1:
        raise InputError(f"m must be a positive integer, got {m!r}")
    if d <= 0:
        raise InputError("diameter is zero")
    if not 0 < epsilon < d:
        raise InputError(f"epsilon must lie in (0, d(A)) = (0, {d!r}), got {epsilon!r}")


def extract_simplex(space: WeightedSpace, points, m: int, epsilon: float
                    ) -> Union[SimplexWitness, Infeasible]:
    """Find ``m + 1`` points whose pairwise distances are all at least ``d(A) - epsilon``.

    Starts a chain from each point in index order and extends it with the
    lowest-index point in the intersection of the neighbor sets of the
    chain so far. If every greedy chain dead-ends, a backtracking search
    follows, so :class:`Infeasible` means no such subset exists.
    """
    X = as_points(space, points)
    D = pairwise_distances(space, X)
    d = float(D.max()) if X.shape[0] > 1 else 0.0
    _validated_m_eps(m, epsilon, d)
    m = int(m)
    a = space.alpha
    thr = (d - epsilon) ** a
    adj = D ** a >= thr
    np.fill_diagonal(adj, False)
    n = X.shape[0]

    def witness(chain, greedy):
        idx = tuple(int(i) for i in chain)
        edge = min(D[i, j] for k, i in enumerate(idx) for j in idx[k + 1:])
        return SimplexWitness(idx, float(edge), float(epsilon), m, greedy)

    for z1 in range(n):
        chain = [z1]
        running = adj[z1].copy()
        while len(chain) < m + 1 and running.any():
            nxt = int(np.argmax(running))
            chain.append(nxt)
            running &= adj[nxt]
        if len(chain) == m + 1:
            return witness(chain, True)

    def extend(chain, cand):
        if len(chain) == m + 1:
            return chain
        for k, i in enumerate(cand):
            found = extend(chain + [i], [c for c in cand[k + 1:] if adj[i, c]])
            if found:
                return found
        return None

    for z1 in range(n):
        # Cliques through a lower-index point were already explored from it.
        found = extend([z1], [i for i in range(z1 + 1, n) if adj[z1, i]])
        if found:
            return witness(found, False)
    return Infeasible(m, float(epsilon), thr)


def chain_conditions(level: int, heavy_count: int, m: int, alpha: float,
                     diam: float, epsilon: float) -> dict:
    """Asymptotic sufficient conditions for the greedy chain at truncation ``level``.

    Reported as diagnostics only; :func:`extract_simplex` checks
    intersections directly.
    """
    root4 = level ** 0.25
    return {
        "heavy_exceeds_m": heavy_count > m,
        "spread_small": 2.0 * alpha * m / root4 < 1.0,
        "threshold_reaches": 2.0 * (1.0 - 1.0 / root4) >= (diam - epsilon) ** alpha,
    }


def separated_subset(space: WeightedSpace, points, delta: float) -> tuple:
    """Greedy maximal ``delta``-separated subset, scanning in index order."""
    if not delta > 0:
        raise InputError(f"delta must be positive, got {delta!r}")
    X = as_points(space, points)
    D = pairwise_distances(space, X)
    chosen = []
    for i in range(X.shape[0]):
        if all(D[i, j] >= delta for j in chosen):
            chosen.append(i)
    return tuple(chosen)
