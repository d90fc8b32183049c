"""Chebyshev radii and centers of finite sets in a weighted p-norm space.

The relative radius restricts the center to the convex hull of the set and
is parametrized by simplex weights ``t``: ``min_t max_i ||x_i - X^T t||``.
The objective is convex in ``t`` (affine map composed with a norm), so a
projected subgradient method converges; its output is polished by SLSQP on
the epigraph form and certified by a linear-programming lower bound built
from supporting hyperplanes of the per-point distance functions.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field, fields, replace
from typing import Mapping, Optional

import numpy as np
from scipy.optimize import linprog, minimize, nnls

from .errors import ConvergenceWarning, InputError
from .space import (
    ATOL,
    PointSet,
    WeightedSpace,
    as_points,
    diameter,
    dual_norm,
    norms,
)

__all__ = [
    "SimplexWeights",
    "SolverConfig",
    "ChebyshevSolution",
    "CoreResult",
    "project_simplex",
    "relative_radius",
    "ambient_radius",
    "equidistant_core",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimplexWeights:
    """Non-negative weights summing to one."""

    values: np.ndarray

    def __post_init__(self):
        w = np.array(self.values, dtype=float).reshape(-1)
        if w.size == 0:
            raise InputError("weights must be non-empty")
        if not np.all(np.isfinite(w)) or np.any(w < 0):
            raise InputError("weights must be finite and non-negative")
        if abs(w.sum() - 1.0) > ATOL * max(1, w.size):
            raise InputError(f"weights must sum to 1, got {w.sum()!r}")
        w.setflags(write=False)
        object.__setattr__(self, "values", w)

    def __len__(self):
        return self.values.size

    @classmethod
    def uniform(cls, n: int) -> "SimplexWeights":
        return cls(np.full(n, 1.0 / n))

    @classmethod
    def unit(cls, n: int, j: int) -> "SimplexWeights":
        w = np.zeros(n)
        w[j] = 1.0
        return cls(w)

    @classmethod
    def coerce(cls, w, n: Optional[int] = None) -> "SimplexWeights":
        """Accept a :class:`SimplexWeights`, an array, or ``None`` (uniform)."""
        if w is None:
            if n is None:
                raise InputError("cannot infer weight count")
            return cls.uniform(n)
        out = w if isinstance(w, cls) else cls(w)
        if n is not None and len(out) != n:
            raise InputError(f"{len(out)} weights given for {n} points")
        return out


@dataclass(frozen=True)
class SolverConfig:
    tolerance: float = 1e-6
    active_tol: float = 1e-5
    max_iters: int = 50_000
    step: float = 0.5
    seed: Optional[int] = None
    restarts: int = 0
    class_tol: float = 1e-3
    # Subgradient iterations between polish/certify rounds.
    chunk: int = 100

    def __post_init__(self):
        if self.tolerance <= 0 or self.active_tol <= 0 or self.class_tol <= 0:
            raise InputError("tolerances must be positive")
        if self.max_iters < 1 or self.chunk < 1:
            raise InputError("max_iters and chunk must be positive")
        if self.step <= 0:
            raise InputError("step constant must be positive")

    @classmethod
    def from_mapping(cls, data: Mapping) -> "SolverConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise InputError(f"unknown solver options: {sorted(unknown)}")
        return cls(**data)

    def updated(self, **changes) -> "SolverConfig":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


@dataclass(frozen=True)
class ChebyshevSolution:
    radius: float
    center: np.ndarray
    weights: Optional[SimplexWeights]
    iterations: int
    gap_estimate: float
    converged: bool = True
    distances: np.ndarray = field(default=None, repr=False)


def project_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex (sort-based)."""
    v = np.asarray(v, dtype=float)
    n = v.size
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    ind = np.arange(1, n + 1)
    rho = np.nonzero(u - css / ind > 0)[0][-1]
    theta = css[rho] / (rho + 1.0)
    w = np.maximum(v - theta, 0.0)
    return w / w.sum()


# ---------------------------------------------------------------------------
# Objective pieces. ``Y`` holds normalized coordinates (diameter one).


def _dist_and_grad_center(space, Y, c):
    """Distances ``||y_i - c||`` and their gradients w.r.t. ``c`` (rows).

    At an exact zero the zero vector is returned, a valid subgradient.
    """
    V = Y - c
    rho = norms(space, V)
    G = np.zeros_like(V)
    pos = rho > 0
    if np.any(pos):
        U = V[pos] / rho[pos, None]
        G[pos] = -space.cells * np.abs(U) ** (space.p - 1.0) * np.sign(U)
    return rho, G


def _dist_and_grad_weights(space, Y, t):
    rho, Gc = _dist_and_grad_center(space, Y, t @ Y)
    return rho, Gc @ Y.T


def _hull_lower_bound(rho, Gt, t):
    """Best lower bound on ``min_{s in simplex} max_i f_i(s)`` from linearizations.

    For any multipliers ``lam`` in the simplex, convexity gives
    ``max_i f_i(s) >= sum_i lam_i (f_i(t) + Gt_i . (s - t))``; minimizing the
    right side over the simplex and maximizing over ``lam`` is an LP.
    """
    n = rho.size
    a = rho - Gt @ t
    c = np.concatenate([-a, [-1.0]])
    A_ub = np.hstack([-Gt.T, np.ones((n, 1))])
    A_eq = np.concatenate([np.ones(n), [0.0]])[None, :]
    res = linprog(c, A_ub=A_ub, b_ub=np.zeros(n), A_eq=A_eq, b_eq=[1.0],
                  bounds=[(0, None)] * n + [(None, None)], method="highs")
    if res.status != 0:
        return -np.inf
    return -res.fun


def _ambient_lower_bound(space, rho, Gc, fval):
    """Lower bound on the unconstrained minimax from active gradients.

    The optimal center lies within ``2 * fval`` of the current one, so
    ``min_c sum lam_i f_i(c) >= sum lam_i f_i - 2 fval ||sum lam_i g_i||_*``.
    """
    active = np.nonzero(rho >= fval * (1 - 1e-3))[0]
    A = Gc[active].T
    w = 1e3
    A_aug = np.vstack([A, w * np.ones((1, active.size))])
    b_aug = np.concatenate([np.zeros(A.shape[0]), [w]])
    lam, _ = nnls(A_aug, b_aug)
    if lam.sum() <= 0:
        return -np.inf
    lam = lam / lam.sum()
    g = lam @ Gc[active]
    return float(lam @ rho[active] - 2.0 * fval * dual_norm(space, g))


def _epigraph_polish(fun_grad, x0, n_free, simplex):
    """SLSQP on ``min s  s.t.  s >= f_i(x)``; returns the polished ``x``."""
    rho0, _ = fun_grad(x0)
    z0 = np.concatenate([x0, [rho0.max()]])

    def cons(z):
        rho, _ = fun_grad(z[:-1])
        return z[-1] - rho

    def cons_jac(z):
        _, G = fun_grad(z[:-1])
        return np.hstack([-G, np.ones((G.shape[0], 1))])

    constraints = [{"type": "ineq", "fun": cons, "jac": cons_jac}]
    bounds = None
    if simplex:
        constraints.append({
            "type": "eq",
            "fun": lambda z: np.array([z[:-1].sum() - 1.0]),
            "jac": lambda z: np.concatenate([np.ones(n_free), [0.0]])[None, :],
        })
        bounds = [(0.0, 1.0)] * n_free + [(0.0, None)]
    obj_grad = np.zeros(n_free + 1)
    obj_grad[-1] = 1.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res = minimize(lambda z: z[-1], z0, jac=lambda z: obj_grad,
                       constraints=constraints, bounds=bounds, method="SLSQP",
                       options={"maxiter": 300, "ftol": 1e-16})
    x = res.x[:-1]
    if simplex:
        x = np.clip(x, 0.0, None)
        x = x / x.sum() if x.sum() > 0 else np.full(n_free, 1.0 / n_free)
    return x


def _normalize(space, points):
    X = as_points(space, points)
    d = diameter(space, X)
    origin = X[0]
    scale = d if d > 0 else 1.0
    return X, (X - origin) / scale, origin, scale, d


def _minimax(space, Y, cfg, simplex, x0):
    """Shared driver: subgradient chunks, polish, certify; returns best x."""
    n = Y.shape[0]
    if simplex:
        fun_grad = lambda t: _dist_and_grad_weights(space, Y, t)
        project = project_simplex

        def lower(x, rho, G):
            return _hull_lower_bound(rho, G, x)
    else:
        fun_grad = lambda c: _dist_and_grad_center(space, Y, c)
        project = lambda c: c

        def lower(x, rho, G):
            return _ambient_lower_bound(space, rho, G, rho.max())

    rng = np.random.default_rng(cfg.seed) if cfg.seed is not None else None
    starts = [x0]
    for _ in range(cfg.restarts if rng is not None else 0):
        if simplex:
            starts.append(rng.dirichlet(np.ones(n)))
        else:
            starts.append(rng.dirichlet(np.ones(n)) @ Y)

    best_x, best_f = None, np.inf
    for s in starts:
        rho, _ = fun_grad(s)
        if rho.max() < best_f:
            best_x, best_f = s, rho.max()

    x = best_x.copy()
    avg = np.zeros_like(x)
    avg_w = 0.0
    k = 0
    gap = np.inf
    while True:
        # Projected subgradient with c/sqrt(k) steps and weighted averaging.
        stop = min(k + cfg.chunk, cfg.max_iters)
        while k < stop:
            k += 1
            rho, G = fun_grad(x)
            i = int(np.argmax(rho))  # lowest index among ties
            if rho[i] < best_f:
                best_x, best_f = x.copy(), rho[i]
            g = G[i]
            gn = np.linalg.norm(g)
            if gn == 0:
                k = stop
                break
            step = cfg.step / np.sqrt(k)
            x = project(x - step * g / gn)
            avg += step * x
            avg_w += step
        if avg_w > 0:
            xa = avg / avg_w
            fa = fun_grad(xa)[0].max()
            if fa < best_f:
                best_x, best_f = xa, fa

        xp = _epigraph_polish(fun_grad, best_x, x.size, simplex)
        fp = fun_grad(xp)[0].max()
        if fp < best_f:
            best_x, best_f = xp, fp

        rho, G = fun_grad(best_x)
        gap = max(best_f - lower(best_x, rho, G), 0.0)
        if gap <= cfg.tolerance or k >= cfg.max_iters:
            break
        x = best_x.copy()
    return best_x, best_f, k, gap


def _finish(space, X, scale, center, weights, iters, gap, tol, what):
    dist = norms(space, X - center)
    radius = float(dist.max())
    gap_abs = gap * scale
    converged = gap_abs <= tol
    if not converged:
        warnings.warn(
            f"{what} radius not certified within {tol:g} after {iters} iterations"
            f" (gap estimate {gap_abs:.3g})", ConvergenceWarning, stacklevel=3)
    return ChebyshevSolution(radius=radius, center=center, weights=weights,
                             iterations=iters, gap_estimate=gap_abs,
                             converged=converged, distances=dist)


def relative_radius(space: WeightedSpace, points, cfg: Optional[SolverConfig] = None
                    ) -> ChebyshevSolution:
    """Chebyshev radius of ``points`` with the center restricted to their convex hull.

    Returns the best iterate found; ``gap_estimate`` bounds ``radius - r(A)``
    and ``converged`` tells whether it fell below ``cfg.tolerance``.
    Non-convergence also emits :class:`ConvergenceWarning`.
    """
    cfg = cfg or SolverConfig()
    X, Y, origin, scale, d = _normalize(space, points)
    n = X.shape[0]
    if d == 0:
        w = SimplexWeights.unit(n, 0)
        return ChebyshevSolution(0.0, X[0].copy(), w, 0, 0.0, True, np.zeros(n))
    t, _, iters, gap = _minimax(space, Y, cfg, True, np.full(n, 1.0 / n))
    w = SimplexWeights(t)
    center = w.values @ X
    return _finish(space, X, scale, center, w, iters, gap, cfg.tolerance,
                   "relative")


def ambient_radius(space: WeightedSpace, points, cfg: Optional[SolverConfig] = None
                   ) -> ChebyshevSolution:
    """Chebyshev radius of ``points`` with an unconstrained center.

    ``weights`` is ``None``: the center need not lie in the convex hull.
    """
    cfg = cfg or SolverConfig()
    X, Y, origin, scale, d = _normalize(space, points)
    n = X.shape[0]
    if d == 0:
        return ChebyshevSolution(0.0, X[0].copy(), None, 0, 0.0, True, np.zeros(n))
    c, _, iters, gap = _minimax(space, Y, cfg, False, Y.mean(axis=0))
    center = origin + scale * c
    return _finish(space, X, scale, center, None, iters, gap, cfg.tolerance,
                   "ambient")


@dataclass(frozen=True)
class CoreResult:
    core: PointSet
    indices: tuple
    solution: ChebyshevSolution
    rounds: int
    flagged: bool = False


def equidistant_core(space: WeightedSpace, points, cfg: Optional[SolverConfig] = None
                     ) -> CoreResult:
    """Shrink ``points`` to a subset equidistant from its relative center.

    Repeatedly solves for the relative center and drops points closer than
    ``radius - cfg.active_tol``. A subset found this way keeps at least the
    original radius in the generic case; if a round would lose radius, the
    best round so far is returned with ``flagged=True``.
    """
    cfg = cfg or SolverConfig()
    X = as_points(space, points)
    if X.shape[0] < 2:
        raise InputError("the equidistant core needs at least two points")
    idx = np.arange(X.shape[0])
    history = []
    seen = set()
    while True:
        sol = relative_radius(space, X[idx], cfg)
        history.append((idx, sol))
        keep = sol.distances >= sol.radius - cfg.active_tol
        if keep.all():
            break
        key = tuple(idx[keep])
        if key in seen or keep.sum() == 0:
            break
        seen.add(key)
        idx = idx[keep]

    final_idx, final = history[-1]
    flagged = False
    r0 = history[0][1].radius
    if final.radius < r0 - cfg.tolerance or not np.all(
            final.distances >= final.radius - cfg.active_tol):
        final_idx, final = max(history, key=lambda h: h[1].radius)
        flagged = True
        log.warning("equidistant core: active-set reduction lost radius; "
                    "returning the largest-radius round")
    return CoreResult(PointSet(space, X[final_idx]), tuple(int(i) for i in final_idx),
                      final, len(history), flagged)
