"""Acceptance criteria as runnable checks.

Each criterion returns a :class:`CriterionResult` made of named
sub-checks. Instances are drawn from ``numpy.random.default_rng([seed, id])``
so a run is reproducible from its seed alone.
"""

from __future__ import annotations

import math
import os
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from .chebyshev import SolverConfig, equidistant_core, relative_radius
from .errors import ConvergenceWarning
from .extremal import (
    Infeasible,
    extract_simplex,
    extremality_ratio,
    gulevich_margin,
    heavy_indices,
    jung_constant,
)
from .gallery import indicator_family, rademacher_family, random_family
from .oracle import exhaustive_simplex, grid_radius, pairwise_table
from .space import PointSet, WeightedSpace, diameter, norm, pairwise_distances
from .williams_wells import ww_gap, ww_sides

__all__ = ["Check", "CriterionResult", "CRITERIA", "run_criterion", "run_all"]

P_GRID = (1.2, 1.5, 2.0, 3.0, 5.0)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class CriterionResult:
    id: int
    title: str
    checks: list = field(default_factory=list)
    elapsed: float = 0.0
    time_limit: Optional[float] = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.id:2d}: {self.title} ({self.elapsed:.1f}s)"

    def as_dict(self) -> dict:
        return {"id": self.id, "title": self.title, "passed": self.passed,
                "time_limit": self.time_limit,
                "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                           for c in self.checks]}


def _rng(seed, cid):
    return np.random.default_rng([seed, cid])


def _timed(result: CriterionResult, start: float) -> CriterionResult:
    result.elapsed = time.perf_counter() - start
    if result.time_limit is not None:
        result.checks.append(Check("runtime", result.elapsed < result.time_limit,
                                   f"{result.elapsed:.2f}s < {result.time_limit:g}s"))
    return result


def _random_set(rng, n_range, cells_range, p_choices, coeff_range=(-3.0, 3.0)):
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    cells = int(rng.integers(cells_range[0], cells_range[1] + 1))
    p = float(rng.choice(p_choices))
    return random_family(int(rng.integers(2 ** 31)), n, cells, p, coeff_range)


# ---------------------------------------------------------------------------


def criterion_1(seed=0):
    t0 = time.perf_counter()
    res = CriterionResult(1, "Jung constants at p = 2, 3, 1.5, 1", time_limit=1.0)
    expected = {2.0: 2 ** -0.5, 3.0: 2 ** (-1 / 3), 1.5: 2 ** (-1 / 3), 1.0: 1.0}
    for p, want in expected.items():
        got = jung_constant(p)
        res.checks.append(Check(f"J(p={p:g})", abs(got - want) <= 1e-12,
                                f"{got!r} vs {want!r}"))
    return _timed(res, t0)


def criterion_2(seed=0, count=10_000):
    t0 = time.perf_counter()
    res = CriterionResult(2, f"Williams-Wells gap >= -1e-9 rel on {count} instances",
                          time_limit=30.0)
    rng = _rng(seed, 2)
    worst, bad = np.inf, 0
    for _ in range(count):
        n = int(rng.integers(1, 9))
        cells = int(rng.integers(1, 17))
        p = float(rng.choice(P_GRID))
        space = WeightedSpace(p, rng.uniform(0.1, 2.0, cells))
        X = rng.uniform(-3.0, 3.0, (n, cells))
        t = rng.dirichlet(np.full(n, float(rng.choice([0.3, 1.0, 3.0]))))
        t = t / math.fsum(t)
        lhs, rhs = ww_sides(space, X, t)
        rel = (rhs - lhs) / max(1.0, rhs)
        worst = min(worst, rel)
        bad += rel < -1e-9
    res.checks.append(Check("gap non-negative", bad == 0,
                            f"{bad} violations; worst relative gap {worst:.3g}"))
    return _timed(res, t0)


def criterion_3(seed=0, count=50):
    t0 = time.perf_counter()
    res = CriterionResult(3, f"solver vs grid oracle (R=200) within 5e-3 on {count} instances",
                          time_limit=120.0)
    rng = _rng(seed, 3)
    worst = 0.0
    below = 0
    for _ in range(count):
        space, X = _random_set(rng, (1, 4), (1, 3), (1.5, 2.0, 3.0), (-1.0, 1.0))
        r = relative_radius(space, X).radius
        g = grid_radius(space, X, 200)
        worst = max(worst, abs(r - g))
        below += g < r - 1e-9
    res.checks.append(Check("|solver - grid| <= 5e-3", worst <= 5e-3, f"worst {worst:.3g}"))
    res.checks.append(Check("grid >= solver", below == 0, f"{below} instances below"))
    return _timed(res, t0)


def criterion_4(seed=0, count=100):
    t0 = time.perf_counter()
    res = CriterionResult(4, f"two-point law on {count} pairs x {len(P_GRID)} exponents")
    rng = _rng(seed, 4)
    worst_r = worst_c = 0.0
    for _ in range(count):
        cells = int(rng.integers(1, 9))
        mu = rng.uniform(0.1, 2.0, cells)
        X = rng.uniform(-3.0, 3.0, (2, cells))
        for p in P_GRID:
            space = WeightedSpace(p, mu)
            sol = relative_radius(space, X)
            d = norm(space, X[0] - X[1])
            worst_r = max(worst_r, abs(sol.radius - d / 2))
            worst_c = max(worst_c, norm(space, sol.center - X.mean(axis=0)))
    res.checks.append(Check("radius = d/2", worst_r <= 1e-6, f"worst {worst_r:.3g}"))
    res.checks.append(Check("center = midpoint", worst_c <= 1e-6, f"worst {worst_c:.3g}"))
    return _timed(res, t0)


def criterion_5(seed=0):
    t0 = time.perf_counter()
    p = 3.0
    res = CriterionResult(5, "indicator family, p = 3")
    js = jung_constant(p)
    dist_err = 0.0
    for n in range(2, 17):
        space, A = indicator_family(n, p)
        D = pairwise_distances(space, A)
        off = D[~np.eye(n, dtype=bool)]
        dist_err = max(dist_err, float(np.abs(off - 2 ** (1 / p)).max()))
    res.checks.append(Check("pairwise distances = 2^(1/3)", dist_err <= 1e-12,
                            f"max error {dist_err:.3g}"))
    rad_err = 0.0
    for n in range(2, 11):
        space, A = indicator_family(n, p)
        closed = ((1 - 1 / n) ** 3 + (n - 1) / n ** 3) ** (1 / 3)
        rad_err = max(rad_err, abs(relative_radius(space, A).radius - closed))
    res.checks.append(Check("radius = closed form (n=2..10)", rad_err <= 1e-4,
                            f"max error {rad_err:.3g}"))
    ratios = {}
    for n in (2, 4, 8, 16):
        space, A = indicator_family(n, p)
        ratios[n] = extremality_ratio(space, A)[0]
    vals = [ratios[n] for n in (2, 4, 8, 16)]
    tol = SolverConfig().tolerance
    res.checks.append(Check("ratio increasing over n=2,4,8,16",
                            all(b >= a - tol for a, b in zip(vals, vals[1:])) and vals[-1] <= js,
                            ", ".join(f"{n}:{r:.5f}" for n, r in ratios.items())))
    gap16 = js - ratios[16]
    res.checks.append(Check("gap to 2^(-1/3) < 0.02 at n=16", 0 <= gap16 < 0.02,
                            f"gap {gap16:.5f}"))
    return _timed(res, t0)


def criterion_6(seed=0, K=8):
    t0 = time.perf_counter()
    p = 1.5
    res = CriterionResult(6, f"Rademacher family, p = 1.5, K = {K}")
    js = jung_constant(p)
    dist_err = 0.0
    radii, ratios = {}, {}
    for n in (2, 4, 8):
        space, B = rademacher_family(n, p, K)
        D = pairwise_distances(space, B)
        off = D[~np.eye(n, dtype=bool)]
        dist_err = max(dist_err, float(np.abs(off - 2 ** (1 - 1 / p)).max()))
        radii[n] = relative_radius(space, B).radius
        ratios[n] = radii[n] / diameter(space, B)
    res.checks.append(Check("pairwise distances = 2^(1/3)", dist_err <= 1e-12,
                            f"max error {dist_err:.3g}"))
    listing = ", ".join(f"r_{n}={r:.6f}" for n, r in radii.items())
    res.checks.append(Check("r_n in [1 - 1e-6, 1.25]",
                            all(1 - 1e-6 <= r <= 1.25 for r in radii.values()), listing))
    dev = [radii[n] - 1 for n in (2, 4, 8)]
    res.checks.append(Check("r_n - 1 non-increasing over n=2,4,8",
                            all(b <= a + 1e-9 for a, b in zip(dev, dev[1:])), listing))
    r8 = ratios[8]
    res.checks.append(Check("ratio at n=8 within 0.05 of J_s, from above",
                            js - 1e-6 <= r8 <= js + 0.05,
                            f"ratio {r8:.6f}, J_s {js:.6f}"))
    return _timed(res, t0)


def criterion_7(seed=0, count=1000):
    t0 = time.perf_counter()
    res = CriterionResult(7, f"Gulevich margin > 0 on {count} random sets", time_limit=120.0)
    rng = _rng(seed, 7)
    worst, bad = np.inf, 0
    for _ in range(count):
        space, X = _random_set(rng, (2, 8), (1, 8), P_GRID)
        if diameter(space, X) == 0:
            continue
        mg = gulevich_margin(space, X)
        worst = min(worst, mg)
        bad += not mg > 0
    res.checks.append(Check("margin > 0", bad == 0, f"{bad} failures; smallest margin {worst:.4g}"))
    return _timed(res, t0)


def criterion_8(seed=0, count=200):
    t0 = time.perf_counter()
    res = CriterionResult(8, f"simplex extraction vs exhaustive oracle on {count} sets",
                          time_limit=60.0)
    rng = _rng(seed, 8)
    mismatch = unverified = feasible = 0
    for _ in range(count):
        m = int(rng.integers(1, 5))
        space, X = _random_set(rng, (m + 1, 12), (1, 6), P_GRID)
        d = diameter(space, X)
        eps = d * float(rng.uniform(0.02, 0.9))
        best, _ = exhaustive_simplex(space, X, m)
        expect = best >= d - eps
        got = extract_simplex(space, X, m, eps)
        ok = not isinstance(got, Infeasible)
        feasible += ok
        mismatch += ok != expect
        if ok:
            T = pairwise_table(space, X)
            idx = got.indices
            edges = [T[i, j] for k, i in enumerate(idx) for j in idx[k + 1:]]
            if len(set(idx)) != m + 1 or min(edges) < d - eps:
                unverified += 1
    res.checks.append(Check("success iff oracle feasible", mismatch == 0,
                            f"{mismatch} mismatches ({feasible} feasible)"))
    res.checks.append(Check("witnesses re-verified", unverified == 0,
                            f"{unverified} failed re-verification"))
    return _timed(res, t0)


def criterion_9(seed=0, count=100):
    t0 = time.perf_counter()
    res = CriterionResult(9, f"equidistant core on {count} instances")
    rng = _rng(seed, 9)
    lost = spread_bad = 0
    worst_loss = worst_spread = 0.0
    for _ in range(count):
        space, X = _random_set(rng, (2, 8), (1, 8), P_GRID)
        if diameter(space, X) == 0:
            continue
        r_all = relative_radius(space, X).radius
        core = equidistant_core(space, X)
        sol = core.solution
        loss = r_all - sol.radius
        spread = float(np.max(np.abs(sol.distances - sol.radius)))
        worst_loss, worst_spread = max(worst_loss, loss), max(worst_spread, spread)
        lost += loss > 1e-5
        spread_bad += spread > 1e-5
    res.checks.append(Check("r(core) >= r(A) - 1e-5", lost == 0,
                            f"{lost} failures; worst loss {worst_loss:.3g}"))
    res.checks.append(Check("core points equidistant within 1e-5", spread_bad == 0,
                            f"{spread_bad} failures; worst spread {worst_spread:.3g}"))
    return _timed(res, t0)


def _heavy_configuration(rng, use_core):
    """Random set scaled so that ``d(A)^alpha = 2``, with weights and radius.

    Half the configurations use the equidistant core with its center
    weights and radius, where the Williams-Wells certificate holds.
    """
    while True:
        space, X = _random_set(rng, (2, 8), (1, 8), P_GRID)
        d = diameter(space, X)
        if d > 0:
            break
    X = X.coords * (2 ** (1 / space.alpha) / d)
    if use_core:
        core = equidistant_core(space, X)
        return space, core.core.coords, core.solution.weights.values, min(core.solution.radius, 1.0)
    n = X.shape[0]
    w = rng.dirichlet(np.ones(n))
    w = w / math.fsum(w)
    return space, X, w, float(rng.uniform(0.05, 1.0))


def criterion_10(seed=0, count=500):
    t0 = time.perf_counter()
    res = CriterionResult(10, f"heavy-index consistency on {count} configurations")
    rng = _rng(seed, 10)
    sum_err = 0.0
    certified = violations = 0
    for k in range(count):
        space, X, w, r = _heavy_configuration(rng, use_core=(k % 2 == 0))
        rep = heavy_indices(space, X, w, r)
        heavy_mass = math.fsum(w[list(rep.S)])
        sum_err = max(sum_err, abs(rep.lambda_ + heavy_mass - 1.0))
        lhs_rhs = ww_sides(space, X, w)
        if 2 * r ** space.alpha <= lhs_rhs[1]:
            certified += 1
            if rep.lambda_ > rep.lambda_bound + 1e-9:
                violations += 1
    res.checks.append(Check("lambda + sum_S w = 1", sum_err <= 1e-12, f"max error {sum_err:.3g}"))
    res.checks.append(Check("lambda <= sqrt(1 - r^alpha) under certificate", violations == 0,
                            f"{violations} violations among {certified} certified"))
    return _timed(res, t0)


CRITERIA: dict[int, Callable] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
}


def run_criterion(cid: int, seed: int = 0) -> CriterionResult:
    return CRITERIA[cid](seed=seed)


def run_all(seed: int = 0, ids: Optional[Iterable[int]] = None,
            threads: Optional[int] = None) -> list[CriterionResult]:
    """Run the selected criteria; ``LP_EXTREMAL_THREADS`` caps parallelism."""
    ids = sorted(ids or CRITERIA)
    if threads is None:
        threads = int(os.environ.get("LP_EXTREMAL_THREADS", "1") or 1)
    threads = max(1, threads)
    with warnings.catch_warnings():
        # Non-convergence shows up in the checks themselves.
        warnings.simplefilter("ignore", ConvergenceWarning)
        if threads == 1:
            return [run_criterion(i, seed) for i in ids]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda i: run_criterion(i, seed), ids))
