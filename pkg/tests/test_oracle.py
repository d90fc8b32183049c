import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lp_extremal import (
    OracleLimitError,
    WeightedSpace,
    diameter,
    exhaustive_simplex,
    grid_radius,
    pairwise_table,
    random_family,
    relative_radius,
)
from lp_extremal.space import pairwise_distances


def test_grid_two_points_exact():
    sp = WeightedSpace(3, [2.0])
    assert grid_radius(sp, [[0.0], [4.0]], 10) == pytest.approx(2 * 2 ** (1 / 3), abs=1e-14)


def test_grid_triangle(unit_vectors):
    sp, X = unit_vectors
    # 1/3 is on the grid at resolution 3 and 30, not at 10.
    exact = math.sqrt(6) / 3
    assert grid_radius(sp, X, 3) == pytest.approx(exact, abs=1e-14)
    assert grid_radius(sp, X, 30) == pytest.approx(exact, abs=1e-14)
    assert exact < grid_radius(sp, X, 10) <= exact + diameter(sp, X) / 10


def test_grid_single_point():
    sp = WeightedSpace(2, [1, 1])
    assert grid_radius(sp, [[3.0, 4.0]], 5) == 0.0


@given(st.integers(0, 100_000))
def test_grid_brackets_solver(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 6))
    sp, A = random_family(seed, n, int(rng.integers(1, 4)), float(rng.choice([1.5, 2, 4])),
                          coeff_range=(-1, 1))
    R = 12 if n == 5 else 24
    g = grid_radius(sp, A, R)
    r = relative_radius(sp, A).radius
    assert r <= g + 1e-9
    assert g <= r + diameter(sp, A) / R + 1e-9


def test_limits():
    sp = WeightedSpace(2, [1])
    with pytest.raises(OracleLimitError):
        grid_radius(sp, np.zeros((6, 1)), 4)
    with pytest.raises(OracleLimitError):
        grid_radius(sp, np.zeros((2, 1)), 0)
    with pytest.raises(OracleLimitError):
        exhaustive_simplex(sp, np.zeros((13, 1)), 2)
    with pytest.raises(OracleLimitError):
        exhaustive_simplex(sp, np.zeros((6, 1)), 5)
    with pytest.raises(OracleLimitError):
        exhaustive_simplex(sp, np.zeros((6, 1)), 0)


def test_exhaustive_square(square):
    sp, X = square
    assert exhaustive_simplex(sp, X, 1) == (pytest.approx(math.sqrt(2)), (0, 3))
    assert exhaustive_simplex(sp, X, 2) == (pytest.approx(1.0), (0, 1, 2))
    assert exhaustive_simplex(sp, X, 3) == (pytest.approx(1.0), (0, 1, 2, 3))
    assert exhaustive_simplex(sp, X, 4) == (-math.inf, ())


def test_pairwise_table_cases(square):
    sp, X = square
    T = pairwise_table(sp, X)
    s = math.sqrt(2)
    np.testing.assert_allclose(T, [[0, 1, 1, s], [1, 0, s, 1], [1, s, 0, 1], [s, 1, 1, 0]],
                               atol=1e-15)
    sp3 = WeightedSpace(3, [1, 8])
    T3 = pairwise_table(sp3, [[0, 0], [1, 1]])
    assert T3[0, 1] == pytest.approx(9 ** (1 / 3), abs=1e-14)


@given(st.integers(0, 100_000))
def test_pairwise_table_agrees_with_vectorized(seed):
    sp, A = random_family(seed, 7, 4, 1 + 10 * np.random.default_rng(seed).random())
    T = pairwise_table(sp, A)
    np.testing.assert_allclose(T, pairwise_distances(sp, A), rtol=1e-13, atol=1e-13)
    np.testing.assert_array_equal(T, T.T)
