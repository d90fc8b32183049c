import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lp_extremal import (
    InputError,
    diameter,
    distance,
    extremality_ratio,
    indicator_family,
    norm,
    rademacher_family,
    random_family,
)
from lp_extremal.gallery import pairing_lower_bound, rademacher_vector
from lp_extremal.oracle import pairwise_table


def test_rademacher_vectors_k2():
    np.testing.assert_array_equal(rademacher_vector(0, 2), [1, 1, -1, -1])
    np.testing.assert_array_equal(rademacher_vector(1, 2), [1, -1, 1, -1])
    with pytest.raises(InputError):
        rademacher_vector(2, 2)


@pytest.mark.parametrize("n,p", [(2, 2), (5, 3), (9, 6.5)])
def test_indicator_equidistant_unit_norm(n, p):
    sp, A = indicator_family(n, p)
    assert sp.dim == n and np.all(sp.cells == 1)
    T = pairwise_table(sp, A)
    off = T[~np.eye(n, dtype=bool)]
    np.testing.assert_allclose(off, 2 ** (1 / p), rtol=1e-14)
    for x in A:
        assert norm(sp, x) == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("n,p,K", [(1, 1.5, 1), (4, 1.2, 4), (6, 1.7, None)])
def test_rademacher_equidistant_unit_norm(n, p, K):
    sp, B = rademacher_family(n, p, K)
    assert sp.dim == 2 ** (K if K is not None else max(n, 6))
    assert sp.total_measure == pytest.approx(1.0, abs=1e-15)
    for x in B:
        assert norm(sp, x) == pytest.approx(1.0, abs=1e-14)
    if n > 1:
        T = pairwise_table(sp, B)
        np.testing.assert_allclose(T[~np.eye(n, dtype=bool)], 2 ** (1 - 1 / p), rtol=1e-14)


@pytest.mark.parametrize("call", [
    lambda: indicator_family(1, 3),
    lambda: indicator_family(4, 1.5),
    lambda: rademacher_family(4, 2.0),
    lambda: rademacher_family(4, 1.5, 3),
    lambda: rademacher_family(0, 1.5),
    lambda: random_family(0, 0, 3, 2),
])
def test_family_argument_errors(call):
    with pytest.raises(InputError):
        call()


def test_pairing_bound_outside_the_span():
    sp, B = rademacher_family(4, 1.5, 5)
    y = B.coords.mean(axis=0)
    g = rademacher_vector(4, 5)
    bound = pairing_lower_bound(sp, y, g)
    assert bound == pytest.approx(1.0, abs=1e-14)
    assert distance(sp, y, g) >= bound - 1e-14


@pytest.mark.parametrize("n", [2, 4, 8])
def test_pairing_bound_inside_the_hull(n):
    sp, B = rademacher_family(n, 1.5, 8)
    y = B.coords.mean(axis=0)
    g = B.coords[0]
    assert pairing_lower_bound(sp, y, g) == pytest.approx(1 - 1 / n, abs=1e-14)
    assert distance(sp, y, g) >= 1 - 1 / n


def test_pairing_rejects_zero_functional():
    sp, B = rademacher_family(2, 1.5, 2)
    with pytest.raises(InputError):
        pairing_lower_bound(sp, B[0], np.zeros(4))


def test_random_family_deterministic():
    a = random_family(7, 5, 3, 2.0)
    b = random_family(7, 5, 3, 2.0)
    c = random_family(8, 5, 3, 2.0)
    assert a[0] == b[0]
    np.testing.assert_array_equal(a[1].coords, b[1].coords)
    assert not np.array_equal(a[1].coords, c[1].coords)


@given(st.integers(0, 10_000), st.floats(0.2, 1.0))
def test_random_ranges(seed, hi):
    sp, A = random_family(seed, 4, 3, 1.5, coeff_range=(-hi, hi), measure_range=(0.5, 1.5))
    assert np.all(np.abs(A.coords) <= hi)
    assert np.all((sp.cells >= 0.5) & (sp.cells <= 1.5))


def test_indicator_ratio_increases_with_n():
    ratios = [extremality_ratio(*indicator_family(n, 3))[0] for n in (2, 4, 8, 16)]
    assert all(a < b for a, b in zip(ratios, ratios[1:]))
    np.testing.assert_allclose(ratios, [0.5, 0.61655, 0.69918, 0.74519], atol=5e-5)


def test_diameters_match_closed_forms():
    assert diameter(*indicator_family(6, 4)) == pytest.approx(2 ** 0.25, abs=1e-14)
    assert diameter(*rademacher_family(3, 1.25, 6)) == pytest.approx(2 ** 0.2, abs=1e-14)
