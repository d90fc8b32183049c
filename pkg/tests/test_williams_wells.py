import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lp_extremal import InputError, WeightedSpace, alpha_exponent, ww_gap, ww_sides
from lp_extremal.williams_wells import drop_zero_weights


@pytest.mark.parametrize("p,alpha", [(2, 2), (1.5, 3), (4, 4)])
def test_alpha_examples(p, alpha):
    assert alpha_exponent(p) == alpha


@pytest.mark.parametrize("p", [1.0, 0.3, np.inf])
def test_alpha_rejects(p):
    with pytest.raises(InputError):
        alpha_exponent(p)


def test_single_point():
    sp = WeightedSpace(3, [1, 2])
    assert ww_sides(sp, [[1.0, -2.0]], [1.0]) == (0.0, 0.0)
    assert ww_gap(sp, [[1.0, -2.0]], [1.0]) == 0.0


def test_symmetric_pair_is_equality():
    sp = WeightedSpace(2, [1, 1])
    lhs, rhs = ww_sides(sp, [[1.0, 0.0], [-1.0, 0.0]], [0.5, 0.5])
    assert lhs == pytest.approx(2.0, abs=1e-15) and rhs == pytest.approx(2.0, abs=1e-15)
    assert ww_gap(sp, [[1.0, 0.0], [-1.0, 0.0]], [0.5, 0.5]) == pytest.approx(0.0, abs=1e-15)


def test_cubic_two_point():
    sp = WeightedSpace(3, [1])
    lhs, rhs = ww_sides(sp, [[1.0], [0.0]], [0.5, 0.5])
    assert lhs == pytest.approx(0.25, abs=1e-15)
    assert rhs == pytest.approx(0.5, abs=1e-15)
    assert ww_gap(sp, [[1.0], [0.0]], [0.5, 0.5]) == pytest.approx(0.25, abs=1e-15)


def test_default_weights_uniform():
    sp = WeightedSpace(1.5, [1, 1])
    X = [[0.0, 1.0], [2.0, 0.0], [1.0, 1.0]]
    assert ww_sides(sp, X) == ww_sides(sp, X, [1 / 3] * 3)


def test_mismatch():
    with pytest.raises(InputError):
        ww_sides(WeightedSpace(2, [1]), [[0.0], [1.0]], [1.0])


@st.composite
def instances(draw):
    seed = draw(st.integers(0, 2 ** 32 - 1))
    rng = np.random.default_rng(seed)
    n, cells = int(rng.integers(1, 9)), int(rng.integers(1, 17))
    sp = WeightedSpace(float(rng.choice([1.2, 1.5, 2, 3, 5])), rng.uniform(0.1, 2, cells))
    X = rng.uniform(-3, 3, (n, cells))
    t = rng.dirichlet(np.full(n, 0.5))
    return sp, X, t / t.sum(), rng


@given(instances())
def test_gap_non_negative(inst):
    sp, X, t, _ = inst
    lhs, rhs = ww_sides(sp, X, t)
    assert lhs >= 0 and rhs >= 0
    assert rhs - lhs >= -1e-9 * max(1.0, rhs)


@given(instances())
def test_zero_weight_points_can_be_removed(inst):
    sp, X, t, rng = inst
    n = X.shape[0]
    extra = rng.uniform(-3, 3, (2, sp.dim))
    Xz = np.vstack([X, extra])
    tz = np.concatenate([t, [0.0, 0.0]])
    order = rng.permutation(n + 2)
    Xz, tz = Xz[order], tz[order]
    Xr, tr = drop_zero_weights(Xz, tz)
    full = ww_sides(sp, Xz, tz)
    reduced = ww_sides(sp, Xr, tr)
    assert full[0] == pytest.approx(reduced[0], abs=1e-12 * max(1, full[0]))
    assert full[1] == pytest.approx(reduced[1], abs=1e-12 * max(1, full[1]))


@given(instances(), st.floats(0.1, 10))
def test_scaling(inst, c):
    sp, X, t, _ = inst
    lhs, rhs = ww_sides(sp, X, t)
    lhs_c, rhs_c = ww_sides(sp, c * X, t)
    a = sp.alpha
    assert lhs_c == pytest.approx(c ** a * lhs, rel=1e-9, abs=1e-300)
    assert rhs_c == pytest.approx(c ** a * rhs, rel=1e-9, abs=1e-300)
