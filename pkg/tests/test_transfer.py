import numpy as np
import pytest

from extlip import (
    CoordSpace,
    DomainError,
    StructuralError,
    VectorMap,
    induced_space,
    norm_Lx,
    phi,
    phi_inv,
    transfer_compose,
    vanishing_check,
)
from extlip import generate as gen
from extlip.corpus import corrupted_phi
from extlip.metric import vector_norm


def test_phi_pointwise(m3):
    h = VectorMap(m3, [[1.0], [2.0], [-1.0]])
    g = phi("a", h)
    # g(x') = d(x', a) h(x') + h(a)
    assert g.values[:, 0].tolist() == [1 * 1 + 2, 0 * 2 + 2, 1.5 * -1 + 2]
    assert np.allclose(phi_inv("a", g).values, h.values)


def test_transfer_value_at_base(m3):
    f = VectorMap(m3, [[0.0], [1.0], [2.0]])
    res = transfer_compose("a", "b", f)
    # at 0: d(0,b)/d(0,a) (f(0)-f(a)) + (f(b)-f(a))/d(a,b) = 2*(-1) + 1/1.5
    assert res.composed.values[0, 0] == pytest.approx(-2 + 2 / 3)
    assert res.max_gap <= 1e-12


def test_transfer_same_point_rejected(m3):
    with pytest.raises(DomainError):
        transfer_compose("a", "a", VectorMap.zeros(m3))


@pytest.mark.parametrize("seed", range(30))
def test_phi_is_isometric(seed):
    rng = np.random.default_rng(seed)
    space = gen.random_space(rng, 1, 8)
    h = gen.random_vector_map(rng, space, 3, gen.NORM_TAGS[seed % 3], base_zero=False)
    x = int(rng.integers(space.n))
    # independent: the sup norm of the table, read straight off the values
    sup = max(float(np.linalg.norm(row, ord={"one": 1, "two": 2, "sup": np.inf}[h.norm_tag]))
              for row in h.values)
    assert abs(norm_Lx(phi(x, h), x) - sup) <= 1e-9
    assert np.max(np.abs(phi_inv(x, phi(x, h)).values - h.values)) <= 1e-9
    assert np.max(np.abs(phi(x, phi_inv(x, h)).values - h.values)) <= 1e-9


def test_corrupted_phi_breaks_isometry(m3):
    h = VectorMap(m3, [[1.0], [2.0], [-3.0]])
    sup = float(np.max(vector_norm(h.values, "two")))
    # corrupted values at 0, b: 3 and -4.75, so the slope from a to b is 6.75 / 1.5
    assert norm_Lx(corrupted_phi("a", h), "a") == pytest.approx(4.5)
    assert sup == 3.0


@pytest.fixture
def plane():
    return CoordSpace([[0, 0], [-1, 0], [1, 0], [0, 1]], "two", labels=("o", "x1", "x2", "top"))


def test_vanishing_support_on_bisector(plane):
    f = VectorMap(induced_space(plane), [[0.0], [0.0], [0.0], [7.0]])
    res = vanishing_check(f, plane, "x1", "x2")
    assert res.is_fixed_point and res.vanishing_holds and res.passed


def test_indicator_is_not_fixed(plane):
    f = VectorMap(induced_space(plane), [[0.0], [0.0], [1.0], [0.0]])
    res = vanishing_check(f, plane, "x1", "x2")
    assert not res.is_fixed_point
    assert not res.vanishing_holds and res.violations == ["x2"]
    assert res.passed


def test_vanishing_needs_coordinates(m3):
    with pytest.raises(StructuralError):
        vanishing_check(VectorMap.zeros(m3), m3, "a", "b")
