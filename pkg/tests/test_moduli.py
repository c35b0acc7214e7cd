import numpy as np
import pytest

import oracles
from extlip import (
    DomainError,
    PointMap,
    RealFunctionSample,
    VectorMap,
    lip_at,
    lip_const,
    norm_Lx,
    omega,
    omega_at,
    sampled_lip_quantities,
    sup_omega_ratio,
)
from extlip import generate as gen


@pytest.fixture
def swap(m3):
    return PointMap.from_labels(m3, m3, {"0": "0", "a": "b", "b": "a"})


def test_swap_moduli(swap):
    # pairs within distance 1: only (0, a), mapped to (0, b) at distance 2
    w = omega(swap, 1.0)
    assert w.value == 2.0 and w.witness == (0, 1)
    assert omega_at(swap, "0", 1.0).value == 2.0
    assert omega_at(swap, "0", 1.0).witness == (1,)
    assert lip_const(swap).value == 2.0
    assert lip_at(swap, 0).value == 2.0
    assert sup_omega_ratio(swap, 0).value == 2.0
    assert sup_omega_ratio(swap, 0).witness == (1.0,)


def test_omega_below_smallest_distance_is_zero(swap):
    w = omega(swap, 0.5)
    assert w.value == 0.0 and w.witness is None


def test_omega_uses_closed_ball(swap):
    # t exactly 1.5 admits the pair (a, b)
    assert omega(swap, 1.5).value == 2.0
    # around a: 0 maps to 0 at distance 2 from swap(a) = b
    assert omega_at(swap, "a", 1.5).value == 2.0
    assert omega_at(swap, "a", 1.5).witness == (0,)


@pytest.mark.parametrize("t", [0.0, -1.0])
def test_nonpositive_t_rejected(swap, t):
    with pytest.raises(DomainError):
        omega(swap, t)
    with pytest.raises(DomainError):
        omega_at(swap, 0, t)


def test_norm_lx(m3):
    f = VectorMap(m3, [[3.0], [4.0], [-1.0]])
    # slopes from 0: |4-3|/1 = 1, |-1-3|/2 = 2; |f(0)| = 3
    assert norm_Lx(f, "0") == 3.0
    assert lip_at(f, "0").value == 2.0


def test_singleton_space_is_vacuous():
    from extlip import PointedMetricSpace

    s = PointedMetricSpace(None, [[0.0]])
    f = PointMap.identity(s)
    assert lip_const(f).value == 0.0 and lip_const(f).witness is None
    assert lip_at(f, 0).value == 0.0
    assert sup_omega_ratio(f, 0).value == 0.0


@pytest.mark.parametrize("seed", range(40))
def test_against_brute_force(seed):
    rng = np.random.default_rng(seed)
    space = gen.random_space(rng, 2, 7)
    if seed % 2:
        f = gen.random_point_map(rng, space, gen.random_space(rng, 2, 7), base_preserving=False)
    else:
        f = gen.random_vector_map(rng, space, 2, gen.NORM_TAGS[seed % 3], base_zero=False)
    x0 = int(rng.integers(space.n))
    t = float(rng.uniform(0.1, 4.0))
    assert omega(f, t).value == pytest.approx(oracles.omega(f, t), abs=1e-12)
    assert omega_at(f, x0, t).value == pytest.approx(oracles.omega_at(f, x0, t), abs=1e-12)
    assert lip_const(f).value == pytest.approx(oracles.lip_const(f), abs=1e-12)
    assert lip_at(f, x0).value == pytest.approx(oracles.lip_at(f, x0), abs=1e-12)
    assert sup_omega_ratio(f, x0).value == lip_at(f, x0).value


def test_witnesses_attain_the_value(rng):
    space = gen.random_space(rng, 5, 8)
    f = gen.random_vector_map(rng, space, 3, "one", base_zero=False)
    L = lip_const(f)
    i, j = L.witness
    assert f.image_dist()[i, j] / space.dist[i, j] == L.value


def test_ties_break_to_lowest_pair(m3):
    f = PointMap.constant_base(m3)
    assert lip_const(f).witness == (0, 1)


class TestSampled:
    def test_power_gap(self):
        grid = np.linspace(0.0, 1.0, 100_000)
        q = sampled_lip_quantities(RealFunctionSample(grid, grid**3))
        assert q.e_const == 1.0 and q.e_witness == 1.0
        assert 3 * (1 - 1e-3) <= q.lip_est <= 3
        assert q.in_E

    def test_not_base_preserving(self):
        grid = np.linspace(-1.0, 1.0, 11)
        q = sampled_lip_quantities(RealFunctionSample(grid, np.cos(grid)))
        assert not q.in_E and np.isnan(q.e_const) and q.base_value == 1.0

    def test_lip_est_is_adjacent_slope(self):
        q = sampled_lip_quantities(RealFunctionSample([-1.0, 0.0, 2.0], [3.0, 0.0, 1.0]))
        assert q.lip_est == 3.0 and q.lip_witness == (-1.0, 0.0)
        assert q.e_const == 3.0 and q.e_witness == -1.0
