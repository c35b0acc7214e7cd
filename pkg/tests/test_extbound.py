import math

import numpy as np
import pytest

import oracles
from extlip import (
    BasePointError,
    ClosureError,
    CoordSpace,
    PointMap,
    StructuralError,
    VectorMap,
    de_distance,
    e_constant,
    eta_restrict,
    gamma_embed,
    induced_space,
    radial_retract,
    reciprocal_space_check,
    restrict_to_ball,
)
from extlip import generate as gen
from extlip.extbound import is_retraction_closed, reciprocal_space


def test_swap_e_constant_and_de(m3):
    swap = PointMap.from_labels(m3, m3, {"0": "0", "a": "b", "b": "a"})
    e = e_constant(swap)
    # d(b,0)/d(a,0) = 2 beats d(a,0)/d(b,0) = 1/2
    assert e.value == 2.0 and e.witness == 1
    # d(b,a)/d(a,0) = 1.5, d(a,b)/d(b,0) = 0.75
    assert de_distance(swap, PointMap.identity(m3)) == 1.5


def test_base_moving_map(m3):
    T = PointMap(m3, m3, np.array([1, 1, 2]))
    with pytest.raises(BasePointError):
        e_constant(T)
    res = e_constant(T, strict=False)
    assert math.isnan(res.value) and not res.base_ok
    with pytest.raises(BasePointError):
        de_distance(T, PointMap.identity(m3))


def test_de_needs_matching_shapes(m3):
    other = gen.graph_space(np.random.default_rng(1), 3)
    with pytest.raises(StructuralError):
        de_distance(PointMap.identity(m3), PointMap.constant_base(m3, other))


@pytest.mark.parametrize("seed", range(30))
def test_e_constant_and_de_match_brute_force(seed):
    rng = np.random.default_rng(seed)
    src, dst = gen.random_space(rng, 2, 8), gen.random_space(rng, 2, 8)
    T, S = gen.random_point_map(rng, src, dst), gen.random_point_map(rng, src, dst)
    assert e_constant(T).value == pytest.approx(oracles.e_constant(T), abs=1e-12)
    assert de_distance(T, S) == pytest.approx(oracles.de_distance(T, S), abs=1e-12)
    f = gen.random_vector_map(rng, src, 3, gen.NORM_TAGS[seed % 3])
    assert e_constant(f).value == pytest.approx(oracles.e_constant(f), abs=1e-12)


def test_de_to_constant_is_e_constant(rng):
    src, dst = gen.random_space(rng, 4, 7), gen.random_space(rng, 4, 7)
    T = gen.random_point_map(rng, src, dst)
    assert de_distance(T, PointMap.constant_base(src, dst)) == e_constant(T).value


@pytest.mark.parametrize("tag", ["one", "two", "sup"])
def test_radial_retract(tag):
    x = np.array([3.0, -4.0])
    g = radial_retract(x, tag)
    assert np.linalg.norm(g, ord={"one": 1, "two": 2, "sup": np.inf}[tag]) == pytest.approx(1.0)
    assert np.allclose(g * np.linalg.norm(x, ord={"one": 1, "two": 2, "sup": np.inf}[tag]), x)
    inner = np.array([0.1, 0.2])
    assert radial_retract(inner, tag) is not None
    assert np.array_equal(radial_retract(inner, tag), inner)


def _line():
    return CoordSpace([[0.0], [0.5], [-0.5], [1.0], [-1.0], [2.0], [-2.0]], "two",
                      labels=("0", "0.5", "-0.5", "1", "-1", "2", "-2"))


def test_gamma_on_the_line():
    space = _line()
    ball, keep = restrict_to_ball(space)
    assert keep.tolist() == [0, 1, 2, 3, 4]
    f = VectorMap(induced_space(ball), ball.coords[:, 0] ** 3 + ball.coords[:, 0])
    g = gamma_embed(f, space)
    assert g.values[g.src.index("2"), 0] == f.values[ball.labels.index("1"), 0]
    assert g.values[g.src.index("-2"), 0] == f.values[ball.labels.index("-1"), 0]
    assert e_constant(g).value == e_constant(f).value
    assert np.array_equal(eta_restrict(g, space).values, f.values)


def test_gamma_needs_retraction_closure():
    space = CoordSpace([[0.0], [0.5], [2.0]], "two")
    assert not is_retraction_closed(space)
    ball, _ = restrict_to_ball(space)
    f = VectorMap.zeros(induced_space(ball))
    with pytest.raises(ClosureError) as err:
        gamma_embed(f, space)
    assert err.value.missing == ["p2"]


@pytest.mark.parametrize("seed", range(20))
def test_gamma_preserves_e_constant(seed):
    rng = np.random.default_rng(seed)
    tag = gen.NORM_TAGS[seed % 3]
    space = gen.retraction_closed_sample(rng, 2, tag, 3)
    ball, _ = restrict_to_ball(space)
    f = gen.random_vector_map(rng, induced_space(ball), 2, tag)
    g = gamma_embed(f, space)
    assert abs(oracles.e_constant(g) - oracles.e_constant(f)) <= 1e-9
    assert np.array_equal(eta_restrict(g, space).values, f.values)


def test_reciprocal_space():
    s = reciprocal_space(4)
    assert s.radii.tolist() == pytest.approx([0, 1, 0.5, 1 / 3, 0.25])
    n = np.arange(1, 101)
    assert reciprocal_space_check(1 / n).K == pytest.approx(1.0)
    res = reciprocal_space_check(1 / np.sqrt(n))
    assert res.K == pytest.approx(10.0) and res.witness_n == 100
    with pytest.raises(StructuralError):
        reciprocal_space_check([])
