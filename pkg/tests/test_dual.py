import numpy as np
import pytest

import oracles
from extlip import (
    BasePointError,
    CapacityError,
    Functional,
    PointedMetricSpace,
    PointMap,
    StructuralError,
    VectorMap,
    adjoint,
    adjoint_norm,
    ball_vertices,
    compose,
    dual_distance,
    dual_distance_oracle,
    e_constant,
    lambda_norm,
    second_adjoint_eval,
)
from extlip import generate as gen
from extlip.dual import ball_vertex_matrix, box_sup


def test_ball_vertices_order(m3):
    verts = ball_vertex_matrix(m3)
    assert verts.tolist() == [[1, 2], [1, -2], [-1, 2], [-1, -2]]
    assert all(f.in_unit_ball() for f in ball_vertices(m3))


def test_functional_basics(m3):
    f = Functional.from_full(m3, [0.0, 0.5, -2.0])
    assert f("b") == -2.0 and f(0) == 0.0
    assert f.e_norm() == 1.0
    assert Functional.distance_to_base(m3).e_norm() == 1.0
    with pytest.raises(BasePointError):
        Functional.from_full(m3, [1.0, 0.0, 0.0])
    with pytest.raises(StructuralError):
        Functional(m3, [1.0])


def test_dual_distance_example(m3):
    assert dual_distance(m3, "a", "b") == 3.0
    res = dual_distance_oracle(m3, "a", "b")
    assert res.value == 3.0
    assert res.witness.full.tolist() == [0.0, 1.0, -2.0]
    assert dual_distance(m3, "b", "0") == 2.0
    assert dual_distance(m3, "a", "a") == 0.0


@pytest.mark.parametrize("seed", range(20))
def test_dual_distance_against_brute_force(seed):
    rng = np.random.default_rng(seed)
    s = gen.random_space(rng, 2, 7)
    for x in range(s.n):
        for y in range(s.n):
            want = oracles.dual_distance(s, x, y)
            assert dual_distance(s, x, y) == pytest.approx(want, abs=1e-12)
            assert dual_distance(s, x, y) >= s.dist[x, y] - 1e-9


def test_adjoint_swap(m3):
    swap = PointMap.from_labels(m3, m3, {"0": "0", "a": "b", "b": "a"})
    assert adjoint(swap).matrix.tolist() == [[0, 1], [1, 0]]
    res = adjoint_norm(swap)
    assert res.closed_form == 2.0 and res.oracle == 2.0


def test_adjoint_needs_base(m3):
    with pytest.raises(BasePointError):
        adjoint(PointMap(m3, m3, np.array([1, 1, 2])))


@pytest.mark.parametrize("seed", range(25))
def test_adjoint_against_brute_force(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (gen.random_space(rng, 2, 7) for _ in range(3))
    T, S = gen.random_point_map(rng, a, b), gen.random_point_map(rng, b, c)
    assert adjoint(T).matrix.tolist() == oracles.adjoint_matrix(T)
    res = adjoint_norm(T)
    want = oracles.adjoint_norm(T)
    assert res.closed_form == pytest.approx(want, abs=1e-12)
    assert res.oracle == pytest.approx(want, abs=1e-12)
    assert abs(res.closed_form - e_constant(T).value) <= 1e-9
    assert np.array_equal(adjoint(compose(S, T)).matrix, (adjoint(T) @ adjoint(S)).matrix)


def test_adjoint_apply_is_composition(rng):
    src, dst = gen.random_space(rng, 4, 6), gen.random_space(rng, 4, 6)
    T = gen.random_point_map(rng, src, dst)
    f = Functional(dst, rng.normal(size=dst.n - 1))
    g = adjoint(T).apply(f)
    assert [g(x) for x in range(src.n)] == [f(int(T.table[x])) for x in range(src.n)]
    for x in range(src.n):
        lhs, rhs = second_adjoint_eval(T, x, f)
        assert lhs == rhs


def test_adjoint_oracle_skipped_over_cap(rng):
    src, dst = gen.random_space(rng, 6, 6), gen.random_space(rng, 6, 6)
    T = PointMap(src, dst, np.arange(6))
    res = adjoint_norm(T, cap=3)
    assert res.oracle is None and res.closed_form == e_constant(T).value


def test_capacity_error(rng):
    s = gen.graph_space(rng, 6)
    with pytest.raises(CapacityError):
        ball_vertex_matrix(s, cap=4)
    with pytest.raises(CapacityError):
        box_sup(s, np.ones((1, 6)), 1.0, cap=4)


def test_lambda_example(m3):
    T = VectorMap(m3, [[0, 0], [1, 0], [0, 2]])
    for q in ("one", "two", "sup"):
        res = lambda_norm(T, q)
        assert res.t_e_norm == 1.0 and res.lambda_opnorm == 1.0


@pytest.mark.parametrize("q", ["one", "two", "sup"])
@pytest.mark.parametrize("seed", range(10))
def test_lambda_bracketed_by_sampling(q, seed):
    rng = np.random.default_rng(seed)
    space = gen.random_space(rng, 2, 7)
    T = gen.random_vector_map(rng, space, 3)
    res = lambda_norm(T, q)
    # any unit y gives a lower bound; Hoelder gives t_e as the upper bound
    ys = rng.normal(size=(2000, 3))
    ys /= np.linalg.norm(ys, ord={"one": 1, "two": 2, "sup": np.inf}[q], axis=1)[:, None]
    r = space.radii[1:]
    sampled = float(np.max(np.abs(ys @ T.values[1:].T) / r))
    assert sampled <= res.lambda_opnorm + 1e-9
    assert res.lambda_opnorm <= res.t_e_norm + 1e-9
    assert abs(res.t_e_norm - res.lambda_opnorm) <= 1e-9
    y = res.witness_y
    assert np.linalg.norm(y, ord={"one": 1, "two": 2, "sup": np.inf}[q]) <= 1 + 1e-12


def test_lambda_rejects_bad_tag(m3):
    with pytest.raises(StructuralError):
        lambda_norm(VectorMap.zeros(m3), "four")


def test_singleton_adjoint():
    s = PointedMetricSpace(None, [[0.0]])
    res = adjoint_norm(PointMap.identity(s))
    assert res.closed_form == 0.0
