"""The functional space M^e of a finite pointed space and operators on it.

For finite M, M^e is the space of real functions vanishing at the base
point, with e-norm ``max_z |f(z)| / d(z, 0)``.  Its unit ball is the box
``|f(z)| <= d(z, 0)``, so every convex objective over the ball is maximized
at one of the ``2^(n-1)`` box vertices.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import _kernels
from .errors import BasePointError, CapacityError, StructuralError
from .metric import DUAL_TAG, check_norm_tag, vector_norm

VERTEX_CAP = 20


@dataclass(frozen=True, eq=False)
class Functional:
    """An element of M^e; ``v[i]`` is the value at point ``i + 1``."""

    space: object
    v: np.ndarray

    def __post_init__(self):
        v = np.array(self.v, dtype=np.float64).reshape(-1)
        if v.shape[0] != self.space.n - 1:
            raise StructuralError(f"functional needs {self.space.n - 1} values, got {v.shape[0]}")
        v.setflags(write=False)
        object.__setattr__(self, "v", v)

    @classmethod
    def from_full(cls, space, values):
        """From values on every point (the base value must be 0)."""
        values = np.asarray(values, dtype=np.float64)
        if values[0] != 0.0:
            raise BasePointError("functionals in M^e vanish at the base point")
        return cls(space, values[1:])

    @classmethod
    def distance_to_base(cls, space):
        """``z -> d(z, 0)``, a unit vector of M^e."""
        return cls(space, space.radii[1:])

    @property
    def full(self):
        return np.concatenate([[0.0], self.v])

    def __call__(self, x):
        x = self.space.index(x)
        return 0.0 if x == 0 else float(self.v[x - 1])

    def e_norm(self):
        if self.v.size == 0:
            return 0.0
        return float(np.max(np.abs(self.v) / self.space.radii[1:]))

    def in_unit_ball(self, tol=0.0):
        return bool(np.all(np.abs(self.v) <= self.space.radii[1:] + tol))


def _check_cap(m, cap):
    if m > cap:
        raise CapacityError(
            f"{m} free coordinates exceed the vertex cap {cap} (2^{m} vertices); use the closed forms"
        )


def ball_vertex_matrix(space, cap=VERTEX_CAP):
    """All box vertices as rows, in lexicographic sign order (+ before -)."""
    m = space.n - 1
    _check_cap(m, cap)
    signs = np.array(list(product((1.0, -1.0), repeat=m)), dtype=np.float64).reshape(2**m, m)
    return signs * space.radii[1:]


def ball_vertices(space, cap=VERTEX_CAP):
    return [Functional(space, row) for row in ball_vertex_matrix(space, cap)]


@dataclass(frozen=True)
class BoxSup:
    value: float
    witness: Functional


def box_sup(space, rows, p, cap=VERTEX_CAP):
    """``sup_{f in ball} ||(sum_z rows[n, z] f(z))_n||_p`` by vertex enumeration.

    ``rows`` has one column per point of ``space``; only columns with a
    nonzero entry at a non-base point are enumerated, the witness is zero
    on all other coordinates.
    """
    rows = np.asarray(rows, dtype=np.float64)
    if rows.ndim != 2 or rows.shape[1] != space.n:
        raise StructuralError(f"rows must have {space.n} columns")
    active = np.flatnonzero(np.any(rows[:, 1:] != 0.0, axis=0)) + 1
    _check_cap(active.size, cap)
    r = space.radii[active]
    obj, mask = _kernels.vertex_sup(rows[:, active], r, p)
    obj = max(obj, 0.0)
    value = obj if np.isinf(p) else obj ** (1.0 / p)
    v = np.zeros(space.n)
    v[active] = _kernels.mask_to_signs(mask, active.size) * r
    return BoxSup(float(value), Functional(space, v[1:]))


def dual_distance(space, x, y):
    """``||x_check - y_check||`` in (M^e)*: ``d(x, 0) + d(y, 0)`` for ``x != y``.

    The coordinates f(x), f(y) range independently over the box, so both
    extremes are reached at once.  Covers ``y = base`` (``||x_check|| = d(x, 0)``).
    """
    x, y = space.index(x), space.index(y)
    if x == y:
        return 0.0
    return float(space.radii[x] + space.radii[y])


def dual_distance_oracle(space, x, y, cap=VERTEX_CAP):
    """Max of ``|f(x) - f(y)|`` over the explicit list of ball vertices."""
    x, y = space.index(x), space.index(y)
    verts = ball_vertex_matrix(space, cap)
    full = np.hstack([np.zeros((verts.shape[0], 1)), verts])
    gaps = np.abs(full[:, x] - full[:, y])
    k = int(np.argmax(gaps))
    return BoxSup(float(gaps[k]), Functional(space, verts[k]))


@dataclass(frozen=True, eq=False)
class AdjointMatrix:
    """Coordinates of ``f -> f o T`` from N^e to M^e (rows: M, columns: N, base dropped)."""

    matrix: np.ndarray
    src: object
    dst: object

    def apply(self, f):
        if not f.space.same_as(self.dst):
            raise StructuralError("functional is not defined on the codomain of T")
        return Functional(self.src, self.matrix @ f.v)

    def __matmul__(self, other):
        # adjoint(T) @ adjoint(S) == adjoint(S o T)
        return AdjointMatrix(self.matrix @ other.matrix, self.src, other.dst)


def _require_base(T):
    if not T.base_preserving():
        raise BasePointError("the adjoint needs a base-preserving map")


def adjoint(T):
    _require_base(T)
    m, n = T.src.n - 1, T.dst.n - 1
    a = np.zeros((m, n), dtype=np.int64)
    rows = np.arange(1, T.src.n)
    hit = T.table[rows] != 0
    a[rows[hit] - 1, T.table[rows[hit]] - 1] = 1
    return AdjointMatrix(a, T.src, T.dst)


@dataclass(frozen=True)
class AdjointNorm:
    closed_form: float
    oracle: float = None
    witness: Functional = None


def adjoint_norm(T, cap=VERTEX_CAP):
    """Operator norm of ``f -> f o T``: closed form and a vertex oracle.

    The closed form is ``max_{x != 0} d(T(x), 0) / d(x, 0)``.  The oracle
    maximizes ``||f o T||_e`` over the vertices of the unit ball of N^e; it is
    skipped (None) when the number of hit coordinates exceeds ``cap``.
    """
    _require_base(T)
    radii = T.src.radii
    if T.src.n < 2:
        return AdjointNorm(0.0, 0.0, Functional(T.dst, np.zeros(T.dst.n - 1)))
    closed = float(np.max(T.image_norms()[1:] / radii[1:]))
    rows = np.zeros((T.src.n - 1, T.dst.n))
    rows[np.arange(T.src.n - 1), T.table[1:]] = 1.0 / radii[1:]
    try:
        res = box_sup(T.dst, rows, np.inf, cap)
    except CapacityError:
        return AdjointNorm(closed)
    return AdjointNorm(closed, res.value, res.witness)


def second_adjoint_eval(T, x, f):
    """``(x_check o T^e)(f)`` and ``(T(x))_check(f)``; these agree exactly."""
    x = T.src.index(x)
    lhs = adjoint(T).apply(f)(x)
    rhs = f(int(T.table[x]))
    return lhs, rhs


@dataclass(frozen=True)
class LambdaNorm:
    t_e_norm: float
    lambda_opnorm: float
    witness_y: np.ndarray


def _dual_ball_candidates(values, q):
    k = values.shape[1]
    if q == "one":
        eye = np.eye(k)
        return np.vstack([eye, -eye])
    if q == "sup":
        return np.array(list(product((1.0, -1.0), repeat=k)), dtype=np.float64).reshape(2**k, k)
    lengths = np.linalg.norm(values, axis=1)
    cands = values[lengths > 0] / lengths[lengths > 0, None]
    return cands if cands.size else np.zeros((1, k))


def lambda_norm(T, q):
    """e-norm of ``T`` read as a map into (R^k, l_q)* versus ``||Lambda(T)||``.

    ``t_e_norm`` measures ``T(x)`` in the conjugate norm.  ``lambda_opnorm``
    is ``sup_{||y||_q <= 1} ||x -> <y, T(x)>||_e``, evaluated on a finite set
    of unit vectors ``y`` that is known to contain a maximizer: the vertices
    of the l1 or sup ball, or the normalized values ``T(x)`` for l2.
    """
    try:
        check_norm_tag(q)
    except StructuralError:
        raise StructuralError(f"unsupported norm tag {q!r} for Y") from None
    if not T.base_preserving():
        raise BasePointError("Lambda needs a base-preserving map")
    if T.src.n < 2:
        return LambdaNorm(0.0, 0.0, np.zeros(T.k))
    vals = T.values[1:]
    radii = T.src.radii[1:]
    t_e = float(np.max(vector_norm(vals, DUAL_TAG[q]) / radii))
    cands = _dual_ball_candidates(vals, q)
    scores = np.max(np.abs(cands @ vals.T) / radii[None, :], axis=1)
    k = int(np.argmax(scores))
    return LambdaNorm(t_e, float(scores[k]), cands[k])


def p_continuity_check(T):
    """Each pairing ``x -> <e_i, T(x)>`` is a total real function on finite M."""
    return bool(np.all(np.isfinite(T.values)))
