"""Extensively bounded maps: the e-constant, the metric d_e and the ball embedding."""

from dataclasses import dataclass

import numpy as np

from . import tolerance
from .errors import BasePointError, ClosureError, StructuralError
from .metric import CoordSpace, VectorMap, induced_space, restrict_to_ball, vector_norm


@dataclass(frozen=True)
class EConstant:
    value: float
    witness: int = None
    base_ok: bool = True

    def __float__(self):
        return float(self.value)


def _max_over_nonbase(num, radii):
    if num.shape[0] < 2:
        return 0.0, None
    ratios = num[1:] / radii[1:]
    k = int(np.argmax(ratios))
    return float(ratios[k]), k + 1


def e_constant(T, tol=None, strict=True):
    """Least k with ``d(T(x), 0) <= k d(x, 0)``.

    Raises :class:`BasePointError` when T moves the base point; with
    ``strict=False`` an undefined (NaN) value with ``base_ok=False`` is
    returned instead.
    """
    if not T.base_preserving(tol):
        if strict:
            raise BasePointError("map does not fix the base point, so it is not extensively bounded")
        return EConstant(float("nan"), None, False)
    value, witness = _max_over_nonbase(T.image_norms(), T.src.radii)
    return EConstant(value, witness, True)


def de_distance(T, S, tol=None):
    """``sup_{x != 0} d(T(x), S(x)) / d(x, 0)``."""
    if not T.same_shape(S):
        raise StructuralError("d_e needs two maps with the same domain and codomain")
    for m in (T, S):
        if not m.base_preserving(tol):
            raise BasePointError("d_e is only defined between base-preserving maps")
    value, _ = _max_over_nonbase(T.distance_to(S), T.src.radii)
    return value


def radial_retract(x, norm_tag):
    x = np.asarray(x, dtype=np.float64)
    r = float(vector_norm(x, norm_tag))
    return x if r <= 1.0 else x / r


def _ball_lookup(space, tol):
    ball, keep = restrict_to_ball(space, tol)
    inside = np.full(space.n, -1, dtype=np.int64)
    inside[keep] = np.arange(keep.size)
    target = inside.copy()
    missing = []
    for i in np.flatnonzero(inside < 0):
        g = radial_retract(space.coords[i], space.norm_tag)
        gaps = np.max(np.abs(ball.coords - g), axis=1)
        hit = np.flatnonzero(gaps <= tol)
        if hit.size == 0:
            missing.append(space.labels[i])
        else:
            target[i] = hit[0]
    return ball, keep, target, missing


def gamma_embed(f, space, tol=None):
    """Extend ``f`` from the ball sample to ``space`` by ``f(G(x))``.

    ``f`` lives on ``induced_space(restrict_to_ball(space)[0])``.  Every
    retracted outside point must coincide (within ``tol``) with a sample
    point of the ball, otherwise :class:`ClosureError` lists the offenders.
    """
    tol = tolerance.resolve(tol)
    if not isinstance(space, CoordSpace):
        raise StructuralError("gamma_embed needs a coordinate space")
    ball, keep, target, missing = _ball_lookup(space, tol)
    if missing:
        raise ClosureError(missing)
    if f.src.n != ball.n:
        raise StructuralError(f"f has {f.src.n} points but the ball sample has {ball.n}")
    return VectorMap(induced_space(space), f.values[target], f.norm_tag)


def eta_restrict(f, space, tol=None):
    """Restriction of a map on ``space`` to its unit-ball sample."""
    ball, keep = restrict_to_ball(space, tol)
    if f.src.n != space.n:
        raise StructuralError(f"f has {f.src.n} points but the space has {space.n}")
    return VectorMap(induced_space(ball), f.values[keep], f.norm_tag)


def is_retraction_closed(space, tol=None):
    return not _ball_lookup(space, tolerance.resolve(tol))[3]


@dataclass(frozen=True)
class ReciprocalCheck:
    in_E: bool
    K: float
    witness_n: int


def reciprocal_space_check(values):
    """e-constant of ``f(1/n) = x_n`` on ``{1/n} u {0}``: ``K = max n |x_n|``.

    Every finite truncation is extensively bounded; growth of ``K`` under
    refinement is what signals exclusion in the limit.
    """
    x = np.asarray(values, dtype=np.float64)
    if x.ndim != 1 or x.size == 0:
        raise StructuralError("need at least one sequence value")
    n = np.arange(1, x.size + 1)
    scaled = n * np.abs(x)
    k = int(np.argmax(scaled))
    return ReciprocalCheck(True, float(scaled[k]), k + 1)


def reciprocal_space(N):
    """The pointed space ``{0} u {1/n : n <= N}`` with its real-line metric."""
    pts = np.concatenate([[0.0], 1.0 / np.arange(1, N + 1)])
    labels = ("0",) + tuple(f"1/{n}" for n in range(1, N + 1))
    return induced_space(CoordSpace(pts[:, None], "two", 0, labels))
