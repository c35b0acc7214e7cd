"""Moduli of continuity and pointwise Lipschitz quantities on finite spaces.

All maxima are exact: the admissible sets are finite.  Ties go to the
lowest index (lexicographically lowest pair).
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels, tolerance
from .errors import DomainError, StructuralError
from .metric import vector_norm


@dataclass(frozen=True)
class ModulusValue:
    t: float
    value: float
    witness: tuple = None


@dataclass(frozen=True)
class Extremum:
    """A maximum together with the point or pair attaining it (None if vacuous)."""

    value: float
    witness: tuple = None

    def __float__(self):
        return float(self.value)


def _check_t(t):
    if not t > 0:
        raise DomainError(f"t must be positive, got {t!r}")
    return float(t)


def omega(f, t):
    """Modulus of continuity: max ``d(f(x), f(y))`` over pairs with ``d(x, y) <= t``."""
    t = _check_t(t)
    d_src = f.src.dist
    d_img = f.image_dist()
    n = f.src.n
    iu, ju = np.triu_indices(n, 1)
    ok = d_src[iu, ju] <= t
    if not ok.any():
        return ModulusValue(t, 0.0, None)
    vals = d_img[iu[ok], ju[ok]]
    k = int(np.argmax(vals))
    return ModulusValue(t, float(vals[k]), (int(iu[ok][k]), int(ju[ok][k])))


def omega_at(f, x0, t):
    """Pointwise modulus at ``x0``: max ``d(f(x), f(x0))`` over ``d(x, x0) <= t``."""
    t = _check_t(t)
    x0 = f.src.index(x0)
    near = np.flatnonzero(f.src.dist[:, x0] <= t)
    near = near[near != x0]
    if near.size == 0:
        return ModulusValue(t, 0.0, None)
    vals = f.image_dist_to(x0)[near]
    k = int(np.argmax(vals))
    return ModulusValue(t, float(vals[k]), (int(near[k]),))


def lip_const(f):
    """Lipschitz constant: max ratio ``d(f(x1), f(x2)) / d(x1, x2)`` over pairs."""
    value, i, j = _kernels.pair_ratio_max(f.image_dist(), f.src.dist)
    return Extremum(value, None if i < 0 else (i, j))


def lip_at(f, x0):
    """Pointwise Lipschitz seminorm ``||f||_{x0}``; 0 on a singleton."""
    x0 = f.src.index(x0)
    others = np.flatnonzero(np.arange(f.src.n) != x0)
    if others.size == 0:
        return Extremum(0.0, None)
    ratios = f.image_dist_to(x0)[others] / f.src.dist[others, x0]
    k = int(np.argmax(ratios))
    return Extremum(float(ratios[k]), (int(others[k]),))


def norm_Lx(f, x0):
    """``max(||f||_{x0}, ||f(x0)||)`` for a vector-valued map."""
    x0 = f.src.index(x0)
    return max(lip_at(f, x0).value, float(vector_norm(f.values[x0], f.norm_tag)))


def sup_omega_ratio(f, x0):
    """Sup of ``omega_at(f, x0, t) / t`` over the realized distances ``t = d(x, x0)``.

    The pointwise modulus is a step function that only jumps at realized
    distances, and ``omega/t`` decreases between jumps, so this finite
    maximum is the supremum over all ``t > 0``.
    """
    x0 = f.src.index(x0)
    ts = np.unique(f.src.dist[:, x0])
    ts = ts[ts > 0]
    best = Extremum(0.0, None)
    for t in ts:
        w = omega_at(f, x0, t)
        q = float(w.value / t)
        if q > best.value:
            best = Extremum(q, (float(t),))
    return best


@dataclass(frozen=True)
class SampledLip:
    e_const: float
    e_witness: float
    lip_est: float
    lip_witness: tuple
    in_E: bool
    base_value: float


def sampled_lip_quantities(f, tol=None):
    """e-constant and a Lipschitz lower bound of a real function sampled on a grid.

    ``e_const`` is ``max |f(x)| / |x|`` over nonzero grid points and is NaN
    when ``|f(0)| > tol`` (the function is then not base-preserving).
    ``lip_est`` is the steepest slope between adjacent grid points, which
    only bounds the true Lipschitz constant from below.
    """
    tol = tolerance.resolve(tol)
    g, v = f.grid, f.values
    if g.size < 2:
        raise StructuralError("need at least two grid points")
    base_value = float(v[f.base])
    in_E = abs(base_value) <= tol
    nz = np.flatnonzero(g != 0.0)
    if in_E:
        ratios = np.abs(v[nz]) / np.abs(g[nz])
        k = int(np.argmax(ratios))
        e_const, e_witness = float(ratios[k]), float(g[nz[k]])
    else:
        e_const, e_witness = float("nan"), None
    slopes = np.abs(np.diff(v)) / np.diff(g)
    j = int(np.argmax(slopes))
    return SampledLip(e_const, e_witness, float(slopes[j]), (float(g[j]), float(g[j + 1])), in_E, base_value)
