"""Change of base point for pointwise-Lipschitz maps.

``phi(x, h)`` sends a bounded table ``h`` to ``g(x') = d(x', x) h(x') + h(x)``;
with ``phi_inv`` it identifies the sup-normed tables with maps normed by
``norm_Lx(., x)``.  Composing two of them moves the base point.
"""

from dataclasses import dataclass, field

import numpy as np

from . import tolerance
from .errors import DomainError, StructuralError
from .metric import CoordSpace, VectorMap, induced_space


def phi(x, h):
    x = h.src.index(x)
    d = h.src.dist[:, x]
    return h.with_values(d[:, None] * h.values + h.values[x])


def phi_inv(x, g):
    x = g.src.index(x)
    d = g.src.dist[:, x].copy()
    d[x] = 1.0
    h = (g.values - g.values[x]) / d[:, None]
    h[x] = g.values[x]
    return g.with_values(h)


def transfer_closed_form(x1, x2, f):
    """Direct formula for ``phi(x2, phi_inv(x1, f))``."""
    d = f.src.dist
    v = f.values
    d12 = d[x1, x2]
    shift = (v[x2] - v[x1]) / d12
    den = d[:, x1].copy()
    den[x1] = 1.0
    out = (d[:, x2] / den)[:, None] * (v - v[x1]) + shift
    out[x1] = d12 * v[x1] + shift
    return f.with_values(out)


@dataclass(frozen=True)
class Transfer:
    composed: VectorMap
    closed_form: VectorMap
    max_gap: float


def transfer_compose(x1, x2, f):
    x1, x2 = f.src.index(x1), f.src.index(x2)
    if x1 == x2:
        raise DomainError("transfer between base points needs x1 != x2")
    composed = phi(x2, phi_inv(x1, f))
    closed = transfer_closed_form(x1, x2, f)
    gap = float(np.max(np.abs(composed.values - closed.values)))
    return Transfer(composed, closed, gap)


@dataclass(frozen=True)
class VanishingResult:
    is_fixed_point: bool
    vanishing_holds: bool
    violations: list = field(default_factory=list)

    @property
    def passed(self):
        return (not self.is_fixed_point) or self.vanishing_holds


def vanishing_check(f, space, x1, x2, tol=None):
    """Test the implication "fixed by the transfer => zero off the equidistant set".

    ``f`` must be defined on ``induced_space(space)`` for a coordinate space,
    since the implication is only known for normed domains.  Violations list
    the labels where ``f`` is nonzero although ``x`` is not equidistant from
    ``x1`` and ``x2``.
    """
    tol = tolerance.resolve(tol)
    if not isinstance(space, CoordSpace):
        raise StructuralError("vanishing_check needs a coordinate (normed) domain")
    if f.src.n != space.n or f.src.labels != space.labels:
        f = VectorMap(induced_space(space), f.values, f.norm_tag)
    x1, x2 = f.src.index(x1), f.src.index(x2)
    if x1 == x2:
        raise DomainError("vanishing check needs x1 != x2")
    res = transfer_compose(x1, x2, f)
    is_fixed = bool(np.all(np.abs(res.composed.values - f.values) <= tol))
    d = f.src.dist
    off = np.abs(d[:, x1] - d[:, x2]) > tol
    size = np.max(np.abs(f.values), axis=1) if f.k else np.zeros(f.src.n)
    bad = np.flatnonzero(off & (size > tol))
    return VanishingResult(is_fixed, bad.size == 0, [f.src.labels[i] for i in bad])
