"""Finitely supported sequences in l_p^e(M), the metric d_p and dilations.

A sequence is a finite list of points of M, implicitly continued by the
base point.  ``d_p`` is a supremum of a convex function of ``f`` over the
box-shaped unit ball of M^e, so it is computed exactly on box vertices.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import tolerance
from .dual import VERTEX_CAP, Functional, ball_vertex_matrix, box_sup
from .errors import BasePointError, DomainError, StructuralError
from .extbound import e_constant


def parse_p(p):
    """Accept a real ``p >= 1`` or infinity (``inf``, ``"inf"``, ``"∞"``)."""
    if isinstance(p, str):
        key = p.strip().lower()
        p = math.inf if key in ("inf", "infinity", "∞", "oo") else float(key)
    p = float(p)
    if math.isnan(p) or p < 1:
        raise DomainError(f"p must satisfy p >= 1, got {p!r}")
    return p


@dataclass(frozen=True, eq=False)
class SequencePoint:
    space: object
    idx: tuple = ()

    def __post_init__(self):
        idx = [self.space.index(i) for i in self.idx]
        while idx and idx[-1] == 0:
            idx.pop()
        object.__setattr__(self, "idx", tuple(idx))

    @classmethod
    def from_labels(cls, space, labels):
        return cls(space, tuple(space.index(s) for s in labels))

    def __len__(self):
        return len(self.idx)

    def labels(self):
        return [self.space.labels[i] for i in self.idx]

    def __eq__(self, other):
        return isinstance(other, SequencePoint) and self.space.same_as(other.space) and self.idx == other.idx

    def __hash__(self):
        return hash(self.idx)


def _padded(s, t):
    if not s.space.same_as(t.space):
        raise StructuralError("sequences live on different spaces")
    length = max(len(s), len(t))
    a = np.zeros(length, dtype=np.int64)
    b = np.zeros(length, dtype=np.int64)
    a[: len(s)] = s.idx
    b[: len(t)] = t.idx
    return a, b


def difference_rows(s, t):
    """Row n holds the coefficients of ``f(s_n) - f(t_n)`` over the points."""
    a, b = _padded(s, t)
    rows = np.zeros((a.size, s.space.n))
    np.add.at(rows, (np.arange(a.size), a), 1.0)
    np.add.at(rows, (np.arange(b.size), b), -1.0)
    return rows


@dataclass(frozen=True)
class DpResult:
    value: float
    witness: Functional
    closed_form: float = None


def dinf_closed_form(s, t):
    """``max_n d(s_n, 0) + d(t_n, 0)`` over positions where the sequences differ."""
    a, b = _padded(s, t)
    diff = a != b
    if not diff.any():
        return 0.0
    r = s.space.radii
    return float(np.max(r[a[diff]] + r[b[diff]]))


def dp_distance(p, s, t, cap=VERTEX_CAP):
    p = parse_p(p)
    res = box_sup(s.space, difference_rows(s, t), p, cap)
    closed = dinf_closed_form(s, t) if math.isinf(p) else None
    return DpResult(res.value, res.witness, closed)


def dp_norm(p, s, cap=VERTEX_CAP):
    return dp_distance(p, s, SequencePoint(s.space, ()), cap).value


def tx_operator_norm(p, s, t, cap=VERTEX_CAP):
    """Norm of ``T_s - T_t : M^e -> l_p`` where ``T_s(f) = (f(s_n))_n``.

    Enumerates every vertex of the unit ball of M^e (all coordinates, not
    only those touched by the sequences) and takes the largest l_p norm of
    the image.
    """
    p = parse_p(p)
    verts = ball_vertex_matrix(s.space, cap)
    full = np.hstack([np.zeros((verts.shape[0], 1)), verts])
    a, b = _padded(s, t)
    images = full[:, a] - full[:, b]
    if images.shape[1] == 0:
        return 0.0
    norms = np.linalg.norm(images, ord=p, axis=1)
    return float(norms.max())


def dilate(T, s):
    if not T.src.same_as(s.space):
        raise StructuralError("sequence does not live on the domain of T")
    if not T.base_preserving():
        raise BasePointError("dilation needs a base-preserving map")
    return SequencePoint(T.dst, tuple(int(T.table[i]) for i in s.idx))


def singletons(space):
    return [SequencePoint(space, (x,)) for x in range(1, space.n)]


@dataclass
class DilationReport:
    p: float
    e_const: float
    lip_ok: bool = True
    worst_ratio: float = 0.0
    singleton_max: float = 0.0
    singleton_ok: bool = True
    de_hat_est: float = 0.0
    lip_hat_est: float = 0.0
    sandwich_ok: bool = True
    violations: list = field(default_factory=list)

    @property
    def passed(self):
        return self.lip_ok and self.singleton_ok and self.sandwich_ok


def dilation_certificates(p, T, pairs, tol=None, cap=VERTEX_CAP):
    """Check the dilation of ``T`` against its e-constant on sampled sequences.

    * each pair: ``d_p(T s, T t) <= e(T) d_p(s, t) + tol``;
    * singletons ``(x)`` reach ``max d_p((T x), 0) / d_p((x), 0) = e(T)``;
    * ``e(T) <= sampled e-ratio of the dilation <= its sampled Lipschitz
      ratio <= e(T) + tol``, where the Lipschitz sample also contains each
      sequence paired with the zero sequence.
    """
    tol = tolerance.resolve(tol)
    p = parse_p(p)
    e = e_constant(T).value
    rep = DilationReport(p, e)
    empty = SequencePoint(T.src, ())

    def ratio(s, t):
        den = dp_distance(p, s, t, cap).value
        if den == 0.0:
            return None
        num = dp_distance(p, dilate(T, s), dilate(T, t), cap).value
        return num, den

    for s, t in pairs:
        r = ratio(s, t)
        if r is None:
            continue
        num, den = r
        rep.worst_ratio = max(rep.worst_ratio, num / den)
        if num > e * den + tol:
            rep.lip_ok = False
            rep.violations.append({"pair": [s.labels(), t.labels()], "lhs": num, "rhs": e * den})

    for s in singletons(T.src):
        num, den = ratio(s, empty)
        rep.singleton_max = max(rep.singleton_max, num / den)
    rep.singleton_ok = abs(rep.singleton_max - e) <= tol
    if not rep.singleton_ok:
        rep.violations.append({"singleton_max": rep.singleton_max, "e_const": e})

    seqs = {s for pair in pairs for s in pair} | set(singletons(T.src))
    de_hat = 0.0
    for s in seqs:
        r = ratio(s, empty)
        if r is not None:
            de_hat = max(de_hat, r[0] / r[1])
    rep.de_hat_est = de_hat
    rep.lip_hat_est = max(de_hat, rep.worst_ratio)
    rep.sandwich_ok = e <= de_hat + tol and de_hat <= rep.lip_hat_est <= e + tol
    if not rep.sandwich_ok:
        rep.violations.append({"e_const": e, "de_hat": de_hat, "lip_hat": rep.lip_hat_est})
    return rep


def sampled_de_hat(p, T, S, seqs, cap=VERTEX_CAP):
    """Lower estimate of ``d_e`` between two dilations over the given sequences."""
    best = 0.0
    empty = SequencePoint(T.src, ())
    for s in seqs:
        den = dp_distance(p, s, empty, cap).value
        if den > 0:
            best = max(best, dp_distance(p, dilate(T, s), dilate(S, s), cap).value / den)
    return best
