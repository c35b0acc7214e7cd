"""Finite pointed metric spaces, coordinate spaces and maps between them.

Every space keeps its base point at index 0.  Constructors accept any base
index and move that point to the front, keeping the relative order of the
others.
"""

from dataclasses import dataclass, field

import numpy as np

from . import tolerance
from .errors import DomainError, StructuralError

NORM_ORD = {"one": 1, "two": 2, "sup": np.inf}
DUAL_TAG = {"one": "sup", "two": "two", "sup": "one"}


def check_norm_tag(tag):
    if tag not in NORM_ORD:
        raise StructuralError(f"unsupported norm tag {tag!r}; expected one of {sorted(NORM_ORD)}")
    return tag


def vector_norm(v, tag, axis=-1):
    """Norm of ``v`` along ``axis`` under ``tag`` in {"one", "two", "sup"}."""
    v = np.asarray(v, dtype=np.float64)
    if v.ndim == 0:
        return abs(float(v))
    if v.shape[axis] == 0:
        return np.zeros(np.delete(v.shape, axis))
    return np.linalg.norm(v, ord=NORM_ORD[check_norm_tag(tag)], axis=axis)


def _frozen(a):
    a = np.array(a, dtype=np.float64)
    a.setflags(write=False)
    return a


def _front_order(n, base):
    if not 0 <= base < n:
        raise StructuralError(f"base index {base} out of range for {n} points")
    return np.array([base] + [i for i in range(n) if i != base], dtype=np.int64)


def _default_labels(n):
    return ("0",) + tuple(f"p{i}" for i in range(1, n))


@dataclass(frozen=True, eq=False)
class PointedMetricSpace:
    """Finite point set with a distance matrix; ``labels[0]`` is the base point.

    Only structural checks run here (square, finite, non-negative).  Metric
    axioms are checked by :func:`validate_space`, so a malformed matrix can
    still be loaded and diagnosed.
    """

    labels: tuple
    dist: np.ndarray
    base: int = 0

    def __post_init__(self):
        d = np.array(self.dist, dtype=np.float64)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise StructuralError(f"distance matrix must be square, got shape {d.shape}")
        n = d.shape[0]
        if n == 0:
            raise StructuralError("a pointed space needs at least its base point")
        labels = tuple(str(s) for s in self.labels) if self.labels is not None else _default_labels(n)
        if len(labels) != n:
            raise StructuralError(f"{len(labels)} labels for {n} points")
        if len(set(labels)) != n:
            raise StructuralError("labels must be unique")
        if not np.all(np.isfinite(d)):
            raise StructuralError("distance matrix contains NaN or infinite entries")
        if np.any(d < 0):
            i, j = np.argwhere(d < 0)[0]
            raise StructuralError(f"negative distance at ({labels[i]}, {labels[j]})")
        order = _front_order(n, int(self.base))
        object.__setattr__(self, "labels", tuple(labels[i] for i in order))
        object.__setattr__(self, "dist", _frozen(d[np.ix_(order, order)]))
        object.__setattr__(self, "base", 0)

    @classmethod
    def from_dict(cls, dist, base):
        """Build from ``{label: {label: distance}}`` with missing entries mirrored."""
        labels = list(dist)
        for row in dist.values():
            labels.extend(k for k in row if k not in labels)
        pos = {s: i for i, s in enumerate(labels)}
        d = np.zeros((len(labels), len(labels)))
        for a, row in dist.items():
            for b, v in row.items():
                d[pos[a], pos[b]] = d[pos[b], pos[a]] = v
        return cls(tuple(labels), d, pos[base])

    @property
    def n(self):
        return self.dist.shape[0]

    def __len__(self):
        return self.n

    @property
    def radii(self):
        """Distances to the base point, ``d(x, 0)``."""
        return self.dist[:, 0]

    def index(self, point):
        if isinstance(point, (int, np.integer)):
            if not 0 <= point < self.n:
                raise StructuralError(f"point index {point} out of range")
            return int(point)
        try:
            return self.labels.index(str(point))
        except ValueError:
            raise StructuralError(f"unknown point label {point!r}") from None

    def same_as(self, other):
        return self is other or (
            self.labels == other.labels and np.array_equal(self.dist, other.dist)
        )

    def __repr__(self):
        return f"PointedMetricSpace(n={self.n}, labels={list(self.labels)})"


@dataclass(frozen=True)
class Violation:
    axiom: str
    indices: tuple
    detail: str

    def __str__(self):
        return f"{self.axiom} at {self.indices}: {self.detail}"

    def as_dict(self):
        return {"axiom": self.axiom, "indices": list(self.indices), "detail": self.detail}


def validate_space(space, tol=None):
    """Return every metric-axiom violation of ``space`` (empty list if valid).

    Accepts a :class:`PointedMetricSpace` or a raw matrix.  Triangle
    violations are reported as ``(i, k, j)`` meaning ``d(i,j) > d(i,k) + d(k,j)``,
    with labels in place of indices when a space is given.
    """
    tol = tolerance.resolve(tol)
    if isinstance(space, PointedMetricSpace):
        d, labels = space.dist, space.labels
    else:
        d = np.asarray(space, dtype=np.float64)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise StructuralError(f"distance matrix must be square, got shape {d.shape}")
        labels = tuple(str(i) for i in range(d.shape[0]))
    n = d.shape[0]
    out = []
    for i in range(n):
        if d[i, i] != 0:
            out.append(Violation("zero-diagonal", (labels[i],), f"d = {float(d[i, i])!r}"))
    for i, j in zip(*np.triu_indices(n, 1)):
        if abs(d[i, j] - d[j, i]) > tol:
            out.append(Violation("symmetry", (labels[i], labels[j]), f"{float(d[i, j])!r} != {float(d[j, i])!r}"))
        if not d[i, j] > 0 or not d[j, i] > 0:
            out.append(Violation("positivity", (labels[i], labels[j]), f"d = {float(d[i, j])!r}"))
    for i in range(n):
        slack = d[i, :, None] + d[:, :] - d[i, None, :]  # [k, j]: d(i,k) + d(k,j) - d(i,j)
        for k, j in np.argwhere(slack < -tol):
            if i < j and k != i and k != j:
                out.append(Violation(
                    "triangle", (labels[i], labels[k], labels[j]),
                    f"d(i,j) = {float(d[i, j])!r} > d(i,k) + d(k,j) = {float(d[i, k] + d[k, j])!r}",
                ))
    return out


@dataclass(frozen=True, eq=False)
class CoordSpace:
    """Points of R^d under the l1, l2 or sup norm; the base point is the origin."""

    coords: np.ndarray
    norm_tag: str = "two"
    base: int = 0
    labels: tuple = None

    def __post_init__(self):
        c = np.array(self.coords, dtype=np.float64)
        if c.ndim == 1:
            c = c[:, None]
        if c.ndim != 2 or c.shape[0] == 0:
            raise StructuralError(f"coords must be a non-empty (n, d) array, got shape {c.shape}")
        if not np.all(np.isfinite(c)):
            raise StructuralError("coords contain NaN or infinite entries")
        check_norm_tag(self.norm_tag)
        n = c.shape[0]
        labels = tuple(str(s) for s in self.labels) if self.labels is not None else _default_labels(n)
        if len(labels) != n or len(set(labels)) != n:
            raise StructuralError("labels must be unique, one per point")
        order = _front_order(n, int(self.base))
        c = c[order]
        if np.any(c[0] != 0.0):
            raise DomainError(f"base point coordinates must be the zero vector, got {c[0].tolist()}")
        object.__setattr__(self, "coords", _frozen(c))
        object.__setattr__(self, "labels", tuple(labels[i] for i in order))
        object.__setattr__(self, "base", 0)

    @property
    def n(self):
        return self.coords.shape[0]

    @property
    def dim(self):
        return self.coords.shape[1]

    def norms(self):
        return vector_norm(self.coords, self.norm_tag)


def induced_space(c):
    diff = c.coords[:, None, :] - c.coords[None, :, :]
    return PointedMetricSpace(c.labels, vector_norm(diff, c.norm_tag))


def restrict_to_ball(c, tol=None):
    """Keep the points of norm at most 1 (the base always survives).

    Norms up to ``1 + tol`` count as on the sphere so that normalized points
    ``x / ||x||`` are retained despite rounding.  Returns the restricted
    space and the original indices of the kept points.
    """
    tol = tolerance.resolve(tol)
    keep = np.flatnonzero(c.norms() <= 1.0 + tol)
    if keep.size == 0 or keep[0] != 0:
        keep = np.concatenate([[0], keep[keep != 0]])
    ball = CoordSpace(c.coords[keep], c.norm_tag, 0, tuple(c.labels[i] for i in keep))
    return ball, keep


@dataclass(frozen=True, eq=False)
class PointMap:
    src: PointedMetricSpace
    dst: PointedMetricSpace
    table: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.table)
        if t.ndim != 1 or t.shape[0] != self.src.n:
            raise StructuralError(f"table length {t.shape} does not match |src| = {self.src.n}")
        if t.size and (not np.issubdtype(t.dtype, np.integer) or t.min() < 0 or t.max() >= self.dst.n):
            raise StructuralError("table entries must be valid destination indices")
        t = t.astype(np.int64)
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @classmethod
    def from_labels(cls, src, dst, mapping):
        """``mapping`` is ``{src_label: dst_label}`` or a per-index list of dst labels."""
        if isinstance(mapping, dict):
            table = [None] * src.n
            for a, b in mapping.items():
                table[src.index(a)] = dst.index(b)
            if any(v is None for v in table):
                missing = [src.labels[i] for i, v in enumerate(table) if v is None]
                raise StructuralError(f"map table missing source points {missing}")
        else:
            table = [dst.index(b) for b in mapping]
        return cls(src, dst, np.array(table, dtype=np.int64))

    @classmethod
    def identity(cls, space):
        return cls(space, space, np.arange(space.n))

    @classmethod
    def constant_base(cls, src, dst=None):
        return cls(src, src if dst is None else dst, np.zeros(src.n, dtype=np.int64))

    def base_preserving(self, tol=None):
        return int(self.table[0]) == 0

    def image_dist(self):
        """``d(f(x), f(y))`` for all pairs."""
        return self.dst.dist[np.ix_(self.table, self.table)]

    def image_norms(self):
        """``d(f(x), 0)`` for all x."""
        return self.dst.dist[self.table, 0]

    def image_dist_to(self, x0):
        return self.dst.dist[self.table, self.table[x0]]

    def distance_to(self, other):
        """``d(f(x), g(x))`` pointwise."""
        return self.dst.dist[self.table, other.table]

    def same_shape(self, other):
        return (
            isinstance(other, PointMap)
            and self.src.same_as(other.src)
            and self.dst.same_as(other.dst)
        )


def compose(s, t):
    """``s`` after ``t`` for point maps."""
    if not t.dst.same_as(s.src):
        raise StructuralError("cannot compose: codomain of the inner map is not the outer map's domain")
    return PointMap(t.src, s.dst, s.table[t.table])


@dataclass(frozen=True, eq=False)
class VectorMap:
    """A map from a finite space into R^k, normed by ``norm_tag``."""

    src: PointedMetricSpace
    values: np.ndarray
    norm_tag: str = "two"

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64)
        if v.ndim == 1:
            v = v[:, None]
        if v.ndim != 2 or v.shape[0] != self.src.n:
            raise StructuralError(f"values shape {v.shape} does not match |src| = {self.src.n}")
        if not np.all(np.isfinite(v)):
            raise StructuralError("map values contain NaN or infinite entries")
        check_norm_tag(self.norm_tag)
        object.__setattr__(self, "values", _frozen(v))

    @property
    def k(self):
        return self.values.shape[1]

    @classmethod
    def zeros(cls, src, k=1, norm_tag="two"):
        return cls(src, np.zeros((src.n, k)), norm_tag)

    def base_preserving(self, tol=None):
        return float(vector_norm(self.values[0], self.norm_tag)) <= tolerance.resolve(tol)

    def _norm(self, v):
        return vector_norm(v, self.norm_tag)

    def image_dist(self):
        return self._norm(self.values[:, None, :] - self.values[None, :, :])

    def image_norms(self):
        return self._norm(self.values)

    def image_dist_to(self, x0):
        return self._norm(self.values - self.values[x0])

    def distance_to(self, other):
        return self._norm(self.values - other.values)

    def same_shape(self, other):
        return (
            isinstance(other, VectorMap)
            and self.src.same_as(other.src)
            and self.k == other.k
            and self.norm_tag == other.norm_tag
        )

    def with_values(self, values):
        return VectorMap(self.src, values, self.norm_tag)

    def __add__(self, other):
        if not self.same_shape(other):
            raise StructuralError("vector maps differ in domain, dimension or norm")
        return self.with_values(self.values + other.values)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.with_values(-self.values)

    def __mul__(self, alpha):
        return self.with_values(float(alpha) * self.values)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class RealFunctionSample:
    """Values of a real function on a strictly increasing grid containing 0.0."""

    grid: np.ndarray
    values: np.ndarray
    base: int = field(init=False)

    def __post_init__(self):
        g = np.array(self.grid, dtype=np.float64)
        v = np.array(self.values, dtype=np.float64)
        if g.ndim != 1 or v.shape != g.shape:
            raise StructuralError(f"grid {g.shape} and values {v.shape} must be matching 1-d arrays")
        if not (np.all(np.isfinite(g)) and np.all(np.isfinite(v))):
            raise StructuralError("grid or values contain NaN or infinite entries")
        if g.size > 1 and not np.all(np.diff(g) > 0):
            raise StructuralError("grid must be strictly increasing")
        zero = np.flatnonzero(g == 0.0)
        if zero.size != 1:
            raise StructuralError("grid must contain 0.0")
        object.__setattr__(self, "grid", _frozen(g))
        object.__setattr__(self, "values", _frozen(v))
        object.__setattr__(self, "base", int(zero[0]))

    @classmethod
    def from_function(cls, fn, grid):
        g = np.asarray(grid, dtype=np.float64)
        return cls(g, fn(g))


def symmetric_grid(radius, half_points):
    """``2*half_points + 1`` uniform points on ``[-radius, radius]`` with an exact 0.0."""
    return radius * (np.arange(-half_points, half_points + 1) / half_points)
