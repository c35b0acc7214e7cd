"""Random instances for the property suite.

Two independent families of spaces: point clouds in R^3 under l2 (metric by
construction) and random weighted complete graphs closed under shortest
paths.
"""

import numpy as np
from scipy.sparse.csgraph import floyd_warshall

from .metric import NORM_ORD, CoordSpace, PointedMetricSpace, PointMap, VectorMap, induced_space
from .sequences import SequencePoint

FAMILIES = ("cloud", "graph")
NORM_TAGS = tuple(NORM_ORD)


def cloud_space(rng, n, dim=3):
    pts = rng.normal(size=(n, dim))
    pts -= pts[0]
    pts[0] = 0.0
    return induced_space(CoordSpace(pts, "two"))


def graph_space(rng, n):
    w = rng.uniform(0.5, 3.0, size=(n, n))
    w = np.triu(w, 1)
    w = w + w.T
    d = floyd_warshall(w, directed=False)
    d = np.minimum(d, d.T)
    np.fill_diagonal(d, 0.0)
    return PointedMetricSpace(None, d)


def random_space(rng, lo, hi, family=None):
    n = int(rng.integers(lo, hi + 1))
    family = family or FAMILIES[int(rng.integers(len(FAMILIES)))]
    return cloud_space(rng, n) if family == "cloud" else graph_space(rng, n)


def random_point_map(rng, src, dst, base_preserving=True):
    table = rng.integers(0, dst.n, size=src.n)
    if base_preserving:
        table[0] = 0
    return PointMap(src, dst, table)


def random_vector_map(rng, src, k, norm_tag="two", base_zero=True):
    vals = rng.normal(size=(src.n, k)) * rng.uniform(0.1, 3.0)
    if base_zero:
        vals[0] = 0.0
    return VectorMap(src, vals, norm_tag)


def random_sequence(rng, space, max_len):
    length = int(rng.integers(0, max_len + 1))
    return SequencePoint(space, tuple(int(i) for i in rng.integers(0, space.n, size=length)))


def unit_vector(rng, dim, norm_tag):
    v = rng.normal(size=dim)
    while not np.any(v):
        v = rng.normal(size=dim)
    return v / np.linalg.norm(v, ord=NORM_ORD[norm_tag])


def retraction_closed_sample(rng, dim, norm_tag, directions, max_points=10):
    """A sample of R^dim whose outside points retract onto sampled sphere points."""
    pts = [np.zeros(dim)]
    for _ in range(directions):
        u = unit_vector(rng, dim, norm_tag)
        pts.append(u)
        if rng.random() < 0.6:
            pts.append(u * rng.uniform(0.05, 0.95))
        for _ in range(int(rng.integers(1, 3))):
            pts.append(u * rng.uniform(1.1, 4.0))
    pts = pts[:max_points]
    return CoordSpace(np.array(pts), norm_tag)
