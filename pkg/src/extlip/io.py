"""JSON file formats for spaces, maps, function samples and sequences.

Space file (distance form)::

    {"labels": ["0", "a", "b"], "base": "0", "dist": [[0, 1, 2], [1, 0, 1.5], [2, 1.5, 0]]}

Space file (coordinate form)::

    {"labels": [...], "base": "o", "coords": [[0, 0], [1, 0]], "norm_tag": "two"}

Point map::

    {"src_ref": "m3", "dst_ref": "m3", "table": {"0": "0", "a": "b", "b": "a"}}

Vector map::

    {"src_ref": "m3", "k": 1, "norm_tag": "two", "values": {"0": [0], "a": [1], "b": [2]}}

References are paths relative to the referring file, or names of shipped
fixtures.  ``base`` may be a label or an index; ``table`` and ``values``
may also be lists in point order.
"""

import json
import math
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import ExtlipError, LoadError
from .metric import CoordSpace, PointedMetricSpace, PointMap, RealFunctionSample, VectorMap, induced_space

FIXTURE_SUFFIXES = ("", ".json", ".space.json", ".map.json", ".sample.json")


def fixtures_dir():
    return Path(str(resources.files("extlip") / "fixtures"))


def resolve_ref(ref, base_dir=None):
    """Path of a file reference or a shipped fixture name."""
    ref = str(ref)
    candidates = []
    if base_dir is not None:
        candidates.append(Path(base_dir) / ref)
    candidates.append(Path(ref))
    candidates.extend(fixtures_dir() / (ref + sfx) for sfx in FIXTURE_SUFFIXES)
    for c in candidates:
        if c.is_file():
            return c
    raise LoadError(ref, "no such file or shipped fixture")


def read_json(path):
    path = Path(path)
    try:
        with path.open(encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise LoadError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None
    except OSError as exc:
        raise LoadError(str(path), exc.strerror or str(exc)) from None


def _require(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise LoadError(where, f"missing key {key!r}")
    return obj[key]


def _real_array(raw, where, ndim):
    try:
        a = np.array(raw, dtype=np.float64)
    except (TypeError, ValueError):
        raise LoadError(where, "expected a numeric array") from None
    if a.ndim != ndim:
        raise LoadError(where, f"expected a {ndim}-d array, got shape {a.shape}")
    bad = np.argwhere(~np.isfinite(a))
    if bad.size:
        raise LoadError(f"{where}{bad[0].tolist()}", "NaN or infinite value")
    return a


def _base_index(obj, labels, where):
    base = obj.get("base", 0)
    if isinstance(base, int) and not isinstance(base, bool):
        if not 0 <= base < len(labels):
            raise LoadError(f"{where}.base", f"index {base} out of range")
        return base
    if str(base) not in labels:
        raise LoadError(f"{where}.base", f"unknown label {base!r}")
    return labels.index(str(base))


def space_from_obj(obj, where="space"):
    """A :class:`PointedMetricSpace` or :class:`CoordSpace` from parsed JSON."""
    if not isinstance(obj, dict):
        raise LoadError(where, "expected an object")
    if "dist" in obj:
        d = _real_array(obj["dist"], f"{where}.dist", 2)
        if d.shape[0] != d.shape[1]:
            raise LoadError(f"{where}.dist", f"distance matrix must be square, got shape {d.shape}")
        neg = np.argwhere(d < 0)
        if neg.size:
            raise LoadError(f"{where}.dist{neg[0].tolist()}", "negative distance")
        labels = [str(s) for s in obj.get("labels", range(d.shape[0]))]
        if len(labels) != d.shape[0]:
            raise LoadError(f"{where}.labels", f"{len(labels)} labels for {d.shape[0]} points")
        try:
            return PointedMetricSpace(tuple(labels), d, _base_index(obj, labels, where))
        except ExtlipError as exc:
            raise LoadError(where, str(exc)) from None
    if "coords" in obj:
        c = _real_array(obj["coords"], f"{where}.coords", 2)
        labels = [str(s) for s in obj.get("labels", range(c.shape[0]))]
        if len(labels) != c.shape[0]:
            raise LoadError(f"{where}.labels", f"{len(labels)} labels for {c.shape[0]} points")
        try:
            return CoordSpace(c, obj.get("norm_tag", "two"), _base_index(obj, labels, where), tuple(labels))
        except ExtlipError as exc:
            raise LoadError(where, str(exc)) from None
    raise LoadError(where, "space needs either 'dist' or 'coords'")


def as_metric(space):
    return induced_space(space) if isinstance(space, CoordSpace) else space


def load_space(ref, base_dir=None):
    path = resolve_ref(ref, base_dir)
    return space_from_obj(read_json(path), str(path))


def _ref_space(obj, key, path, cache):
    ref = _require(obj, key, f"{path}")
    if isinstance(ref, dict):
        return space_from_obj(ref, f"{path}.{key}")
    target = resolve_ref(ref, Path(path).parent)
    if target not in cache:
        cache[target] = space_from_obj(read_json(target), str(target))
    return cache[target]


def map_from_obj(obj, path="map", cache=None):
    """Returns ``(map, src_space)``; ``src_space`` keeps coordinates when present."""
    cache = {} if cache is None else cache
    src_raw = _ref_space(obj, "src_ref", path, cache)
    src = as_metric(src_raw)
    where = str(path)
    try:
        if "table" in obj:
            dst = as_metric(_ref_space(obj, "dst_ref", path, cache))
            table = obj["table"]
            if isinstance(table, dict):
                table = {str(k): str(v) for k, v in table.items()}
            else:
                table = [str(v) for v in table]
            return PointMap.from_labels(src, dst, table), src_raw
        values = _require(obj, "values", where)
        if isinstance(values, dict):
            rows = [None] * src.n
            for label, v in values.items():
                rows[src.index(str(label))] = v
            if any(r is None for r in rows):
                raise LoadError(f"{where}.values", "missing values for some source points")
            values = rows
        vals = _real_array(values, f"{where}.values", 2)
        k = obj.get("k", vals.shape[1])
        if vals.shape[1] != k:
            raise LoadError(f"{where}.values", f"expected {k} components, got {vals.shape[1]}")
        return VectorMap(src, vals, obj.get("norm_tag", "two")), src_raw
    except LoadError:
        raise
    except ExtlipError as exc:
        raise LoadError(where, str(exc)) from None


def load_map(ref, base_dir=None):
    path = resolve_ref(ref, base_dir)
    return map_from_obj(read_json(path), path)


SAMPLE_FUNCTIONS = {
    "power": lambda x, n=1: x**n,
    "identity": lambda x: x,
    "square": lambda x: x**2,
    "xsinx": lambda x: x * np.sin(x),
}


def sample_grid(spec, where):
    if isinstance(spec, list):
        return _real_array(spec, where, 1)
    if "radius" in spec:
        from .metric import symmetric_grid

        return symmetric_grid(float(spec["radius"]), int(spec["half_points"]))
    return np.linspace(float(spec["start"]), float(spec["stop"]), int(spec["num"]))


def sample_from_obj(obj, where="sample"):
    grid = sample_grid(_require(obj, "grid", where), f"{where}.grid")
    if "values" in obj:
        values = _real_array(obj["values"], f"{where}.values", 1)
    else:
        name = _require(obj, "function", where)
        if name not in SAMPLE_FUNCTIONS:
            raise LoadError(f"{where}.function", f"unknown function {name!r}")
        params = {k: v for k, v in obj.items() if k == "n"}
        if isinstance(params.get("n"), list):
            raise LoadError(f"{where}.n", "a single sample needs a single exponent")
        values = SAMPLE_FUNCTIONS[name](grid, **params)
    try:
        return RealFunctionSample(grid, values)
    except ExtlipError as exc:
        raise LoadError(where, str(exc)) from None


def load_sample(ref, base_dir=None, **override):
    path = resolve_ref(ref, base_dir)
    obj = dict(read_json(path), **override)
    return sample_from_obj(obj, str(path))


def parse_sequence(text, space):
    """Comma-separated point labels; the empty string is the zero sequence."""
    from .sequences import SequencePoint

    labels = [s.strip() for s in str(text).split(",") if s.strip()]
    return SequencePoint.from_labels(space, labels)


def jsonable(x):
    """Plain-JSON form of numbers and arrays; NaN and infinities become strings."""
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return jsonable(x.tolist())
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return x
