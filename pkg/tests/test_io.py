import json

import numpy as np
import pytest

from extlip import CoordSpace, LoadError, PointMap, VectorMap, io


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return p


def test_shipped_space_loads():
    s = io.load_space("m3")
    assert s.labels == ("0", "a", "b") and s.dist[1, 2] == 1.5


def test_coordinate_space_loads():
    s = io.load_space("r2-equidistant")
    assert isinstance(s, CoordSpace) and s.labels[0] == "o"


def test_map_refs_resolve_relative_to_file(tmp_path):
    write(tmp_path, "sp.json", {"labels": ["0", "x"], "dist": [[0, 2], [2, 0]]})
    p = write(tmp_path, "f.json", {"src_ref": "sp.json", "dst_ref": "sp.json", "table": {"0": "0", "x": "x"}})
    f, src = io.load_map(p)
    assert isinstance(f, PointMap) and f.table.tolist() == [0, 1]


def test_vector_map_from_list(tmp_path):
    p = write(tmp_path, "v.json", {"src_ref": "m3", "values": [[0], [1], [2]], "norm_tag": "sup"})
    f, _ = io.load_map(p)
    assert isinstance(f, VectorMap) and f.norm_tag == "sup"


def test_base_by_label(tmp_path):
    p = write(tmp_path, "s.json", {"labels": ["x", "o"], "base": "o", "dist": [[0, 1], [1, 0]]})
    assert io.load_space(p).labels == ("o", "x")


def test_bad_json_reports_line_and_column(tmp_path):
    p = write(tmp_path, "bad.json", '{"dist": [[0, 1],\n [1, 0]')
    with pytest.raises(LoadError) as err:
        io.load_space(p)
    assert ":2:" in str(err.value)


@pytest.mark.parametrize(
    "obj, where",
    [
        ({"dist": [[0, -1], [-1, 0]]}, "dist[0, 1]"),
        ({"dist": [[0, 1, 2], [1, 0, 1]]}, "square"),
        ({"labels": ["a"], "dist": [[0, 1], [1, 0]]}, "labels"),
        ({"base": "q", "dist": [[0, 1], [1, 0]]}, "base"),
        ({"base": 5, "dist": [[0, 1], [1, 0]]}, "out of range"),
        ({"coords": [[1.0], [0.0]]}, "zero vector"),
        ({"nothing": 1}, "either"),
    ],
)
def test_space_errors_carry_location(tmp_path, obj, where):
    p = write(tmp_path, "s.json", obj)
    with pytest.raises(LoadError, match=where.replace("[", r"\[").replace("]", r"\]")):
        io.load_space(p)


def test_nan_rejected(tmp_path):
    p = write(tmp_path, "s.json", '{"dist": [[0, NaN], [NaN, 0]]}')
    with pytest.raises(LoadError, match="NaN"):
        io.load_space(p)


def test_missing_reference():
    with pytest.raises(LoadError, match="no such file"):
        io.load_space("does-not-exist")


def test_map_missing_values(tmp_path):
    p = write(tmp_path, "v.json", {"src_ref": "m3", "values": {"0": [0], "a": [1]}})
    with pytest.raises(LoadError, match="missing values"):
        io.load_map(p)


def test_sample_override():
    s = io.load_sample("xn-power", n=3)
    assert s.grid.size == 100_000
    assert np.allclose(s.values, s.grid**3)


def test_sample_grid_forms(tmp_path):
    p = write(tmp_path, "s.json", {"function": "square", "grid": [-1, 0, 2]})
    assert io.load_sample(p).values.tolist() == [1, 0, 4]
    p = write(tmp_path, "s.json", {"function": "identity", "grid": {"radius": 2, "half_points": 2}})
    assert io.load_sample(p).grid.tolist() == [-2, -1, 0, 1, 2]
    p = write(tmp_path, "s.json", {"function": "nope", "grid": [0, 1]})
    with pytest.raises(LoadError, match="unknown function"):
        io.load_sample(p)


def test_parse_sequence(m3):
    s = io.parse_sequence("a, b,0", m3)
    assert s.idx == (1, 2)
    assert io.parse_sequence("", m3).idx == ()


def test_jsonable():
    out = io.jsonable({"a": np.float64("nan"), 1: [np.inf, np.int64(3)], "m": np.eye(2)})
    assert out == {"a": "nan", "1": ["inf", 3], "m": [[1.0, 0.0], [0.0, 1.0]]}
    json.dumps(out)
