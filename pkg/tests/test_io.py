import csv
import io
import json

import numpy as np
import pytest

from tracemink import probes
from tracemink.io import (
    MatrixFormatError,
    load_matrix,
    matrix_from_json,
    matrix_to_json,
    report_to_csv,
    report_to_json,
    save_matrix,
    save_report,
)
from tracemink.matcore import NotHermitianError, ShapeError

from .conftest import rand_herm, rand_psd


def test_round_trip_is_bit_exact(rng, tmp_path):
    X = rand_psd(rng, 4)
    path = tmp_path / "x.json"
    save_matrix(X, path, dims=(2, 2))
    Y = load_matrix(path)
    assert np.array_equal(X, Y)
    assert json.loads(path.read_text())["dims"] == [2, 2]


def test_round_trip_hermitian_with_awkward_values(rng):
    X = rand_herm(rng, 3) * 1e-300 + np.diag([np.pi, 1 / 3, 1e17])
    assert np.array_equal(matrix_from_json(json.loads(json.dumps(matrix_to_json(X)))), X)


def test_schema():
    obj = matrix_to_json(np.array([[1, 1j], [-1j, 2]]))
    assert obj == {"dim": 2, "re": [[1.0, 0.0], [0.0, 2.0]], "im": [[0.0, 1.0], [-1.0, 0.0]]}


def test_non_hermitian_load_names_entry():
    obj = {"dim": 2, "re": [[1, 0.5], [0.0, 1]], "im": [[0, 0], [0, 0]]}
    with pytest.raises(NotHermitianError, match=r"X\[(0,1|1,0)\]"):
        matrix_from_json(obj)


def test_tiny_asymmetry_accepted():
    obj = {"dim": 2, "re": [[1, 0.5], [0.5 + 1e-12, 1]], "im": [[0, 0], [0, 0]]}
    assert matrix_from_json(obj).shape == (2, 2)


@pytest.mark.parametrize(
    "obj",
    [
        {"re": [[1]], "im": [[0]]},
        {"dim": 2, "re": [[1]], "im": [[0]]},
        {"dim": 1, "re": "x", "im": [[0]]},
        {"dim": 4, "re": np.eye(4).tolist(), "im": np.zeros((4, 4)).tolist(), "dims": [3, 2]},
    ],
)
def test_malformed_objects(obj):
    with pytest.raises(MatrixFormatError):
        matrix_from_json(obj)


def test_malformed_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(MatrixFormatError):
        load_matrix(path)


def test_non_square_rejected():
    with pytest.raises(ShapeError):
        matrix_to_json(np.zeros((2, 3)))


def test_report_csv_rows():
    rep = probes.midpoint_probe(0.5, 2, 2, 5, seed=9)
    rows = list(csv.reader(io.StringIO(report_to_csv(rep))))
    assert rows[0] == ["trial", "seed", "slack"]
    assert len(rows) == 6
    assert [int(r[1]) for r in rows[1:]] == [9, 10, 11, 12, 13]
    assert [float(r[2]) for r in rows[1:]] == rep.slacks


def test_report_json_timestamp_and_witness(tmp_path):
    rep = probes.midpoint_probe(3, 2, 2, 20, seed=0)
    text = report_to_json(rep, timestamp="T")
    d = json.loads(text)
    assert d["timestamp"] == "T"
    assert d["witness"]["X0"]["dim"] == 2
    matrix_from_json(d["witness"]["X0"])
    save_report(rep, tmp_path / "r.csv", "csv")
    assert (tmp_path / "r.csv").read_text().startswith("trial,seed,slack")
    with pytest.raises(ValueError):
        save_report(rep, tmp_path / "r.xml", "xml")
