"""JSON interchange for matrices and CSV/JSON output for probe reports.

Matrix format::

    {"dim": n, "re": [[...], ...], "im": [[...], ...]}        # row-major
    {"dim": n, "re": ..., "im": ..., "dims": [d1, d2]}        # optional tensor structure

Python floats survive a ``json`` round trip exactly, so ``load(save(X)) == X``
bit for bit.
"""

from __future__ import annotations

import csv
import io as _io
import json
from pathlib import Path
from typing import Optional

import numpy as np

from .matcore import NotHermitianError, ShapeError

HERMITIAN_LOAD_TOL = 1e-9


class MatrixFormatError(ValueError):
    pass


def matrix_to_json(X, dims=None) -> dict:
    X = np.asarray(X, dtype=complex)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise ShapeError(f"only square matrices are serialised, got {X.shape}")
    obj = {"dim": int(X.shape[0]), "re": X.real.tolist(), "im": X.imag.tolist()}
    if dims is not None:
        obj["dims"] = [int(d) for d in dims]
    return obj


def matrix_from_json(obj: dict, tol: float = HERMITIAN_LOAD_TOL) -> np.ndarray:
    """Parse and validate a matrix object; raises on non-Hermitian input."""
    try:
        n = int(obj["dim"])
        re = np.array(obj["re"], dtype=float)
        im = np.array(obj["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixFormatError(f"malformed matrix object: {exc}") from exc
    if re.shape != (n, n) or im.shape != (n, n):
        raise MatrixFormatError(f"declared dim {n} but got re{re.shape} / im{im.shape}")
    X = re + 1j * im
    D = np.abs(X - X.conj().T)
    i, j = np.unravel_index(np.argmax(D), D.shape)
    if D[i, j] > tol * max(1.0, float(np.max(np.abs(X)))):
        raise NotHermitianError(
            f"matrix is not Hermitian: |X[{i},{j}] - conj(X[{j},{i}])| = {D[i, j]:.3e}"
        )
    if "dims" in obj and int(np.prod(obj["dims"])) != n:
        raise MatrixFormatError(f"dims {obj['dims']} do not multiply to {n}")
    return X


def save_matrix(X, path, dims=None) -> None:
    Path(path).write_text(json.dumps(matrix_to_json(X, dims)))


def load_matrix(path) -> np.ndarray:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"{path}: invalid JSON ({exc})") from exc
    return matrix_from_json(obj)


def matrices_to_json(mats: dict) -> dict:
    out = {}
    for k, v in mats.items():
        a = np.asarray(v) if not np.isscalar(v) else v
        if isinstance(a, np.ndarray) and a.ndim == 2:
            out[k] = matrix_to_json(a)
        elif isinstance(a, np.ndarray) and a.ndim == 1:
            out[k] = {"re": a.real.tolist(), "im": a.imag.tolist()}
        else:
            out[k] = float(a)
    return out


# --- reports --------------------------------------------------------------------------------


def report_to_json(report, timestamp: Optional[str] = None) -> str:
    d = report.to_dict() if hasattr(report, "to_dict") else dict(report)
    if timestamp is not None:
        d["timestamp"] = timestamp
    return json.dumps(d, indent=2, sort_keys=True)


def report_to_csv(report) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["trial", "seed", "slack"])
    for i, s in enumerate(report.slacks):
        w.writerow([i, report.seed + i, repr(float(s))])
    return buf.getvalue()


def save_report(report, path, format: str = "json", timestamp: Optional[str] = None) -> None:
    if format == "json":
        text = report_to_json(report, timestamp)
    elif format == "csv":
        text = report_to_csv(report)
    else:
        raise ValueError(f"unknown report format {format!r}")
    Path(path).write_text(text)
