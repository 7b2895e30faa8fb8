"""File formats: matrices (CSV rows or JSON {"re", "im"}), vectors and measures."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .lp import CVector, DiscreteMeasure


def _as_matrix(rows, what) -> np.ndarray:
    try:
        M = np.array(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{what}: entries must be numbers") from exc
    if M.ndim == 1 and M.size:
        M = M[None, :]
    if M.ndim != 2 or M.size == 0:
        raise ValueError(f"{what}: expected a non-empty 2-D array")
    return M


def parse_matrix(text: str, fmt: str = "csv") -> np.ndarray:
    """Real CSV rows, or JSON {"re": rows, "im": rows} / plain JSON rows."""
    if fmt == "json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"matrix JSON is malformed: {exc}") from exc
        if isinstance(data, dict):
            if "re" not in data:
                raise ValueError('matrix JSON object needs an "re" field')
            re = _as_matrix(data["re"], "re")
            if data.get("im") is None:
                return re
            im = _as_matrix(data["im"], "im")
            if im.shape != re.shape:
                raise ValueError(f"re and im shapes differ: {re.shape} vs {im.shape}")
            return re + 1j * im
        return _as_matrix(data, "matrix")
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if not rows:
        raise ValueError("matrix file is empty")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ValueError("matrix rows have different lengths")
    return _as_matrix([[c.strip() for c in r] for r in rows], "matrix")


def read_matrix(path) -> np.ndarray:
    path = Path(path)
    fmt = "json" if path.suffix.lower() == ".json" else "csv"
    return parse_matrix(path.read_text(), fmt)


def matrix_to_json(A) -> str:
    A = np.asarray(A)
    d = {"re": np.real(A).tolist(), "im": np.imag(A).tolist() if np.iscomplexobj(A) else None}
    return json.dumps(d)


def read_measure(path) -> DiscreteMeasure:
    """JSON array of positive weights."""
    try:
        w = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"measure JSON is malformed: {exc}") from exc
    if not isinstance(w, list):
        raise ValueError("measure file must hold a JSON array of weights")
    return DiscreteMeasure(w)


def vector_to_csv(x: CVector) -> str:
    """One header row re_0..re_{n-1}, im_0..im_{n-1} and one data row."""
    n = x.re.size
    head = [f"re_{k}" for k in range(n)] + [f"im_{k}" for k in range(n)]
    vals = [repr(float(v)) for v in np.concatenate([x.re, x.im])]
    return ",".join(head) + "\n" + ",".join(vals) + "\n"


def vector_from_csv(text: str) -> CVector:
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    if len(rows) != 2 or len(rows[0]) != len(rows[1]) or len(rows[0]) % 2:
        raise ValueError("vector CSV needs a header and one row of re_k, im_k columns")
    vals = dict(zip(rows[0], map(float, rows[1])))
    n = len(rows[0]) // 2
    try:
        return CVector([vals[f"re_{k}"] for k in range(n)], [vals[f"im_{k}"] for k in range(n)])
    except KeyError as exc:
        raise ValueError(f"missing column {exc}") from exc
