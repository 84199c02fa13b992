"""JSON serialization of curves.

A document looks like::

    {"degree": 3,
     "coefficients": [[[1.0, 0.0], [0.0, 0.0], ...], ... 4 rows ...],
     "metadata": {"family": "psi3", "params": {}}}

Complex numbers are [re, im] pairs so the files stay portable.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .curve import CurveCP3
from .errors import DocumentError


def curve_to_document(c: CurveCP3, metadata: dict | None = None) -> dict:
    doc = {
        "degree": c.degree,
        "coefficients": [[[float(v.real), float(v.imag)] for v in row] for row in c.coeffs],
    }
    meta = dict(metadata or {})
    if c.antiholomorphic:
        meta["antiholomorphic"] = True
    if meta:
        doc["metadata"] = meta
    return doc


def _entry(v, i: int, j: int) -> complex:
    where = f"row {i}, column {j}"
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise DocumentError(f"{where}: expected an [re, im] pair, got {v!r}")
    re, im = v
    for part in (re, im):
        if isinstance(part, bool) or not isinstance(part, (int, float)) or not math.isfinite(part):
            raise DocumentError(f"{where}: entries must be finite numbers, got {v!r}")
    return complex(re, im)


def document_to_curve(doc: dict, validate: bool = True) -> CurveCP3:
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    if "degree" not in doc or "coefficients" not in doc:
        raise DocumentError("document needs 'degree' and 'coefficients'")
    d = doc["degree"]
    if isinstance(d, bool) or not isinstance(d, int) or d < 0:
        raise DocumentError(f"degree must be a non-negative integer, got {d!r}")
    rows = doc["coefficients"]
    if not isinstance(rows, list) or len(rows) != 4:
        n = len(rows) if isinstance(rows, list) else "no"
        raise DocumentError(f"coefficients must have exactly 4 rows, got {n}")
    F = np.zeros((4, d + 1), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != d + 1:
            n = len(row) if isinstance(row, list) else "no"
            raise DocumentError(f"row {i}: expected {d + 1} entries for degree {d}, got {n}")
        for j, v in enumerate(row):
            F[i, j] = _entry(v, i, j)
    meta = doc.get("metadata") or {}
    try:
        return CurveCP3(F, antiholomorphic=bool(meta.get("antiholomorphic", False)),
                        validate=validate)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def dumps(c: CurveCP3, metadata: dict | None = None) -> str:
    return json.dumps(curve_to_document(c, metadata), indent=2)


def load(path) -> tuple[CurveCP3, dict]:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON ({exc})") from exc
    return document_to_curve(doc), doc.get("metadata", {}) if isinstance(doc, dict) else {}
