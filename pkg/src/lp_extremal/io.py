"""Point-set ingestion (JSON and CSV) and deterministic report serialization."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .errors import InputError
from .space import PointSet, WeightedSpace

__all__ = [
    "SCHEMA_VERSION",
    "POINTSET_SCHEMA",
    "REPORT_SCHEMA",
    "load_pointset",
    "parse_pointset_json",
    "parse_pointset_csv",
    "load_weights",
    "pointset_document",
    "dumps",
    "report_to_csv",
]

SCHEMA_VERSION = "1"

_number = {"type": "number"}
_nullable_number = {"type": ["number", "null"]}

POINTSET_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "point set",
    "type": "object",
    "required": ["p", "cells", "points"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "p": {"type": "number", "exclusiveMinimum": 1},
        "cells": {"type": "array", "minItems": 1,
                  "items": {"type": "number", "exclusiveMinimum": 0}},
        "points": {"type": "array", "minItems": 1,
                   "items": {"type": "array", "items": _number}},
    },
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "report",
    "type": "object",
    "required": ["schema", "command"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "command": {"type": "string"},
        "seed": {"type": ["integer", "null"]},
        "p": _number,
        "alpha": _number,
        "radius": _number,
        "diameter": _number,
        "ratio": _number,
        "jung": _number,
        "margin": _number,
        "witness_indices": {"type": ["array", "null"], "items": {"type": "integer"}},
        "min_edge": _nullable_number,
        "center": {"type": "array", "items": _number},
        "weights": {"type": ["array", "null"], "items": _number},
        "gap_estimate": _number,
        "converged": {"type": "boolean"},
        "lhs": _number,
        "rhs": _number,
        "gap": _number,
        "criteria": {"type": "array", "items": {
            "type": "object", "required": ["id", "passed"],
            "properties": {"id": {"type": "integer"}, "passed": {"type": "boolean"}}}},
    },
}


def _space_from(p, cells, ncols):
    if p is None:
        raise InputError("exponent p missing (give it in the file or with --p)")
    if cells is None:
        cells = np.ones(ncols)
    return WeightedSpace(float(p), cells)


def parse_pointset_json(text: str, p: Optional[float] = None,
                        measures: Optional[Sequence[float]] = None
                        ) -> tuple[WeightedSpace, PointSet]:
    """Parse ``{"p": .., "cells": [..], "points": [[..], ..]}``.

    Explicit ``p`` / ``measures`` arguments override the document.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict) or "points" not in doc:
        raise InputError("point-set JSON must be an object with a 'points' array")
    points = doc["points"]
    try:
        arr = np.array(points, dtype=float)
    except (TypeError, ValueError):
        raise InputError("'points' must be a rectangular array of numbers") from None
    if arr.ndim != 2:
        raise InputError("'points' must be a non-empty list of equal-length rows")
    space = _space_from(p if p is not None else doc.get("p"),
                        measures if measures is not None else doc.get("cells"),
                        arr.shape[1])
    return space, PointSet(space, arr)


def parse_pointset_csv(text: str, p: Optional[float],
                       measures: Optional[Sequence[float]] = None
                       ) -> tuple[WeightedSpace, PointSet]:
    """One point per row, one cell per column; ``#`` lines are comments.

    Comment rows ``# p,<value>`` and ``# cells,<m1>,<m2>,..`` supply the
    exponent and measures when the arguments do not. Measures default to
    one (``l_p``).
    """
    rows = []
    meta = {}
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), 1):
        if not row:
            continue
        head = row[0].strip()
        if head.startswith("#"):
            key = head.lstrip("#").strip()
            if key in ("p", "cells"):
                try:
                    meta[key] = [float(x) for x in row[1:] if x.strip()]
                except ValueError:
                    raise InputError(f"line {lineno}: malformed '# {key}' row") from None
            continue
        try:
            rows.append([float(x) for x in row])
        except ValueError:
            raise InputError(f"line {lineno}: non-numeric CSV field") from None
    if not rows:
        raise InputError("CSV contains no points")
    if len({len(r) for r in rows}) != 1:
        raise InputError("CSV rows have different lengths")
    if p is None and meta.get("p"):
        p = meta["p"][0]
    if measures is None and meta.get("cells"):
        measures = meta["cells"]
    space = _space_from(p, measures, len(rows[0]))
    return space, PointSet(space, np.array(rows))


def load_pointset(path, p: Optional[float] = None,
                  measures: Optional[Sequence[float]] = None
                  ) -> tuple[WeightedSpace, PointSet]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    if path.suffix.lower() == ".csv":
        return parse_pointset_csv(text, p, measures)
    return parse_pointset_json(text, p, measures)


def load_weights(path) -> np.ndarray:
    """Weights from JSON (list or ``{"weights": [...]}``) or CSV (any layout)."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        if path.suffix.lower() == ".csv":
            vals = [float(x) for row in csv.reader(io.StringIO(text))
                    for x in row if x.strip()]
        else:
            doc = json.loads(text)
            vals = doc["weights"] if isinstance(doc, dict) else doc
            vals = [float(x) for x in vals]
    except (ValueError, KeyError, TypeError, json.JSONDecodeError):
        raise InputError(f"malformed weights file {path}") from None
    return np.array(vals)


def pointset_document(space: WeightedSpace, points, **extra) -> dict:
    coords = points.coords if isinstance(points, PointSet) else np.asarray(points)
    doc = {"schema": SCHEMA_VERSION, "p": space.p, "cells": space.cells.tolist(),
           "points": coords.tolist()}
    doc.update(extra)
    return doc


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return None
        if x.is_integer() and abs(x) < 2 ** 53:
            return int(x)
        return x
    return obj


def dumps(report: dict) -> str:
    """Compact JSON; floats use the shortest repr that round-trips exactly."""
    return json.dumps(_plain(report), separators=(",", ":"), allow_nan=False)


def report_to_csv(report: dict) -> str:
    """Flatten a report (or a point-set document) to CSV.

    Point-set documents become one row per point; other reports become
    ``key,value`` rows with list values joined by spaces.
    """
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    plain = _plain(report)
    if "points" in plain and "cells" in plain:
        w.writerow(["# p", plain["p"]])
        w.writerow(["# cells"] + plain["cells"])
        for row in plain["points"]:
            w.writerow(row)
        return out.getvalue()
    for k, v in plain.items():
        if isinstance(v, list):
            v = " ".join(json.dumps(x, separators=(",", ":")) for x in v)
        w.writerow([k, v])
    return out.getvalue()
