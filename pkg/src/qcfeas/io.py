"""
Problem files (JSON) and trace files (CSV).

A problem file looks like::

    {
      "dimension": 2,
      "functions": [
        {"family": "affine", "a": [1, 0], "b": 0},
        {"family": "ball", "center": [0, 0], "radius": 1, "label": "disk"}
      ],
      "x0": [2, 3],
      "feasible_reference": [-0.5, 0]
    }

Every function entry may carry ``"L"`` / ``"delta"`` overrides and a
``"label"``; unlabeled functions are named ``f1 .. fm``.

A trace file has the header ``sweep,index_i,x1..xn,f_value,residual,
dist_to_reference``. Sweep ``k`` contributes rows ``index_i = 0 .. m``:
row ``i < m`` holds the inner point ``y^i`` and ``f_{i+1}(y^i)``; row
``m`` holds ``x_{k+1} = y^m`` and the residual after the sweep. Numbers are
written with 17 significant digits, so every double round-trips exactly.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import NamedTuple, Optional

import numpy as np

from .core import FeasibilityProblem, as_point
from .errors import ParseError, QcError, SchemaError
from .functions import FamilySpec, build_oracle

__all__ = [
    "ParsedProblem",
    "load_problem",
    "parse_problem",
    "dump_problem",
    "write_problem",
    "format_float",
    "trace_rows",
    "write_trace",
    "read_trace",
]

_TOP_KEYS = {"dimension", "functions", "x0", "feasible_reference"}


class ParsedProblem(NamedTuple):
    problem: FeasibilityProblem
    x0: Optional[np.ndarray]
    reference: Optional[np.ndarray]


def _point_entry(doc: dict, key: str, dimension: int):
    v = doc.get(key)
    if v is None:
        return None
    if (not isinstance(v, list) or len(v) != dimension
            or not all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in v)):
        raise SchemaError(f"{key!r} must be an array of {dimension} numbers")
    return as_point(v, dimension)


def load_problem(doc) -> ParsedProblem:
    """Build a problem from an already-decoded JSON document."""
    if not isinstance(doc, dict):
        raise SchemaError("problem document must be a JSON object")
    extra = set(doc) - _TOP_KEYS
    if extra:
        raise SchemaError(f"unexpected top-level keys {sorted(extra)}")
    dim = doc.get("dimension")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise SchemaError(f"'dimension' must be an integer >= 1, got {dim!r}")
    entries = doc.get("functions")
    if not isinstance(entries, list) or not entries:
        raise SchemaError("'functions' must be a non-empty array")

    oracles = []
    for i, entry in enumerate(entries, start=1):
        try:
            spec = FamilySpec.from_dict(entry)
            if spec.label is None:
                spec = spec.with_label(f"f{i}")
            oracles.append(build_oracle(spec, dim))
        except SchemaError as exc:
            raise type(exc)(f"functions[{i - 1}]: {exc}") from None
        except (QcError, ValueError, TypeError) as exc:
            raise SchemaError(f"functions[{i - 1}]: {exc}") from None
    return ParsedProblem(
        FeasibilityProblem(dim, oracles),
        _point_entry(doc, "x0", dim),
        _point_entry(doc, "feasible_reference", dim),
    )


def parse_problem(path) -> ParsedProblem:
    """Read and validate a problem file.

    Raises ``ParseError`` (with line and column) for malformed JSON,
    ``SchemaError`` / ``UnknownFamily`` for well-formed documents that do
    not describe a valid problem, and ``OSError`` if the file is missing.
    """
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return load_problem(doc)


def dump_problem(problem: FeasibilityProblem, x0=None, reference=None) -> dict:
    functions = []
    for f in problem.functions:
        if not isinstance(f.spec, FamilySpec):
            raise ValueError(f"{f.label} was not built from a family spec; cannot serialize")
        functions.append(f.spec.to_dict())
    doc = {"dimension": problem.dimension, "functions": functions}
    if x0 is not None:
        doc["x0"] = as_point(x0).tolist()
    if reference is not None:
        doc["feasible_reference"] = as_point(reference).tolist()
    return doc


def write_problem(path, problem: FeasibilityProblem, x0=None, reference=None) -> None:
    Path(path).write_text(json.dumps(dump_problem(problem, x0, reference), indent=2) + "\n")


def format_float(v: Optional[float]) -> str:
    return "" if v is None else format(float(v), ".17g")


def trace_header(dimension: int) -> list:
    return (["sweep", "index_i"] + [f"x{j}" for j in range(1, dimension + 1)]
            + ["f_value", "residual", "dist_to_reference"])


def trace_rows(trace, reference=None):
    """Yield trace rows as lists of strings (header excluded)."""
    z = None if reference is None else as_point(reference)
    for rec in trace:
        if rec.inner is None:
            raise ValueError("trace was recorded without inner points")
        m = len(rec.values)
        for i, y in enumerate(rec.inner):
            dist = None if z is None else float(np.linalg.norm(y - z))
            row = [str(rec.sweep_index), str(i)] + [format_float(t) for t in y]
            if i < m:
                row += [format_float(rec.values[i]), "", format_float(dist)]
            else:
                row += ["", format_float(rec.residual), format_float(dist)]
            yield row


def write_trace(path, trace, dimension: int, reference=None) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(trace_header(dimension))
        w.writerows(trace_rows(trace, reference))


def read_trace(path) -> list:
    """Read a trace file back as a list of dicts.

    Each dict has ``sweep`` and ``index_i`` (ints), ``point`` (array) and
    ``f_value`` / ``residual`` / ``dist_to_reference`` (float or None).
    """
    out = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        n = len(header) - 5
        for row in reader:
            opt = [None if s == "" else float(s) for s in row[2 + n:]]
            out.append({
                "sweep": int(row[0]),
                "index_i": int(row[1]),
                "point": np.array([float(s) for s in row[2:2 + n]]),
                "f_value": opt[0],
                "residual": opt[1],
                "dist_to_reference": opt[2],
            })
    return out


def json_safe(v):
    """Replace non-finite floats (not representable in JSON) by strings."""
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    if isinstance(v, dict):
        return {k: json_safe(t) for k, t in v.items()}
    if isinstance(v, (list, tuple)):
        return [json_safe(t) for t in v]
    return v
