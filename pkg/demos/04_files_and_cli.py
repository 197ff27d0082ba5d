"""
Problem files, traces and the command line.

A problem file is JSON with a dimension, a list of function specs and
optionally a starting point and a known feasible point. ``qcfeas run``
writes a CSV trace with one row per inner step and one summary row per
sweep.
"""

import json
import tempfile
from pathlib import Path

from qcfeas.cli import main
from qcfeas.io import read_trace

doc = {
    "dimension": 2,
    "functions": [
        {"family": "ball", "center": [0, 0], "radius": 1, "label": "disk"},
        {"family": "affine", "a": [1, 0], "b": 0, "label": "left"},
    ],
    "x0": [3, 4],
    "feasible_reference": [-0.5, 0],
}

with tempfile.TemporaryDirectory() as tmp:
    problem = Path(tmp) / "problem.json"
    trace = Path(tmp) / "trace.csv"
    problem.write_text(json.dumps(doc, indent=2))

    print("$ qcfeas run --problem problem.json --eps 1e-6 --trace-out trace.csv")
    code = main(["run", "--problem", str(problem), "--eps", "1e-6", "--trace-out", str(trace)])
    print(f"exit code {code}\n")
    print("\n".join(trace.read_text().splitlines()[:4]))
    print(f"... {len(read_trace(trace))} rows\n")

    print("$ qcfeas validate --problem problem.json --region=-3,3 --samples 1000")
    code = main(["validate", "--problem", str(problem), "--region=-3,3", "--samples", "1000"])
    print(f"exit code {code}")
