import json
import subprocess
import sys

import numpy as np
import pytest

from qcfeas import ParseError, SchemaError, UnknownFamily, project
from qcfeas.cli import main
from qcfeas.io import dump_problem, parse_problem, read_trace, write_problem

HALFSPACES = {
    "dimension": 2,
    "functions": [
        {"family": "affine", "a": [1, 0], "b": 0},
        {"family": "affine", "a": [0, 1], "b": 0},
    ],
    "x0": [2, 3],
}

MIXED = {
    "dimension": 2,
    "functions": [
        {"family": "ball", "center": [0, 0], "radius": 1, "label": "disk"},
        {"family": "affine", "a": [1, 0], "b": 0},
        {"family": "linear_fractional", "a": [1, 0], "b": -2, "c": [0, 1], "d": 1, "L": 7.1},
        {"family": "monotone_composition", "phi": "cube", "L": 12, "delta": 1,
         "inner": {"family": "affine", "a": [0, 1], "b": -0.5}},
    ],
    "x0": [3, 4],
    "feasible_reference": [-0.5, 0],
}


def write(tmp_path, doc, name="p.json"):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return path


def run_cli(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_two_halfspaces(tmp_path):
    problem, x0, ref = parse_problem(write(tmp_path, HALFSPACES))
    assert problem.m == 2 and x0.tolist() == [2.0, 3.0] and ref is None
    assert [f.label for f in problem.functions] == ["f1", "f2"]


@pytest.mark.parametrize("mutate, err", [
    (lambda d: d.pop("dimension"), SchemaError),
    (lambda d: d["functions"][0].update(delta=-1), SchemaError),
    (lambda d: d.update(functions=[]), SchemaError),
    (lambda d: d["functions"][0].update(family="cone"), UnknownFamily),
    (lambda d: d.update(x0=[1, 2, 3]), SchemaError),
    (lambda d: d.update(dimension=3), SchemaError),
    (lambda d: d.update(extra=1), SchemaError),
    (lambda d: d["functions"][0].update(a=[0, 0]), SchemaError),
])
def test_parse_errors(tmp_path, mutate, err):
    doc = json.loads(json.dumps(HALFSPACES))
    mutate(doc)
    with pytest.raises(err):
        parse_problem(write(tmp_path, doc))


def test_parse_error_has_position(tmp_path):
    with pytest.raises(ParseError, match="line 2"):
        parse_problem(write(tmp_path, '{"dimension": 2,\n "functions": [,]}'))


def test_roundtrip_byte_stable(tmp_path):
    problem, x0, ref = parse_problem(write(tmp_path, MIXED))
    first = tmp_path / "a.json"
    write_problem(first, problem, x0, ref)
    again = parse_problem(first)
    second = tmp_path / "b.json"
    write_problem(second, *again)
    assert first.read_bytes() == second.read_bytes()
    for f, g in zip(problem.functions, again.problem.functions):
        assert f.spec == g.spec and (f.L, f.delta, f.label) == (g.L, g.delta, g.label)


def test_run_two_halfspaces(tmp_path, capsys):
    code, out, _ = run_cli(["run", "--problem", str(write(tmp_path, HALFSPACES)),
                            "--eps", "1e-6"], capsys)
    summary = json.loads(out)
    assert code == 0
    assert summary == {"status": "Converged", "final_point": [0.0, 0.0],
                       "residual": 0.0, "sweeps": 1}


def test_run_max_sweeps(tmp_path, capsys):
    doc = {"dimension": 1, "functions": [{"family": "sqrt_abs_shift", "s": 1}], "x0": [9]}
    code, out, _ = run_cli(["run", "--problem", str(write(tmp_path, doc)), "--eps", "0",
                            "--max-sweeps", "10"], capsys)
    assert code == 2 and json.loads(out)["sweeps"] == 10


def test_run_errors(tmp_path, capsys):
    code, _, err = run_cli(["run", "--problem", str(tmp_path / "missing.json")], capsys)
    assert code == 1 and "error" in err
    doc = dict(HALFSPACES)
    doc.pop("x0")
    code, _, err = run_cli(["run", "--problem", str(write(tmp_path, doc))], capsys)
    assert code == 1 and "starting point" in err


def test_run_oracle_error_exit(tmp_path, capsys):
    doc = {"dimension": 2, "x0": [0, 3], "functions": [
        {"family": "affine", "a": [0, 1], "b": 5},
        {"family": "linear_fractional", "a": [1, 0], "b": 10, "c": [0, 1], "d": 1, "L": 1}]}
    code, out, _ = run_cli(["run", "--problem", str(write(tmp_path, doc))], capsys)
    summary = json.loads(out)
    assert code == 1 and summary["status"] == "OracleError" and summary["function_index"] == 2


def test_run_x0_override(tmp_path, capsys):
    code, out, _ = run_cli(["run", "--problem", str(write(tmp_path, HALFSPACES)),
                            "--x0=-1,-1"], capsys)
    assert code == 0 and json.loads(out)["sweeps"] == 0


def test_trace_layout_and_replay(tmp_path, capsys):
    trace_path = tmp_path / "t.csv"
    code, _, _ = run_cli(["run", "--problem", str(write(tmp_path, MIXED)), "--eps", "1e-9",
                          "--max-sweeps", "50", "--trace-out", str(trace_path)], capsys)
    # the cube constraint creeps towards its boundary, so the budget runs out
    assert code == 2
    header = trace_path.read_text().splitlines()[0]
    assert header == "sweep,index_i,x1,x2,f_value,residual,dist_to_reference"
    rows = read_trace(trace_path)
    problem, _, ref = parse_problem(tmp_path / "p.json")
    m = problem.m
    keys = [(r["sweep"], r["index_i"]) for r in rows]
    assert keys == sorted(keys) and len(rows) % (m + 1) == 0
    for r, nxt in zip(rows, rows[1:]):
        if r["index_i"] < m:
            f = problem.functions[r["index_i"]]
            assert np.array_equal(project(f, r["point"]), nxt["point"])
            assert r["residual"] is None and r["f_value"] is not None
        else:
            assert r["residual"] is not None and np.array_equal(r["point"], nxt["point"])
        assert r["dist_to_reference"] == pytest.approx(np.linalg.norm(r["point"] - ref))


def test_validate_all_pass(tmp_path, capsys):
    code, out, _ = run_cli(["validate", "--problem", str(write(tmp_path, HALFSPACES)),
                            "--region=-5,5", "--samples", "10000"], capsys)
    reports = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(reports) == 10 and all(r["passed"] for r in reports)


def test_validate_detects_understated_modulus(tmp_path, capsys):
    doc = {"dimension": 2, "functions": [
        {"family": "ball", "center": [0, 0], "radius": 1, "L": 0.5}]}
    code, out, _ = run_cli(["validate", "--problem", str(write(tmp_path, doc)),
                            "--region=-3,3", "--samples", "2000"], capsys)
    reports = {r["property"]: r for r in map(json.loads, out.splitlines())}
    assert code != 0 and not reports["sholder"]["passed"]


def test_validate_vacuous_exit(tmp_path, capsys):
    doc = {"dimension": 2, "functions": [{"family": "ball", "center": [0, 0], "radius": 1}]}
    code, out, _ = run_cli(["validate", "--problem", str(write(tmp_path, doc)),
                            "--region=5,6", "--samples", "50"], capsys)
    assert code == 3
    assert any(json.loads(line)["vacuous"] for line in out.splitlines())


def test_validate_per_axis_region(tmp_path, capsys):
    doc = {"dimension": 2, "functions": [MIXED["functions"][2]]}
    code, _, _ = run_cli(["validate", "--problem", str(write(tmp_path, doc)),
                          "--region=-5,5,0,4", "--samples", "1000"], capsys)
    assert code == 0


def test_validate_empty_functions(tmp_path, capsys):
    code, _, err = run_cli(["validate", "--problem",
                            str(write(tmp_path, {"dimension": 2, "functions": []}))], capsys)
    assert code == 1 and "functions" in err


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "qcfeas", "run", "--problem",
                           str(write(tmp_path, HALFSPACES))], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["status"] == "Converged"


def test_dump_requires_specs():
    from qcfeas import FeasibilityProblem, QcOracle
    bare = QcOracle(func=lambda x: 0.0, star_subgrad=lambda x: x, L=1, delta=1, dimension=1)
    with pytest.raises(ValueError):
        dump_problem(FeasibilityProblem(1, [bare]))
