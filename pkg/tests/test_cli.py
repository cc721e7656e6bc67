"""Command-line interface: argument handling, output determinism, exit
codes."""

import json

import pytest

from chromroots.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_poly_text_and_json(capsys):
    code, out = run_cli(capsys, "poly", "W4")
    assert code == 0
    assert "x^5" in out
    code, js = run_cli(capsys, "poly", "W4", "--format", "json")
    payload = json.loads(js)
    assert payload["coefficients"] == ["0", "14", "-31", "24", "-8", "1"]
    assert payload["vertices"] == 5


def test_json_output_deterministic(capsys):
    _, first = run_cli(capsys, "qvec", "neg10", "--format", "json")
    _, second = run_cli(capsys, "qvec", "neg10", "--format", "json")
    assert first == second


def test_poly_from_file(tmp_path, capsys):
    path = tmp_path / "tri.graph"
    path.write_text("vertices 3\nedge 0 1\nedge 1 2\nedge 0 2\n")
    code, out = run_cli(capsys, "poly", str(path))
    assert code == 0 and "x^3" in out


def test_unknown_graph_errors(capsys):
    with pytest.raises(SystemExit):
        main(["poly", "missing-graph"])


def test_qvec_requires_frame(tmp_path):
    path = tmp_path / "bare.graph"
    path.write_text("vertices 2\nedge 0 1\n")
    with pytest.raises(SystemExit):
        main(["qvec", str(path)])


def test_family_json(capsys):
    code, out = run_cli(capsys, "family", "--endA", "W4", "--endB", "W4",
                        "--n", "1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    # Octahedron: 6 proper 3-colourings.
    coeffs = [int(c) for c in payload["coefficients"]]
    assert sum(c * 3 ** i for i, c in enumerate(coeffs)) == 6


def test_root4(capsys):
    code, out = run_cli(capsys, "root4", "--endA", "H", "--endB", "W4",
                        "--n", "1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["root"] == "3.7924699360"
    assert "/" in payload["bracket_lo"]


def test_root4_no_sign_change(capsys):
    code, out = run_cli(capsys, "root4", "--endA", "W4", "--endB", "W4",
                        "--n", "2")
    assert code == 1
    assert "no sign change" in out


def test_classify_and_predict(capsys):
    code, out = run_cli(capsys, "classify", "neg10")
    assert code == 0
    assert out.splitlines()[0] == "negative"
    assert "k,sign" in out
    code, out = run_cli(capsys, "predict", "--endA", "H", "--endB", "W4",
                        "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["roots_approach_four"] is True


def test_verify_golden(capsys):
    code, out = run_cli(capsys, "verify-golden", "--endA", "W4",
                        "--endB", "W4", "--n", "2")
    assert code == 0
    assert "pass" in out


def test_verify_m(capsys):
    code, out = run_cli(capsys, "verify-M")
    assert code == 0
    assert "all entries match" in out


def test_croots_csv(tmp_path, capsys):
    target = tmp_path / "roots.csv"
    code, out = run_cli(capsys, "croots", "--endA", "W4", "--endB", "W4",
                        "--n", "1", "--bits", "128", "--out", str(target))
    assert code == 0
    lines = target.read_text().splitlines()
    assert lines[0] == "re,im"
    assert len(lines) == 7   # octahedron: degree 6


def test_reproduce_table1(capsys, tmp_path):
    report = tmp_path / "report.json"
    code, out = run_cli(capsys, "reproduce-tables", "--only", "table1",
                        "--report", str(report))
    assert code == 0
    assert "table1 (partition components): pass" in out
    payload = json.loads(report.read_text())
    assert payload["table1"]["passed"] is True
    assert payload["passed"] is True


def test_reproduce_table2_subset(capsys):
    code, out = run_cli(capsys, "reproduce-tables", "--only", "table2",
                        "--max-n", "3", "--jobs", "1")
    assert code == 0
    assert "table2 n=3: 3.8483432574 ref 3.8483432574 pass" in out
