import json
import subprocess
import sys

import pytest

from strebelgraph.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_build_theta_dot_and_report(capsys, tmp_path):
    out_path = tmp_path / "theta.json"
    code, out = run(capsys, "build", "0", "1", "1", "1", "--out", str(out_path))
    assert code == 0
    report = json.loads(out)
    angles = [p["angle_over_pi"] for p in report["spherical"]["poles"]] + \
             [z["angle_over_pi"] for z in report["spherical"]["zeros"]]
    assert angles == ["2/1", "2/1", "2/1", "3/1", "3/1"]
    dot = (tmp_path / "theta.dot").read_text()
    assert dot.count('label="1/2"') == 3
    assert "rotation=" in dot and "m=1" in dot
    assert json.loads(out_path.read_text()) == report


def test_build_dot_format(capsys):
    code, out = run(capsys, "build", "0", "1", "2", "3", "4", "--format", "dot")
    assert code == 0 and out.startswith("graph ")


def test_build_excluded_case(capsys):
    code, out = run(capsys, "build", "0", "1", "1", "2")
    assert code == 1
    assert json.loads(out)["error"] == "excluded case (0,3) with a1+a2=a3"


@pytest.mark.parametrize("argv", [
    ["build", "0", "1", "2"],
    ["build", "-1", "1", "2", "3"],
    ["build", "0", "1", "x", "3"],
    ["build", "0", "1", "0", "3"],
    ["threepole", "1", "1", "-1"],
    ["analyze", "/nonexistent/graph.json"],
])
def test_precondition_failures_exit_one(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 1
    assert "error" in json.loads(out)


def test_invalid_graph_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"half_edge_count": 2, "sigma": [0, 1], "alpha": [0, 1], "lengths": ["1/1"]}))
    code, out = run(capsys, "analyze", str(bad))
    assert code == 1 and "error" in json.loads(out)


@pytest.mark.parametrize("g, alpha", [
    (0, ["1", "1", "1"]), (0, ["0.7", "1.3", "2.25", "5"]), (1, ["1", "1", "1", "1"]),
    (2, ["7"]), (1, ["2", "10"]), (3, ["1/3", "0.5"]), (0, ["1", "1", "5", "5"]),
])
def test_round_trip(capsys, tmp_path, g, alpha):
    path = tmp_path / "g.json"
    code, _ = run(capsys, "build", str(g), *alpha, "--out", str(path))
    assert code == 0
    code, out = run(capsys, "analyze", str(path))
    assert code == 0
    report = json.loads(out)
    from fractions import Fraction
    assert report["genus"] == g
    assert [Fraction(x) for x in report["residues"]] == [Fraction(x) for x in alpha]
    assert report["admissible"] is True
    assert report["zero_partition"] == [1] * (4 * g + 2 * len(alpha) - 4)


def test_analyze_bare_graph(capsys, tmp_path):
    from strebelgraph.constructors import build_three_pole

    path = tmp_path / "tangent.json"
    path.write_text(json.dumps(build_three_pole(1, 1, 2)[0].to_dict()))
    code, out = run(capsys, "analyze", str(path))
    report = json.loads(out)
    assert code == 0 and report["degeneracy"]["degenerate"] is True
    assert report["zero_partition"] == [2]


def test_analyze_inadmissible(capsys, tmp_path):
    path = tmp_path / "loop.json"
    path.write_text(json.dumps({"half_edge_count": 2, "sigma": [1, 0], "alpha": [1, 0], "lengths": ["1/1"]}))
    code, out = run(capsys, "analyze", str(path))
    report = json.loads(out)
    assert code == 0 and report["admissible"] is False and report["spherical"] is None


def test_threepole_tangent(capsys):
    code, out = run(capsys, "threepole", "1", "1", "2", "--steps", "1024")
    report = json.loads(out)
    assert code == 0
    assert report["class"] == "Tangent" and report["degenerate"] is True
    assert report["reducibility"]["tag"] == "Reducible"
    assert all(m["phase_error"] < 1e-6 for m in report["monodromy"])
    assert all(s["abs_K_minus_1"] < 1e-3 for s in report["curvature"]["samples"])


def test_threepole_is_deterministic(capsys):
    _, a = run(capsys, "threepole", "0.5", "0.7", "0.9", "--seed", "4", "--fd-step", "0.002")
    _, b = run(capsys, "threepole", "0.5", "0.7", "0.9", "--seed", "4", "--fd-step", "0.002")
    assert a == b


def test_threepole_bad_radius(capsys):
    code, out = run(capsys, "threepole", "1", "1", "1", "--radius", "1.0")
    assert code == 1 and "contour too close" in json.loads(out)["error"]


def test_check_small_suite(capsys):
    code, out = run(capsys, "check", "--suite-size", "40", "--seed", "3")
    assert code == 0, out
    assert out.count("[PASS]") == 8


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "strebelgraph", "build", "0", "1", "1", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert "excluded case" in json.loads(proc.stdout)["error"]


def test_internal_assertion_exits_two(capsys, monkeypatch):
    import strebelgraph.cli as cli

    def broken(*args, **kwargs):
        raise AssertionError("Gauss-Bonnet mismatch")

    monkeypatch.setattr(cli, "spherical_report", broken)
    code, out = run(capsys, "build", "0", "1", "1", "1")
    assert code == 2 and json.loads(out)["kind"] == "AssertionError"
