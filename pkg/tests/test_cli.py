import io
import json
import subprocess
import sys

import pytest

from ccsp.cli import exact, run_command

P1_TEXT = "ccprofile v1 misrep\nn 2 m 3\naxis 1 2 3\nrow 0 1 2\nrow 2 1 0\n"
P2_TEXT = "ccprofile v1 approval\nn 3 m 3\napprove 1\napprove 1 2\napprove 2 3\nweights pav\n"
P3_TEXT = "ccprofile v1 misrep\nn 2 m 4\naxis 1 2 3\ndeleted 4\nrow 0 1 2 1\nrow 2 1 0 1\n"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in [("p1", P1_TEXT), ("p2", P2_TEXT), ("p3", P3_TEXT)]:
        path = tmp_path / f"{name}.prof"
        path.write_text(text)
        paths[name] = str(path)
    return paths


def test_solve_cc_sp_json(files):
    code, out, _ = run("solve", "cc-sp", "--input", files["p1"], "--k", "2", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["objective"] == "0" and payload["committee"] == [1, 3]
    assert set(payload) == {"problem", "k", "committee", "objective", "algorithm", "bound", "decision"}


def test_decision_no(files):
    code, out, _ = run("solve", "cc-sp", "--input", files["p1"], "--k", "1", "--bound", "1")
    assert code == 1 and "decision: NO" in out
    code, _, _ = run("solve", "cc-sp", "--input", files["p1"], "--k", "1", "--bound", "2")
    assert code == 0


@pytest.mark.parametrize("algorithm", ["smawk", "dc", "naive"])
def test_algorithms_agree(files, algorithm):
    code, out, _ = run("solve", "cc-sp", "--input", files["p1"], "--k", "2", "--algorithm", algorithm, "--json")
    assert code == 0 and json.loads(out)["objective"] == "0"


def test_thiele_objective_is_exact(files):
    code, out, _ = run("solve", "thiele-sp", "--input", files["p2"], "--k", "2", "--json")
    assert code == 0 and json.loads(out)["objective"] == "7/2"
    code, out, _ = run("solve", "thiele-sp", "--input", files["p2"], "--k", "2", "--rule", "av", "--json")
    assert json.loads(out)["objective"] == "4"
    code, _, _ = run("solve", "thiele-sp", "--input", files["p2"], "--k", "2", "--bound", "4")
    assert code == 1


def test_deletion_solvers(files):
    code, out, _ = run("solve", "cc-del", "--input", files["p3"], "--k", "2", "--json")
    assert code == 0 and json.loads(out)["objective"] == "0"
    code, _, err = run("solve", "cc-sp", "--input", files["p3"], "--k", "2")
    assert code == 2 and "cc-del" in err


def test_verify(files, tmp_path):
    assert run("verify", "sp", "--input", files["p1"])[0] == 0
    assert run("verify", "ci", "--input", files["p2"])[0] == 0
    bad = tmp_path / "bad.prof"
    bad.write_text("ccprofile v1 misrep\nn 1 m 3\nrow 0 2 1\n")
    code, out, _ = run("verify", "sp", "--input", str(bad), "--json")
    assert code == 1 and json.loads(out) == {"property": "sp", "ok": False, "witness": [1, [1, 2, 3]]}
    assert run("verify", "ci", "--input", files["p1"])[0] == 2


def test_input_errors(files, tmp_path):
    assert run("solve", "cc-sp", "--input", str(tmp_path / "missing.prof"), "--k", "1")[0] == 2
    assert run("solve", "cc-sp", "--input", files["p1"])[0] == 2  # no k
    assert run("solve", "cc-sp", "--input", files["p1"], "--k", "9")[0] == 2
    assert run("solve", "nonsense")[0] == 2
    assert run()[0] == 2
    broken = tmp_path / "broken.prof"
    broken.write_text("ccprofile v1 misrep\nn 1 m 3\nrow 0 1\n")
    code, _, err = run("verify", "sp", "--input", str(broken))
    assert code == 2 and "line 3" in err


def test_invariant_failures_exit_3(files, monkeypatch):
    from ccsp import cli
    from ccsp.core import InvariantError

    def boom(*args, **kwargs):
        raise InvariantError("fractional vertex")

    monkeypatch.setattr(cli, "solve_generalized_thiele_sp", boom)
    assert run("solve", "thiele-sp", "--input", files["p2"], "--k", "2")[0] == 3


def test_gen_pipeline(tmp_path):
    path = tmp_path / "g.prof"
    assert run("gen", "sp", "--n", "5", "--m", "7", "--seed", "3", "--output", str(path))[0] == 0
    assert run("verify", "sp", "--input", str(path))[0] == 0
    code, out, _ = run("solve", "cc-sp", "--input", str(path), "--k", "3", "--json")
    assert code == 0 and json.loads(out)["objective"].isdigit()


def test_gen_to_stdout_is_deterministic():
    a = run("gen", "nearly", "--n", "4", "--m", "6", "--d", "2", "--kind", "approval", "--rule", "pav", "--seed", "1")
    b = run("gen", "nearly", "--n", "4", "--m", "6", "--d", "2", "--kind", "approval", "--rule", "pav", "--seed", "1")
    assert a == b and a[1].startswith("ccprofile v1 approval\n")
    assert "deleted" in a[1]


def test_bench_csv():
    code, out, _ = run("bench", "--n", "20", "--m", "20", "--k", "3", "--seeds", "2")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "algorithm,n,m,k,d,seed,preprocess_ms,solve_ms,objective,unverified"
    assert len(lines) == 1 + 2 * 3


def test_exact_formatting():
    from fractions import Fraction

    assert exact(3) == "3" and exact(Fraction(7, 2)) == "7/2" and exact(Fraction(4, 1)) == "4"
    assert exact(0.5) == "0.5"


def test_console_script_module(files):
    proc = subprocess.run(
        [sys.executable, "-m", "ccsp.cli", "solve", "cc-sp", "--input", files["p1"], "--k", "2", "--json"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["objective"] == "0"
