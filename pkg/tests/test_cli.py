import os
import subprocess
import sys

import pytest

from pcc.certify import Certificate
from pcc.cli import main
from pcc.graph import EdgeColouredGraph

from conftest import DATA


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def random40(tmp_path, capsys):
    path = tmp_path / "g.ecg"
    code, _, _ = run(capsys, "gen", "random", "--n", "40", "--colours", "40", "--cap", "9", "--seed", "3", "--out", str(path))
    assert code == 0
    return path


def test_analyze_k4_factorization(capsys):
    code, out, _ = run(capsys, "analyze", os.path.join(DATA, "k4_one_factorization.ecg"))
    assert code == 0
    assert "colour_degree 3" in out and "delta1 2" in out and "max_mono 1" in out


def test_gen_then_analyze(tmp_path, capsys):
    path = tmp_path / "x.ecg"
    assert run(capsys, "gen", "extremal", "--n", "9", "--delta", "5", "--out", str(path))[0] == 0
    code, out, _ = run(capsys, "analyze", str(path))
    assert code == 0 and "colour_degree 5" in out


def test_extremal_pipe_has_no_two_factor():
    env = dict(os.environ)
    gen = subprocess.run(
        [sys.executable, "-m", "pcc.cli", "gen", "extremal", "--n", "9", "--delta", "5"],
        capture_output=True, text=True, check=True, env=env,
    )
    find = subprocess.run(
        [sys.executable, "-m", "pcc.cli", "find", "2factor"], input=gen.stdout, capture_output=True, text=True, env=env
    )
    assert find.returncode == 1 and "not found" in find.stderr


def test_find_and_verify_round_trip(random40, tmp_path, capsys):
    cert = tmp_path / "h.cert"
    assert run(capsys, "find", "hamilton", str(random40), "--cert-out", str(cert))[0] == 0
    code, out, _ = run(capsys, "verify", str(random40), str(cert))
    assert code == 0 and out.strip() == "valid"
    for what in (["2factor"], ["2factor-minlen", "--k", "4"], ["triangle", "--vertex", "7"], ["cycle", "--length", "17"]):
        code, out, _ = run(capsys, "find", *what, str(random40))
        assert code == 0
        G = EdgeColouredGraph.from_ecg(random40.read_text())
        (tmp_path / "c.cert").write_text(out)
        assert run(capsys, "verify", str(random40), str(tmp_path / "c.cert"))[0] == 0
        assert Certificate.from_text(out).kind in ("two_factor", "triangle", "cycle")
        assert G.n == 40


def test_verify_names_violation(random40, tmp_path, capsys):
    cert = tmp_path / "h.cert"
    run(capsys, "find", "hamilton", str(random40), "--cert-out", str(cert))
    lines = cert.read_text().splitlines()
    i = next(k for k, line in enumerate(lines) if line.startswith("cycle"))
    verts = lines[i].split()[1:]
    verts[1] = verts[0]
    lines[i] = "cycle " + " ".join(verts)
    cert.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "verify", str(random40), str(cert))
    assert code == 1 and "repeated vertex" in out


def test_pancyclic_writes_certificates(random40, tmp_path, capsys):
    out_dir = tmp_path / "certs"
    code, out, _ = run(capsys, "find", "pancyclic", str(random40), "--cert-out", str(out_dir), "--workers", "2")
    assert code == 0 and out.startswith("# pcc-pancyclic v1")
    assert len(list(out_dir.glob("cycle_*.cert"))) == 38


def test_seed_env_override(random40, capsys, monkeypatch):
    monkeypatch.setenv("PCC_SEED", "11")
    _, a, _ = run(capsys, "find", "cycle", "--length", "12", str(random40))
    _, b, _ = run(capsys, "find", "cycle", "--length", "12", str(random40), "--seed", "11")
    assert a == b and "note seed 11" in a
    monkeypatch.setenv("PCC_SEED", "eleven")
    assert run(capsys, "find", "cycle", "--length", "12", str(random40))[0] == 2


def test_oracle_subcommands(capsys):
    k4 = os.path.join(DATA, "k4_one_factorization.ecg")
    assert run(capsys, "oracle", "hamilton", k4)[0] == 0
    code, out, _ = run(capsys, "oracle", "longest-path", k4)
    assert code == 0 and out.strip() == "3"
    code, out, _ = run(capsys, "oracle", "max-cover", k4)
    assert out.strip() == "4"
    assert run(capsys, "oracle", "cycle", k4, "--length", "3")[0] == 0
    assert run(capsys, "oracle", "cycle", k4, "--length", "9")[0] == 2


def test_oracle_reports_missing_cycle(tmp_path, capsys):
    path = tmp_path / "e.ecg"
    run(capsys, "gen", "extremal", "--n", "6", "--delta", "3", "--out", str(path))
    code, out, _ = run(capsys, "oracle", "cycle", str(path), "--length", "5")
    assert code == 1 and out.strip() == "none"
    assert run(capsys, "oracle", "two-factor", str(path))[0] == 1


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.ecg"
    bad.write_text("3 1\n0 1 x\n")
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 2 and "line 2" in err
    assert run(capsys, "analyze", str(tmp_path / "missing.ecg"))[0] == 2
    assert run(capsys, "gen", "extremal", "--n", "6", "--delta", "4")[0] == 2
    assert run(capsys, "find", "2factor-minlen", os.path.join(DATA, "k4_one_factorization.ecg"))[0] == 2
    assert run(capsys, "find", "cycle", os.path.join(DATA, "k4_one_factorization.ecg"), "--epsilon", "3")[0] == 2
    cert = tmp_path / "c.cert"
    cert.write_text("kind cycle\nlength x\nend\n")
    code, _, err = run(capsys, "verify", os.path.join(DATA, "k4_one_factorization.ecg"), str(cert))
    assert code == 2 and "line 2" in err
    with pytest.raises(SystemExit) as exc:
        main(["find", "nonsense"])
    assert exc.value.code == 2


def test_experiment_subcommands(tmp_path, capsys):
    out = tmp_path / "t.csv"
    assert run(capsys, "experiment", "threshold", "--n-min", "4", "--n-max", "5", "--samples", "3", "--out", str(out))[0] == 0
    assert out.read_text().startswith("# pcc-threshold-scan v1")
    code, text, _ = run(capsys, "experiment", "conjecture", "--n-min", "4", "--n-max", "5", "--samples", "3")
    assert code == 0 and text.startswith("# pcc-conjecture-scan v1")
    assert run(capsys, "experiment", "conjecture", "--n-min", "6", "--n-max", "5")[0] == 2
