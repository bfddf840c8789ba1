import json
import subprocess
import sys

import pytest

from reconlab.cli import main
from reconlab.systems import load


@pytest.fixture
def dft_file(tmp_path):
    path = tmp_path / "dft.json"
    assert main(["construct", "--kind", "dft", "--m", "4", "--l", "2", "--k", "2",
                 "-o", str(path)]) == 0
    return path


def test_construct_variants(tmp_path, capsys):
    assert main(["construct", "--kind", "random-protocol", "--m", "4", "--l", "2", "--d", "3",
                 "--seed", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert (doc["m"], doc["l"], doc["d"]) == (4, 2, 3)
    out = tmp_path / "r.json"
    assert main(["construct", "--kind", "random-system", "--m", "3", "--l", "1", "--d", "2",
                 "--field", "real", "-o", str(out)]) == 0
    assert load(out).shape.field == "real"


def test_construct_missing_arguments(capsys):
    assert main(["construct", "--kind", "dft", "--m", "4", "--l", "2"]) == 1
    assert main(["construct", "--kind", "random-protocol", "--m", "4", "--l", "2"]) == 1
    assert main(["construct", "--kind", "dft", "--m", "4", "--l", "2", "--k", "9"]) == 1
    assert "error" in capsys.readouterr().err


def test_analyze(dft_file, capsys):
    assert main(["analyze", str(dft_file)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["classification"]["is_uwp_rank_l_protocol"]
    assert out["uwp"]["certifies"] and out["in_class_C"]
    assert all(all(rep["holds"].values()) for rep in out["lemma"])


def test_erasure_scan(dft_file, tmp_path, capsys):
    csv_path = tmp_path / "scan.csv"
    assert main(["erasure-scan", str(dft_file), "--p", "1", "--norm", "op,fro",
                 "--csv", str(csv_path)]) == 0
    out = json.loads(capsys.readouterr().out)
    ops = [r for r in out["reports"] if r["norm"] == "op"]
    assert abs(ops[0]["worst_error"] - 0.5) <= 1e-9
    assert "table" not in ops[0]
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "p,norm,pattern,error,bound" and len(lines) == 1 + 2 * 4


def test_erasure_scan_table(dft_file, capsys):
    assert main(["erasure-scan", str(dft_file), "--p", "2", "--table"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert len(out["reports"][0]["table"]) == 6


def test_feasible_modes(capsys, tmp_path):
    assert main(["feasible", "--spectra", "1.5;0.5", "--d", "2"]) == 0
    text = capsys.readouterr().out.splitlines()
    assert text[0] == "infeasible" and "(1; (2) | (2),(1))" in "\n".join(text)
    assert main(["feasible", "--uwp", "--m", "4", "--l", "2", "--d", "4"]) == 0
    assert capsys.readouterr().out.strip() == "feasible"
    out = tmp_path / "v.json"
    assert main(["feasible", "--weights", "0.5,0.5,0.5,0.5", "--d", "2", "-o", str(out)]) == 0
    assert json.loads(out.read_text())["feasible"]
    assert main(["feasible", "--spectra", "0.5;0.4", "--d", "1"]) == 0
    assert "trace condition fails" in capsys.readouterr().out


def test_feasible_usage_errors():
    assert main(["feasible"]) == 1
    assert main(["feasible", "--uwp", "--m", "4"]) == 1
    assert main(["feasible", "--spectra", "1;1"]) == 1
    assert main(["feasible", "--spectra", "a,b", "--d", "2"]) == 1


def test_simulate_and_report(dft_file, tmp_path, capsys):
    sim = tmp_path / "sim.json"
    assert main(["simulate", str(dft_file), "--loss", "adversarial", "--p", "1",
                 "-o", str(sim)]) == 0
    assert abs(json.loads(sim.read_text())["max_error"] - 0.5) <= 1e-9
    scan = tmp_path / "scan.json"
    assert main(["erasure-scan", str(dft_file), "-o", str(scan)]) == 0
    assert main(["report", str(sim), str(scan), "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("source,") and len(lines) == 3
    md = tmp_path / "r.md"
    assert main(["report", str(sim), "-o", str(md)]) == 0
    assert md.read_text().startswith("| key |")


def test_bad_inputs(tmp_path):
    assert main(["bogus"]) == 1
    assert main(["analyze", str(tmp_path / "missing.json")]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["report", str(bad)]) == 1
    assert main(["simulate", str(bad)]) == 1
    singular = tmp_path / "singular.json"
    singular.write_text(json.dumps({"m": 2, "l": 1, "d": 2, "blocks": [
        [[[1, 0], [0, 0]]], [[[1, 0], [0, 0]]]]}))
    assert main(["erasure-scan", str(singular)]) == 1


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "reconlab", "feasible", "--uwp", "--m", "2",
                          "--l", "2", "--d", "3"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.splitlines()[0] == "infeasible"
    res = subprocess.run([sys.executable, "-m", "reconlab", "nope"], capture_output=True, text=True)
    assert res.returncode == 1
