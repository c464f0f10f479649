import json
import subprocess
import sys

import pytest

from artifact.cli import main

RINGS = {
    "ci": "ring Q[x,y] order degrevlex; ideal I = x^2, y^2;",
    "socle2": "ring Q[x,y] order degrevlex; ideal I = x^3, x*y, y^2;",
    "dim1": "ring Q[x,y] order degrevlex; ideal I = x^2, x*y;",
    "local": "ring Q[x,y] local; ideal I = x*y, x^3 - y^2;",
    "square0": "ring Q[x,y] order degrevlex; ideal I = x*y, y^2;",
    "broken": "ring Q[x,y] order degrevlex; ideal I = x^2 +;",
    "ev": "ring Q[y1,y2] order degrevlex; ideal I = y1*y2, y2^2 - y1^2;",
}


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in RINGS.items():
        p = tmp_path / f"{name}.ring"
        p.write_text(text + "\n")
        out[name] = str(p)
    filt = tmp_path / "local.filt"
    filt.write_text("(0) = []\nX = [x]\nY = [y]\nm = [x, y]\n")
    out["local.filt"] = str(filt)
    base = tmp_path / "base.filt"
    base.write_text("(0) = []\nm = [x]\n")
    out["base.filt"] = str(base)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    report = json.loads(captured.out) if captured.out.strip() else None
    return code, report, captured


def test_analyze_reports_invariants(files, capsys):
    code, rep, _ = run(capsys, "analyze", files["socle2"], "--betti", "--bound", "3")
    assert code == 0
    inv = rep["result"]["invariants"]
    assert inv["type"] == 2 and inv["embdim"] == 2
    assert rep["result"]["classification"]["verdict"] == "PredictNotKoszul"
    assert rep["result"]["betti_k"]["bound"] == 3
    assert rep["schema"] == 1


def test_koszul_exit_codes(files, capsys):
    code, rep, _ = run(capsys, "koszul", files["ci"], "--bound", "5")
    assert code == 0 and rep["result"]["koszul"]["status"] == "KoszulUpTo"
    code, rep, _ = run(capsys, "koszul", files["local"], "--bound", "4")
    assert code == 1 and rep["engine"] == "tangent-cone"
    assert rep["result"]["koszul"]["witness"] == [2, 4]


def test_golod_and_lind(files, capsys):
    code, rep, _ = run(capsys, "golod", files["ci"], "--bound", "5")
    assert code == 1 and rep["result"]["golod"]["first_discrepancy"] == 3
    code, rep, _ = run(capsys, "lind", files["ci"], "--module", "x", "--bound", "3")
    assert code == 0 and rep["result"]["lind_bounded"]["value"] == 0


def test_reports_are_byte_identical(files, capsys):
    main(["analyze", files["local"], "--betti"])
    first = capsys.readouterr().out
    main(["analyze", files["local"], "--betti"])
    assert capsys.readouterr().out == first
    assert "timing" not in first


def test_timing_is_opt_in(files, capsys):
    _, rep, _ = run(capsys, "koszul", files["ci"], "--timing")
    assert "timing_seconds" in rep


def test_parse_error_exits_2(files, capsys):
    code, rep, err = run(capsys, "analyze", files["broken"])
    assert code == 2 and rep is None
    assert "line 1" in err.err


def test_missing_file_exits_2(capsys, tmp_path):
    code, _, err = run(capsys, "analyze", str(tmp_path / "nope.ring"))
    assert code == 2 and "error" in err.err


def test_field_override(files, capsys):
    code, rep, _ = run(capsys, "analyze", files["ci"], "--field", "Fp")
    assert code == 0 and rep["ring"].startswith("ring F32003[")


def test_budget_exceeded_exits_2(files, capsys):
    code, _, err = run(capsys, "koszul", files["dim1"], "--budget-pairs", "0")
    assert code == 2 and "budget" in err.err


def test_filtration_commands(files, capsys):
    code, rep, _ = run(capsys, "filtration", "verify", files["local"], files["local.filt"])
    assert code == 0 and rep["result"]["filtration"]["weak_koszul_filtration"]
    code, rep, _ = run(capsys, "filtration", "verify", files["local"], files["local.filt"], "--strong")
    assert code == 1 and rep["result"]["filtration"]["koszul_filtration"] is False
    code, rep, _ = run(capsys, "filtration", "lift", files["square0"], files["base.filt"],
                       "--element", "y")
    assert code == 0 and rep["result"]["lift"]["verified"]
    code, rep, _ = run(capsys, "filtration", "canonical", files["ev"], "--kind",
                       "stretched-gorenstein")
    assert code == 0 and rep["result"]["canonical"]["order"] == ["(0)", "m", "(y1)", "(y2)"]


def test_stretched_commands(files, capsys):
    code, rep, _ = run(capsys, "stretched", "classify", files["ci"])
    assert code == 0 and rep["result"]["classification"]["verdict"] == "PredictKoszul"
    code, rep, _ = run(capsys, "stretched", "qn", files["dim1"])
    assert code == 0 and rep["result"]["qn"]["Q"] == ["x"]
    code, rep, _ = run(capsys, "stretched", "ev", "--h", "2", "--tau", "1", "--s", "3")
    assert code == 0 and all(rep["result"]["checks"].values())
    code, rep, _ = run(capsys, "stretched", "ev", "--h", "2", "--tau", "1", "--s", "3",
                       "--field", "Fp")
    assert rep["result"]["label"] == "experimental evidence only"
    code, rep, _ = run(capsys, "stretched", "reduce", files["dim1"], "--trials", "3")
    assert code == 1 and not rep["result"]["reduction"]["found"]


def test_semigroup_command(capsys):
    code, rep, _ = run(capsys, "semigroup", "4", "5", "11")
    assert code == 0
    assert rep["result"]["invariants"]["multiplicity"] == 4
    assert "almost minimal multiplicity" in rep["result"]["invariants"]["tags"]
    code, rep, err = run(capsys, "semigroup", "3", "6", "4", "5")
    assert code == 0 and "warning" in err.err


def test_sweep_and_repro(capsys):
    code, rep, _ = run(capsys, "sweep", "ev", "--hmax", "2", "--smax", "3")
    assert code == 0 and rep["result"]["sweep"]["disagreements"] == 0
    assert rep["result"]["sweep"]["bound"] == 4
    code, rep, err = run(capsys, "repro")
    assert code == 0 and rep["result"]["repro"]["failed"] == []
    assert "ok" in err.err


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "artifact", "koszul", files["ci"]],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["koszul"]["status"] == "KoszulUpTo"
