import json
import subprocess
import sys

import pytest

from torusindex.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_pair_xi0_e1(capsys):
    code, out, _ = run(capsys, "pair", "--cocycle", "xi0", "--idempotent", "e1")
    d = json.loads(out)
    assert code == 0
    assert d["value"] == "-1 * h^-1 * theta^-1"
    assert d["value_series"] == [{"order": -1, "coeff": "-theta^-1"}]
    assert "orientation" in d["convention_ledger"]


def test_pair_xi3_e2(capsys):
    code, out, _ = run(capsys, "pair", "--cocycle", "xi3", "--idempotent", "e2",
                       "--alpha", "0.37", "--eps", "0.05")
    assert code == 0 and json.loads(out)["value"] == "1 * h * theta^-1"


def test_pair_numeric_quadrature(capsys):
    code, out, _ = run(capsys, "pair", "--cocycle", "xi3", "--backend", "numeric",
                       "--method", "quad")
    series = json.loads(out)["value_series"]
    assert code == 0 and abs(series[0]["coeff"]["re"] - 1) < 1e-6


def test_quadrature_needs_numeric_backend(capsys):
    code, _, err = run(capsys, "pair", "--cocycle", "xi3", "--method", "quad")
    assert code == 3 and "numeric" in err


def test_rieffel_constraint(capsys):
    code, out, err = run(capsys, "rieffel", "--alpha", "0.35", "--eps", "0.2")
    assert code == 2 and not out and "alpha" in err


def test_rieffel_ok(capsys):
    code, out, _ = run(capsys, "rieffel", "--ramp", "cubic")
    d = json.loads(out)
    assert code == 0 and d["integral_f"] == "3/10" and d["grid_residual"] < 1e-9
    assert {"terms", "unit"} <= set(d["element"])


def test_invalid_flag_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["pair", "--cocycle", "xi1"])
    assert exc.value.code == 2


def test_cohomology(capsys, tmp_path):
    out_file = tmp_path / "c.json"
    code, out, _ = run(capsys, "cohomology", "--cutoff", "2", "--output", str(out_file))
    d = json.loads(out_file.read_text())
    assert code == 0 and d["dims"] == [1, 3, 3, 1] and d["periodic"] == [4, 4]
    assert "dims" in out  # table on stdout


def test_cohomology_resonance_warning(capsys):
    code, out, _ = run(capsys, "cohomology", "--backend", "numeric", "--beta", "0.7")
    assert json.loads(out)["warnings"]


def test_chern_and_psi(capsys):
    code, out, _ = run(capsys, "chern", "--idempotent", "e2", "--k", "1", "--summary", "--report")
    d = json.loads(out)
    assert code == 0 and d["cycle_residuals_vanish"] == [True]
    assert d["psi_report"]["components"]["(1,-1)"]["dtheta1"] == "1/2 * h * theta^-1"
    code, out, _ = run(capsys, "psi", "--idempotent", "e1")
    assert json.loads(out)["report"]["id"] == "-1 * h^-1 * theta^-1"


def test_idempotent_files(capsys, tmp_path):
    f = tmp_path / "e.json"
    f.write_text(json.dumps({"kind": "rieffel", "alpha": "0.3", "eps": "0.1", "ramp": "cubic"}))
    code, out, _ = run(capsys, "pair", "--cocycle", "xi3", "--idempotent", str(f))
    assert code == 0 and json.loads(out)["value"] == "1 * h * theta^-1"
    g = tmp_path / "one.json"
    g.write_text(json.dumps({"kind": "fourier",
                             "terms": [{"n": 0, "modes": [{"k": [0, 0], "coeff": "1"}]}]}))
    code, out, _ = run(capsys, "pair", "--cocycle", "xi0", "--idempotent", str(g))
    assert code == 0 and json.loads(out)["value"] == "-1 * h^-1 * theta^-1"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "fourier",
                               "terms": [{"n": 0, "modes": [{"k": [0, 0], "coeff": "2"}]}]}))
    code, _, err = run(capsys, "pair", "--cocycle", "xi0", "--idempotent", str(bad))
    assert code == 2 and "idempotent" in err


def test_star_and_fedosov_check(capsys):
    code, out, _ = run(capsys, "star", "--f", "1,0:1", "--g", "0,1:1", "--order", "2")
    d = json.loads(out)
    assert code == 0 and "1,1" in d["text"]
    code, out, _ = run(capsys, "fedosov-check", "--modes", "1", "--order", "4")
    assert code == 0 and json.loads(out)["passed"]


def test_verify_backend_mismatch(capsys):
    code, _, err = run(capsys, "verify", "--backend", "numeric")
    assert code == 3


def test_deterministic_output(capsys):
    outs = [run(capsys, "pair", "--cocycle", "xi3", "--seed", "7")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "torusindex", "cohomology"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["dims"] == [1, 3, 3, 1]
