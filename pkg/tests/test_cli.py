import io
import json
import subprocess
import sys

import pytest

from cyclogap.cli import EXIT_INVALID, EXIT_OK, EXIT_REFUTED, EXIT_RESOURCE, EXIT_USAGE, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_gap_phi_15():
    assert run("gap", "phi", "15") == (EXIT_OK, "2 (1, 3)\n")
    code, text = run("gap", "psi", "15", "--json")
    assert code == EXIT_OK
    assert json.loads(text) == {"n": 15, "kind": "psi", "gap": 3, "witness": [2, 5]}


def test_poly():
    assert run("poly", "phi", "15") == (EXIT_OK, "0:1 1:-1 3:1 4:-1 5:1 7:-1 8:1\n")
    assert run("poly", "psi", "15") == (EXIT_OK, "0:-1 1:-1 2:-1 5:1 6:1 7:1\n")
    code, text = run("poly", "phi", "3", "--json")
    assert json.loads(text) == [[0, 1], [1, 1], [2, 1]]


def test_bounds_1155():
    code, text = run("bounds", "1155", "--json")
    assert code == EXIT_OK
    d = json.loads(text)
    assert [d[k] for k in ("g_phi", "alpha_p", "beta_p", "gamma_p", "eps_p")] == [10, 2, 2, 2, 2]
    code, text = run("bounds", "1155")
    assert "delta_m 95 *" in text


def test_epsilon_command():
    code, text = run("epsilon", "3003", "--sign", "plus", "--json")
    d = json.loads(text)
    assert (d["value"], d["admissible_pairs"]) == (17, 1566)
    code, text = run("epsilon", "15015", "--sign", "minus")
    assert code == EXIT_RESOURCE


def test_validation_and_usage_errors():
    assert run("bounds", "12")[0] == EXIT_INVALID
    assert run("gap", "phi", "45")[0] == EXIT_INVALID
    assert run("gap", "phi", "1")[0] == EXIT_INVALID
    assert run("frobnicate")[0] == EXIT_USAGE
    assert run("gap", "phi")[0] == EXIT_USAGE
    assert run("gap", "phi", "105", "--degree-ceiling", "10")[0] == EXIT_RESOURCE


def test_scan_quality(tmp_path):
    out = tmp_path / "q.csv"
    code, text = run("scan", "quality", "--bound", "200", "--out", str(out),
                     "--cache", str(tmp_path / "c.ndjson"))
    assert code == EXIT_OK
    stats = json.loads(text)
    assert stats["f_plus_special"] == "1.0000"
    assert out.read_text().startswith("n,k,factors,g_phi")


def test_scan_delta_ratio(tmp_path):
    out = tmp_path / "d.csv"
    code, _ = run("scan", "delta-ratio", "--k", "2", "--p", "11", "--bound", "100", "--out", str(out))
    assert code == EXIT_OK
    assert out.read_text().splitlines()[1] == "2,11,100,17,20,0.8500"


def test_conjecture_small():
    code, text = run("conjecture", "--m-max", "60")
    assert code == EXIT_OK and text.startswith("all confirmed")
    code, text = run("conjecture", "--m-max", "60", "--degree-ceiling", "100")
    assert code == EXIT_RESOURCE and "incomplete" in text


def test_conjecture_refuted_exit_code(monkeypatch):
    import cyclogap.conjecture as mod

    real = mod.max_gap
    monkeypatch.setattr(mod, "max_gap", lambda p: type(real(p))(0, 0, 0))
    code, text = run("conjecture", "--m-max", "16")
    assert code == EXIT_REFUTED and "refuted" in text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cyclogap", "gap", "phi", "15"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "2 (1, 3)\n"
