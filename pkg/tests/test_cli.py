import json
import subprocess
import sys

import pytest

from liehopf.cli import main, run

from .conftest import DATA


def _json(argv):
    code, out = run(argv + ["--format", "json"])
    return code, json.loads(out)


@pytest.mark.parametrize("name", ["sl2_borel", "heisenberg_center", "solvable2_sub1", "abelian2_sub1"])
def test_validate_corpus(name):
    code, rep = _json(["validate", "--pair", name])
    assert code == 0 and rep["valid"]


def test_validate_jacobi_broken():
    code, rep = _json(["validate", "--pair", str(DATA / "jacobi_broken.json")])
    assert code == 1
    assert rep["violations"][0]["indices"] == [0, 1, 2]


def test_other_commands_reject_invalid_pair():
    code, rep = _json(["hopf", "--pair", str(DATA / "jacobi_broken.json")])
    assert code == 1 and not rep["valid"]


def test_missing_file(tmp_path):
    code, out = run(["validate", "--pair", str(tmp_path / "absent.json")])
    assert code == 2 and out.startswith("error:")


def test_malformed_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["validate", "--pair", str(bad)])[0] == 2


@pytest.mark.parametrize("argv", [["frobnicate", "--pair", "sl2_borel"], ["hopf"], ["hopf", "--pair", "sl2_borel", "--max-degree", "0"]])
def test_usage_errors(argv, capsys):
    assert run(argv)[0] == 2


def test_hopf_conventions():
    code, rep = _json(["hopf", "--pair", "sl2_borel", "--antipode", "standard", "--max-weight", "2"])
    assert code == 0 and rep["pass"]
    code, rep = _json(["hopf", "--pair", "sl2_borel", "--antipode", "paper", "--max-weight", "2"])
    anti = [a for a in rep["axioms"] if a["name"] == "antipode"]
    assert code == 0 and not anti[0]["strict_pass"]
    d2 = next(a for a in rep["axioms"] if a["name"] == "d_squared")
    assert d2["strict_pass"]


def test_cohomology_sl2():
    code, rep = _json(["cohomology", "--pair", "sl2_borel", "--max-weight", "4", "--max-degree", "3"])
    assert code == 0
    assert [r["dim_H"] for r in rep["dpoly"]][:3] == [1, 1, 0]
    assert rep["ce"]["atiyah_coefficients"][1] == {"degree": 1, "dim": 1}


@pytest.mark.parametrize("name, expected", [("abelian2_sub1", False), ("sl2_borel", True)])
def test_atiyah_command(name, expected):
    code, rep = _json(["atiyah", "--pair", name])
    assert code == 0 and rep["class_nonzero"] is expected
    assert len(rep["independence"]) == 3


def test_hkr_and_freelie():
    assert run(["hkr", "--pair", "heisenberg_center"])[0] == 0
    code, rep = _json(["freelie", "--pair", "solvable2_sub1", "--max-weight", "2"])
    assert code == 0 and rep["pass"]


def test_report_deterministic_and_text():
    argv = ["report", "--pair", "sl2_borel", "--seed", "4"]
    a, b = run(argv), run(argv)
    assert a == b and a[0] == 0
    assert "summary:" in a[1]


def test_main_prints(capsys):
    assert main(["validate", "--pair", "sl2_borel"]) == 0
    assert "valid: true" in capsys.readouterr().out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "liehopf", "validate", "--pair", "abelian2_sub1", "--format", "json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["valid"]
