"""CLI behaviour and golden JSON reports.

Regenerate the golden files with ``python3 tests/test_cli.py --regen`` after an
intended output change.
"""

import contextlib
import io
import json
import os
import subprocess
import sys
import tempfile
from pathlib import Path

import pytest

from semicover import jsonio
from semicover.cli import main

ROOT = Path(__file__).resolve().parent.parent
FIX = ROOT / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"

# name -> (argv, expected exit code)
CASES = {
    "check_z2": (["check", "--kind", "algebra", f"{FIX}/z2.json"], 0),
    "check_bad_theta": (["check", "--kind", "algebra", f"{FIX}/z2_bad_theta.json"], 1),
    "check_broken_internal": (["check", "--kind", "internal", f"{FIX}/broken_internal.json"], 1),
    "check_missing": (["check", "--kind", "algebra", "missing.json"], 2),
    "check_wrong_kind": (["check", "--kind", "groupoid", f"{FIX}/z2.json"], 2),
    "check_action": (["check", "--kind", "action", f"{FIX}/z4_action_c02.json"], 0),
    "check_cover": (["check", "--kind", "cover", f"{FIX}/z4_cover_c02.json"], 0),
    "build_coset_cover": (["build", "coset-cover", "--groupoid", f"{FIX}/z4_internal.json", "--subgroup", "0,2",
                           "--out", "h_c.json", "--dot"], 0),
    "build_coset_cover_plain": (["build", "coset-cover", "--groupoid", f"{FIX}/z4_groupoid.json",
                                 "--subgroup", "0,2", "--out", "h_plain.json"], 0),
    "build_coset_not_subalgebra": (["build", "coset-cover", "--groupoid", f"{FIX}/swap_klein_internal.json",
                                    "--subgroup", "0,1", "--out", "x.json"], 1),
    "build_pair": (["build", "pair", "--algebra", f"{FIX}/z2.json", "--out", "pair.json"], 0),
    "build_discrete": (["build", "discrete", "--algebra", f"{FIX}/z4.json", "--out", "discrete.json"], 0),
    "build_fixture": (["build", "fixture", "--objects", "2", "--group", f"{FIX}/z2.json", "--out", "fix.json"], 0),
    "build_semidirect": (["build", "semidirect", "--action", f"{FIX}/z4_action_c02.json", "--out", "sd.json"], 0),
    "build_missing_option": (["build", "pair", "--out", "pair.json"], 2),
    "lift_ok": (["lift", "--cover", f"{FIX}/z4_cover_c02.json", "--base-object", "0", "--out", "lifted.json"], 0),
    "lift_not_subalgebra": (["lift", "--cover", f"{FIX}/swap_klein_cover_c01.json", "--base-object", "0"], 1),
    "equiv_action": (["equiv", "--action", f"{FIX}/z4_action_c02.json"], 0),
    "equiv_cover": (["equiv", "--cover", f"{FIX}/z4_cover_c02.json"], 0),
    "clone_z2": (["clone", f"{FIX}/z2.json", "--bound", "2"], 0),
    "clone_adversarial": (["clone", f"{FIX}/adversarial.json", "--bound", "3"], 1),
    "clone_normal": (["clone", f"{FIX}/z4.json", "--bound", "2", "--subgroup", "2"], 0),
    "clone_guard": (["clone", f"{FIX}/s3.json", "--bound", "2"], 1),
    "export_dot": (["export-dot", f"{FIX}/z4_cover_c02.json", "--kind", "cover", "--out", "c.dot"], 0),
}


def run_case(name, workdir):
    """Run one case inside ``workdir``; return its exit code and the report without timestamp."""
    argv, _ = CASES[name]
    buf = io.StringIO()
    old = os.getcwd()
    os.chdir(workdir)
    try:
        with contextlib.redirect_stdout(buf):
            code = main(argv + ["--json"])
    finally:
        os.chdir(old)
    doc = json.loads(buf.getvalue())
    assert "timestamp" in doc
    del doc["timestamp"]
    return code, json.dumps(doc, indent=1, sort_keys=True) + "\n"


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, tmp_path):
    code, text = run_case(name, tmp_path)
    assert code == CASES[name][1]
    assert text == (GOLDEN / f"{name}.json").read_text()


@pytest.mark.parametrize("name", sorted(CASES))
def test_exit_code_matches_status(name, tmp_path):
    code, text = run_case(name, tmp_path)
    doc = json.loads(text)
    assert doc["schema_version"] == "1"
    assert code == {"pass": 0, "fail": 1, "error": 2}[doc["status"]]
    assert (doc["status"] == "pass") == (not doc["violations"] and "error" not in doc)


def test_build_outputs_reload(tmp_path):
    run_case("build_coset_cover", tmp_path)
    cov = jsonio.load(tmp_path / "h_c.json", "cover")
    assert (cov.dom.gpd.n_objects, cov.dom.gpd.n_arrows) == (2, 8)
    assert (tmp_path / "h_c.dot").read_text().startswith("digraph")
    run_case("build_pair", tmp_path)
    assert jsonio.load(tmp_path / "pair.json", "internal").gpd.n_arrows == 4
    run_case("lift_ok", tmp_path)
    assert jsonio.load(tmp_path / "lifted.json", "internal").gpd.n_arrows == 8


def test_text_output(capsys):
    assert main(["check", "--kind", "algebra", str(FIX / "z2.json")]) == 0
    assert capsys.readouterr().out.startswith("check: pass")


def test_report_file(tmp_path):
    report = tmp_path / "r.json"
    main(["clone", str(FIX / "z2.json"), "--bound", "2", "--report", str(report)])
    doc = json.loads(report.read_text())
    assert doc["details"]["clone_sizes"]["2"] == 4
    assert doc["details"]["constants_preserved"] is True


def test_usage_error_exit_code():
    proc = subprocess.run([sys.executable, "-m", "semicover", "check"], capture_output=True, text=True)
    assert proc.returncode == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "semicover", "check", "--kind", "algebra", str(FIX / "z2.json")],
                          capture_output=True, text=True, cwd=tmp_path)
    assert proc.returncode == 0 and "pass" in proc.stdout


def _regen():
    GOLDEN.mkdir(exist_ok=True)
    for name in sorted(CASES):
        with tempfile.TemporaryDirectory() as tmp:
            _, text = run_case(name, tmp)
        (GOLDEN / f"{name}.json").write_text(text)
        print(f"wrote {name}")


if __name__ == "__main__" and "--regen" in sys.argv:
    _regen()
