import json
import subprocess
import sys

import pytest

from costaslab.cli import EXIT_GUARD, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, main
from costaslab.costas import Verdict


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_diagonal_to_file(tmp_path, capsys):
    out = tmp_path / "table1.csv"
    code, stdout, err = run(capsys, "diagonal", "--p-max", "100", "--out", str(out))
    assert code == EXIT_OK
    assert stdout == ""
    lines = out.read_text().splitlines()
    assert lines[0] == "p,max_s,fit,err"
    assert "7,3,3,0" in lines
    assert "exact" in err


def test_diagonal_byte_identical_across_workers(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "diagonal", "--p-max", "400", "--out", str(a))
    run(capsys, "diagonal", "--p-max", "400", "--out", str(b), "--workers", "3")
    assert a.read_bytes() == b.read_bytes()


def test_json_format(capsys):
    code, stdout, _ = run(capsys, "ratio", "--p-max", "13", "--format", "json")
    assert code == EXIT_OK
    recs = json.loads(stdout)
    assert recs[0] == {"p": 3, "zero_count": 1, "total": 2, "ratio": "0.500000"}
    assert [r["p"] for r in recs] == [3, 5, 7, 11, 13]


def test_parity2_stdout(capsys):
    code, stdout, _ = run(capsys, "parity2", "--m", "5")
    assert code == EXIT_OK
    assert stdout.splitlines() == ["m,ee,eo,count", "5,5,10,10", "5,6,9,40", "5,7,8,40"]


def test_parity2_out_dir(tmp_path, capsys):
    code, _, _ = run(capsys, "parity2", "--m", "3..5", "--out-dir", str(tmp_path))
    assert code == EXIT_OK
    assert (tmp_path / "table2_m3.csv").read_text() == "ee,eo,count\n1,2,6\n"
    assert (tmp_path / "table2_lengths.csv").read_text().splitlines()[1:] == ["3,1,12", "4,2,16", "5,3,180"]


def test_parity2_guard(capsys):
    code, _, err = run(capsys, "parity2", "--m", "13")
    assert code == EXIT_GUARD
    assert "--force" in err


def test_germain_g2(tmp_path, capsys):
    out = tmp_path / "t3.csv"
    code, _, _ = run(capsys, "germain", "--primes", "5,7,11", "--g2", "--out", str(out))
    assert code == EXIT_OK
    assert out.read_text().splitlines() == ["p,w1_max,g2_max", "5,2,2", "7,2,2", "11,3,4"]


def test_germain_w1_only_leaves_g2_empty(capsys):
    code, stdout, _ = run(capsys, "germain", "--p-max", "30")
    assert code == EXIT_OK
    assert stdout.splitlines() == ["p,w1_max,g2_max", "5,2,", "7,2,", "11,3,", "23,4,"]


def test_germain_guard_prints_estimate(capsys):
    code, stdout, err = run(capsys, "germain", "--primes", "227", "--g2")
    assert code == EXIT_GUARD
    assert stdout == ""
    assert "25088/227" in err


def test_germain_rejects_non_germain(capsys):
    code, _, err = run(capsys, "germain", "--primes", "13")
    assert code == EXIT_USAGE


def test_estimate(capsys):
    code, stdout, _ = run(capsys, "estimate", "227")
    assert code == EXIT_OK
    assert stdout == "25088/227 ≈ 110.5\n"


@pytest.mark.parametrize("suite", ["u-axis", "parity", "gw", "costas"])
def test_verify_suites_pass(capsys, suite):
    code, stdout, _ = run(capsys, "verify", suite, "--p-max", "50", "--q-max", "64")
    assert code == EXIT_OK
    body = stdout.splitlines()[1:]
    assert body and all(",holds," in line for line in body)


def test_verify_conjectures(capsys):
    code, stdout, _ = run(capsys, "verify", "conjectures", "--p-max", "20")
    assert code == EXIT_OK
    statuses = {line.split(",")[2] for line in stdout.splitlines()[1:]}
    assert statuses == {"holds", "skipped"}


def test_verify_reports_violation_with_witness(capsys, monkeypatch):
    import costaslab.cli as cli

    bad = Verdict("u-axis", 13, "violated", 5, 6, ("spec1", "spec2", 0, 0), "forced")
    monkeypatch.setattr(cli, "verify_w1_u_axis_theorem", lambda p: bad)
    code, stdout, err = run(capsys, "verify", "u-axis", "--p-max", "13", "--p-min", "13")
    assert code == EXIT_VIOLATION
    assert "violated" in stdout
    assert "spec1" in err and "p=13" in err


@pytest.mark.parametrize(
    "argv",
    [[], ["bogus"], ["diagonal"], ["diagonal", "--p-max", "x"], ["diagonal", "--p-max", "10", "--workers", "0"],
     ["verify", "nothing", "--p-max", "10"], ["estimate", "12"]],
)
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_p_max_guard(capsys):
    assert run(capsys, "diagonal", "--p-max", "200000")[0] == EXIT_GUARD


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "costaslab", "estimate", "11"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout == "32/11 ≈ 2.9\n"
