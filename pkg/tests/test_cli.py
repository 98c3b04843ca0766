import csv
import io
import json

import pytest

from qspace import cli
from qspace.errors import InvariantViolation


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def records(text):
    lines = [json.loads(line) for line in text.splitlines()]
    assert "config" in lines[0]
    return lines[0]["config"], lines[1:]


def test_qbinom_prints_bare_number(capsys):
    assert run(capsys, "qbinom", "4", "2", "2") == (0, "35\n", "")


def test_ntrk(capsys):
    code, out, _ = run(capsys, "ntrk", "--n", "3", "--k", "2", "--q", "2", "--r", "2", "--t", "1")
    cfg, recs = records(out)
    assert code == 0
    assert cfg["subcommand"] == "ntrk" and "workers" not in cfg
    assert recs[0]["count"] == "28"


def test_verify_lemma1(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "lemma1", "--q", "2", "--n", "4")
    cfg, recs = records(out)
    assert code == 0 and recs[0]["ok"] and cfg["q"] == 2


@pytest.mark.parametrize(
    "argv, code, param",
    [
        (["ntrk", "--n", "3", "--k", "5", "--q", "2", "--r", "2", "--t", "1"], 1, "k"),
        (["qbinom", "4", "2", "6"], 1, "q"),
        (["frobnicate"], 1, "argv"),
        (["ntrk", "--n", "3"], 1, "argv"),
        (["ntrk", "--n", "12", "--k", "6", "--q", "2", "--r", "2", "--t", "1"], 2, "n"),
        (["search", "--n", "7", "--k", "3", "--q", "2", "--r", "2", "--t", "1"], 2, "n"),
        (["search", "--n", "4", "--k", "2", "--q", "2", "--r", "3", "--t", "1"], 1, "r"),
        (["bound", "--kind", "lower", "--n", "6", "--k", "3", "--q", "2", "--t", "1"], 1, "n"),
        (["bound", "--kind", "cross", "--n", "6", "--k", "3", "--q", "2", "--t", "1"], 1, "ell"),
        (["ntrk", "--n", "3", "--k", "2", "--q", "2", "--r", "2", "--t", "1", "--workers", "0"], 1, "workers"),
    ],
)
def test_exit_codes_name_the_parameter(capsys, argv, code, param):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert json.loads(err.splitlines()[-1])["param"] == param


def test_invariant_violation_exits_3(capsys, monkeypatch):
    def broken(*args, **kwargs):
        raise InvariantViolation("simulated", param="n")

    monkeypatch.setattr(cli, "n_trk_result", broken)
    code, _, err = run(capsys, "ntrk", "--n", "3", "--k", "2", "--q", "2", "--r", "2", "--t", "1")
    assert code == 3 and json.loads(err)["error"] == "InvariantViolation"


def test_failed_verification_exits_3(capsys, monkeypatch):
    monkeypatch.setattr(cli.verify, "run_suite", lambda *a, **k: [{"suite": "x", "ok": False}])
    code, _, _ = run(capsys, "verify", "--suite", "field")
    assert code == 3


def test_csv_and_out_file(capsys, tmp_path):
    dest = tmp_path / "audit.csv"
    code, out, _ = run(capsys, "audit", "--n", "17", "--k", "4", "--r", "2", "--t", "1", "--q", "2", "--csv", "--out", str(dest))
    assert code == 0 and out == ""
    text = dest.read_text()
    assert text.startswith("# config: ")
    rows = list(csv.DictReader(io.StringIO(text.split("\n", 1)[1])))
    chains = [r for r in rows if r["named_bound"] != "prop3.2"]
    assert len(chains) == 5 and all(r["holds"] == "True" for r in chains)


def test_workers_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("QSPACE_WORKERS", "2")
    a = run(capsys, "ntrk", "--n", "6", "--k", "3", "--q", "2", "--r", "2", "--t", "1")
    monkeypatch.setenv("QSPACE_WORKERS", "oops")
    code, _, _ = run(capsys, "ntrk", "--n", "3", "--k", "2", "--q", "2", "--r", "2", "--t", "1")
    assert a[0] == 0 and code == 1


def test_build_count_tau_round_trip(capsys, tmp_path):
    fam_path = tmp_path / "star.fam"
    code, out, _ = run(capsys, "build", "--n", "6", "--k", "3", "--q", "2", "--m", "3", "--star", "--family-out", str(fam_path))
    assert code == 0 and records(out)[1][0]["size"] == 98
    code, out, _ = run(capsys, "count", "--family", str(fam_path), "--r", "2", "--t", "1")
    assert records(out)[1][0]["count"] == "75264"
    code, out, _ = run(capsys, "tau", "--family", str(fam_path), "--t", "1")
    rec = records(out)[1][0]
    assert rec["tau"] == 2 and len(rec["covers"]) == 7


def test_build_with_explicit_subspace(capsys):
    code, out, _ = run(capsys, "build", "--n", "4", "--k", "2", "--q", "3", "--x", "1,0,0,0;0,1,0,0")
    assert code == 0 and records(out)[1][0]["size"] == 1 + 3 * 4 * 4
    code, _, _ = run(capsys, "build", "--n", "4", "--k", "2", "--q", "3")
    assert code == 1


def test_bound_kinds(capsys):
    _, out, _ = run(capsys, "bound", "--n", "7", "--k", "3", "--q", "2", "--t", "1")
    assert records(out)[1][0]["value"] == "189000"
    _, out, _ = run(capsys, "bound", "--kind", "size", "--n", "8", "--k", "3", "--q", "2", "--t", "1")
    assert records(out)[1][0]["value"] == "735"
    _, out, _ = run(capsys, "bound", "--kind", "cross", "--n", "6", "--k", "3", "--q", "2", "--t", "1", "--ell", "2", "--s", "1")
    assert records(out)[1][0]["value"] == "147"


def test_enum_and_lemma1(capsys):
    _, out, _ = run(capsys, "enum", "--n", "4", "--k", "2", "--q", "2")
    recs = records(out)[1]
    assert len(recs) == 36 and recs[-1] == {"total": "35", "expected": "35"}
    _, out, _ = run(capsys, "lemma1", "--n", "4", "--q", "2", "--a", "1,0,0,0;0,1,0,0", "--j", "2", "--ell", "1")
    rec = records(out)[1][0]
    assert rec["count"] == rec["formula"] == "18"


def test_steps_and_search_witnesses(capsys, tmp_path):
    code, out, _ = run(capsys, "steps", "--n", "6", "--k", "3", "--q", "2", "--r", "2", "--t", "1", "--samples", "20")
    rec = records(out)[1][0]
    assert code == 0 and rec["ok"] and rec["h_stated"] == "4" and rec["h_exact"] == "8"
    wdir = tmp_path / "w"
    code, out, _ = run(capsys, "search", "--n", "4", "--k", "2", "--q", "2", "--r", "2", "--t", "1", "--witness-dir", str(wdir))
    assert code == 0 and len(list(wdir.iterdir())) == 15


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "qspace", "qbinom", "6", "3", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "1395\n"
