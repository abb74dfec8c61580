import csv
import io
import json
import subprocess
import sys

import pytest

from arcring import __version__
from arcring.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_catalan_json(capsys):
    code, out, _ = run(capsys, "catalan", "--m", "4")
    rep = json.loads(out)
    assert code == 0
    assert set(rep) == {"tool", "version", "command", "config", "ok", "result"}
    assert rep["version"] == __version__ and rep["command"] == "catalan"
    assert rep["result"] == {"m": 4, "count": 14, "catalan": 14}
    assert rep["config"]["seed"] == 0


def test_ring_with_table(capsys):
    code, out, _ = run(capsys, "ring", "--m", "1", "--table")
    rep = json.loads(out)
    assert code == 0
    assert rep["result"]["basis_size"] == 2 and rep["result"]["matchings"] == 1
    assert "table" in rep["result"]


def test_ring_bound(capsys):
    code, _, err = run(capsys, "ring", "--m", "5")
    assert code == 2 and "--allow-large" in err


def test_verify_relations_threads(capsys):
    code, out, _ = run(capsys, "verify-relations", "--n", "3", "--k", "1", "--threads", "2")
    rep = json.loads(out)
    assert code == 0 and rep["ok"]
    assert len(rep["result"]["reports"]) > 1
    code, out, _ = run(capsys, "verify-relations", "--n", "3", "--k", "1", "--relation", "K-E", "--threads", "1")
    assert code == 0 and len(json.loads(out)["result"]["reports"]) == 1


def test_unknown_relation(capsys):
    code, _, err = run(capsys, "verify-relations", "--n", "3", "--k", "1", "--relation", "bogus")
    assert code == 2 and "bogus" in err


def test_gram_csv(capsys):
    code, out, _ = run(capsys, "gram", "--n", "4", "--k", "2", "--lambda", "1,1,1,1", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["row", "0", "1"]
    assert len(rows) == 3 and rows[1][2] == rows[2][1]


def test_gram_text(capsys):
    code, out, _ = run(capsys, "gram", "--n", "2", "--k", "1", "--lambda", "1,1", "--format", "text")
    assert code == 0
    assert out.startswith(f"arcring {__version__} gram: PASS")
    assert "matrix" in out


def test_gram_invalid_weight(capsys):
    code, _, err = run(capsys, "gram", "--n", "3", "--k", "1", "--lambda", "1,1")
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "gram", "--n", "3", "--k", "1", "--lambda", "3,0,-1")
    assert code == 2


def test_size_bound(capsys):
    code, _, err = run(capsys, "canonical", "--n", "7", "--k", "2")
    assert code == 2 and "--allow-large" in err


def test_canonical(capsys):
    code, out, _ = run(capsys, "canonical", "--n", "3", "--k", "1")
    rep = json.loads(out)
    assert code == 0 and rep["result"]["dimension"] == 6


def test_present(capsys):
    code, out, _ = run(capsys, "present", "--n", "6", "--k", "3", "--lambda", "1,1,1,0,2,1", "--matching", "1-6,2-3")
    rep = json.loads(out)
    assert code == 0
    assert rep["result"]["word"] == ["F2", "F1", "F4", "F3", "F2", "F5", "F4^(2)", "F3^(2)"]
    code2, out2, _ = run(capsys, "present", "--n", "6", "--k", "3", "--lambda", "1,1,1,0,2,1", "--matching", "[[1,6],[2,3]]")
    assert code2 == 0 and json.loads(out2)["result"] == rep["result"]


def test_present_bad_matching(capsys):
    code, _, _ = run(capsys, "present", "--n", "4", "--k", "2", "--lambda", "1,1,1,1", "--matching", "1-3,2-4")
    assert code == 2


def test_present_failure_path(capsys, monkeypatch):
    import arcring.slnaction as sl

    def refuse(lam, a):
        raise sl.PresentationError("no word found")

    monkeypatch.setattr(sl, "monomial_presentation", refuse)
    code, out, _ = run(capsys, "present", "--n", "2", "--k", "1", "--lambda", "1,1", "--matching", "1-2")
    assert code == 1
    assert json.loads(out)["result"]["error"] == "no word found"


def test_braid_k0(capsys):
    code, out, _ = run(capsys, "braid-k0", "--n", "3", "--k", "1")
    rep = json.loads(out)
    assert code == 0
    assert set(rep["result"]) == {"sigma", "check", "euler_characteristic"}


def test_tensor_check_sampled(capsys):
    code, out, _ = run(capsys, "tensor-check", "--m", "2", "--sample", "5", "--seed", "3")
    rep = json.loads(out)
    assert code == 0 and rep["result"]["pairs_checked"] == 5
    code, _, _ = run(capsys, "tensor-check", "--m", "4")
    assert code == 2


def test_failing_check_exits_one(capsys, monkeypatch):
    import arcring.k0 as k0mod

    monkeypatch.setattr(k0mod, "gram_triangularity", lambda lam: False)
    code, out, _ = run(capsys, "gram", "--n", "2", "--k", "1", "--lambda", "1,1")
    assert code == 1 and json.loads(out)["ok"] is False


def test_bad_arguments():
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["catalan", "--m", "1", "--threads", "0"])
    assert exc.value.code == 2


def test_console_entry():
    res = subprocess.run([sys.executable, "-m", "arcring.cli", "catalan", "--m", "3", "--format", "text"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "count: 5" in res.stdout
