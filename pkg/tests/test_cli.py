import json
import subprocess
import sys

import pytest

from vstlab.cli import main
from vstlab.presentations import shipped_traces


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def payload(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_pi(capsys):
    assert payload(capsys, "pi", "-n", "3", "s1 v2 s1") == (
        0,
        {"word": "s1 v2 s1", "images": [3, 2, 1], "cycles": "(1 3)", "pure": False},
    )
    code, out = payload(capsys, "pi", "-n", "3", "e")
    assert out["images"] == [1, 2, 3] and out["pure"]
    code, out = payload(capsys, "pi", "-n", "3", "t1 t1")
    assert out["pure"]
    code, out, _ = run(capsys, "pi", "-n", "3", "--format", "text", "s1")
    assert out.splitlines() == ["[2, 1, 3]", "pure: false"]


def test_parse_errors_exit_2(capsys):
    code, out, err = run(capsys, "pi", "-n", "3", "s5")
    assert code == 2 and "error" in err and out == ""
    with pytest.raises(SystemExit) as exc:
        main(["pi"])
    assert exc.value.code == 2


def test_reduce(capsys):
    assert payload(capsys, "reduce", "-n", "3", "s1 v2 v2 t1 T1") == (0, {"word": "s1"})


def test_check_rep(capsys):
    assert payload(capsys, "check-rep", "--rep", "eta1p", "--v", "t", "-n", "4", "--presentation", "vst") == (0, [])
    assert payload(capsys, "check-rep", "--rep", "upsilon", "--family", "6", "-n", "3") == (0, [])
    code, _, err = run(capsys, "check-rep", "--rep", "eta1p", "--v", "1+t", "-n", "3")
    assert code == 2 and "not invertible" in err
    code, _, err = run(capsys, "check-rep", "--rep", "upsilon", "--family", "1", "--b", "0", "--x", "1", "--y", "1", "--v", "1", "-n", "3")
    assert code == 2 and "b != 0" in err


def test_check_rep_reports_violations(capsys, tmp_path):
    bad = {
        "images": {
            "v1": {"ring": "gaussian", "n": 3, "entries": [["0", "1", "0"], ["2", "0", "0"], ["0", "0", "1"]]},
            "v2": {"ring": "gaussian", "n": 3, "entries": [["1", "0", "0"], ["0", "0", "1"], ["0", "1", "0"]]},
        }
    }
    f = tmp_path / "rep.json"
    f.write_text(json.dumps(bad))
    code, out = payload(capsys, "check-rep", "--rep-json", str(f), "--presentation", "vstm")
    assert code == 1 and "eq20-nu[1]" in out


def test_eval(capsys):
    code, out = payload(capsys, "eval", "--rep", "eta1p", "--v", "t", "-n", "3", "t1 t2 t1")
    assert code == 0 and out["entries"] == [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]


def test_irreducible(capsys):
    code, out = payload(capsys, "irreducible", "--rep", "eta1p", "--v", "1", "--at", "3", "-n", "4")
    assert code == 0 and out["verdict"] == "reducible" and out["witness"] == ["1"] * 4
    code, out = payload(capsys, "irreducible", "--rep", "eta1p", "--v", "t", "--at", "3", "-n", "3")
    assert code == 0 and out["verdict"] == "irreducible" and out["algebra_dimension"] == 9
    code, _, _ = run(capsys, "irreducible", "--rep", "eta1p", "--v", "t", "--at", "0", "-n", "3")
    assert code == 2


def test_convert_and_derive(capsys):
    assert payload(capsys, "convert", "--from", "connecting", "--to", "standard", "-n", "3", "m1")[1]["word"] == "s1 v1"
    assert payload(capsys, "convert", "--from", "standard", "--to", "connecting", "-n", "3", "s1 v1")[1]["word"] == "m1"
    assert run(capsys, "convert", "--from", "reduced", "--to", "standard", "-n", "4", "s2")[0] == 2
    assert run(capsys, "convert", "--from", "connecting", "--to", "reduced", "-n", "4", "m1")[0] == 2
    assert payload(capsys, "derive", "--kind", "s", "--index", "2", "-n", "4") == (0, {"word": "v1 v2 s1 v2 v1"})


def test_search_equiv(capsys):
    code, out = payload(capsys, "search-equiv", "-n", "3", "t1 s2 s1", "s2 s1 t2")
    assert code == 0 and out["status"] == "proved" and out["trace"]["steps"]
    code, out = payload(capsys, "search-equiv", "-n", "3", "s1", "t1", "--max-len", "5")
    assert code == 1 and out["status"] == "unknown"


def test_trace_verify(capsys, tmp_path):
    good = shipped_traces()["tau-s-s-commute"].to_json()
    f = tmp_path / "t.json"
    f.write_text(json.dumps(good))
    assert payload(capsys, "trace", "verify", str(f))[0] == 0
    ident = {"presentation": "vstm", "n": 3, "start": "s1", "end": "s1", "steps": []}
    f.write_text(json.dumps(ident))
    assert payload(capsys, "trace", "verify", str(f))[0] == 0
    good["steps"][0]["pos"] = 1
    f.write_text(json.dumps(good))
    code, out = payload(capsys, "trace", "verify", str(f))
    assert code == 1 and out["failed_step"] == 0
    f.write_text("{not json")
    assert run(capsys, "trace", "verify", str(f))[0] == 2


def test_catalog(capsys):
    code, out = payload(capsys, "catalog", "vstm", "-n", "3")
    assert code == 0 and len(out["relations"]) == 11


def test_deterministic_output(capsys):
    first = run(capsys, "catalog", "reduced-vstm", "-n", "5")
    assert run(capsys, "catalog", "reduced-vstm", "-n", "5") == first


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "vstlab", "pi", "-n", "3", "s1"], capture_output=True, text=True
    )
    assert res.returncode == 0 and json.loads(res.stdout)["images"] == [2, 1, 3]
