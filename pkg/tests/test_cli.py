import json

import pytest

from gquadforms.cli import main
from gquadforms.jsonio import dump_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_symbol_command(capsys):
    code, out, _ = run(capsys, "symbol", "-1", "t")
    assert code == 0
    data = json.loads(out)
    assert data["product"] == 1
    assert ["t", -1] in data["symbols"]
    assert ["inf", -1] in data["symbols"]


def test_symbol_rejects_zero(capsys):
    code, _, err = run(capsys, "symbol", "0", "t")
    assert code == 2
    assert "error" in err


def test_ram_command(capsys):
    code, out, _ = run(capsys, "ram", "-1", "t^2+2")
    assert code == 0
    data = json.loads(out)
    assert data["ramification"] == ["t+1", "t+2"]


def test_qf_equiv_exit_codes(tmp_path, capsys):
    f1 = tmp_path / "q1.json"
    f2 = tmp_path / "q2.json"
    f3 = tmp_path / "q3.json"
    f1.write_text(json.dumps({"p": 3, "gram": [["1", "0"], ["0", "2"]]}))
    f2.write_text(json.dumps({"p": 3, "gram": [["0", "1"], ["1", "0"]]}))
    f3.write_text(json.dumps({"p": 3, "gram": [["1", "0"], ["0", "1"]]}))
    code, out, _ = run(capsys, "qf-equiv", str(f1), str(f2))
    assert code == 0  # <1,-1> is the hyperbolic plane in both presentations
    assert json.loads(out)["equivalent"] is True
    code, out, _ = run(capsys, "qf-equiv", str(f1), str(f3))
    assert code == 1
    assert json.loads(out)["equivalent"] is False


def test_qf_equiv_bad_input(tmp_path, capsys):
    f1 = tmp_path / "bad.json"
    f1.write_text("{not json")
    code, _, err = run(capsys, "qf-equiv", str(f1), str(f1))
    assert code == 2
    assert "invalid JSON" in err


def test_qf_equiv_degenerate_rejected(tmp_path, capsys):
    f1 = tmp_path / "deg.json"
    f1.write_text(json.dumps({"p": 3, "gram": [["1", "1"], ["1", "1"]]}))
    code, _, err = run(capsys, "qf-equiv", str(f1), str(f1))
    assert code == 2


def test_hp_check_trivial_module(tmp_path, capsys):
    mod = {
        "p": 3,
        "generators": ["g1", "g2", "g3"],
        "dim": 1,
        "action": {g: [["1"]] for g in ("g1", "g2", "g3")},
    }
    form = {"p": 3, "gram": [["1"]]}
    mf = tmp_path / "mod.json"
    ff = tmp_path / "form.json"
    mf.write_text(json.dumps(mod))
    ff.write_text(json.dumps(form))
    code, out, _ = run(capsys, "hp-check", str(mf), str(ff))
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "guaranteed"
    comps = data["evidence"]["components"]
    assert comps[0]["kind"] == "orthogonal" and comps[0]["splitness"] == "split"


def test_hp_check_invalid_module(tmp_path, capsys):
    mod = {
        "p": 3,
        "generators": ["g"],
        "dim": 2,
        "action": {"g": [["0", "1"], ["1", "0"]]},  # order 2, not 3
    }
    mf = tmp_path / "mod.json"
    mf.write_text(json.dumps(mod))
    code, _, err = run(capsys, "hp-check", str(mf))
    assert code == 2


def test_output_file_and_pretty(tmp_path, capsys):
    out_path = tmp_path / "out.json"
    code, out, _ = run(capsys, "symbol", "-1", "t", "-o", str(out_path))
    assert code == 0 and out == ""
    data = json.loads(out_path.read_text())
    assert data["product"] == 1
    code, out, _ = run(capsys, "ram", "-1", "t", "--pretty")
    assert code == 0
    assert "ramification" in out and "{" not in out


def test_even_p_rejected(capsys):
    code, _, err = run(capsys, "symbol", "1", "t", "--p", "4")
    assert code == 2


def test_other_prime(capsys):
    code, out, _ = run(capsys, "symbol", "-1", "t", "--p", "5")
    assert code == 0
    data = json.loads(out)
    # -1 = 4 is a square mod 5, so (-1, t) splits everywhere
    assert data["product"] == 1
    assert all(s == 1 for _, s in data["symbols"])
