import json
import os
import subprocess
import sys

import pytest

from mealycat.cli import main
from mealycat.laws import CORPUS_DIR


def corpus(name):
    return os.path.join(CORPUS_DIR, name)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compose_id_after_xor(capsys):
    code, out, _ = run(capsys, "compose", corpus("id.doc"), corpus("xor.doc"), "--run", "101")
    assert code == 0
    assert "output: 110" in out


def test_run_xor(capsys):
    code, out, _ = run(capsys, "run", corpus("xor.doc"), "101")
    assert code == 0 and out.splitlines() == ["final: 0", "output: 110"]


def test_fugal_check_nonfugal(capsys, tmp_path):
    code, out, _ = run(capsys, "fugal", "check", corpus("nonfugal.doc"))
    assert code == 1
    cex = json.loads(out)
    assert cex["kind"] == "counterexample" and cex["witness"] == ["*", "1", "1"]
    path = tmp_path / "cex.doc"
    path.write_text(out)
    code, again, _ = run(capsys, "fugal", "check", str(path))
    assert code == 1 and json.loads(again)["witness"] == cex["witness"]


@pytest.mark.parametrize("doc", ["idz2.doc", "swapz2.doc", "flipflop.doc"])
def test_fugal_check_passes(capsys, doc):
    code, _, _ = run(capsys, "fugal", "check", corpus(doc), "--len", "4")
    assert code == 0


def test_fugal_extend_evaluates(capsys):
    code, out, _ = run(capsys, "fugal", "extend", corpus("xor.doc"), "--eval", "11")
    assert code == 0 and "10" in out


def test_unknown_command(capsys):
    code, _, err = run(capsys, "frobnicate")
    assert code == 2 and err


def test_missing_command(capsys):
    code, _, err = run(capsys)
    assert code == 2 and "command is required" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "run", str(tmp_path / "nope.doc"), "0")
    assert code == 2 and err.startswith("error:")


def test_malformed_document(capsys, tmp_path):
    p = tmp_path / "bad.doc"
    p.write_text("")
    code, _, err = run(capsys, "run", str(p), "0")
    assert code == 2 and ":1:1:" in err


def test_wrong_kind(capsys):
    code, _, err = run(capsys, "run", corpus("z2.doc"), "0")
    assert code == 2 and "mealy" in err


def test_rel_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "rel", "ran", corpus("rel-i.doc"), corpus("rel-o.doc"), "--moore")
    assert code == 0
    R = json.loads(out)
    assert R["pairs"] == [["z", "b"]]
    p = tmp_path / "r.doc"
    p.write_text(out)
    code, _, _ = run(capsys, "rel", "verify-terminal", str(p), corpus("rel-i.doc"), corpus("rel-o.doc"), "--moore")
    assert code == 0
    code, out, _ = run(capsys, "rel", "verify-terminal", corpus("rel-o.doc"), corpus("rel-i.doc"),
                       corpus("rel-o.doc"), "--moore")
    assert code == 1 and json.loads(out)["kind"] == "counterexample"


def test_kleisli_commands(capsys):
    code, out, _ = run(capsys, "kleisli", "run", corpus("nd.doc"), "01")
    assert code == 0 and out.splitlines()[0].startswith("1: states")
    code, out, _ = run(capsys, "kleisli", "lift", corpus("xor.doc"))
    assert code == 0 and json.loads(out)["kind"] == "powerset-mealy"
    code, out, _ = run(capsys, "kleisli", "expand", corpus("nd.doc"))
    assert code == 0 and json.loads(out)["kind"] == "mealy"


def test_guitart_commands(capsys):
    code, out, _ = run(capsys, "guitart", "translate", corpus("swapz2.doc"))
    assert code == 0 and json.loads(out)["kind"] == "functor"
    code, _, _ = run(capsys, "guitart", "sigma", corpus("idz2.doc"))
    assert code == 0
    code, out, _ = run(capsys, "guitart", "sigma", corpus("nonfugal.doc"))
    assert code == 1
    code, _, _ = run(capsys, "guitart", "verify", corpus("idz2.doc"), corpus("swapz2.doc"))
    assert code == 0
    code, out, _ = run(capsys, "guitart", "compose", corpus("idz2.doc"), corpus("swapz2.doc"))
    assert code == 0 and json.loads(out)["kind"] == "span"


def test_cat_commands(capsys):
    code, out, _ = run(capsys, "cat", "ran", corpus("idfunctor.doc"), corpus("o3.doc"))
    assert code == 0
    ran = json.loads(out)
    assert len(ran["objects"]["*"]) == 3
    code, _, _ = run(capsys, "cat", "machine", corpus("monad-id.doc"), corpus("o3.doc"))
    assert code == 0
    code, _, _ = run(capsys, "cat", "machine", corpus("arrow-monad.doc"), corpus("arrow-o.doc"))
    assert code == 0
    code, _, _ = run(capsys, "cat", "verify-up", corpus("idfunctor.doc"), corpus("o3.doc"), corpus("e2.doc"),
                     corpus("gamma.doc"))
    assert code == 0


def test_intertwiner_commands(capsys):
    for name in ("xor-id.doc", "xor-id-point.doc", "xor-self.doc", "collapse-cell.doc"):
        code, _, _ = run(capsys, "intertwiner", "check", corpus(name))
        assert code == 0, name
    code, out, _ = run(capsys, "intertwiner", "compose", corpus("xor-self.doc"), corpus("xor-id.doc"))
    assert code == 0 and json.loads(out)["kind"] == "intertwiner"


def test_adjunction_roundtrip(capsys):
    code, out, _ = run(capsys, "adjunction", "roundtrip", corpus("xor.doc"), "--monoid", corpus("z2add.doc"))
    assert code == 0 and "ok" in out


def test_laws_seed_42(capsys):
    code, out, _ = run(capsys, "laws", "--seed", "42", "--len", "5")
    assert code == 0
    assert "FAIL" not in out


def test_laws_output_is_deterministic():
    cmd = [sys.executable, "-m", "mealycat", "laws", "--seed", "0"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
