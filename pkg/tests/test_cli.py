import io
import json
import subprocess
import sys

import pytest

from qcanon.cli import Command, main, run
from qcanon.littlewood import canonical_form
from qcanon.qmatrix import QMatrix
from qcanon.quaternion import Quaternion
from qcanon.testkit import haar_unitary, make_rng, random_nonderogatory


def write(tmp_path, name, m: QMatrix) -> str:
    p = tmp_path / name
    p.write_text(m.to_json())
    return str(p)


def invoke(verb, inputs=(), **kw):
    out, err = io.StringIO(), io.StringIO()
    code = run(Command(verb, list(inputs), **kw), out, err)
    return code, out.getvalue(), err.getvalue()


def test_canon_diag(tmp_path):
    code, out, _ = invoke("canon", [write(tmp_path, "a.json", QMatrix.diag([3, 1]))])
    assert code == 0
    obj = json.loads(out)
    assert QMatrix.from_json_obj(obj["canon"]) == QMatrix.diag([3, 1])
    assert obj["edges"] == []


def test_similar_fixture(tmp_path):
    rng = make_rng(4)
    a = random_nonderogatory(rng, 4)
    u = haar_unitary(4, rng)
    code, out, _ = invoke("similar", [write(tmp_path, "a.json", a), write(tmp_path, "b.json", u.H @ a @ u)])
    assert code == 0
    obj = json.loads(out)
    assert obj["similar"] is True and set(obj) == {"similar", "canonA", "canonB"}


def test_projector_report(tmp_path):
    code, out, _ = invoke("projector", [write(tmp_path, "p.json", QMatrix.from_entries([[1, 1], [0, 0]]))])
    obj = json.loads(out)
    assert code == 0 and obj["b_values"] == [1.0]
    assert obj["kind"] == "idempotent" and "canon" in obj


def test_other_verbs(tmp_path):
    code, out, _ = invoke("squarezero", [write(tmp_path, "s.json", QMatrix.from_entries([[0, 2], [0, 0]]))])
    assert code == 0 and json.loads(out)["b_values"] == [2.0]
    code, out, _ = invoke("schur", [write(tmp_path, "t.json", QMatrix.from_entries([[5, 4], [0, 5]]))])
    assert code == 0 and json.loads(out)["sizes"] == [1, 1]
    code, out, _ = invoke("decompose", [write(tmp_path, "d.json", QMatrix.diag([3, 1]))])
    assert code == 0 and json.loads(out)["permutation"] == [1, 2]


def test_emitted_matrices_reparse_bit_identically(tmp_path):
    a = random_nonderogatory(make_rng(9), 5)
    code, out, _ = invoke("canon", [write(tmp_path, "a.json", a)])
    assert code == 0
    parsed = QMatrix.from_json_obj(json.loads(out)["canon"])
    assert parsed == canonical_form(a).canon


def test_gadget_is_deterministic(tmp_path):
    reports = [invoke("gadget", kind="M5", seed=21, size=2)[1] for _ in range(2)]
    assert reports[0] == reports[1]
    assert QMatrix.from_json(reports[0]).shape == (10, 10)
    code, out, _ = invoke("gadget", kind="d", seed=1)
    assert code == 0 and set(json.loads(out)) == {"A", "B"}
    path = tmp_path / "g.json"
    code, _, _ = invoke("gadget", kind="b", output=str(path))
    assert code == 0 and QMatrix.from_json(path.read_text()).shape == (3, 3)


def test_text_format(tmp_path):
    m = QMatrix.from_entries([[3, Quaternion(1, 1, 1, 1)], [0, 1]])
    code, out, _ = invoke("canon", [write(tmp_path, "a.json", m)], fmt="text")
    assert code == 0
    assert "2+0i+0j+0k" in out and "(1,2)" in out and "case 1a" in out


def test_exit_codes(tmp_path):
    code, _, err = invoke("canon", [write(tmp_path, "d.json", QMatrix.diag([1, 1]))])
    assert code == 1 and "Derogatory" in err
    code, _, err = invoke("projector", [write(tmp_path, "n.json", QMatrix.from_entries([[2]]))])
    assert code == 1 and "NotIdempotent" in err
    code, _, err = invoke("schur", [write(tmp_path, "c.json", QMatrix.from_entries([[Quaternion(0, 1)]]))])
    assert code == 1 and "NonRealSpectrum" in err
    bad = tmp_path / "bad.json"
    bad.write_text('{"rows": 1, "cols": 1, "entries": [[[1, 2]]]}')
    assert invoke("canon", [str(bad)])[0] == 2
    assert invoke("canon", [str(tmp_path / "missing.json")])[0] == 2


def test_command_validation():
    with pytest.raises(ValueError):
        Command("similar", ["a.json"])
    with pytest.raises(ValueError):
        Command("nonsense")


def test_main_arity_error_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["similar", "only-one.json"])
    assert exc.value.code == 2


def test_module_entry_point(tmp_path):
    path = write(tmp_path, "a.json", QMatrix.diag([3, 1]))
    proc = subprocess.run([sys.executable, "-m", "qcanon", "canon", path, "--eps-canon", "1e-9"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["edges"] == []


def test_selftest_quick():
    code, out, _ = invoke("selftest", scale=0.05, fmt="text")
    assert code == 0
    assert out.count("[PASS]") == 11
