import json
import subprocess
import sys

import pytest

from conftest import FIXTURES
from oracles import brute_wedge_widths
from oikomplex.cli import WMAX_LIMIT, main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_help_lists_commands(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    for cmd in ("basis", "tensor", "wedge", "sym", "identity", "koszul", "be", "verify"):
        assert cmd in out


def test_basis(capsys):
    code, out, _ = run(["basis", "--algebra", "1", "--free", "1:1", "--wmax", "2"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "w=0: "
    assert len(out.splitlines()[2].split(", ")) == 2


def test_wedge_and_identity(capsys):
    code, out, _ = run(["wedge", "--algebra", "1", "--free", "2:1", "--i", "2", "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["widths"] == {str(w): m for w, m in brute_wedge_widths(2, 1, 2, 6).items()}
    code, out, _ = run(["identity", "--construction", "wedge", "--algebra", "1", "--free", "2:1",
                        "--i", "2", "--wmax", "6"], capsys)
    assert code == 0 and "holds for 0 <= w <= 6" in out


def test_tensor_and_sym(capsys, tmp_path):
    target = tmp_path / "t.json"
    code, out, _ = run(["tensor", "--algebra", "1", "--free", "1:1", "--free2", "2:1",
                        "--out", str(target), "--format", "json"], capsys)
    assert code == 0
    assert json.loads(target.read_text()) == json.loads(out)
    assert json.loads(out)["widths"] == {"2": 2, "3": 3}
    code, out, _ = run(["sym", "--algebra", "1", "--free", "1:1", "--q", "2", "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["widths"] == {"1": 1, "2": 1}


def test_wmax_guard(capsys):
    code, _, err = run(["basis", "--algebra", "1", "--free", "1", "--wmax", str(WMAX_LIMIT + 1)], capsys)
    assert code == 2 and "refusing --wmax" in err


@pytest.mark.parametrize("argv, fragment", [
    (["basis", "--algebra", "1,x", "--free", "1"], "algebra"),
    (["basis", "--algebra", "1", "--free", "1:q"], "free"),
    (["wedge", "--algebra", "1", "--free", "1", "--i", "-1"], "non-negative"),
    (["be", "--phi", "/nonexistent/phi.json"], "cannot read"),
])
def test_usage_errors(argv, fragment, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2
    assert err.startswith("error:") and fragment in err


def test_bad_polynomial_is_located(tmp_path, capsys):
    data = json.loads((FIXTURES / "koszul_x1.json").read_text())
    text = json.dumps(data).replace("x[1;(1)]", "x[1;(1)]**")
    bad = tmp_path / "bad.json"
    bad.write_text(text)
    code, _, err = run(["koszul", "--phi", str(bad), "--wmax", "2", "--out", str(tmp_path / "o")], capsys)
    assert code == 2 and str(bad) in err


def test_be_then_verify(tmp_path, capsys):
    out = tmp_path / "be"
    code, _, _ = run(["be", "--phi", str(FIXTURES / "generic_3xw.json"), "--i", "1",
                      "--wmax", "4", "--out", str(out)], capsys)
    assert code == 0
    assert sorted(p.name for p in out.iterdir()) == ["spec.json"] + [f"width_{w}.json" for w in range(5)]
    spec = json.loads((out / "spec.json").read_text())
    assert spec["kind"] == "be" and spec["i"] == 1 and spec["wmax"] == 4
    code, text, _ = run(["verify", "--spec", str(out), "--trials", "2"], capsys)
    assert code == 0 and "probabilistic certificate" in text
    code, text, _ = run(["verify", "--spec", str(out / "spec.json"), "--format", "json"], capsys)
    assert code == 0 and json.loads(text)["passed"] is True


def test_verify_fails_on_non_acyclic(tmp_path, capsys):
    out = tmp_path / "k"
    assert run(["koszul", "--phi", str(FIXTURES / "koszul_non_acyclic_x2.json"), "--wmax", "3",
                "--out", str(out)], capsys)[0] == 0
    code, text, _ = run(["verify", "--spec", str(out)], capsys)
    assert code == 1 and "graded H" in text
    # with the graded probe disabled only fibers are checked, and they are exact
    code, _, _ = run(["verify", "--spec", str(out), "--graded-degree", "-1"], capsys)
    assert code == 0


def test_output_is_byte_identical(tmp_path, capsys):
    def build(d):
        run(["koszul", "--phi", str(FIXTURES / "koszul_xd_d2.json"), "--wmax", "3",
             "--out", str(d)], capsys)
        run(["verify", "--spec", str(d), "--seed", "4", "--format", "json", "--out", str(d / "report.json")], capsys)
        return {p.name: p.read_bytes() for p in d.iterdir()}

    assert build(tmp_path / "a") == build(tmp_path / "b")


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "oikomplex.cli", "wedge", "--algebra", "1", "--free", "1:1",
                           "--i", "2"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout
