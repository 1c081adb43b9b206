import json
from pathlib import Path

import jsonschema
import pytest

from gkm import cli
from gkm.schemas import SCHEMAS

DATA = Path(__file__).resolve().parent.parent / "data"
A2 = str(DATA / "matrices" / "a2.mtx")


def run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    payload = json.loads(out)
    jsonschema.validate(payload, SCHEMAS[argv[0]])
    return code, payload


@pytest.fixture
def mtx(tmp_path):
    def write(rows, kind="dense", sizes=None):
        data = {"kind": kind, "labels": [str(i + 1) for i in range(len(rows))],
                "entries": [[str(x) for x in r] for r in rows]}
        if sizes:
            data["sizes"] = [str(s) for s in sizes]
        path = tmp_path / f"m{abs(hash(json.dumps(data)))}.mtx"
        path.write_text(json.dumps(data))
        return str(path)
    return write


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate", "--matrix", A2)
    assert code == 0 and out.strip() == "valid"


def test_validate_violation(capsys, mtx):
    code, payload = run_json(capsys, "validate", "--matrix", mtx([[2, -1], [-2, 2]]))
    assert code == 1
    assert payload["violations"][0]["condition"] == "C1"


def test_classify(capsys, mtx):
    code, payload = run_json(capsys, "classify", "--matrix", mtx([[2, -1], [-1, -2]]))
    assert code == 0
    assert payload["real"] == ["1"] and payload["imaginary"] == ["2"] and payload["free_split_applicable"]


def test_center_pairs(capsys, mtx):
    code, payload = run_json(capsys, "center-pairs", "--matrix", mtx([[-2, -2], [-2, -2]]))
    assert code == 0 and payload["total"] == "1"


def test_witt(capsys, tmp_path):
    gens = tmp_path / "g.tsv"
    gens.write_text("# two degree-one generators\n1\t2\n")
    code, payload = run_json(capsys, "witt", "--gens", str(gens), "--height", "6", "--verify")
    assert code == 0
    assert [d["coefficient"] for d in payload["dims"]] == ["2", "1", "2", "3", "6", "9"]
    assert payload["mismatches"] == []


def test_oracle_split_and_basis(capsys, mtx):
    code, payload = run_json(capsys, "oracle", "--matrix", mtx([[2, -1], [-1, -2]]), "--height", "4",
                             "--split", "--show-basis")
    assert code == 0
    assert {(tuple(d["exponent"]), d["coefficient"]) for d in payload["free_gens"]} == {((0, 1), "1"), ((1, 1), "1")}
    assert payload["basis"]["1,1"] == ["[1,2]"]


@pytest.mark.parametrize("mode", ["full", "factored", "eq6", "cor52"])
def test_denom(capsys, mtx, mode):
    code, payload = run_json(capsys, "denom", "--matrix", mtx([[2, -1], [-1, -2]]), "--height", "5", "--mode", mode)
    assert code == 0 and payload["mismatches"] == []


def test_denom_hypothesis_is_usage_error(capsys, mtx):
    code, _, err = run(capsys, "denom", "--matrix", mtx([[-1, 0], [0, -1]]), "--height", "3", "--mode", "factored")
    assert code == 2 and "orthogonal" in err


def test_compare(capsys, mtx):
    for rows in ([[2, -1], [-1, -2]], [[-2, -3], [-3, -4]]):
        code, payload = run_json(capsys, "compare", "--matrix", mtx(rows), "--height", "6")
        assert code == 0 and payload["compared"] > 0


def test_moonshine_product(capsys):
    code, out, _ = run(capsys, "moonshine", "--order", "8", "--verify-product")
    assert code == 0
    assert "90/90 coefficients match" in out


def test_moonshine_all_checks_json(capsys):
    code, payload = run_json(capsys, "moonshine", "--order", "6", "--verify-product", "--verify-dims",
                             "--verify-kang")
    assert code == 0
    assert payload["product"]["ok"] and payload["dims"]["ok"] and payload["kang"]["ok"]


def test_moonshine_tamper_fails(capsys):
    code, payload = run_json(capsys, "moonshine", "--order", "6", "--verify-product", "--tamper", "2:+1")
    assert code == 1
    assert payload["product"]["mismatches"]


def test_emit_coeffs(capsys, tmp_path):
    path = tmp_path / "c.txt"
    code, _, _ = run(capsys, "moonshine", "--order", "3", "--emit-coeffs", str(path))
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "-1\t1" and lines[2] == "1\t196884"
    assert all(line.split("\t")[1].lstrip("-").isdigit() for line in lines)


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["validate"],
    ["denom", "--matrix", "x", "--height", "3", "--mode", "wrong"],
    ["witt", "--gens", "x", "--height", "0"],
    ["validate", "--matrix", "/nonexistent/m.mtx"],
    ["moonshine", "--order", "2", "--tamper", "oops"],
    ["moonshine", "--order", "2", "--tamper", "90:1"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert cli.run(argv) == 2


def test_malformed_matrix_exit_2(capsys, tmp_path):
    p = tmp_path / "bad.mtx"
    p.write_text('{"kind": "dense", "labels": ["1"], "entries": [["x"]]}')
    assert cli.run(["classify", "--matrix", str(p)]) == 2


def test_internal_failure_exit_3(capsys, monkeypatch):
    def boom(*a, **k):
        raise AssertionError("simulated")
    monkeypatch.setattr(cli.moonshine, "verify_monster_product", boom)
    assert cli.run(["moonshine", "--order", "2", "--verify-product"]) == 3


def test_output_is_deterministic(capsys, mtx):
    path = mtx([[2, -1], [-1, -2]])
    for argv in (["oracle", "--matrix", path, "--height", "5", "--split", "--json"],
                 ["moonshine", "--order", "5", "--verify-product", "--verify-kang", "--json"]):
        first = run(capsys, *argv)
        second = run(capsys, *argv)
        assert first[:2] == second[:2]


def test_threads_do_not_change_results(capsys, tmp_path):
    gens = tmp_path / "g.tsv"
    gens.write_text("1,0\t2\n0,1\t3\n1,1\t1\n")
    outs = [run(capsys, "witt", "--gens", str(gens), "--height", "12", "--threads", k)[1] for k in ("1", "4")]
    assert outs[0] == outs[1]


def test_progress_goes_to_stderr(capsys):
    code, out, err = run(capsys, "moonshine", "--order", "3", "--verify-product", "-v")
    assert code == 0
    assert "product identity" in err and "product identity" not in out
