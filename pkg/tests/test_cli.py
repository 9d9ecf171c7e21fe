import json
import subprocess
import sys
from pathlib import Path

import pytest

from gmdcrt import cli
from gmdcrt.cli import InputError, jsonable, load_schema, parse_matrix

FIXTURES = Path(__file__).parent / "fixtures"
MANIFEST = json.loads((FIXTURES / "manifest.json").read_text())


def canon(text):
    return json.dumps(json.loads(text), sort_keys=True)


def invoke(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", __import__("io").StringIO(json.dumps(stdin)))
    code = cli.run(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", sorted(MANIFEST))
def test_golden_replay(name, capsys):
    code, out, err = invoke(capsys, [MANIFEST[name], str(FIXTURES / f"{name}.input.json")])
    assert code == 0, err
    assert out.endswith("\n")
    assert canon(out) == canon((FIXTURES / f"{name}.expected.json").read_text())


@pytest.mark.parametrize("name", sorted(MANIFEST))
def test_results_reparse_under_schema(name, capsys):
    # vectors and matrices in results use the same encoding as the inputs
    _, out, _ = invoke(capsys, [MANIFEST[name], str(FIXTURES / f"{name}.input.json")])
    doc = json.loads(out)
    if "lcrm" in doc:
        assert parse_matrix(doc["lcrm"]) == tuple(map(tuple, doc["lcrm"]))
    for v in doc.get("vectors", []):
        assert cli.parse_vector(v) == tuple(v)
    if "d_star" in doc:
        assert cli.parse_vector(doc["d_star"]) == tuple(doc["d_star"])


class TestExamples:
    def test_solve_pair(self, capsys, monkeypatch, ex4):
        doc = {"moduli": ex4["moduli"], "sets": ex4["sets"]}
        code, out, _ = invoke(capsys, ["solve-pair"], doc, monkeypatch)
        assert code == 0
        assert json.loads(out) == {"d_star": [2, 1], "vectors": [[10, 7], [8, 6]]}

    def test_lcrm_example1(self, capsys, monkeypatch):
        code, out, _ = invoke(capsys, ["lcrm"], {"moduli": [[[3, 0], [1, 3]], [[3, 1], [0, 3]]]}, monkeypatch)
        assert json.loads(out)["lcrm"] == [[9, 0], [0, 9]]

    def test_scalar_crt(self, capsys, monkeypatch):
        code, out, _ = invoke(capsys, ["crt"], {"moduli": [[[4]], [[6]]], "residues": [[3], [5]]}, monkeypatch)
        assert code == 0 and json.loads(out)["value"] == [11]

    def test_rem(self, capsys, monkeypatch):
        code, out, _ = invoke(capsys, ["rem"], {"modulus": [[3, 0], [1, 3]], "vectors": [[2, 4]]}, monkeypatch)
        assert json.loads(out)["results"] == [{"vector": [2, 4], "quotient": [0, 1], "remainder": [2, 1]}]

    def test_simulate(self, capsys, monkeypatch, ex4):
        doc = {"moduli": ex4["moduli"], "tones": [{"frequency": f} for f in ex4["vectors"]]}
        code, out, _ = invoke(capsys, ["simulate", "--prior"], doc, monkeypatch)
        assert code == 0 and json.loads(out)["vectors"] == [[8, 6], [10, 7]]

    def test_simulate_complex_amplitude(self, capsys, monkeypatch, ex4):
        tones = [{"frequency": [10, 7], "amplitude": [0, 1]}, {"frequency": [8, 6], "amplitude": 1}]
        code, out, _ = invoke(capsys, ["simulate", "--prior"], {"moduli": ex4["moduli"], "tones": tones}, monkeypatch)
        assert code == 0


class TestErrors:
    def test_schema_pointer(self, capsys, monkeypatch):
        code, _, err = invoke(capsys, ["lcrm"], {"moduli": [[[3, 0], [1, "x"]]]}, monkeypatch)
        assert code == 2
        assert json.loads(err)["pointer"] == "/moduli/0/1/1"

    def test_missing_field(self, capsys, monkeypatch):
        code, _, err = invoke(capsys, ["fpd"], {}, monkeypatch)
        assert code == 2 and json.loads(err)["error"] == "SchemaError"

    def test_ragged_matrix(self, capsys, monkeypatch):
        code, _, err = invoke(capsys, ["fpd"], {"modulus": [[1, 2], [3]]}, monkeypatch)
        assert code == 2
        assert json.loads(err)["pointer"] == "/modulus/1"

    def test_non_square(self, capsys, monkeypatch):
        code, _, err = invoke(capsys, ["fpd"], {"modulus": [[1, 2]]}, monkeypatch)
        assert code == 2 and json.loads(err)["pointer"] == "/modulus"

    def test_bad_json(self, capsys, monkeypatch):
        monkeypatch.setattr(sys, "stdin", __import__("io").StringIO("{nope"))
        assert cli.run(["lcrm"]) == 2
        capsys.readouterr()

    def test_missing_file(self, capsys, tmp_path):
        assert cli.run(["lcrm", str(tmp_path / "absent.json")]) == 2
        capsys.readouterr()

    def test_domain_errors(self, capsys, monkeypatch):
        code, _, err = invoke(capsys, ["crt"], {"moduli": [[[2]], [[4]]], "residues": [[1], [0]]}, monkeypatch)
        assert code == 1 and json.loads(err)["error"] == "NoSolution"
        code, _, err = invoke(capsys, ["fpd"], {"modulus": [[1, 2], [2, 4]]}, monkeypatch)
        assert code == 1 and json.loads(err)["error"] == "SingularMatrix"
        doc = {"moduli": [[[3, 0], [1, 3]]], "sets": [[[0, 0]]]}
        code, _, err = invoke(capsys, ["solve-pair"], doc, monkeypatch)
        assert code == 1 and json.loads(err)["error"] == "NoCommonDifference"

    def test_bound_rho_too_large(self, capsys, monkeypatch):
        code, _, err = invoke(capsys, ["bound"], {"gamma": 2, "rho": 3}, monkeypatch)
        assert code == 2 and json.loads(err)["pointer"] == "/rho"


class TestFormats:
    def test_parse_matrix(self):
        assert parse_matrix([[3, 0], [1, 3]]) == ((3, 0), (1, 3))
        assert parse_matrix([[1]]) == ((1,),)
        with pytest.raises(InputError):
            parse_matrix([[1, 2], [3]])
        with pytest.raises(InputError):
            parse_matrix([[True]])

    def test_big_integers_round_trip(self, capsys, monkeypatch):
        big = 3**40
        doc = {"modulus": [[str(big), 0], [0, 1]], "vectors": [[str(big * 2 + 5), 0]]}
        code, out, _ = invoke(capsys, ["rem"], doc, monkeypatch)
        res = json.loads(out)["results"][0]
        assert res["remainder"] == [5, 0]
        assert res["vector"][0] == str(big * 2 + 5)
        assert jsonable(2**53 - 1) == 2**53 - 1 and jsonable(-(2**53)) == str(-(2**53))

    def test_csv(self, capsys, monkeypatch):
        code, out, _ = invoke(capsys, ["fpd", "--csv"], {"modulus": [[3, 0], [1, 3]]}, monkeypatch)
        lines = out.strip().split("\n")
        assert lines[0] == "x1,x2" and len(lines) == 10

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "r.json"
        assert cli.run(["bound", str(FIXTURES / "bound_4_2.input.json"), "--out", str(target)]) == 0
        assert capsys.readouterr().out == ""
        assert target.read_text(encoding="utf-8") == '{"bound": 6}\n'

    def test_overrides_flag(self, capsys, monkeypatch, tmp_path, ex1):
        path = tmp_path / "ov.json"
        path.write_text(json.dumps({"overrides": ex1["overrides"]}))
        doc = {"moduli": ex1["moduli"], "sets": ex1["sets"]}
        code, out, _ = invoke(capsys, ["solve-multi", "--rho", "2", "--overrides", str(path)], doc, monkeypatch)
        assert code == 0 and json.loads(out)["vectors"] == [[1, 7], [2, 4]]
        path.write_text(json.dumps([{"subset": [0, 1], "lcrm": [[1, 2], [3]]}]))
        code, _, _ = invoke(capsys, ["neta", "--overrides", str(path)], {"moduli": ex1["moduli"]}, monkeypatch)
        assert code == 2

    def test_every_command_has_a_schema(self):
        for c in cli.COMMANDS:
            assert load_schema(c)["$schema"].endswith("2020-12/schema")


def test_console_script_entry():
    out = subprocess.run(
        [sys.executable, "-m", "gmdcrt.cli", "bound", str(FIXTURES / "bound_4_2.input.json")],
        capture_output=True, text=True,
    )
    assert out.returncode == 0 and json.loads(out.stdout) == {"bound": 6}
