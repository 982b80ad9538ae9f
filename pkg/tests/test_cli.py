"""Command-line behavior: outputs, exit codes, determinism."""

import json

import pytest

from fatpoints.cli import main
from fatpoints.tables import golden_classification_csv


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestVdim:
    def test_table_row(self, capsys):
        code, out, _ = run(capsys, "vdim", "L(24,16,6^9)")
        assert code == 0
        assert "v: -1" in out and "e: -1" in out

    def test_json_mode(self, capsys):
        code, out, _ = run(capsys, "--json", "vdim", "L(14,0,6^5)")
        assert json.loads(out) == {"system": "L(14,0,6^5)", "v": 14, "e": 14}


class TestDim:
    def test_special(self, capsys):
        code, out, _ = run(capsys, "dim", "L(10,2,6^3)")
        assert code == 0
        assert "status: special_known" in out and "ell: 2" in out

    def test_trivial(self, capsys):
        code, out, _ = run(capsys, "--json", "dim", "L(0)")
        assert code == 0
        doc = json.loads(out)
        assert doc["status"] == "regular" and doc["ell"] == 0

    def test_unknown_exit_code(self, capsys):
        code, out, _ = run(capsys, "--budget", "0", "--json", "dim", "L(150,10,6^120)")
        assert code == 1
        assert json.loads(out)["status"] == "unknown"


class TestParseErrors:
    def test_caret(self, capsys):
        code, _, err = run(capsys, "vdim", "L(22,7,^12)")
        assert code == 2
        assert "position 7" in err
        lines = err.splitlines()
        assert lines[-1].index("^") == 7


class TestClassify:
    def test_witness_output(self, capsys):
        code, out, _ = run(capsys, "--json", "classify", "L(10,2,6^3)")
        doc = json.loads(out)
        assert doc["special"] and doc["ell"] == 2
        assert doc["witness"]["residual"] == "L(4,2,2^3)"

    def test_splittings_listing(self, capsys):
        code, out, _ = run(capsys, "--json", "classify", "L(14,0,6^5)", "--splittings")
        doc = json.loads(out)
        assert {"curve": "L(2,0,1^5)", "intersection": -2} in doc["splittings"]


class TestCremonaCommand:
    def test_single_move(self, capsys):
        code, out, _ = run(capsys, "--json", "cremona", "L(14,5,6^5)",
                           "--slots", "1", "2", "3")
        doc = json.loads(out)
        assert doc["result"] == "L(10,5,2^3,6^2)"

    def test_reduce(self, capsys):
        code, out, _ = run(capsys, "--json", "cremona", "L(10,8,6^2)")
        doc = json.loads(out)
        assert doc["final"].startswith("L(0,")
        assert all(m["move"] == "line" for m in doc["moves"])


class TestDegenCommand:
    def test_split(self, capsys):
        code, out, _ = run(capsys, "--json", "degen", "L(14,0,6^6)", "5", "3")
        doc = json.loads(out)
        assert doc["plane"] == "L(9,0,6^3)" and doc["ruled_kernel"] == "L(14,10,6^3)"


class TestOracleCommand:
    def test_report(self, capsys):
        code, out, _ = run(capsys, "oracle", "--system", "L(10,2,6^3)",
                           "--prime", "32003", "--seed", "42", "--trials", "3")
        doc = json.loads(out)
        assert doc["ell"] == 2 and doc["prime"] == 32003 and doc["seed"] == 42
        assert doc["certified_regular"] is False

    def test_deterministic(self, capsys):
        _, a, _ = run(capsys, "oracle", "L(12,4,6^4)", "--seed", "7")
        _, b, _ = run(capsys, "oracle", "L(12,4,6^4)", "--seed", "7")
        assert a == b

    def test_missing_system(self, capsys):
        code, _, err = run(capsys, "oracle")
        assert code == 2


class TestTableCommand:
    def test_generate_matches_golden(self, capsys):
        code, out, _ = run(capsys, "table", "generate", "--e-max", "4")
        assert code == 0
        assert out == golden_classification_csv()

    def test_verify_formula(self, capsys):
        code, out, _ = run(capsys, "table", "verify", "--mode", "formula",
                           "--e-max", "2", "--max-degree", "25")
        assert code == 0
        assert "all rows pass" in out


class TestCertificateFlow:
    def test_dump_and_check(self, capsys, tmp_path):
        path = tmp_path / "cert.json"
        code, _, _ = run(capsys, "dim", "L(14,0,6^6)", "--certificate", str(path))
        assert code == 0
        code, out, _ = run(capsys, "check-certificate", str(path))
        assert code == 0 and "certificate OK" in out

    def test_tampered(self, capsys, tmp_path):
        path = tmp_path / "cert.json"
        run(capsys, "dim", "L(14,0,6^6)", "--certificate", str(path))
        doc = json.loads(path.read_text())
        doc["ell"] = 3
        doc["status"] = "regular"
        path.write_text(json.dumps(doc))
        code, _, err = run(capsys, "check-certificate", str(path))
        assert code == 1 and "INVALID" in err
