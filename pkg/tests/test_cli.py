import csv
import io
import json
import subprocess
import sys

from cycpsi.cli import main


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCoeff:
    def test_spec_example(self, capsys):
        code, out, _ = run_cli(
            ["coeff", "--p", "3", "--a", "2", "--n", "15", "--r", "1", "--l", "0"], capsys
        )
        assert code == 0
        assert "raw_sum = 2988" in out
        assert "exponent = 2" in out
        assert "normalized = 332" in out

    def test_trivial_row(self, capsys):
        code, out, _ = run_cli(
            ["coeff", "--p", "2", "--a", "1", "--n", "0", "--r", "0", "--l", "0"], capsys
        )
        assert code == 0
        assert "raw_sum = 1" in out

    def test_t_coeff_flag(self, capsys):
        code, out, _ = run_cli(
            ["coeff", "--p", "2", "--a", "1", "--n", "2", "--r", "0", "--l", "0", "--t-coeff"],
            capsys,
        )
        assert code == 0
        assert "t_coeff = 1" in out

    def test_non_prime_rejected(self, capsys):
        code, _, err = run_cli(
            ["coeff", "--p", "4", "--a", "1", "--n", "1", "--r", "0", "--l", "0"], capsys
        )
        assert code == 2
        assert "p must be prime" in err

    def test_negative_n_rejected(self, capsys):
        code, _, err = run_cli(
            ["coeff", "--p", "3", "--a", "1", "--n", "-2", "--r", "0", "--l", "0"], capsys
        )
        assert code == 2
        assert "n must be" in err

    def test_json_format(self, capsys):
        code, out, _ = run_cli(
            ["coeff", "--p", "3", "--a", "2", "--n", "15", "--r", "1", "--l", "0",
             "--format", "json"],
            capsys,
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["raw"] == "2988"
        assert doc["exponent"] == 2
        assert doc["normalized"] == "332"


class TestTable:
    def test_seven_rows(self, capsys):
        code, out, _ = run_cli(["table", "--p", "3", "--a", "1", "--n-max", "6"], capsys)
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 7
        assert rows[0]["p"] == "3"
        by_n = {row["n"]: row for row in rows}
        assert by_n["5"]["normalized"] == "-1"
        assert by_n["5"]["raw"] == "-9"
        assert by_n["5"]["normalized_mod_p"] == "2"

    def test_empty_range_is_header_only(self, capsys):
        code, out, _ = run_cli(
            ["table", "--p", "3", "--a", "1", "--n-min", "5", "--n-max", "4"], capsys
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines == ["p,a,n,r,l,raw,exponent,normalized,normalized_mod_p"]

    def test_json_matches_csv_values(self, capsys):
        argv = ["table", "--p", "3", "--a", "1", "--n-max", "6", "--r", "0,1", "--l", "0,1"]
        code, csv_out, _ = run_cli(argv + ["--format", "csv"], capsys)
        assert code == 0
        code, json_out, _ = run_cli(argv + ["--format", "json"], capsys)
        assert code == 0
        csv_rows = list(csv.DictReader(io.StringIO(csv_out)))
        json_rows = json.loads(json_out)
        assert len(csv_rows) == len(json_rows)
        for c, j in zip(csv_rows, json_rows):
            assert {k: str(v) for k, v in j.items()} == c

    def test_deterministic_bytes(self, capsys):
        argv = ["table", "--p", "5", "--a", "1", "--n-max", "10"]
        _, first, _ = run_cli(argv, capsys)
        _, second, _ = run_cli(argv, capsys)
        assert first == second


class TestVerify:
    def test_thm1_5_example(self, capsys):
        code, out, _ = run_cli(
            ["verify", "thm1.5", "--p", "3", "--a", "1", "--l", "0", "--m-max", "6"], capsys
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["verdict"] == "pass"
        assert doc["checked"] == 30
        assert doc["failures"] == []
        assert set(doc) == {"theorem", "checked", "failures", "elapsed_ms", "verdict"}

    def test_lem2_2_example(self, capsys):
        code, out, _ = run_cli(
            ["verify", "lem2.2", "--n-max", "20", "--m-max", "6", "--l-max", "3"], capsys
        )
        assert code == 0
        assert json.loads(out)["verdict"] == "pass"

    def test_self_test_exits_one(self, capsys):
        code, out, _ = run_cli(["verify", "self-test"], capsys)
        assert code == 1
        doc = json.loads(out)
        assert doc["verdict"] == "fail"
        assert doc["failures"]
        failure = doc["failures"][0]
        assert set(failure) == {"params", "expected", "actual"}

    def test_unknown_id(self, capsys):
        code, _, err = run_cli(["verify", "thm9.9"], capsys)
        assert code == 2
        assert "valid ids" in err
        assert "thm1.0" in err and "psi-identity" in err

    def test_workers_give_same_report(self, capsys):
        argv = ["verify", "thm1.2", "--p", "2,3", "--n-max", "10"]
        code1, out1, _ = run_cli(argv, capsys)
        code2, out2, _ = run_cli(argv + ["--workers", "2"], capsys)
        assert code1 == code2 == 0
        doc1, doc2 = json.loads(out1), json.loads(out2)
        doc1.pop("elapsed_ms")
        doc2.pop("elapsed_ms")
        assert doc1 == doc2

    def test_reports_identical_modulo_elapsed(self, capsys):
        argv = ["verify", "conj-perm", "--p", "3", "--n-max", "20"]
        _, out1, _ = run_cli(argv, capsys)
        _, out2, _ = run_cli(argv, capsys)
        doc1, doc2 = json.loads(out1), json.loads(out2)
        doc1.pop("elapsed_ms")
        doc2.pop("elapsed_ms")
        assert doc1 == doc2

    def test_csv_report_matches_json(self, capsys):
        argv = ["verify", "thm1.5", "--p", "3", "--a", "1", "--l", "0"]
        _, json_out, _ = run_cli(argv + ["--format", "json"], capsys)
        _, csv_out, _ = run_cli(argv + ["--format", "csv"], capsys)
        doc = json.loads(json_out)
        rows = list(csv.DictReader(io.StringIO(csv_out)))
        assert len(rows) == 1
        assert rows[0]["theorem"] == doc["theorem"]
        assert rows[0]["checked"] == str(doc["checked"])
        assert rows[0]["verdict"] == doc["verdict"]

    def test_plain_format(self, capsys):
        code, out, _ = run_cli(
            ["verify", "thm1.5", "--p", "3", "--a", "1", "--l", "0", "--format", "plain"],
            capsys,
        )
        assert code == 0
        assert "verdict : pass" in out

    def test_out_file(self, tmp_path, capsys):
        target = tmp_path / "report.json"
        code, out, _ = run_cli(
            ["verify", "thm1.5", "--p", "3", "--a", "1", "--l", "0", "--out", str(target)],
            capsys,
        )
        assert code == 0
        assert out == ""
        assert json.loads(target.read_text())["verdict"] == "pass"

    def test_unwritable_out(self, capsys):
        code, _, err = run_cli(
            ["verify", "thm1.5", "--p", "3", "--a", "1", "--l", "0",
             "--out", "/nonexistent-dir-xyz/report.json"],
            capsys,
        )
        assert code == 2
        assert "error" in err

    def test_out_dir_env(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("CYCPSI_OUT_DIR", str(tmp_path))
        code, _, _ = run_cli(
            ["verify", "thm1.5", "--p", "3", "--a", "1", "--l", "0", "--out", "r.json"],
            capsys,
        )
        assert code == 0
        assert (tmp_path / "r.json").exists()


class TestPsiCheck:
    def test_single_row(self, capsys):
        code, out, _ = run_cli(
            ["psi-check", "--p", "2", "--a", "1", "--n", "1", "--r", "0", "--l-max", "3"],
            capsys,
        )
        assert code == 0
        assert "match: yes" in out

    def test_constant_row(self, capsys):
        code, out, _ = run_cli(
            ["psi-check", "--p", "3", "--a", "2", "--n", "0", "--r", "0"], capsys
        )
        assert code == 0
        assert "match: yes" in out

    def test_grid_mode(self, capsys):
        code, out, _ = run_cli(
            ["psi-check", "--p", "3", "--a", "1", "--n-max", "20", "--format", "json"],
            capsys,
        )
        assert code == 0
        assert json.loads(out)["verdict"] == "pass"

    def test_json_single(self, capsys):
        code, out, _ = run_cli(
            ["psi-check", "--p", "2", "--a", "1", "--n", "1", "--r", "0", "--l-max", "2",
             "--format", "json"],
            capsys,
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["match"] is True
        assert doc["rows"][0] == {"l": 0, "psi": "-1", "expected": "-1"}

    def test_needs_row_or_grid(self, capsys):
        code, _, err = run_cli(["psi-check", "--p", "2", "--a", "1"], capsys)
        assert code == 2
        assert "--n" in err


class TestExplore:
    def test_rem1_2(self, capsys):
        code, out, _ = run_cli(
            ["explore", "rem1.2", "--p", "3", "--a", "1", "--n-max", "6", "--l-max", "1"],
            capsys,
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["theorem"] == "rem1.2"
        assert doc["verdict"] == "pass"
        assert "min_margin" in doc

    def test_unknown_target(self, capsys):
        code, _, err = run_cli(["explore", "rem9.9"], capsys)
        assert code == 2
        assert "rem1.2" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cycpsi.cli", "coeff", "--p", "2", "--a", "1",
         "--n", "4", "--r", "0", "--l", "0"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "normalized = 1" in proc.stdout
