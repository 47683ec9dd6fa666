import csv
import io
import json

import pytest

from cm_isolate.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestFieldValidate:
    def test_preset_zeta5(self, capsys):
        code, out, _ = run(capsys, "field", "validate", "--preset", "zeta5")
        assert code == 0
        assert "disc=125" in out.replace(" ", "")
        assert "flags=[]" in out.replace(" ", "")

    def test_no_prime_index_flag(self, capsys):
        code, out, _ = run(
            capsys, "field", "validate", "--d", "13", "--b", "2", "--c", "3"
        )
        assert code == 0
        assert "no prime index (3|c)" in out

    def test_invalid_field_exit_code(self, capsys):
        code, _, err = run(
            capsys, "field", "validate", "--d", "17", "--b", "4", "--c", "1"
        )
        assert code == 3
        assert "error" in err

    def test_missing_field_is_config_error(self, capsys):
        code, _, err = run(capsys, "field", "validate")
        assert code == 2

    def test_preset_and_explicit_conflict(self, capsys):
        code, _, err = run(
            capsys, "field", "validate", "--preset", "zeta5", "--d", "5", "--b", "2",
            "--c", "1"
        )
        assert code == 2


class TestReports:
    def test_search_json_schema(self, capsys):
        code, out, _ = run(
            capsys, "search", "--preset", "zeta5", "--bound", "60", "--format", "json"
        )
        assert code == 0
        doc = json.loads(out)
        assert set(doc) == {"field", "command", "params", "rows", "meta"}
        assert doc["field"] == {"d": 5, "b": 2, "c": 1}
        assert set(doc["meta"]) == {"version", "seed", "threads", "wall_ms"}
        assert doc["rows"][0]["Bound"] == 60

    def test_search_multiple_bounds_markdown(self, capsys):
        code, out, _ = run(
            capsys, "search", "--preset", "zeta5", "--bound", "40", "60"
        )
        assert code == 0
        assert "| Bound | Actual Number |" in out

    def test_json_matches_markdown_numbers(self, capsys):
        code, md, _ = run(
            capsys, "frequency", "--preset", "zeta5", "--l", "11", "--lo", "3",
            "--hi", "401"
        )
        code2, js, _ = run(
            capsys, "frequency", "--preset", "zeta5", "--l", "11", "--lo", "3",
            "--hi", "401", "--format", "json"
        )
        assert code == code2 == 0
        doc = json.loads(js)
        row = doc["rows"][0]
        assert row["Actual Frequency"] in md
        assert row["Predicted Frequency"] in md
        assert row["predicted_num"] == "64" and row["predicted_den"] == "121"

    def test_frequency_reference_row(self, capsys):
        code, out, _ = run(
            capsys, "frequency", "--preset", "zeta5", "--l", "31"
        )
        assert code == 0
        assert "0.815797" in out and "0.815816857" in out

    def test_csv_round_trip(self, capsys, tmp_path):
        path = tmp_path / "rows.csv"
        code, _, _ = run(
            capsys, "search", "--preset", "zeta5", "--bound", "40", "60",
            "--format", "csv", "--output", str(path)
        )
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(path.read_text())))
        assert [r["Bound"] for r in rows] == ["40", "60"]
        assert int(rows[1]["Actual Number"]) >= int(rows[0]["Actual Number"])

    def test_constant_value(self, capsys):
        code, out, _ = run(
            capsys, "constant", "--preset", "zeta5", "--z", "1000", "--restricted",
            "--format", "json"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["rows"][0]["C(z)"].startswith("2.288329174")

    def test_predict_with_actual(self, capsys):
        code, out, _ = run(
            capsys, "predict", "--preset", "zeta5", "--bound", "60", "--mode",
            "constant", "--z-max", "10000", "--with-actual"
        )
        assert code == 0
        assert "Discrepancy" in out and "Predicted Number" in out

    def test_find_and_exit_codes(self, capsys):
        code, out, _ = run(
            capsys, "find", "--preset", "zeta5", "--bits", "64",
            "--large-prime-bits", "20", "--seed", "5", "--format", "json"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["meta"]["seed"] == 5
        assert int(doc["rows"][0]["I_bits"]) >= 20

    def test_find_exhaustion_exit_code(self, capsys):
        code, _, err = run(
            capsys, "find", "--preset", "zeta5", "--bits", "80",
            "--large-prime-bits", "79", "--seed", "1", "--max-attempts", "2"
        )
        assert code == 4

    def test_find_flagged_field_exit_code(self, capsys):
        code, _, err = run(
            capsys, "find", "--d", "13", "--b", "2", "--c", "3", "--bits", "80",
            "--seed", "1"
        )
        assert code == 3

    def test_elliptic(self, capsys):
        code, out, _ = run(capsys, "elliptic", "--k", "4", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        row = doc["rows"][0]
        assert (row["B"], row["A"], row["p"], row["n"]) == ("11", "4", "137", "73")
        assert doc["field"] is None

    def test_threads_env(self, capsys, monkeypatch):
        monkeypatch.setenv("CM_ISOLATE_THREADS", "2")
        code, out, _ = run(
            capsys, "search", "--preset", "zeta5", "--bound", "40", "--format", "json"
        )
        assert code == 0
        assert json.loads(out)["meta"]["threads"] == 2

    def test_bad_threads_env(self, capsys, monkeypatch):
        monkeypatch.setenv("CM_ISOLATE_THREADS", "many")
        code, _, err = run(capsys, "search", "--preset", "zeta5", "--bound", "40")
        assert code == 2


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
