import csv
import io
import json
import subprocess
import sys

import pytest

from partineq.cli import RunConfig, main, oracle_check, run
from partineq.errors import ResourceError
from partineq.partitions import allowed_parts, count_any_parts
from partineq.qseries import Kind
from reference_tables import P15_AT_20, P25_AT_20


def invoke(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_expand_markdown_reproduces_table1(capsys):
    code, out, _ = invoke(capsys, "expand", "--M", "5", "--a", "1", "--b", "2", "--N", "20", "--format", "md")
    assert code == 0
    rows = [line for line in out.splitlines() if line.startswith("| ") and line[2].isdigit()]
    assert len(rows) == 20
    for line, p, q in zip(rows, P15_AT_20, P25_AT_20):
        m, first, second, value = (int(x) for x in line.strip("| ").split(" | "))
        assert (first, second, value) == (p, q, p - q)
    assert "| 5 | 4 | 3 | 1 |" in out


def test_expand_csv(capsys):
    code, out, _ = invoke(capsys, "expand", "--M", "5", "--a", "1", "--b", "2", "--N", "20", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["m", "n", "value"]
    assert [int(r["value"]) for r in rows] == [p - q for p, q in zip(P15_AT_20, P25_AT_20)]
    assert {r["n"] for r in rows} == {"20"}


def test_expand_all_columns_json(capsys):
    code, out, _ = invoke(capsys, "expand", "--M", "5", "--a", "1", "--N", "6", "--n", "all", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["query"]["b"] is None
    assert len(doc["rows"]) == sum(range(1, 7))
    assert all(isinstance(r["value"], str) for r in doc["rows"])


def test_expand_large_values_are_exact(capsys):
    code, out, _ = invoke(capsys, "expand", "--M", "5", "--a", "1", "--N", "600", "--n", "600", "--format", "json")
    assert code == 0
    values = [int(r["a_count"]) for r in json.loads(out)["rows"]]
    assert sum(values) == count_any_parts(600, allowed_parts(5, 1, 600)) > 2**40


def test_verify_pass_json(capsys):
    code, out, _ = invoke(capsys, "verify", "--M", "16", "--a", "3", "--b", "7", "--r", "12", "--N", "200", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "pass"
    assert "first_violation" not in doc
    assert doc["query"] == {"M": 16, "a": 3, "b": 7, "r": 12, "N": 200, "kind": "reciprocal"}
    assert doc["theorem_covered"] is False
    assert doc["bound_checked"] == 200


def test_verify_violation_exit_code(capsys):
    code, out, _ = invoke(capsys, "verify", "--M", "5", "--a", "1", "--b", "2", "--r", "2", "--N", "100", "--format", "json")
    assert code == 1
    assert json.loads(out)["first_violation"] == {"m": 1, "n": 2, "value": "-1"}


def test_verify_markdown_default(capsys):
    code, out, _ = invoke(capsys, "verify", "--M", "5", "--a", "1", "--b", "2", "--r", "0")
    assert code == 0
    assert "- status: pass" in out
    assert "N=200" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--M", "5", "--a", "1"],
        ["verify", "--M", "5", "--a", "2", "--b", "1", "--r", "0"],
        ["verify", "--M", "5", "--a", "1", "--b", "2", "--r", "7"],
        ["expand", "--M", "5", "--a", "1", "--N", "10", "--n", "11"],
        ["suite"],
        ["search", "--M-range", "9:5"],
        ["oracle", "--M", "5", "--a", "1", "--b", "2", "--N", "70"],
    ],
)
def test_validation_errors_exit_2(capsys, argv):
    code, out, err = invoke(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err.startswith("error:")


@pytest.mark.parametrize("argv", [["frobnicate"], ["verify", "--M", "five"], ["expand", "--format", "xml"]])
def test_malformed_flags_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_suite_exit_zero(capsys):
    code, out, _ = invoke(capsys, "suite", "--M-range", "5:9", "--N", "60", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["violations"] == 0
    assert doc["total"] == len(doc["reports"]) > 0


def test_search_markdown_groups_like_table2(capsys):
    code, out, _ = invoke(capsys, "search", "--M-range", "16:16", "--N", "300")
    assert code == 0
    assert "evidence up to N=300" in out
    assert "| 16 | 1 | 5 | 4 |" in out
    assert "|  | 1 | 7 | 3,4,6 |" in out
    assert "|  | 3 | 7 | 12,15 |" in out


def test_search_json_label(capsys):
    code, out, _ = invoke(capsys, "search", "--M", "12", "--N", "300", "--format", "json")
    doc = json.loads(out)
    assert doc["label"] == "evidence up to N=300"
    assert [(q["M"], q["a"], q["b"], q["r"]) for q in doc["quadruples"]] == [(12, 1, 5, 3), (12, 1, 5, 4)]
    assert "proved" not in out


def test_search_is_byte_identical_across_parallelism(capsys):
    args = ["search", "--M-range", "12:18", "--N", "200", "--format", "json"]
    _, serial, _ = invoke(capsys, *args)
    _, parallel, _ = invoke(capsys, *args, "--parallelism", "3")
    assert serial == parallel


def test_signs_markdown(capsys):
    code, out, _ = invoke(capsys, "signs", "--M", "8", "--a", "1", "--b", "3", "--N", "327")
    assert code == 0
    assert "pattern: +,+,+,−,+,−,−,+" in out
    assert "| 320 | 3 s^8 (s^2+5) |" in out
    assert "| 321 | s (249 s^10+3872 s^8+8355 s^6+3705 s^4+273 s^2+1) |" in out
    assert "| 326 | -s^4 (10 s^8+548 s^6+2154 s^4+1375 s^2+127) |" in out


def test_signs_json_rows_window(capsys):
    code, out, _ = invoke(capsys, "signs", "--M", "8", "--a", "1", "--b", "3", "--N", "330", "--rows", "321:321", "--format", "json")
    doc = json.loads(out)
    assert doc["polynomials"] == {"321": ["0", "1", "0", "273", "0", "3705", "0", "8355", "0", "3872", "0", "249"]}
    assert doc["pattern_consistent"] is True


def test_oracle_command(capsys):
    code, out, _ = invoke(capsys, "oracle", "--M", "8", "--a", "1", "--b", "3", "--kind", "distinct", "--N", "30")
    assert code == 0
    assert "status: pass" in out


def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = invoke(capsys, "verify", "--M", "5", "--a", "1", "--b", "2", "--r", "0", "--N", "50",
                          "--format", "json", "--output", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["status"] == "pass"


def test_unwritable_output(tmp_path, capsys):
    target = tmp_path / "missing" / "report.json"
    code, _, err = invoke(capsys, "verify", "--M", "5", "--a", "1", "--b", "2", "--r", "0", "--N", "20",
                          "--output", str(target))
    assert code == 2
    assert "cannot write" in err


def test_run_with_config_object():
    out, err = io.StringIO(), io.StringIO()
    cfg = RunConfig("verify", M=5, a=1, b=2, r=2, N=30, output_format="json")
    assert run(cfg, out, err) == 1
    assert json.loads(out.getvalue())["status"] == "violation"


def test_run_is_deterministic():
    outputs = []
    for _ in range(2):
        buf = io.StringIO()
        run(RunConfig("signs", M=8, a=1, b=3, N=120, output_format="json"), buf)
        outputs.append(buf.getvalue())
    assert outputs[0] == outputs[1]


@pytest.mark.parametrize(
    "M, a, b, kind, N",
    [(5, 1, 2, Kind.RECIPROCAL, 40), (8, 1, 3, Kind.DISTINCT, 40), (5, 1, 2, Kind.RECIPROCAL, 0)],
)
def test_oracle_check(M, a, b, kind, N):
    summary = oracle_check(M, a, b, kind, N)
    assert summary.passed
    expected = 2 * (N + 1) * (N + 2) // 2
    assert all(c.compared == expected for c in summary.checks)


def test_oracle_check_cap():
    with pytest.raises(ResourceError):
        oracle_check(5, 1, 2, Kind.RECIPROCAL, 61)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "partineq.cli", "verify", "--M", "5", "--a", "1", "--b", "2", "--r", "2",
         "--N", "20", "--format", "json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["first_violation"]["n"] == 2
