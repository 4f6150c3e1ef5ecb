import json
import re

import pytest

from qcert.cli import main, p_binomial_rows


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def strip_ms(text):
    return re.sub(r'"ms": [0-9.e+-]+', '"ms": 0', text)


def test_compute_examples(capsys):
    assert run_cli(capsys, "compute", "qbin", "--n", "4", "--k", "2")[:2] == (0, "1 + q + 2*q^2 + q^3 + q^4\n")
    assert run_cli(capsys, "compute", "qcatalan", "--n", "2")[:2] == (0, "1 + q^2\n")
    assert run_cli(capsys, "compute", "cyclotomic", "--n", "6")[:2] == (0, "1 - q + q^2\n")


def test_compute_other_objects(capsys):
    assert run_cli(capsys, "compute", "qfib", "--n", "4")[1] == "1 + q + q^2\n"
    assert run_cli(capsys, "compute", "rr", "--n", "0")[1] == "1\n"
    assert run_cli(capsys, "compute", "gk-lhs", "--n", "2")[1] == "-1\n"
    assert run_cli(capsys, "compute", "dual-lhs", "--n", "2")[1] == "1 + 2*q\n"
    assert run_cli(capsys, "compute", "s-sum", "--n", "2", "--d", "0")[1] == "1 + q + q^2\n"
    assert run_cli(capsys, "compute", "t-sum", "--n", "2", "--d", "0")[1] == "1 + q + q^2\n"


def test_compute_json(capsys):
    code, out, _ = run_cli(capsys, "compute", "cyclotomic", "--n", "6", "--format", "json")
    obj = json.loads(out)
    assert code == 0
    assert obj["object"] == "cyclotomic" and obj["params"] == {"n": 6}
    assert obj["value"] == {"min_exp": 0, "coeffs": ["1", "-1", "1"]}


@pytest.mark.parametrize("argv", [
    ["compute", "qbin", "--n", "4"],
    ["compute", "cyclotomic", "--n", "0"],
    ["compute", "rr", "--n", "3", "--a", "2"],
    ["compute", "t-sum", "--n", "1", "--d", "3"],
    ["compute", "nonsense"],
    ["verify", "--suite", "qc1", "--n-max", "0"],
    ["verify", "--suite", "qc1", "--tolerance", "0"],
    ["verify", "--suite", "qc1", "--jobs", "0"],
    ["table", "p-binomial", "--p-max", "1"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run_cli(capsys, *argv)
    assert code == 2 and err.strip()


def test_t_sum_printed_reading_non_integral(capsys):
    code, _, err = run_cli(capsys, "compute", "t-sum", "--n", "3", "--d", "-1")
    assert code == 1 and "qcert compute" in err
    code, out, _ = run_cli(capsys, "compute", "t-sum", "--n", "3", "--d", "-1", "--reading", "abs-lead")
    s_code, s_out, _ = run_cli(capsys, "compute", "s-sum", "--n", "3", "--d", "-1")
    assert code == 0 and out == s_out


def test_verify_qid2(capsys, tmp_path):
    path = tmp_path / "r.jsonl"
    code, out, _ = run_cli(capsys, "verify", "--suite", "qid2", "--n-max", "50", "--output", str(path))
    assert code == 0
    rows = [json.loads(line) for line in path.read_text().splitlines()]
    qid2 = [r for r in rows if r["claim"] == "qid2"]
    assert len(qid2) == 51 and all(r["holds"] for r in rows)
    assert re.search(r"^qid2\s+51\s+0\s", out, re.M)


def test_verify_exit_1_on_failure(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "wz-recurrence", "--n-max", "2")
    assert code == 1
    assert "wz-recurrence" in out


def test_verify_rows_sorted_and_deterministic(capsys, tmp_path):
    paths = []
    for jobs in ("1", "1", "2"):
        path = tmp_path / f"r{len(paths)}.jsonl"
        code, _, _ = run_cli(capsys, "verify", "--suite", "c5", "--n-max", "25", "--jobs", jobs,
                             "--output", str(path))
        assert code == 0
        paths.append(path)
    texts = [strip_ms(p.read_text()) for p in paths]
    assert texts[0] == texts[1] == texts[2]
    rows = [json.loads(line) for line in texts[0].splitlines()]
    keys = [(r["claim"], r["n"], sorted(r["params"].items())) for r in rows]
    assert keys == sorted(keys)


def test_verify_jobs_env(capsys, monkeypatch):
    monkeypatch.setenv("QCERT_JOBS", "2")
    code, _, _ = run_cli(capsys, "verify", "--suite", "qid2", "--n-max", "10")
    assert code == 0


def test_table_p_binomial(capsys):
    code, out, _ = run_cli(capsys, "table", "p-binomial", "--p-max", "5", "--a-max", "1")
    assert code == 0
    assert re.search(r"\b5\s+1\s+5\s+0\s+99\s+4\b", out)
    row = next(r for r in p_binomial_rows(5, 1, 5) if r["p"] == 5 and r["d"] == 0)
    assert row["sum"] == 99 and row["sum mod p"] == 4 and row["holds"]


def test_table_p_catalan_json(capsys):
    code, out, _ = run_cli(capsys, "table", "p-catalan", "--p-max", "7", "--a-max", "2", "--format", "json")
    rows = json.loads(out)
    assert code == 0
    assert sorted({(r["p"], r["a"]) for r in rows}) == [(p, a) for p in (2, 3, 5, 7) for a in (1, 2)]
    assert all(r["holds"] for r in rows)
