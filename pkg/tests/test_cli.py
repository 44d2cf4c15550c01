import csv
import io
import json

import pytest

from g2zeta import cli
from g2zeta.integrals import target


def call(*argv):
    out = io.StringIO()
    code = cli.run(list(argv) + ["--quiet"] if argv and argv[0] in cli.COMMANDS else list(argv), stdout=out)
    return code, out.getvalue()


def test_verify_theorem_example():
    code, text = call("verify-theorem", "--p", "5", "--b", "1", "--c", "2")
    assert code == 0
    rep = json.loads(text)
    assert rep["passed"]
    row, = rep["results"]
    assert row["total"] == row["target"] == target(5).to_string()
    assert rep["config"]["p"] == 5 and rep["config"]["b"] == 1


def test_verify_conjecture_example():
    code, text = call("verify-conjecture", "--pmax", "29", "--pairs", "all")
    assert code == 0
    rep = json.loads(text)
    assert [r["prime"] for r in rep["results"]] == [5, 11, 17, 23, 29]
    for r in rep["results"]:
        assert r["distinct_counts"] == [r["prime"] ** 2 - 1]


def test_eval_case_example():
    code, text = call("eval-case", "--case", "+++-", "--p", "5", "--s", "1.2")
    assert code == 0
    row, = json.loads(text)["results"]
    assert row["closed_form_string"] == "0"
    assert row["value_re"] == 0 and row["value_im"] == 0


@pytest.mark.parametrize("argv", [
    ["verify-theorem", "--p", "5", "--b", "1", "--c", "2"],
    ["verify-conjecture", "--pmax", "11"],
    ["eval-case", "--case", "-+++", "--p", "5", "--s", "1.2"],
    ["eval-case", "--case", "++++", "--p", "5"],
    ["psi1", "--p", "5", "--k", "2"],
    ["count", "--p", "5", "--b", "1", "--c", "2", "--k", "2"],
    ["classify-orbit", "--quad", "1,0,1,2", "--p", "5", "--expect", "irreducibleCubic"],
    ["verify-identities", "--trials", "5"],
])
def test_injected_failure_exits_one(argv):
    assert call(*argv)[0] == 0
    assert call(*argv, "--inject-wrong-expected")[0] == 1


@pytest.mark.parametrize("argv", [
    ["no-such-command"],
    [],
    ["verify-theorem", "--p", "5", "--b", "1", "--c", "0"],
    ["verify-theorem", "--p", "7", "--b", "1", "--c", "2"],
    ["verify-theorem", "--p", "5", "--b", "1", "--c", "1"],
    ["eval-case", "--case", "++++", "--p", "5", "--s", "0.5"],
    ["eval-case", "--case", "+x++", "--p", "5"],
    ["eval-case", "--case", "---+", "--p", "5", "--b", "0", "--c", "2", "--explore"],
    ["classify-orbit", "--quad", "1,2,3", "--p", "5"],
    ["classify-orbit", "--quad", "1,0,1,2", "--p", "5", "--expect", "quartic"],
    ["verify-conjecture", "--pmin", "30", "--pmax", "20"],
    ["psi1", "--p", "5", "--b", "10"],
    ["count", "--p", "5", "--b", "1", "--c", "2", "--workers", "0"],
])
def test_bad_input_exits_two(argv):
    assert call(*argv)[0] == 2


def test_reruns_are_byte_identical():
    argv = ["verify-conjecture", "--pmin", "41", "--pmax", "53", "--pairs", "10", "--seed", "3"]
    a, b = call(*argv), call(*argv)
    assert a == b and a[0] == 0
    c = call(*argv[:-1], "4")
    assert c[1] != a[1]


def test_sampling_above_bound():
    code, text = call("verify-conjecture", "--pmin", "23", "--pmax", "47", "--sample-above", "29",
                      "--sample-size", "12", "--seed", "1")
    assert code == 0
    rows = json.loads(text)["results"]
    tested = {r["prime"]: r["pairs_tested"] for r in rows}
    assert tested[41] == tested[47] == 12
    assert tested[23] > 12


def test_csv_output():
    code, text = call("psi1", "--p", "5", "--k", "1", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == cli.CSV_COLUMNS["psi1"]
    assert len(rows) == 1 + 4
    assert {r[4] for r in rows[1:]} == {"6"}


def test_text_output():
    code, text = call("classify-orbit", "--quad", "1,0,0,5", "--p", "5", "--format", "text")
    assert code == 0
    assert "kind=repeatedRoot" in text and "degenerate=True" in text
    assert text.rstrip().endswith("PASS")


def test_count_methods_agree():
    counts = set()
    for method in ("fast", "brute", "hensel"):
        code, text = call("count", "--p", "5", "--b", "1", "--c", "2", "--k", "2", "--method", method)
        assert code == 0
        counts.add(json.loads(text)["results"][0]["count"])
    assert counts == {600}


def test_eval_all_cases_csv():
    code, text = call("eval-case", "--case", "all", "--p", "5", "--s", "1.5", "--depth", "3",
                      "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 16 and all(r["passed"] == "True" for r in rows)


def test_verify_identities_report():
    code, text = call("verify-identities", "--trials", "10", "--seed", "2")
    assert code == 0
    rows = json.loads(text)["results"]
    assert all(r["passed_count"] == 10 and r["failed_count"] == 0 for r in rows)


def test_timing_is_opt_in():
    _, text = call("psi1", "--p", "5")
    assert "elapsed_ms" not in json.loads(text)
    _, text = call("psi1", "--p", "5", "--timing")
    assert "elapsed_ms" in json.loads(text)


def test_worker_env_default(monkeypatch):
    monkeypatch.setenv(cli.WORKERS_ENV, "3")
    _, text = call("psi1", "--p", "5")
    assert json.loads(text)["config"]["workers"] == 3
