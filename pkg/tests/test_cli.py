import json

import pandas as pd
import pytest

from quiver_hecke.cli import EXIT_PASS, EXIT_USAGE, build_parser, main


@pytest.fixture
def run(clean_env, tmp_path, capsys):
    clean_env.chdir(tmp_path)

    def call(*argv):
        code = main(list(argv) + ["--data-dir", str(tmp_path), "--workers", "1"])
        return code, capsys.readouterr().out

    return call


def test_parser_requires_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_mul(run):
    code, out = run("mul", "--type", "A2", "--beta", "1,1", "tau(1)*tau(1)*e(1,2)")
    assert code == EXIT_PASS
    assert "(x1 + x2) e(1,2)" in out


def test_mul_bad_expression(run):
    code, out = run("mul", "--type", "A2", "--beta", "1,1", "tau(3)*e(1,2)")
    assert code == EXIT_USAGE
    assert "position" in out


def test_mul_bad_beta(run):
    code, _ = run("mul", "--type", "A2", "--beta", "1,x", "e(1,2)")
    assert code == EXIT_USAGE


def test_lambda(run):
    code, out = run("lambda", "--type", "A2", "<1>", "<2>")
    assert code == EXIT_PASS
    data = json.loads(out)
    assert data["Lambda"] == "1"
    assert data["Lambda_tilde"] == "0"
    assert data["delta"] == "1"


def test_lambda_braider(run):
    code, out = run("lambda", "--type", "A2", "--i", "1", "--assoc", "lambda+", "C+", "<2>")
    assert code == EXIT_PASS
    assert json.loads(out)["Lambda"] == "0"


def test_lambda_unknown_spec(run):
    code, _ = run("lambda", "--type", "A2", "<1|7>", "<2>")
    assert code == EXIT_USAGE


def test_bad_field(run):
    code, _ = run("mul", "--type", "A2", "--field", "Fp:9", "--beta", "1,0", "e(1)")
    assert code == EXIT_USAGE


def test_verify_writes_reports(run, tmp_path):
    out, table = tmp_path / "bos.json", tmp_path / "bos.csv"
    code, _ = run("verify", "bos", "--type", "A2", "--i", "1", "--out", str(out),
                  "--csv", str(table))
    assert code == EXIT_PASS
    report = json.loads(out.read_text())
    assert report["schema"] == "klr-report/1"
    assert report["pass"] is True
    frame = pd.read_csv(table)
    assert list(frame["status"]) == ["pass"] * len(frame)


def test_verify_default_report_path(run, tmp_path):
    code, _ = run("verify", "bos", "--type", "A1")
    assert code == EXIT_PASS
    assert (tmp_path / "reports" / "A1-bos.json").exists()


def test_reflect_check_needs_index(run):
    code, _ = run("reflect-check", "--type", "A2")
    assert code == EXIT_USAGE


@pytest.mark.parametrize("suite", ["relations", "appendixB", "rmatrix", "lasw", "desw", "thJ",
                                   "diei", "bos", "gen2", "all", "jmap", "growth"])
def test_verify_accepts_suite_names(suite):
    args = build_parser().parse_args(["verify", suite, "--type", "A2", "--ht", "4"])
    assert args.suite == suite


def test_verify_help_shows_canonical_example():
    assert "klr verify thJ --type A2 --ht 4" in build_parser().epilog
