import json
from fractions import Fraction

import pytest
from click.testing import CliRunner

from binomcert._cli import cli
from binomcert._identities import ParamSet, VerificationReport


@pytest.fixture
def runner():
    return CliRunner()


def load_fixture(name):
    with open(f"tests/data/{name}") as fh:
        return json.load(fh)


def test_verify_text(runner):
    result = runner.invoke(cli, ["verify", "S3", "--m", "2", "--n", "1"])
    assert result.exit_code == 0
    assert result.output.splitlines() == ["S3 (m=2, n=1)", "lhs 3", "rhs 3", "equal"]


def test_verify_rational_alpha(runner):
    result = runner.invoke(cli, ["verify", "thm1", "--m", "3", "--n", "2", "--alpha", "1/2"])
    assert result.exit_code == 0
    assert "equal" in result.output


def test_verify_json_matches_fixture(runner):
    result = runner.invoke(cli, ["verify", "S3", "--m", "2", "--n", "1", "--json"])
    assert result.exit_code == 0
    record = json.loads(result.output)
    assert isinstance(record.pop("micros"), int)
    assert record == load_fixture("verify_s3.json")


def test_verify_timing_in_text(runner):
    result = runner.invoke(cli, ["verify", "thm3", "--m", "1", "--n", "1", "--x", "5/2", "--timing"])
    assert result.exit_code == 0
    assert result.output.splitlines()[-1].endswith(" µs")


@pytest.mark.parametrize(
    "args, message",
    [
        (["verify", "thm1", "--m", "1", "--n", "1", "--alpha=-1"], "alpha = -1 outside domain"),
        (["verify", "thm9", "--m", "1"], "unknown identity 'thm9'"),
        (["verify", "thm1", "--m", "1", "--n", "1"], "thm1 needs parameter(s) alpha"),
        (["verify", "thm1", "--m", "1", "--n", "1", "--alpha", "1/0"], "error:"),
    ],
)
def test_verify_errors_exit_2(runner, args, message):
    result = runner.invoke(cli, args)
    assert result.exit_code == 2
    assert message in result.output


def test_verify_unequal_exits_1(runner, mocker):
    report = VerificationReport("S3", ParamSet(m=1, n=1), Fraction(1), Fraction(2), False, 0.0)
    mocker.patch("binomcert._cli.eval_identity", return_value=report)
    result = runner.invoke(cli, ["verify", "S3", "--m", "1", "--n", "1"])
    assert result.exit_code == 1
    assert "NOT equal" in result.output


def test_sweep_json_summary(runner):
    result = runner.invoke(cli, ["sweep", "thm1", "--m", "0:3", "--n", "0:3", "--alpha", "1,2", "--json"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert len(lines) == 33
    assert json.loads(lines[-1]) == {"pass": 30, "fail": 0, "skip": 2, "error": 0}


def test_sweep_jobs_do_not_change_output(runner):
    args = ["sweep", "thm1", "S3", "--m", "1:4", "--n", "1:4", "--alpha", "2/3", "--json"]
    serial = runner.invoke(cli, args)
    parallel = runner.invoke(cli, [*args, "--jobs", "2"])
    assert serial.exit_code == parallel.exit_code == 0
    assert serial.output == parallel.output


def test_sweep_text_and_certificates(runner):
    result = runner.invoke(cli, ["sweep", "S3", "--m", "1:2", "--n", "1", "--alpha", "1", "--certificate", "routine", "--r", "0,1"])
    assert result.exit_code == 0
    assert result.output.rstrip().endswith("pass=4 fail=0 skip=0 error=0")
    assert "routine" in result.output


def test_sweep_needs_identities(runner):
    result = runner.invoke(cli, ["sweep"])
    assert result.exit_code == 2


def test_sweep_bad_range_exits_2(runner):
    result = runner.invoke(cli, ["sweep", "S3", "--m", "5:1"])
    assert result.exit_code == 2
    assert "empty range" in result.output


def test_sweep_failure_exits_1(runner, mocker):
    report = VerificationReport("S3", ParamSet(m=1, n=1), Fraction(1), Fraction(2), False, 0.0)
    mocker.patch("binomcert._sweep.eval_identity", return_value=report)
    result = runner.invoke(cli, ["sweep", "S3", "--m", "1", "--n", "1"])
    assert result.exit_code == 1
    assert "fail=1" in result.output


def test_series_revert(runner):
    result = runner.invoke(cli, ["series", "revert", "--alpha", "1", "--N", "4"])
    assert result.exit_code == 0
    assert result.output.splitlines() == ["1 1", "2 2", "3 5", "4 14"]


def test_series_pde(runner):
    result = runner.invoke(cli, ["series", "pde", "--alpha", "1", "--N", "8"])
    assert result.exit_code == 0
    assert result.output.strip() == "pass"


def test_series_routine(runner):
    result = runner.invoke(cli, ["series", "routine", "--alpha", "5/3", "--r", "2"])
    assert result.exit_code == 0
    assert result.output.strip() == "pass"


def test_series_gr_principal_part(runner):
    result = runner.invoke(cli, ["series", "Gr", "--alpha", "1", "--r", "2", "--N", "6"])
    assert result.exit_code == 0
    assert any(line.startswith("-1 -1 ") for line in result.output.splitlines())


def test_series_f_methods_agree(runner):
    direct = runner.invoke(cli, ["series", "F", "--alpha", "2", "--N", "4"])
    geometric = runner.invoke(cli, ["series", "F", "--alpha", "2", "--N", "4", "--method", "geometric"])
    assert direct.exit_code == geometric.exit_code == 0
    assert direct.output == geometric.output
    assert direct.output.splitlines()[:2] == ["0 0 0", "0 1 0"]


@pytest.mark.parametrize("args", [["series", "taylor"], ["series", "F", "--method", "wz"], ["series", "pde", "--alpha", "0"]])
def test_series_errors_exit_2(runner, args):
    result = runner.invoke(cli, args)
    assert result.exit_code == 2
    assert "error:" in result.output


def test_list_text(runner):
    result = runner.invoke(cli, ["list"])
    assert result.exit_code == 0
    assert "Corollary 4" in result.output
    assert "cor7" in result.output


def test_list_json(runner):
    result = runner.invoke(cli, ["list", "--json"])
    assert result.exit_code == 0
    rows = {row["id"]: row for row in json.loads(result.output)}
    assert rows["thm3"]["anchor"] == "Theorem 3"
    assert rows["cor7"]["title"] == "alias of cor6"
    assert rows["pqrsum"]["params"] == "p,q,m,n,r"
