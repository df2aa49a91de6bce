import json

import pytest

from qsmanin.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_text(capsys):
    code, out, _ = run_cli(capsys, "verify", "--m", "1", "--n", "1", "--k", "2",
                           "--suites", "tensor,relations")
    assert code == EXIT_OK
    assert "[PASS] tensor/swap_square" in out
    assert out.strip().splitlines()[-1].startswith("pass ")


def test_verify_json_and_output_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("QSMANIN_OUTPUT_DIR", str(tmp_path / "out"))
    code, out, _ = run_cli(capsys, "verify", "--k", "2", "--suites", "berezinian",
                           "--output", "json")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["summary"]["fail"] == 0
    assert report["config"]["suites"] == ["berezinian"]
    saved = json.loads((tmp_path / "out" / "report.json").read_text())
    assert saved["summary"] == report["summary"]


def test_verify_modular(capsys):
    code, out, _ = run_cli(capsys, "verify", "--m", "2", "--n", "1", "--k", "2",
                           "--backend", "modular", "--primes", "10007,10009,10037",
                           "--seed", "2", "--suites", "macmahon", "--output", "json")
    assert code == EXIT_OK
    assert json.loads(out)["config"]["primes"] == [10007, 10009, 10037]


@pytest.mark.parametrize("argv", [
    ["verify", "--m", "9", "--n", "9"],
    ["verify", "--suites", "bogus"],
    ["verify", "--suites", ","],
    ["verify", "--backend", "gpu"],
    ["verify", "--backend", "modular", "--primes", "2,3"],
    ["verify", "--primes", "x"],
    ["compute", "normal-form"],
    ["compute", "normal-form", "M[1,1]*"],
    ["compute", "normal-form", "M[5,1]"],
    ["compute", "qdet", "--m", "0", "--n", "2"],
    ["frobnicate"],
    [],
])
def test_usage_errors(capsys, argv):
    assert main(argv) == EXIT_USAGE


def test_parse_error_reports_position(capsys):
    code, _, err = run_cli(capsys, "compute", "normal-form", "M[1,1]*")
    assert code == EXIT_USAGE and "position" in err


def test_compute_normal_form(capsys):
    code, out, _ = run_cli(capsys, "compute", "normal-form", "M[2,1]*M[2,1]")
    assert code == EXIT_OK and out.strip() == "0"
    code, out, _ = run_cli(capsys, "compute", "normal-form", "M[2,1]*M[1,1]", "--output", "json")
    assert json.loads(out)["value"] == "q*M[1,1]*M[2,1]"


def test_compute_qdet_naive(capsys):
    code, out, _ = run_cli(capsys, "compute", "qdet", "--m", "2", "--n", "0", "--trunc", "2",
                           "--model", "naive")
    assert code == EXIT_OK
    assert out.strip() == "t^0: 1; t^1: M[1,1] + M[2,2]; t^2: M[1,1]*M[2,2] - 1/q*M[2,1]*M[1,2]"


def test_compute_ber_and_series(capsys):
    code, out, _ = run_cli(capsys, "compute", "ber", "--trunc", "1")
    assert code == EXIT_OK and out.startswith("t^0: K[1]*Kinv[2]")
    code, out, _ = run_cli(capsys, "compute", "series-coeff", "--series", "S", "--trunc", "1")
    assert code == EXIT_OK and out.splitlines()[1] == "t^1: M[1,1] - M[2,2]"


def test_compute_modular_backend(capsys):
    code, out, _ = run_cli(capsys, "compute", "normal-form", "q*M[1,1]", "--backend", "modular",
                           "--primes", "10007")
    assert code == EXIT_OK and out.strip().endswith("*M[1,1]")


def test_report_schema(capsys):
    code, out, _ = run_cli(capsys, "report-schema")
    assert code == EXIT_OK and json.loads(out)["version"] == "1"


def test_version(capsys):
    assert main(["--version"]) == EXIT_OK


def test_exit_fail_constant():
    assert (EXIT_OK, EXIT_FAIL, EXIT_USAGE) == (0, 1, 2)
