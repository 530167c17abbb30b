from __future__ import annotations

import json

import pandas as pd
import pytest
from click.testing import CliRunner

from bermancodes import __version__, cli as cli_module
from bermancodes.abelian import GroupSpec, odd_weight_zero_set, weight_zero_set
from bermancodes.cli import cli, run_command


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def _json(runner, args, **kwargs):
    result = runner.invoke(cli, args, catch_exceptions=False, **kwargs)
    assert result.exit_code == 0, result.output
    return json.loads(result.output)


def test_info_reports_parameter_table(runner):
    out = _json(runner, ["info", "--family", "dual", "--n", "3", "--r", "5", "--m", "7"])
    assert (out["length"], out["dimension"], out["dmin"]) == (2187, 1611, 9)
    assert out["rate"] == 0.736626
    assert out["rate_exact"] == "1611/2187"
    assert out["double_transitivity"] == {"product": 504, "bound": 2186, "passes": False}
    assert out["manifest"]["command"] == "info"
    assert out["manifest"]["version"] == __version__
    assert "timestamp" not in out["manifest"]


def test_info_for_berman_code(runner):
    out = _json(runner, ["info", "--family", "berman", "--n", "3", "--r", "5", "--m", "7"])
    assert (out["dimension"], out["dmin"], out["rate"]) == (576, 64, 0.263374)


def test_decode_corrects_single_flip(runner):
    out = _json(runner, ["decode", "--family", "berman", "--n", "3", "--r", "1", "--m", "2", "--word", "100000101"])
    assert out["codeword"] == "101000101"
    assert out["corrected_positions"] == [2]
    assert out["is_codeword"] is True


def test_encode_and_genmat(runner):
    gen = _json(runner, ["genmat", "--family", "berman", "--n", "3", "--r", "1", "--m", "2"])
    assert gen["generator"][0] == "110000110"
    assert (gen["rows"], gen["cols"]) == (4, 9)
    patterned = _json(runner, ["genmat", "--family", "dual", "--n", "3", "--r", "0", "--m", "2", "--basis", "patterned"])
    assert patterned["generator"] == ["111111111"]
    enc = _json(runner, ["encode", "--family", "berman", "--n", "3", "--r", "1", "--m", "2", "--word", "0100"])
    assert enc["codeword"] == "101000101"


def test_puncture(runner):
    out = _json(
        runner,
        ["puncture", "--family", "dual", "--n", "3", "--r", "1", "--m", "3", "--positions", "0", "--values", "2"],
    )
    assert out["punctured"] == "C_3(1,2)"
    assert out["matches"] is True
    assert out["cols"] == 9


def test_orbit(runner):
    out = _json(runner, ["orbit", "--n", "3", "--m", "3", "--tuple", "1,0,2"])
    assert (out["weight"], out["size"], out["lower_bound"]) == (2, 12, 12)
    abelian = _json(runner, ["orbit", "--n", "5", "--m", "2", "--tuple", "1,0", "--abelian"])
    assert (abelian["size"], abelian["lower_bound"]) == (8, 4)


def test_rate(runner):
    out = _json(runner, ["rate", "--n", "3", "--m", "7", "--r", "5", "--target", "0.7366", "--k", "2"])
    assert out["rate"] == 0.736626
    assert out["gaussian_approx"] == pytest.approx(0.6054, abs=5e-4)
    assert out["selection"]["r"] == 5
    assert out["rate_change"]["nonnegative"] and out["rate_change"]["within_bounds"]
    assert out["kappa"] == pytest.approx(0.5595, abs=1e-4)


def test_rate_needs_r_or_target():
    assert run_command(["rate", "--n", "3", "--m", "7"]) == 1


def test_dft_verify(runner):
    out = _json(runner, ["dft-verify", "--group", "3", "--r", "1", "--m", "2"])
    assert out["equivalent"] is True
    every = _json(runner, ["dft-verify", "--group", "3,3"])
    assert [x["r"] for x in every["results"]] == [0, 1]
    assert every["equivalent"] is True


def test_zeroset_check(runner, tmp_path):
    good = tmp_path / "odd.json"
    good.write_text(odd_weight_zero_set(GroupSpec((3,), 2)).to_json())
    out = _json(runner, ["zeroset-check", "--zero-set", str(good)])
    assert out["holds"] is True
    assert out["dimension"] == 9 - 4
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"group": [3], "m": 2, "zero_set": [[1, 0]]}))
    out = _json(runner, ["zeroset-check", "--zero-set", str(bad)])
    assert out["doubling_closed"] is False
    assert out["dimension"] is None


def test_simulate_is_deterministic_and_writes_manifest(runner, tmp_path):
    args = ["simulate", "--family", "dual", "--n", "3", "--r", "1", "--m", "2",
            "--epsilon-grid", "0,0.5,1", "--trials", "200", "--seed", "5"]
    first = runner.invoke(cli, args, catch_exceptions=False).output
    second = runner.invoke(cli, args + ["--threads", "3"], catch_exceptions=False).output
    assert first == second
    assert first.splitlines()[0] == "epsilon,h,Pb,PB,trials,seed"
    assert len(first.splitlines()) == 4

    out = tmp_path / "sweep.csv"
    result = runner.invoke(cli, args + ["--out", str(out)], catch_exceptions=False)
    assert result.output == ""
    assert out.read_text() == first
    manifest = json.loads((tmp_path / "sweep.csv.manifest.json").read_text())
    assert manifest["command"] == "simulate"
    assert manifest["seed"] == 5
    assert manifest["timestamp"]


def test_simulate_seed_from_environment(runner):
    args = ["simulate", "--family", "berman", "--n", "3", "--r", "1", "--m", "2", "--epsilon-grid", "0.5", "--trials", "100"]
    from_env = runner.invoke(cli, args, env={"BERMAN_SEED": "9"}, catch_exceptions=False).output
    explicit = runner.invoke(cli, args + ["--seed", "9"], catch_exceptions=False).output
    assert from_env == explicit
    assert from_env.splitlines()[1].endswith(",9")


def test_simulate_zero_set_and_run_log(runner, tmp_path):
    zs = tmp_path / "z.json"
    zs.write_text(weight_zero_set(GroupSpec((3,), 2), [2]).to_json())
    log = tmp_path / "runs.csv"
    args = ["simulate", "--zero-set", str(zs), "--epsilon-grid", "0.3", "--trials", "50", "--log", str(log)]
    runner.invoke(cli, args, catch_exceptions=False)
    runner.invoke(cli, args, catch_exceptions=False)
    runs = pd.read_csv(log)
    assert len(runs) == 2
    assert set(runs["command"]) == {"simulate"}


def test_simulate_needs_a_code():
    assert run_command(["simulate", "--n", "3"]) == 1


def test_out_writes_json_and_sidecar(runner, tmp_path):
    out = tmp_path / "nested" / "info.json"
    result = runner.invoke(cli, ["info", "--family", "dual", "--n", "3", "--r", "1", "--m", "2", "--out", str(out)])
    assert result.exit_code == 0 and result.output == ""
    assert json.loads(out.read_text())["dimension"] == 5
    assert (tmp_path / "nested" / "info.json.manifest.json").exists()


@pytest.mark.parametrize(
    "argv",
    [
        ["info", "--family", "dual", "--n", "3", "--r", "9", "--m", "2"],
        ["info", "--family", "dual", "--n", "1", "--r", "0", "--m", "2"],
        ["decode", "--family", "dual", "--n", "3", "--r", "1", "--m", "2", "--word", "1010"],
        ["puncture", "--family", "berman", "--n", "3", "--r", "0", "--m", "2", "--positions", "0", "--values", "1"],
        ["dft-verify", "--group", "4"],
        ["orbit", "--n", "3", "--m", "2", "--tuple", "0,0"],
        ["frobnicate"],
    ],
)
def test_validation_errors_exit_with_one(argv, capsys):
    assert run_command(argv) == 1
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err


def test_internal_failure_exits_with_two(monkeypatch, capsys):
    def boom(spec):
        raise RuntimeError("boom")

    monkeypatch.setattr(cli_module, "parameters", boom)
    assert run_command(["info", "--family", "dual", "--n", "3", "--r", "1", "--m", "2"]) == 2
    assert "boom" in capsys.readouterr().err


def test_success_and_version(capsys):
    assert run_command(["info", "--family", "dual", "--n", "3", "--r", "1", "--m", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["dmin"] == 3
    assert run_command(["--version"]) == 0
    assert __version__ in capsys.readouterr().out


def test_show_tables_do_not_change_exit_status(runner, tmp_path):
    info = runner.invoke(cli, ["info", "--family", "dual", "--n", "3", "--r", "1", "--m", "2", "--show"])
    assert info.exit_code == 0
    assert "dimension" in info.output
    sweep = runner.invoke(
        cli,
        ["simulate", "--family", "dual", "--n", "3", "--r", "1", "--m", "2", "--epsilon-grid", "0.5",
         "--trials", "20", "--show"],
    )
    assert sweep.exit_code == 0
    zs = tmp_path / "z.json"
    zs.write_text(odd_weight_zero_set(GroupSpec((3,), 2)).to_json())
    check = runner.invoke(cli, ["zeroset-check", "--zero-set", str(zs), "--show"])
    assert check.exit_code == 0
