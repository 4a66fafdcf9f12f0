"""
Tests for the logch command-line surface and its exit codes.
"""

import importlib.util
from pathlib import Path

import pytest

from src.timestepper import SeparationLossError
from src.verification import CheckResult

SCRIPT = Path(__file__).parent.parent / "scripts" / "logch.py"


@pytest.fixture(scope="module")
def logch():
    spec = importlib.util.spec_from_file_location("logch_cli", SCRIPT)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


@pytest.fixture
def tiny_config(tmp_path):
    path = tmp_path / "tiny.yaml"
    path.write_text(
        "grid: {n: 16}\n"
        "scheme: {kind: ETDRK2, dt: 1.0e-5}\n"
        "ic: {kind: single-mode, m: [1, 0], amplitude: 0.1}\n"
        "t_end: 2.0e-4\n"
        "record_every: 5\n"
        "snapshot_every: 10\n"
    )
    return path


class TestRun:
    def test_run_writes_outputs(self, logch, tiny_config, tmp_path, capsys):
        out = tmp_path / "out"
        assert logch.main(["run", "--config", str(tiny_config), "--out", str(out)]) == 0
        assert (out / "diagnostics.csv").exists()
        assert (out / "g_00000020.bin").exists()
        out = capsys.readouterr().out
        assert "Finished" in out
        assert "max K residual per step" in out

    def test_invalid_config_exit_code(self, logch, tmp_path, capsys):
        bad = tmp_path / "bad.yaml"
        bad.write_text("grid: {n: 33}\n")
        assert logch.main(["run", "--config", str(bad)]) == 1
        err = capsys.readouterr().err
        assert err.startswith("error code=1 kind=ConfigError message=")
        assert "grid.n" in err

    def test_missing_config_exit_code(self, logch, tmp_path, capsys):
        assert logch.main(["run", "--config", str(tmp_path / "missing.yaml")]) == 1
        assert "kind=ConfigError" in capsys.readouterr().err

    def test_numerical_failure_exit_code(self, logch, tiny_config, monkeypatch, capsys):
        def explode(config):
            raise SeparationLossError("non-finite values in g", 1e-5, 1)

        monkeypatch.setattr(logch, "run", explode)
        assert logch.main(["run", "--config", str(tiny_config)]) == 2
        err = capsys.readouterr().err
        assert err.startswith("error code=2 kind=SeparationLossError message=non-finite values in g")
        assert err.count("\n") == 1

    def test_unrepresentable_initial_state_exit_code(self, logch, tmp_path, capsys):
        path = tmp_path / "steep.yaml"
        path.write_text(
            "grid: {n: 16}\n"
            "ic: {kind: single-mode, m: [1, 0], amplitude: 20.0}\n"
            "t_end: 1.0e-4\n"
        )
        assert logch.main(["run", "--config", str(path), "--out", str(tmp_path / "out")]) == 2
        err = capsys.readouterr().err
        last = err.splitlines()[-1]
        assert last.startswith("error code=2 kind=SeparationLossError message=")
        assert "step=0" in last


class TestVerify:
    def test_all_passing(self, logch, monkeypatch, capsys):
        monkeypatch.setattr(logch, "run_suite", lambda config: [CheckResult("mass conservation", True, 1e-12, 1e-8)])
        assert logch.main(["verify"]) == 0
        assert "PASS" in capsys.readouterr().out

    def test_failure_exit_code(self, logch, monkeypatch, capsys):
        results = [
            CheckResult("mass conservation", True, 1e-12, 1e-8),
            CheckResult("determinism", False, 1.0, 0.0),
        ]
        monkeypatch.setattr(logch, "run_suite", lambda config: results)
        assert logch.main(["verify"]) == 3
        captured = capsys.readouterr()
        assert "FAIL" in captured.out
        assert captured.err.startswith("error code=3 kind=VerificationFailure message=determinism")


class TestConvergence:
    def test_linear_only_table(self, logch, tiny_config, capsys):
        code = logch.main(["convergence", "--config", str(tiny_config), "--dts", "4e-5,2e-5", "--linear-only"])
        assert code == 0
        out = capsys.readouterr().out
        assert "4.0000e-05" in out and "2.0000e-05" in out

    def test_non_nesting_dts(self, logch, tiny_config, capsys):
        assert logch.main(["convergence", "--config", str(tiny_config), "--dts", "4e-5,3e-5"]) == 1
        assert "kind=ConvergenceSetupError" in capsys.readouterr().err

    def test_malformed_dts(self, logch, tiny_config, capsys):
        assert logch.main(["convergence", "--config", str(tiny_config), "--dts", "a,b"]) == 1
        err = capsys.readouterr().err
        assert err.startswith("error code=1 kind=UsageError message=")
        assert "--dts" in err
        assert err.count("\n") == 1


class TestCompare:
    def test_compare_table(self, logch, tiny_config, capsys):
        assert logch.main(["compare", "--config", str(tiny_config), "--baseline", "truncated:50"]) == 0
        out = capsys.readouterr().out
        assert "truncated:50" in out
        assert "energy(g)" in out and "energy(base)" in out
        assert "g-formulation diagnostics" in out
        assert "|grad K|" in out

    def test_unknown_baseline(self, logch, tiny_config, capsys):
        assert logch.main(["compare", "--config", str(tiny_config), "--baseline", "quartic"]) == 1
        assert "kind=ValueError" in capsys.readouterr().err


class TestUsage:
    @pytest.mark.parametrize("argv", [
        ["run", "--seed", "abc"],
        ["compare", "--bogus"],
        ["convergence", "--dts", "1e-5,x"],
        ["frobnicate"],
        ["--log-level", "chatty", "verify"],
        [],
    ])
    def test_bad_arguments_exit_code(self, logch, argv, capsys):
        assert logch.main(argv) == 1
        err = capsys.readouterr().err
        assert err.startswith("error code=1 kind=UsageError message=")
        assert err.count("\n") == 1

    def test_help_still_exits_zero(self, logch, capsys):
        with pytest.raises(SystemExit) as info:
            logch.main(["--help"])
        assert info.value.code == 0
        assert "convergence" in capsys.readouterr().out
