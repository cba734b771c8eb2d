import json
import subprocess
import sys

import numpy as np
import pytest

from qrecon.cli import main
from qrecon.presets import preset_density
from qrecon.stateio import density_to_json, pure_to_json


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestAnalyze:
    def test_ghz_report(self, capsys):
        code, out, _ = run_cli(capsys, "analyze", "--preset", "ghz")
        assert code == 0
        payload = json.loads(out)
        assert abs(payload["theta"] - 3.0) <= 1e-12
        assert abs(payload["f_max"] - 1.0) <= 1e-12
        assert abs(payload["f_tele_dealer_reconstructor"] - 2 / 3) <= 1e-12
        assert payload["case_label"] == "case1"
        assert payload["qss_ok"] is True
        assert payload["setting"] == "ABC"

    def test_setting_flag(self, capsys):
        code_abc, out_abc, _ = run_cli(capsys, "analyze", "--preset", "wexample3")
        code_cba, out_cba, _ = run_cli(capsys, "analyze", "--preset", "wexample3", "--setting", "CBA")
        assert code_abc == code_cba == 0
        # reversing dealer and reconstructor transposes both matrices: theta unchanged
        assert json.loads(out_abc)["theta"] == pytest.approx(json.loads(out_cba)["theta"], abs=1e-12)
        assert json.loads(out_cba)["setting"] == "CBA"

    def test_epsilon_flag_relabels(self, capsys):
        _, strict, _ = run_cli(capsys, "analyze", "--preset", "gamma-mix")
        _, loose, _ = run_cli(capsys, "analyze", "--preset", "gamma-mix", "--epsilon", "1.0")
        assert json.loads(strict)["case_label"] == "case2"
        assert json.loads(loose)["case_label"] == "case4"

    def test_state_file_matches_preset(self, capsys, tmp_path):
        path = tmp_path / "state.json"
        path.write_text(json.dumps(density_to_json(preset_density("beta-mix"))))
        code, out, _ = run_cli(capsys, "analyze", "--state", str(path))
        assert code == 0
        _, preset_out, _ = run_cli(capsys, "analyze", "--preset", "beta-mix")
        assert json.loads(out) == json.loads(preset_out)

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run_cli(capsys, "analyze", "--preset", "w", "--out", str(target))
        assert code == 0 and out == ""
        assert abs(json.loads(target.read_text())["theta"] - 7 / 3) <= 1e-12

    def test_missing_file_exits_3(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "analyze", "--state", str(tmp_path / "absent.json"))
        assert code == 3 and "I/O" in err

    def test_malformed_json_exits_2(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{oops")
        code, _, err = run_cli(capsys, "analyze", "--state", str(path))
        assert code == 2 and err

    def test_invalid_state_exits_2(self, capsys, tmp_path):
        path = tmp_path / "unphysical.json"
        psi = np.zeros(8)
        psi[0] = 2.0
        path.write_text(json.dumps(pure_to_json(psi)))
        code, _, _ = run_cli(capsys, "analyze", "--state", str(path))
        assert code == 2

    def test_unknown_preset_exits_2(self, capsys):
        assert run_cli(capsys, "analyze", "--preset", "bogus")[0] == 2

    def test_requires_a_source(self, capsys):
        assert run_cli(capsys, "analyze")[0] == 2


class TestOracle:
    def test_ghz_mc_agrees_with_closed_form(self, capsys):
        code, out, _ = run_cli(capsys, "oracle", "--preset", "ghz", "--samples", "2000", "--seed", "42")
        assert code == 0
        payload = json.loads(out)
        assert list(payload) == ["closed_form", "f_max", "so3_gap", "mc_mean",
                                 "mc_std_error", "n_samples", "seed", "per_branch"]
        assert abs(payload["closed_form"] - payload["mc_mean"]) < 1e-6
        assert abs(payload["closed_form"] - 1.0) <= 1e-12
        assert payload["n_samples"] == 2000 and payload["seed"] == 42
        assert len(payload["per_branch"]) == 8

    def test_w_reports_both_routes(self, capsys):
        code, out, _ = run_cli(capsys, "oracle", "--preset", "w", "--samples", "3000")
        payload = json.loads(out)
        assert code == 0
        assert abs(payload["f_max"] - 8 / 9) <= 1e-10
        assert payload["so3_gap"] == pytest.approx(0.0, abs=1e-10)
        assert abs(payload["mc_mean"] - payload["closed_form"]) <= 4 * payload["mc_std_error"]

    def test_bad_samples_exits_2(self, capsys):
        assert run_cli(capsys, "oracle", "--preset", "ghz", "--samples", "0")[0] == 2


class TestScatter:
    def test_stdout_csv(self, capsys):
        code, out, _ = run_cli(capsys, "scatter", "--samples", "20", "--seed", "42")
        lines = out.splitlines()
        assert code == 0
        assert lines[0] == "lambda0,lambda1,lambda2,lambda3,f_tele,f_recon,region"
        assert len(lines) == 21

    def test_out_file_deterministic(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run_cli(capsys, "scatter", "--samples", "100", "--seed", "9", "--out", str(a))[0] == 0
        assert run_cli(capsys, "scatter", "--samples", "100", "--seed", "9", "--out", str(b))[0] == 0
        assert a.read_bytes() == b.read_bytes()

    def test_unwritable_out_exits_3(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "scatter", "--samples", "5", "--out", str(tmp_path))
        assert code == 3 and "I/O" in err


class TestClassical:
    def test_default_run(self, capsys):
        code, out, _ = run_cli(capsys, "classical", "--samples", "200000", "--seed", "7")
        assert code == 0
        payload = json.loads(out)
        assert list(payload) == ["honest_baseline", "guess_fidelity", "formula_value"]
        assert abs(payload["honest_baseline"] - 2 / 3) < 0.005
        assert payload["formula_value"] == pytest.approx(0.5, abs=1e-15)
        assert abs(payload["guess_fidelity"] - 0.5) < 0.005

    def test_negate_formula(self, capsys):
        code, out, _ = run_cli(capsys, "classical", "--p", "0.25", "--strategy", "negate",
                               "--samples", "100000")
        payload = json.loads(out)
        assert code == 0
        assert payload["formula_value"] == pytest.approx((2 - 0.25) / 3, abs=1e-15)
        assert abs(payload["guess_fidelity"] - payload["formula_value"]) < 0.01

    def test_invalid_p_exits_2(self, capsys):
        assert run_cli(capsys, "classical", "--p", "1.5")[0] == 2

    def test_invalid_strategy_exits_2(self, capsys):
        assert run_cli(capsys, "classical", "--strategy", "flip")[0] == 2


def test_no_arguments_exits_2(capsys):
    assert run_cli(capsys)[0] == 2


def test_installed_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qrecon.cli", "analyze", "--preset", "ghz"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["f_max"] == pytest.approx(1.0, abs=1e-12)
