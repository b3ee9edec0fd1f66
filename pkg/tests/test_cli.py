import json
import math

import numpy as np
import pytest

from varhardy.cli import main


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


class TestBasicCommands:
    def test_norm_constant(self, capsys):
        code, report = run(capsys, ["norm", "--exponent", "constant:2",
                                    "--function", "constant:1", "--no-timestamp"])
        assert code == 0
        assert report["command"] == "norm"
        assert report["results"]["value"] == pytest.approx(
            math.sqrt(2 * math.pi), abs=1e-10)
        assert report["config"]["exponent"] == "constant:2"
        assert "generated_at" not in report

    def test_timestamp_present_by_default(self, capsys):
        code, report = run(capsys, ["norm", "--exponent", "constant:2",
                                    "--function", "constant:1"])
        assert code == 0
        assert "generated_at" in report

    def test_modular(self, capsys):
        code, report = run(capsys, ["modular", "--exponent", "constant:2",
                                    "--function", "constant:2", "--no-timestamp"])
        assert code == 0
        assert report["results"]["value"] == pytest.approx(8 * math.pi, rel=1e-12)

    def test_exponent_diag_reserved_name(self, capsys):
        code, report = run(capsys, ["exponent-diag", "--exponent", "paper-sec3",
                                    "--no-timestamp"])
        assert code == 0
        res = report["results"]
        assert res["p_min"] == 2.0 and res["p_max"] == 3.0
        assert 0.0 < res["c_log_estimate"] < 1.0

    def test_hardy_disk(self, capsys):
        code, report = run(capsys, [
            "hardy-disk", "--exponent", "constant:2", "--sampler", "power:+1:0.6",
            "--n", "4096", "--radius-depth", "10", "--no-timestamp"])
        assert code == 0
        assert report["results"]["verdict"] == "non-member"

    def test_kernel_scaling(self, capsys):
        code, report = run(capsys, [
            "kernel-scaling", "--exponent", "constant:2", "--theta", "0.0",
            "--k-range", "3,4,5,6,7", "--n", "2048", "--no-timestamp"])
        assert code == 0
        assert report["results"]["fitted_slope"] == pytest.approx(-0.5, abs=0.07)

    def test_forelli_rudin(self, capsys):
        code, report = run(capsys, ["forelli-rudin", "--s", "2", "--rho-depth",
                                    "8", "--no-timestamp"])
        assert code == 0
        assert report["results"]["theoretical_slope"] == -1.0

    def test_phi_check(self, capsys):
        code, report = run(capsys, [
            "phi-check", "--exponent", "paper-sec3", "--z-abs", "0.9",
            "--r", "0.75", "--theta", "0.0", "--n", "1024", "--no-timestamp"])
        assert code == 0
        assert report["results"]["max_ratio"] >= 1.0

    def test_szego(self, capsys):
        code, report = run(capsys, ["szego", "--trials", "25", "--n", "128",
                                    "--no-timestamp"])
        assert code == 0
        assert report["results"]["max_ratio"] < 10.0

    def test_halfplane_hardy_flags_nonmember(self, capsys):
        code, report = run(capsys, [
            "halfplane-hardy", "--exponent", "lh-demo", "--sampler", "constant:1",
            "--no-timestamp"])
        assert code == 0
        assert report["results"]["verdict"] == "non-member"
        assert "norm-infinite" in report["flags"]

    def test_approx_identity(self, capsys):
        code, report = run(capsys, [
            "approx-identity", "--exponent", "lh-demo", "--function",
            "gaussian:2", "--y-depth", "4", "--no-timestamp"])
        assert code == 0
        deficits = report["results"]["deficits"]
        assert deficits == sorted(deficits, reverse=True)

    def test_hk_bound(self, capsys):
        code, report = run(capsys, [
            "hk-bound", "--exponent", "lh-demo", "--sampler", "inverse-pole",
            "--k", "1.0", "--probes", "0,1.5;1,2", "--no-timestamp"])
        assert code == 0
        assert report["results"]["all_hold"] is True

    def test_sec3_small(self, capsys):
        code, report = run(capsys, ["sec3", "--q", "2.5", "--eps", "0.05",
                                    "--n", "2048", "--radius-depth", "8",
                                    "--no-timestamp"])
        assert code == 0
        assert report["results"]["g_variable"]["verdict"] == "non-member"

    def test_acceptance_single_criterion(self, capsys):
        code = main(["acceptance", "--criteria", "3", "--no-timestamp",
                     "--output", "/dev/null"])
        err = capsys.readouterr().err
        assert code == 0
        assert "criterion 3" in err and "PASS" in err


class TestErrors:
    def test_missing_required_flag(self, capsys):
        assert main(["norm", "--function", "constant:1"]) == 2

    def test_unknown_family(self, capsys):
        assert main(["norm", "--exponent", "constant:2",
                     "--function", "nosuch:1"]) == 2

    def test_unknown_exponent_name(self, capsys):
        assert main(["exponent-diag", "--exponent", "mystery"]) == 2

    def test_bad_precondition(self, capsys):
        assert main(["sec3", "--q", "2.5", "--eps", "0.3"]) == 2

    def test_unknown_config_key(self, tmp_path, capsys):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"exponent": "constant:2", "bogus": 1}))
        assert main(["norm", "--config", str(cfg),
                     "--function", "constant:1"]) == 2

    def test_config_must_be_object(self, tmp_path, capsys):
        cfg = tmp_path / "c.json"
        cfg.write_text("[1, 2]")
        assert main(["norm", "--config", str(cfg), "--exponent", "constant:2",
                     "--function", "constant:1"]) == 2


class TestConfigMerge:
    def test_file_supplies_values(self, tmp_path, capsys):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"exponent": "constant:2",
                                   "function": "constant:1", "n": 512}))
        code, report = run(capsys, ["norm", "--config", str(cfg),
                                    "--no-timestamp"])
        assert code == 0
        assert report["config"]["n"] == 512

    def test_flags_override_file(self, tmp_path, capsys):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"exponent": "constant:2",
                                   "function": "constant:1", "n": 512}))
        code, report = run(capsys, ["norm", "--config", str(cfg), "--n", "256",
                                    "--no-timestamp"])
        assert code == 0
        assert report["config"]["n"] == 256

    def test_list_valued_config_keys(self, tmp_path, capsys):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"exponent": "constant:2", "theta": 0.0,
                                   "k-range": [3, 4, 5], "n": 1024}))
        code, report = run(capsys, ["kernel-scaling", "--config", str(cfg),
                                    "--no-timestamp"])
        assert code == 0
        assert report["config"]["k_range"] == [3, 4, 5]

    def test_bad_config_value_exits_2(self, tmp_path, capsys):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"exponent": "constant:2", "theta": 0.0,
                                   "k-range": "three,four"}))
        assert main(["kernel-scaling", "--config", str(cfg)]) == 2

    def test_inline_exponent_definition(self, tmp_path, capsys):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({
            "exponent": {
                "domain": "circle",
                "pieces": [{"interval": [0.0, 2 * math.pi],
                            "kind": "constant", "params": [2.0]}],
            },
            "function": "constant:1",
        }))
        code, report = run(capsys, ["norm", "--config", str(cfg),
                                    "--no-timestamp"])
        assert code == 0
        assert report["results"]["value"] == pytest.approx(
            math.sqrt(2 * math.pi), abs=1e-10)
        assert report["config"]["exponent"]["domain"] == "circle"


class TestArtifacts:
    def test_output_csv_figures(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        csv_path = tmp_path / "rows.csv"
        figdir = tmp_path / "figs"
        code = main(["sec3", "--q", "2.5", "--eps", "0.05", "--n", "1024",
                     "--radius-depth", "6", "--no-timestamp",
                     "--output", str(out), "--csv", str(csv_path),
                     "--figures", str(figdir)])
        assert code == 0
        report = json.loads(out.read_text())
        assert report["results"]["q"] == 2.5
        lines = csv_path.read_text().strip().splitlines()
        assert lines[0] == "radius,f_norm,f_modular,g_norm,g_modular"
        assert len(lines) == 7
        assert (figdir / "sec3.png").stat().st_size > 0

    def test_reruns_byte_identical(self, tmp_path):
        argv = ["kernel-scaling", "--exponent", "constant:2", "--theta", "0",
                "--k-range", "3,4,5", "--n", "1024", "--no-timestamp"]
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert main(argv + ["--output", str(a)]) == 0
        assert main(argv + ["--output", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_csv_import_round_trip(self, tmp_path, capsys):
        from varhardy.boundary import CircleFunction

        f = CircleFunction(np.exp(1j * np.arange(64) * (2 * math.pi / 64)))
        path = tmp_path / "wave.csv"
        f.to_csv(path)
        code, report = run(capsys, ["norm", "--exponent", "constant:2",
                                    "--function", f"csv:{path}",
                                    "--no-timestamp"])
        assert code == 0
        assert report["results"]["value"] == pytest.approx(
            math.sqrt(2 * math.pi), rel=1e-10)
