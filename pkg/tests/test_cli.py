"""CLI subcommands, exit codes, and console entry point."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from harmonia.cli import main

IDENTITY_ARGS = ["--f", "linear", "--a", "1", "--b", "2", "--lambda", "0.5", "--mu", "0.5"]
SQUARE_INST = ["--f", "power:c=1,p=2", "--a", "1", "--b", "2",
               "--s", "1", "--m", "1", "--q", "2"]


class TestCheckConvexity:
    def test_holding_claim_exits_zero(self, capsys):
        rc = main([
            "check-convexity", "--f", "power:c=1,p=2",
            "--s", "1", "--m", "1", "--lo", "1", "--hi", "3",
        ])
        out = capsys.readouterr().out
        assert rc == 0
        assert "PASS" in out
        assert "worst defect" in out

    def test_failing_claim_exits_one_with_witness(self, capsys):
        rc = main([
            "check-convexity", "--f", "power:c=-1,p=1",
            "--s", "1", "--m", "1", "--lo", "1", "--hi", "2",
        ])
        out = capsys.readouterr().out
        assert rc == 1
        assert "FAIL" in out
        assert "x=" in out and "t=" in out

    def test_custom_grid(self, capsys):
        rc = main([
            "check-convexity", "--f", "linear",
            "--s", "0.5", "--m", "1", "--lo", "1", "--hi", "2",
            "--grid", "11,11,7",
        ])
        assert rc == 0
        assert "11x11x7" in capsys.readouterr().out

    def test_bad_grid_is_usage_error(self, capsys):
        rc = main([
            "check-convexity", "--f", "linear",
            "--s", "1", "--m", "1", "--lo", "1", "--hi", "2",
            "--grid", "11,11",
        ])
        assert rc == 2
        assert "error" in capsys.readouterr().err

    def test_bad_spec_is_usage_error(self, capsys):
        rc = main([
            "check-convexity", "--f", "warp:9",
            "--s", "1", "--m", "1", "--lo", "1", "--hi", "2",
        ])
        assert rc == 2


class TestVerifyIdentity:
    def test_corrected_identity_passes(self, capsys):
        rc = main(["verify-identity", *IDENTITY_ARGS])
        out = capsys.readouterr().out
        assert rc == 0
        assert "PASS" in out
        assert "kernel representation" in out

    def test_printed_variant_fails(self, capsys):
        rc = main(["verify-identity", *IDENTITY_ARGS, "--printed"])
        out = capsys.readouterr().out
        assert rc == 1
        assert "known erratum" in out

    def test_loose_tolerance_lets_printed_pass(self, capsys):
        rc = main(["verify-identity", *IDENTITY_ARGS, "--printed", "--tol", "10"])
        assert rc == 0

    def test_invalid_interval_is_usage_error(self, capsys):
        rc = main(["verify-identity", "--f", "linear", "--a", "2", "--b", "1",
                   "--lambda", "0.5", "--mu", "0.5"])
        assert rc == 2


class TestVerifyBounds:
    def test_preset_triple_passes(self, capsys):
        rc = main(["verify-bounds", "--theorem", "1", *SQUARE_INST,
                   "--preset", "trapezoid"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "margin" in out and "PASS" in out

    def test_explicit_triple_passes(self, capsys):
        rc = main(["verify-bounds", "--theorem", "2", *SQUARE_INST,
                   "--lambda", "0.75", "--mu", "0.25"])
        assert rc == 0

    def test_preset_and_triple_conflict(self, capsys):
        rc = main(["verify-bounds", "--theorem", "1", *SQUARE_INST,
                   "--preset", "simpson", "--lambda", "0.75", "--mu", "0.25"])
        assert rc == 2
        assert "not both" in capsys.readouterr().err

    def test_missing_triple(self, capsys):
        rc = main(["verify-bounds", "--theorem", "1", *SQUARE_INST])
        assert rc == 2

    def test_uncertified_hypothesis_rejected(self, capsys):
        # sqrt family: |f'|^q lies outside the class at s=1
        rc = main(["verify-bounds", "--theorem", "1",
                   "--f", "spower:b=1,s=0.5,c=0", "--a", "1", "--b", "2",
                   "--s", "1", "--m", "1", "--q", "1", "--preset", "midpoint"])
        assert rc == 2
        assert "error" in capsys.readouterr().err

    def test_closed_path_selectable(self, capsys):
        rc = main(["verify-bounds", "--theorem", "2", *SQUARE_INST,
                   "--preset", "simpson", "--path", "closed"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "path closed_form" in out


class TestCrosscheck:
    ARGS = ["--a", "1", "--b", "2", "--s", "0.5", "--m", "0.75", "--q", "2",
            "--lambda", "0.75", "--mu", "0.25"]

    def test_all_indices_pass_with_expected_errata(self, capsys):
        rc = main(["crosscheck", "--index", "all", *self.ARGS])
        out = capsys.readouterr().out
        assert rc == 0
        assert "erratum_suspected (expected)" in out
        assert "(UNEXPECTED)" not in out
        assert "PASS" in out
        for index in range(1, 13):
            assert f"B{index:<2}" in out

    def test_single_index(self, capsys):
        rc = main(["crosscheck", "--index", "1", *self.ARGS])
        out = capsys.readouterr().out
        assert rc == 0
        assert "B1" in out and "B2" not in out

    def test_q_one_skips_conjugate_moments(self, capsys):
        rc = main(["crosscheck", "--index", "all", "--a", "1", "--b", "2",
                   "--s", "0.5", "--m", "0.75", "--q", "1",
                   "--lambda", "0.75", "--mu", "0.25"])
        out = capsys.readouterr().out
        assert rc == 0
        assert out.count("skipped") == 2  # B7 and B10

    def test_explicit_conjugate_index_at_q_one_errors(self, capsys):
        rc = main(["crosscheck", "--index", "7", "--a", "1", "--b", "2",
                   "--s", "0.5", "--m", "0.75", "--q", "1",
                   "--lambda", "0.75", "--mu", "0.25"])
        assert rc == 2
        assert "conjugate" in capsys.readouterr().err

    @pytest.mark.parametrize("bad", ["0", "13", "B2", "first"])
    def test_bad_index_is_usage_error(self, bad, capsys):
        rc = main(["crosscheck", "--index", bad, *self.ARGS])
        assert rc == 2


class TestSweep:
    CONFIG = {
        "samples": 3,
        "rng_seed": 11,
        "families": ["power:c=1,p=2"],
        "q_values": [1.0, 2.0],
    }

    def write_config(self, tmp_path, data=None):
        path = tmp_path / "config.json"
        path.write_text(json.dumps(data or self.CONFIG), encoding="utf-8")
        return path

    def test_sweep_writes_report(self, tmp_path, capsys):
        cfg = self.write_config(tmp_path)
        out = tmp_path / "report.json"
        rc = main(["sweep", "--config", str(cfg), "--out", str(out),
                   "--format", "json"])
        stdout = capsys.readouterr().out
        assert rc == 0
        assert "PASS" in stdout
        doc = json.loads(out.read_text(encoding="utf-8"))
        assert doc["schema"] == "harmonia/v1"
        assert doc["summary"]["instances"] == 3

    def test_sweep_csv_reproducible(self, tmp_path, capsys):
        cfg = self.write_config(tmp_path)
        first = tmp_path / "a.csv"
        second = tmp_path / "b.csv"
        assert main(["sweep", "--config", str(cfg), "--out", str(first),
                     "--format", "csv"]) == 0
        assert main(["sweep", "--config", str(cfg), "--out", str(second),
                     "--format", "csv"]) == 0
        capsys.readouterr()
        assert first.read_bytes() == second.read_bytes()

    def test_seed_flag_overrides_config(self, tmp_path, capsys):
        cfg = self.write_config(tmp_path)
        base = tmp_path / "base.csv"
        reseeded = tmp_path / "reseeded.csv"
        assert main(["sweep", "--config", str(cfg), "--out", str(base),
                     "--format", "csv"]) == 0
        assert main(["sweep", "--config", str(cfg), "--out", str(reseeded),
                     "--format", "csv", "--seed", "77"]) == 0
        capsys.readouterr()
        assert base.read_bytes() != reseeded.read_bytes()

    def test_unknown_config_key_is_usage_error(self, tmp_path, capsys):
        cfg = self.write_config(tmp_path, {"samples": 2, "smaples": 3})
        rc = main(["sweep", "--config", str(cfg), "--out",
                   str(tmp_path / "r.csv"), "--format", "csv"])
        assert rc == 2
        assert "smaples" in capsys.readouterr().err

    def test_malformed_json_is_usage_error(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        rc = main(["sweep", "--config", str(path), "--out",
                   str(tmp_path / "r.csv"), "--format", "csv"])
        assert rc == 2

    def test_missing_config_is_usage_error(self, tmp_path, capsys):
        rc = main(["sweep", "--config", str(tmp_path / "absent.json"),
                   "--out", str(tmp_path / "r.csv"), "--format", "csv"])
        assert rc == 2


class TestArgparseBehavior:
    def test_missing_subcommand_is_usage_exit(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2

    def test_unknown_subcommand_is_usage_exit(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_bad_theorem_choice_is_usage_exit(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify-bounds", "--theorem", "3", *SQUARE_INST,
                  "--preset", "simpson"])
        assert exc.value.code == 2


class TestConsoleScript:
    def test_entry_point_runs(self):
        proc = subprocess.run(
            [sys.executable, "-m", "harmonia.cli", "verify-identity", *IDENTITY_ARGS],
            capture_output=True, text=True, timeout=120,
        )
        assert proc.returncode == 0
        assert "PASS" in proc.stdout

    def test_installed_script_help(self):
        proc = subprocess.run(
            ["harmonia", "--help"], capture_output=True, text=True, timeout=120,
        )
        assert proc.returncode == 0
        assert "check-convexity" in proc.stdout
        assert "sweep" in proc.stdout
