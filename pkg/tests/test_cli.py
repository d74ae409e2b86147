"""Command-line interface: dispatch, outputs, exit codes."""

import csv
import json
import subprocess
import sys

import numpy as np
import pytest


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "srlattice", *args],
        capture_output=True, text=True, timeout=600,
    )


@pytest.fixture
def config_file(tmp_path):
    def write(**overrides):
        doc = {"omega_mhz": 10.0, "f": 1.0, "delta_mhz": 80.0,
               "phi": [0.0, 2 * np.pi / 3, 4 * np.pi / 3], "n_shells": 4}
        doc.update(overrides)
        p = tmp_path / "config.json"
        p.write_text(json.dumps(doc))
        return str(p)
    return write


class TestBasics:
    def test_version(self):
        r = run_cli("--version")
        assert r.returncode == 0
        assert "srlattice" in r.stdout

    def test_help_for_every_subcommand(self):
        for cmd in ("bands", "dirac", "chern", "eta", "spectrum",
                    "sweep-phase", "sweep-mod", "spectrum-vs-f"):
            r = run_cli(cmd, "--help")
            assert r.returncode == 0, cmd
            assert "usage" in r.stdout.lower()

    def test_unknown_subcommand_exits_2(self):
        assert run_cli("frobnicate").returncode == 2

    def test_unknown_flag_exits_2(self):
        assert run_cli("chern", "--method", "fhs", "--bogus").returncode == 2


class TestConfigHandling:
    def test_unknown_key_rejected(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text('{"coupling": 3}')
        r = run_cli("chern", "--method", "small-f", "--config", str(p))
        assert r.returncode == 2
        assert "unknown keys" in r.stderr

    def test_parse_error_reports_line(self, tmp_path):
        p = tmp_path / "broken.json"
        p.write_text('{\n  "omega_mhz": 10,,\n}')
        r = run_cli("chern", "--method", "small-f", "--config", str(p))
        assert r.returncode == 2
        assert "line 2" in r.stderr

    def test_defaults_fill_missing_keys(self, tmp_path):
        p = tmp_path / "partial.json"
        p.write_text('{"omega_mhz": 10.0}')
        r = run_cli("chern", "--method", "small-f", "--config", str(p))
        assert r.returncode == 0
        assert r.stdout.strip() == "+1"

    def test_degrees_flag(self):
        r = run_cli("chern", "--method", "small-f", "--phi", "0,120,240", "--degrees")
        assert r.stdout.strip() == "+1"


class TestChernCommand:
    def test_small_f_prints_sign(self):
        r = run_cli("chern", "--method", "small-f", "--phi", "0,2.0944,4.1888")
        assert r.returncode == 0
        assert r.stdout.strip() == "+1"

    def test_fhs_reports_reliability(self):
        r = run_cli("chern", "--method", "fhs", "--omega", "10", "--f", "1.0")
        assert r.returncode == 0
        assert r.stdout.strip() == "+1 reliable"

    def test_bessel(self):
        r = run_cli("chern", "--method", "bessel", "--f", "1.0")
        assert r.stdout.strip() == "+1"


class TestEtaCommand:
    def test_mirror_symmetric_zero(self, config_file):
        cfg = config_file(phi=[0.0, 1.3, 1.3], n_shells=6)
        r = run_cli("eta", "--config", cfg, "--delta-p", "0")
        assert r.returncode == 0
        assert r.stdout.strip() == "0.000000"


class TestDiracCommand:
    def test_satellite_count(self, tmp_path):
        out = tmp_path / "dirac.json"
        r = run_cli("dirac", "--omega", "25", "--f", "2.6", "--out", str(out))
        assert r.returncode == 0
        doc = json.loads(out.read_text())
        assert len(doc["points"]) == 8
        assert doc["unresolved"] == []
        for p in doc["points"]:
            assert set(p) == {"position", "frac", "chirality", "hz_sign",
                              "gap_mhz", "in_plane_residual_mhz"}


class TestFileOutputs:
    def test_bands_csv(self, tmp_path):
        out = tmp_path / "bands.csv"
        r = run_cli("bands", "--points", "12", "--out", str(out))
        assert r.returncode == 0
        with open(out) as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 3 * 12 + 1
        for row in rows:
            assert float(row["e_lower_mhz"]) <= float(row["e_upper_mhz"])
            assert -1.0 <= float(row["sz_lower"]) <= 1.0

    def test_spectrum_csv(self, tmp_path, config_file):
        out = tmp_path / "spectrum.csv"
        cfg = config_file(f=0.0)
        r = run_cli("spectrum", "--config", cfg, "--delta-min", "-40",
                    "--delta-max", "40", "--steps", "9", "--out", str(out))
        assert r.returncode == 0
        with open(out) as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 9
        assert all(float(row["absorption"]) >= -1e-9 for row in rows)

    def test_sweep_phase_json_and_csv(self, tmp_path, config_file):
        out = tmp_path / "sweep.json"
        out_csv = tmp_path / "sweep.csv"
        cfg = config_file(n_shells=3)
        r = run_cli("sweep-phase", "--config", cfg, "--grid", "4",
                    "--observables", "chern_analytic_sign,min_gap",
                    "--out", str(out), "--csv", str(out_csv))
        assert r.returncode == 0
        doc = json.loads(out.read_text())
        assert set(doc) == {"axis1", "axis2", "cells", "meta"}
        assert len(doc["cells"]) == 4 and len(doc["cells"][0]) == 4
        header = out_csv.read_text().splitlines()[0]
        assert header == "axis1_value,axis2_value,chern_fhs,chern_analytic_sign,min_gap_mhz,eta,reliable"

    def test_sweep_mod_json(self, tmp_path, config_file):
        out = tmp_path / "mod.json"
        cfg = config_file(n_shells=3)
        r = run_cli("sweep-mod", "--config", cfg, "--omega", "10,20",
                    "--f-min", "0.5", "--f-max", "1.5", "--f-steps", "2",
                    "--observables", "chern_analytic_sign", "--out", str(out))
        assert r.returncode == 0
        doc = json.loads(out.read_text())
        assert doc["axis1"]["values"] == [10.0, 20.0]
        assert len(doc["cells"]) == 2

    def test_spectrum_vs_f_json(self, tmp_path, config_file):
        out = tmp_path / "svf.json"
        cfg = config_file(n_shells=3)
        r = run_cli("spectrum-vs-f", "--config", cfg, "--f-min", "0",
                    "--f-max", "1", "--f-steps", "2", "--delta-min", "-30",
                    "--delta-max", "30", "--delta-steps", "5", "--out", str(out))
        assert r.returncode == 0
        doc = json.loads(out.read_text())
        assert len(doc["values"]) == 2
        assert len(doc["values"][0]) == 5


class TestErrorExits:
    def test_zero_decay_is_config_error(self, config_file):
        # singular (decay-free) system is rejected as configuration, exit 2
        cfg = config_file(gamma_b_mhz=0.0, gamma_a_mhz=0.0)
        r = run_cli("eta", "--config", cfg)
        assert r.returncode == 2

    def test_numerical_failure_exits_3(self, monkeypatch):
        from srlattice import cli
        from srlattice.errors import SolverError

        def boom(*a, **kw):
            raise SolverError("residual blew up")

        monkeypatch.setattr(cli, "steady_state", boom)
        assert cli.main(["eta", "--n-shells", "2"]) == 3
