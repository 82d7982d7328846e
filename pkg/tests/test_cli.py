"""Command line interface: exit codes, table outputs, override precedence."""

import json
import os
import subprocess
import sys

import numpy as np
import pytest

from fveuler.snapshots import read_snapshot_csv


def run_cli(*args, **kwargs):
    return subprocess.run([sys.executable, "-m", "fveuler.cli", *args],
                          capture_output=True, text=True, **kwargs)


def test_list_cases_names_everything():
    proc = run_cli("list-cases")
    assert proc.returncode == 0
    for name in ("uniform-low-mach", "cylinder", "blunt-body", "rmi", "khi",
                 "riemann2d"):
        assert name in proc.stdout


def test_run_clean_exit_and_outputs(tmp_path):
    out = tmp_path / "run"
    proc = run_cli("run", "--case", "riemann2d", "--ni", "32", "--nj", "2",
                   "--tend", "0.05", "--out", str(out))
    assert proc.returncode == 0, proc.stderr
    assert (out / "snap_riemann2d_0.050000.csv").exists()
    assert (out / "run_log.csv").exists()


def test_run_breakdown_exit_and_record(tmp_path):
    out = tmp_path / "boom"
    proc = run_cli("run", "--case", "riemann2d", "--ni", "32", "--nj", "2",
                   "--tend", "0.1", "--out", str(out),
                   "--param", "u_l=-2", "--param", "u_r=2",
                   "--param", "p_l=0.4", "--param", "p_r=0.4",
                   "--param", "rho_r=1")
    assert proc.returncode == 2
    assert "breakdown" in proc.stderr
    record = json.loads((out / "failure.json").read_text())
    assert record["cell"] is not None and record["reason"]


@pytest.mark.parametrize("args", [
    ("run",),                                        # neither case nor config
    ("run", "--case", "nope"),                       # unknown case
    ("run", "--case", "khi", "--solver", "hll"),     # unknown strategy
    ("run", "--case", "khi", "--cfl", "-1"),         # invalid value
    ("run", "--case", "khi", "--param", "broken"),   # malformed param
    ("run", "--badflag",),                           # usage error
    ("frobnicate",),                                 # unknown subcommand
])
def test_config_and_usage_errors_exit_64(args, tmp_path):
    proc = run_cli(*args, cwd=tmp_path)
    assert proc.returncode == 64, (proc.stdout, proc.stderr)
    assert not any(p.is_dir() for p in tmp_path.iterdir())


def test_config_file_then_flag_precedence(tmp_path):
    ini = tmp_path / "run.ini"
    ini.write_text("[case]\nname = riemann2d\nni = 32\nnj = 2\nt_end = 0.1\n")
    out = tmp_path / "out"
    proc = run_cli("run", "--config", str(ini), "--tend", "0.05",
                   "--out", str(out))
    assert proc.returncode == 0, proc.stderr
    assert (out / "snap_riemann2d_0.050000.csv").exists()
    assert not (out / "snap_riemann2d_0.100000.csv").exists()


def test_case_flag_must_match_config_file(tmp_path):
    ini = tmp_path / "run.ini"
    ini.write_text("[case]\nname = riemann2d\n")
    proc = run_cli("run", "--config", str(ini), "--case", "khi")
    assert proc.returncode == 64
    assert "contradicts" in proc.stderr


def test_stability_table_shape(tmp_path):
    path = tmp_path / "curves.csv"
    proc = run_cli("stability", "--samples", "32", "--out", str(path))
    assert proc.returncode == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "kind,method,re,im"
    methods = {line.split(",")[1] for line in lines[1:]}
    assert {"euler", "rk2", "rk3", "rk4", "ab1", "ab2", "ab3", "ab4",
            "ab5"} <= methods
    kinds = {line.split(",")[0] for line in lines[1:]}
    assert kinds == {"rk_boundary", "ab_root_locus"}


def test_spectrum_table(tmp_path):
    proc = run_cli("spectrum", "--n", "12", "--eps", "1.0")
    assert proc.returncode == 0
    lines = proc.stdout.splitlines()
    assert lines[0] == "re,im"
    assert len(lines) == 13
    pts = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
    # full upwinding puts the spectrum on a unit circle through the origin
    r = np.hypot(pts[:, 0] + 1.0, pts[:, 1])
    assert np.allclose(r, 1.0, atol=1e-12)


def test_maxcfl_reports_known_value():
    proc = run_cli("maxcfl", "--method", "ab2", "--eps", "1.0", "--n", "64")
    assert proc.returncode == 0
    lines = proc.stdout.splitlines()
    assert lines[0] == "method,eps,max_cfl"
    method, eps, value = lines[1].split(",")
    assert method == "ab2"
    assert float(value) == pytest.approx(0.5, abs=1e-4)


def test_maxcfl_unknown_method_exits_64():
    proc = run_cli("maxcfl", "--method", "bdf2")
    assert proc.returncode == 64


def test_run_determinism_across_processes(tmp_path):
    paths = []
    for tag in ("a", "b"):
        out = tmp_path / tag
        proc = run_cli("run", "--case", "uniform-low-mach", "--ni", "16",
                       "--nj", "8", "--tend", "0.1", "--out", str(out))
        assert proc.returncode == 0, proc.stderr
        paths.append(out / "snap_uniform-low-mach_0.100000.csv")
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_snapshot_from_cli_reads_back(tmp_path):
    out = tmp_path / "o"
    run_cli("run", "--case", "khi", "--ni", "8", "--nj", "8",
            "--tend", "0.01", "--out", str(out))
    cols = read_snapshot_csv(out / "snap_khi_0.010000.csv")
    assert cols["rho"].size == 64
    assert cols["p"].max() > 0
