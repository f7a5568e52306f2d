import json
import os
import subprocess
import sys

import numpy as np
import pytest

from dgdealias.cli import main, parse_args
from dgdealias.solver.io import read_series_csv, write_checkpoint

from conftest import uniform_field

TGV_SMALL = ["--N", "3", "--n-el", "2", "--t-end", "0.2", "--output-every", "0.1", "--snapshots", "0,0.2"]


def manifest_of(out):
    with open(os.path.join(out, "manifest.json")) as fh:
        return json.load(fh)


def assert_manifest_complete(out):
    m = manifest_of(out)
    for rel in m["artifacts"]:
        assert os.path.exists(os.path.join(out, rel)), rel
    return m


def read_bytes(path):
    with open(path, "rb") as fh:
        return fh.read()


# -- burgers-aliasing -----------------------------------------------------------------


def test_burgers_aliasing_files(tmp_path):
    out = str(tmp_path)
    assert main(["burgers-aliasing", "--N", "15", "--alpha", "1.0,0.5,0.0", "--output", out]) == 0
    csvs = sorted(p for p in os.listdir(out) if p.endswith(".csv"))
    assert csvs == ["trhs_alpha0.5_Q16.csv", "trhs_alpha0_Q16.csv", "trhs_alpha1_Q16.csv", "trhs_exact.csv"]
    report = open(os.path.join(out, "ordering_report.txt")).read()
    assert "FAIL" not in report and report.count("PASS") == 4
    m = assert_manifest_complete(out)
    assert m["status"] == "completed" and all(m["checks"].values())
    header, rows = read_series_csv(os.path.join(out, "trhs_exact.csv"))
    assert header == ["mode", "qhat", "TRHS", "relative_rate"] and rows.shape == (16, 4)


def test_burgers_default_run(tmp_path):
    assert main(["burgers-aliasing", "--output", str(tmp_path)]) == 0
    assert manifest_of(tmp_path)["status"] == "completed"


@pytest.mark.parametrize("argv", [
    ["burgers-aliasing", "--Q", "3", "--N", "7"],
    ["burgers-aliasing", "--alpha", "1.5"],
    ["burgers-aliasing", "--N", "not-a-number"],
    ["tgv", "--kernel", "standard", "--flux", "central", "--N", "2", "--n-el", "2"],
    ["tgv", "--kernel", "overintegrated", "--N", "3", "--n-el", "2", "--Q", "2"],
    ["tgv", "--preset", "m99_ne1"],
    ["tgv", "--N", "2"],
    ["quadrature-study", "--m", "3", "--n-el", "2", "--Q-list", "2,3"],
    ["analyze"],
    ["no-such-command"],
])
def test_usage_errors(argv, tmp_path):
    assert main(argv + ["--output", str(tmp_path)]) != 0


# -- tgv, analyze -----------------------------------------------------------------------


def test_tgv_run_and_analysis(tmp_path):
    out = str(tmp_path / "run")
    assert main(["tgv", *TGV_SMALL, "--output", out]) == 0
    m = assert_manifest_complete(out)
    assert m["status"] == "completed" and m["t_crash"] is None
    header, series = read_series_csv(os.path.join(out, "timeseries.csv"))
    assert header[:3] == ["t", "kinetic_energy", "enstrophy"]
    assert series[0, 0] == 0.0 and series[0, 1] == pytest.approx(0.125, abs=5e-3)
    assert sorted(p for p in os.listdir(out) if p.endswith(".meta")) == ["tgv_t0.2.meta", "tgv_t0.meta"]

    ana = str(tmp_path / "ana")
    assert main(["analyze", "--checkpoint", os.path.join(out, "tgv_t0.meta"), "--output", ana]) == 0
    files = sorted(os.listdir(ana))
    assert files == ["manifest.json", "tgv_t0_discriminant.csv", "tgv_t0_qr.csv", "tgv_t0_spectrum.csv"]
    assert_manifest_complete(ana)
    _, spec = read_series_csv(os.path.join(ana, "tgv_t0_spectrum.csv"))
    # the initial vortex sits in the |k| = sqrt(3) -> 2 shell
    assert spec[np.argmax(spec[:, 1]), 0] == 2

    only = str(tmp_path / "only")
    assert main(["analyze", "--checkpoint", os.path.join(out, "tgv_t0.2"), "--mode", "spectrum", "--output", only]) == 0
    assert sorted(os.listdir(only)) == ["manifest.json", "tgv_t0.2_spectrum.csv"]


def test_tgv_from_preset_label_resolves(tmp_path):
    args = parse_args(["tgv", "--preset", "m3_ne37_desk", "--output", str(tmp_path)])
    assert args.preset == "m3_ne37_desk" and args.kernel == "split-kg" and args.flux == "roe-kg"


def test_tgv_crash_is_data_not_failure(tmp_path):
    out = str(tmp_path)
    code = main(["tgv", "--N", "2", "--n-el", "2", "--kernel", "standard", "--flux", "llf",
                 "--t-end", "5", "--dt", "0.5", "--snapshots", "", "--output", out])
    assert code == 0
    m = assert_manifest_complete(out)
    assert m["status"] == "crashed" and 0 <= m["t_crash"] <= 5


def test_reruns_are_byte_identical(tmp_path):
    a, b = str(tmp_path / "a"), str(tmp_path / "b")
    for out in (a, b):
        assert main(["tgv", *TGV_SMALL, "--output", out]) == 0
    for name in ("timeseries.csv", "tgv_t0.2.bin", "tgv_t0.2.meta"):
        assert read_bytes(os.path.join(a, name)) == read_bytes(os.path.join(b, name))


def test_corrupt_checkpoint(tmp_path):
    stem = str(tmp_path / "c")
    write_checkpoint(stem, uniform_field(N=2, n_el=2), 0.0)
    with open(stem + ".bin", "r+b") as fh:
        fh.truncate(100)
    out = str(tmp_path / "o")
    assert main(["analyze", "--checkpoint", stem, "--output", out]) != 0
    assert "error" in manifest_of(out)


def test_uniform_flow_has_no_qr_diagram(tmp_path):
    stem = str(tmp_path / "u")
    write_checkpoint(stem, uniform_field(N=2, n_el=2), 0.0)
    out = str(tmp_path / "o")
    assert main(["analyze", "--checkpoint", stem, "--mode", "qr", "--output", out]) != 0
    assert main(["analyze", "--checkpoint", stem, "--mode", "spectrum", "--output", out]) == 0


# -- quadrature-study, operators-dump --------------------------------------------------------


def test_quadrature_study(tmp_path):
    out = str(tmp_path)
    assert main(["quadrature-study", "--m", "2", "--n-el", "2", "--Q-list", "2,3",
                 "--t-end", "0.1", "--output", out]) == 0
    lines = open(os.path.join(out, "quadrature_study.csv")).read().splitlines()
    assert lines[0] == "Q,status,t_c"
    assert [ln.split(",")[:2] for ln in lines[1:]] == [["2", "completed"], ["3", "completed"]]
    m = assert_manifest_complete(out)
    assert m["config"]["flux"] == "llf"


def test_operators_dump(tmp_path):
    out = str(tmp_path)
    assert main(["operators-dump", "--N", "4", "--output", out]) == 0
    assert len(assert_manifest_complete(out)["artifacts"]) == 4
    D = np.loadtxt(os.path.join(out, "lgl_N4_D.csv"), delimiter=",")
    assert D.shape == (5, 5)
    nodes = np.loadtxt(os.path.join(out, "lgl_N4_nodes.csv"), delimiter=",", skiprows=1)
    assert nodes[:, 2].sum() == pytest.approx(2.0)
    assert main(["operators-dump", "--N", "40", "--output", out]) == 2


# -- configuration ------------------------------------------------------------------------


def test_config_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults for a study\ncfl=0.3\nt-end=2.5\nflux=llf\n")
    args = parse_args(["tgv", "--config", str(cfg), "--flux", "roe"])
    assert args.cfl == 0.3 and args.t_end == 2.5  # file beats defaults
    assert args.flux == "roe"  # flag beats file
    assert parse_args(["tgv"]).cfl == 0.5


def test_config_rejects_unknown_keys(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("warp=9\n")
    assert main(["tgv", "--config", str(cfg), "--output", str(tmp_path)]) == 2


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "dgdealias", "operators-dump", "--N", "2", "--output", str(tmp_path)],
                         capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
    assert os.path.exists(tmp_path / "lgl_N2_Q.csv")
