import math
import subprocess
import sys

import numpy as np
import pytest

from waveid import Signal, read_signal_csv, write_signal_csv
from waveid.cli import run

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def out_lines(capsys):
    return capsys.readouterr().out.strip().splitlines()


def parse_report(lines):
    return dict(line.split("=", 1) for line in lines)


def gen(tmp_path, name="x.csv", n=256, dt=1e-3, seed=42, dist="gauss:0,1"):
    path = tmp_path / name
    assert run(["gen", "--dist", dist, "--n", str(n), "--dt", str(dt),
                "--seed", str(seed), "-o", str(path)]) == 0
    return path


# ---------------------------------------------------------------------------
# Exit codes and error routing


def test_error_identical_records(tmp_path, capsys):
    a = gen(tmp_path)
    assert run(["error", str(a), str(a)]) == 0
    report = parse_report(out_lines(capsys))
    assert float(report["epsilon_rel"]) == 0.0
    assert float(report["epsilon_rms"]) == 0.0


def test_no_arguments_is_usage_error(capsys):
    assert run([]) == 1
    assert run(["transmogrify"]) == 1


def test_help_exits_zero():
    from waveid.cli import main

    assert main(["--help"]) == 0
    assert main(["identify", "--help"]) == 0


def test_missing_required_flag_names_it(tmp_path, capsys):
    assert run(["gen", "--n", "16", "-o", str(tmp_path / "x.csv")]) == 1
    assert "--dist" in capsys.readouterr().err


def test_malformed_csv_leaves_no_outputs(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("t,value\n0,1\n0.001,two\n")
    out = tmp_path / "s.wcs"
    assert run(["cwt", str(bad), "--scales", "0.002:0.016:4:log",
                "-o", str(out)]) == 1
    assert not out.exists()
    assert "bad.csv" in capsys.readouterr().err


def test_numerical_failure_exit_code(tmp_path, capsys):
    # odd-derivative wavelets cancel the delta calibration sum, which is a
    # numerical failure (exit 2), not a usage error
    x = gen(tmp_path, "x.csv", n=128)
    y = gen(tmp_path, "y.csv", n=128, seed=43)
    out = tmp_path / "k.itf"
    code = run(["identify", str(x), str(y), "--wavelet", "dog:1",
                "--scales", "0.002:0.016:6:log", "--lags", "16", "-o", str(out)])
    assert code == 2
    assert not out.exists()
    assert "numerical" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# gen / sim / stats


def test_gen_deterministic_bytes(tmp_path):
    a = gen(tmp_path, "a.csv")
    b = gen(tmp_path, "b.csv")
    assert a.read_bytes() == b.read_bytes()
    c = gen(tmp_path, "c.csv", seed=43)
    assert a.read_bytes() != c.read_bytes()


def test_gen_uniform_range(tmp_path):
    path = gen(tmp_path, "u.csv", n=512, dist="uniform:-0.5,0.5")
    x = read_signal_csv(path)
    assert x.samples.min() >= -0.5 and x.samples.max() < 0.5


def test_gen_rejects_bad_dist(tmp_path, capsys):
    assert run(["gen", "--dist", "poisson:3", "--n", "8",
                "-o", str(tmp_path / "x.csv")]) == 1
    assert run(["gen", "--dist", "gauss:0", "--n", "8",
                "-o", str(tmp_path / "x.csv")]) == 1


def test_sim_matches_library(tmp_path):
    x_path = gen(tmp_path, n=512)
    y_path = tmp_path / "y.csv"
    assert run(["sim", str(x_path), "--model", "so:wn=50,zeta=0.2,gain=1",
                "-o", str(y_path)]) == 0
    from waveid import second_order, simulate

    x = read_signal_csv(x_path)
    want = simulate(second_order(50.0, 0.2, 1.0), x)
    got = read_signal_csv(y_path)
    assert np.allclose(got.samples, want.samples, rtol=0, atol=1e-16)


def test_stats_artifacts(tmp_path, capsys):
    x = gen(tmp_path, n=400)
    y = gen(tmp_path, "y.csv", n=400, seed=7)
    base = tmp_path / "report"
    assert run(["stats", str(x), str(y), "--lags", "20", "-o", str(base)]) == 0
    summary = parse_report(out_lines(capsys))
    assert summary["n"] == "400"
    for suffix in (".summary.txt", ".acf.csv", ".periodogram.csv", ".hist.csv", ".ccf.csv"):
        assert (tmp_path / ("report" + suffix)).exists()
    acf = (tmp_path / "report.acf.csv").read_text().splitlines()
    assert acf[0] == "lag,value" and len(acf) == 22  # header + lags 0..20
    hist = (tmp_path / "report.hist.csv").read_text().splitlines()
    assert hist[0] == "bin_left,bin_right,count"
    assert len(hist) == 1 + min(64, max(8, round(math.sqrt(400))))
    assert (tmp_path / "report.summary.txt").read_text().startswith("n=400\n")


def test_stats_without_second_has_no_ccf(tmp_path, capsys):
    x = gen(tmp_path, n=64)
    base = tmp_path / "solo"
    assert run(["stats", str(x), "-o", str(base)]) == 0
    assert not (tmp_path / "solo.ccf.csv").exists()


# ---------------------------------------------------------------------------
# Config files


def test_config_supplies_missing_flags(tmp_path):
    x = gen(tmp_path, n=64, dt=0.01)
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# analysis defaults\nscales = 0.02:0.16:6:log\nwavelet = morlet:6\n")
    out = tmp_path / "s.wcs"
    assert run(["cwt", str(x), "--config", str(cfg), "-o", str(out)]) == 0
    assert out.read_text().startswith("wcs-v1 morlet:6 ")


def test_explicit_flag_beats_config(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("n = 64\ndist = gauss:0,1\n")
    out = tmp_path / "x.csv"
    assert run(["gen", "--config", str(cfg), "--n", "32", "-o", str(out)]) == 0
    assert len(read_signal_csv(out)) == 32


def test_unknown_config_key_rejected(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("dist = gauss:0,1\nn = 16\npomp = 3\n")
    assert run(["gen", "--config", str(cfg), "-o", str(tmp_path / "x.csv")]) == 1
    assert "pomp" in capsys.readouterr().err
    assert not (tmp_path / "x.csv").exists()


def test_malformed_config_line_rejected(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("dist gauss:0,1\n")
    assert run(["gen", "--config", str(cfg), "--n", "16",
                "-o", str(tmp_path / "x.csv")]) == 1


# ---------------------------------------------------------------------------
# Identification pipeline


@pytest.fixture(scope="module")
def pipeline(tmp_path_factory):
    """gen -> sim -> identify, shared by the report/figure/reconstruct tests."""
    root = tmp_path_factory.mktemp("pipeline")
    x = root / "x.csv"
    y = root / "y.csv"
    kernel = root / "k.itf"
    assert run(["gen", "--dist", "gauss:0,1", "--n", "2048", "--dt", "0.001",
                "--seed", "42", "-o", str(x)]) == 0
    assert run(["sim", str(x), "--model", "so:wn=50,zeta=0.2,gain=1",
                "-o", str(y)]) == 0
    code = run(["identify", str(x), str(y),
                "--scales", "0.002:0.512:48:log", "-o", str(kernel)])
    assert code == 0
    return root


def test_pipeline_restore_error(pipeline, tmp_path, capsys):
    capsys.readouterr()
    y_hat = tmp_path / "y_hat.csv"
    assert run(["reconstruct", str(pipeline / "x.csv"), str(pipeline / "k.itf"),
                "-o", str(y_hat)]) == 0
    assert run(["error", str(pipeline / "y.csv"), str(y_hat)]) == 0
    report = parse_report(out_lines(capsys))
    assert float(report["epsilon_rel"]) <= 0.05


def test_identify_report_contents(pipeline):
    report = parse_report((pipeline / "k.report.txt").read_text().splitlines())
    assert report["channels"] == "48"
    assert report["lags"] == "512"
    assert float(report["epsilon_rel"]) <= 0.05
    assert float(report["dispersion"]) <= 0.10
    assert int(report["dead_channels"]) == 0


def test_identify_figures(pipeline):
    for name in ("k.surface.png", "k.kernel.png", "k.restore.png"):
        assert (pipeline / name).read_bytes()[:8] == PNG_MAGIC


def test_identified_surface_is_readable(pipeline):
    from waveid import read_itf, scale_average

    itf = read_itf(pipeline / "k.itf")
    assert itf.values.shape == (48, 512)
    h = scale_average(itf)
    assert h[np.abs(h).argmax()] > 0  # resonant kernel rises first


def test_reconstruct_time_domain_mode(pipeline, tmp_path, capsys):
    capsys.readouterr()
    td = tmp_path / "td.csv"
    assert run(["reconstruct", str(pipeline / "x.csv"), str(pipeline / "k.itf"),
                "--mode", "time_domain", "-o", str(td)]) == 0
    assert run(["error", str(pipeline / "y.csv"), str(td)]) == 0
    report = parse_report(out_lines(capsys))
    assert float(report["epsilon_rel"]) <= 0.05


def test_error_report_file(pipeline, tmp_path, capsys):
    out = tmp_path / "err.txt"
    assert run(["error", str(pipeline / "y.csv"), str(pipeline / "y.csv"),
                "-o", str(out)]) == 0
    assert out.read_text() == "epsilon_rel=0\nepsilon_rms=0\n"


# ---------------------------------------------------------------------------
# plot


def read_magnitude_csv(path):
    lines = path.read_text().splitlines()
    scales, rows = [], []
    for line in lines[1:]:
        cells = line.split(",")
        scales.append(float(cells[0]))
        rows.append([float(c) for c in cells[1:]])
    return np.array(scales), np.array(rows)


def test_plot_artifacts_and_determinism(pipeline, tmp_path):
    wcs = tmp_path / "x.wcs"
    assert run(["cwt", str(pipeline / "x.csv"),
                "--scales", "0.002:0.064:12:log", "-o", str(wcs)]) == 0
    one = tmp_path / "one"
    two = tmp_path / "two"
    for base in (one, two):
        assert run(["plot", str(wcs), "-o", str(base)]) == 0
    assert (tmp_path / "one.ppm").read_bytes() == (tmp_path / "two.ppm").read_bytes()
    assert (tmp_path / "one.magnitude.csv").read_bytes() == \
        (tmp_path / "two.magnitude.csv").read_bytes()
    assert (tmp_path / "one.ppm").read_text().startswith("P3\n2048 12\n255\n")


def test_plot_itf_surface(pipeline, tmp_path):
    base = tmp_path / "kernel"
    assert run(["plot", str(pipeline / "k.itf"), "-o", str(base)]) == 0
    scales, mag = read_magnitude_csv(tmp_path / "kernel.magnitude.csv")
    assert scales.size == 48 and mag.shape == (48, 512)


def test_plot_zero_surface_uniform_black(tmp_path):
    zero = tmp_path / "zero.csv"
    write_signal_csv(Signal(np.zeros(64), 1e-3), zero)
    wcs = tmp_path / "zero.wcs"
    assert run(["cwt", str(zero), "--scales", "0.002:0.008:3:log",
                "-o", str(wcs)]) == 0
    assert run(["plot", str(wcs), "-o", str(tmp_path / "zero")]) == 0
    body = (tmp_path / "zero.ppm").read_text().splitlines()[3:]
    cells = set(" ".join(body).split())
    assert cells == {"0"}


def test_plot_sine_ridge_matches_center_frequency(tmp_path):
    # |W| of a unit sine peaks at the Morlet center-frequency scale
    # a* = (w0 + sqrt(2 + w0^2)) / (4 pi f); every interior column's argmax
    # must land within one row of the grid row nearest a*
    dt, n, f = 1e-3, 1024, 25.0
    t = dt * np.arange(n)
    write_signal_csv(Signal(np.sin(2 * np.pi * f * t), dt), tmp_path / "sine.csv")
    wcs = tmp_path / "sine.wcs"
    assert run(["cwt", str(tmp_path / "sine.csv"),
                "--scales", "0.01:0.15:25:log", "-o", str(wcs)]) == 0
    assert run(["plot", str(wcs), "-o", str(tmp_path / "sine")]) == 0
    scales, mag = read_magnitude_csv(tmp_path / "sine.magnitude.csv")
    a_star = (6.0 + math.sqrt(38.0)) / (4 * math.pi * f)
    want = int(np.abs(scales - a_star).argmin())
    got = mag[:, n // 4 : 3 * n // 4].argmax(axis=0)
    assert np.all(np.abs(got - want) <= 1)


def test_plot_rejects_malformed_surface(tmp_path, capsys):
    junk = tmp_path / "junk.wcs"
    junk.write_text("wcs-v9000 morlet:6 0.001 2 2\n")
    assert run(["plot", str(junk), "-o", str(tmp_path / "junk")]) == 1
    assert not (tmp_path / "junk.ppm").exists()


# ---------------------------------------------------------------------------
# Entry points


def test_module_and_script_entry(tmp_path):
    out = tmp_path / "x.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "waveid", "gen", "--dist", "gauss:0,1",
         "--n", "16", "-o", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and out.exists()
    proc = subprocess.run([sys.executable, "-m", "waveid"], capture_output=True, text=True)
    assert proc.returncode == 1
    assert "gen" in proc.stderr  # help text lands on stderr
    proc = subprocess.run(["waveid", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "identify" in proc.stdout


# ---------------------------------------------------------------------------
# Golden artifacts

GOLDEN_ARGS = {
    "x.csv": ["gen", "--dist", "gauss:0,1", "--n", "128", "--dt", "0.01",
              "--seed", "42", "-o", "x.csv"],
    "x.wcs": ["cwt", "x.csv", "--wavelet", "morlet:6",
              "--scales", "0.02:0.32:12:log", "-o", "x.wcs"],
    "x.ppm": ["plot", "x.wcs", "-o", "x"],
}


def test_golden_pipeline_bytes(tmp_path):
    # the full text-artifact chain must reproduce the stored corpus exactly
    import pathlib

    golden = pathlib.Path(__file__).parent / "golden"
    for argv in GOLDEN_ARGS.values():
        argv = [str(tmp_path / a) if a.startswith("x") else a for a in argv]
        assert run(argv) == 0
    for name in ("x.csv", "x.wcs", "x.ppm", "x.magnitude.csv"):
        assert (tmp_path / name).read_bytes() == (golden / name).read_bytes(), name
