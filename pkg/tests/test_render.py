import numpy as np
import pytest

from waveid import WaveidError
from waveid.render import (
    save_lines_png,
    save_surface_png,
    write_magnitude_csv,
    write_ppm,
)

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def _pixels(path):
    header, *rest = path.read_text().splitlines()
    assert header == "P3"
    cols, rows = map(int, rest[0].split())
    assert rest[1] == "255"
    cells = " ".join(rest[2:]).split()
    assert len(cells) == 3 * rows * cols
    return rows, cols, np.array(cells, dtype=int).reshape(rows, cols, 3)


def test_ppm_zero_surface_is_black(tmp_path):
    path = tmp_path / "zero.ppm"
    write_ppm(path, np.zeros((3, 5)))
    rows, cols, px = _pixels(path)
    assert (rows, cols) == (3, 5)
    assert not np.any(px)


def test_ppm_peak_is_white_and_orientation(tmp_path):
    # peak magnitude in the last (largest-scale) row must render white and
    # land on the TOP image row; everything at zero stays black
    values = np.zeros((4, 6))
    values[3, 2] = -7.0  # sign must not matter
    path = tmp_path / "peak.ppm"
    write_ppm(path, values)
    _, _, px = _pixels(path)
    assert list(px[0, 2]) == [255, 255, 255]
    assert not np.any(px[1:])


def test_ppm_ramp_midpoint(tmp_path):
    # |v|/max = 0.5 sits in the red-to-yellow band: r=255, g=128, b=0
    values = np.array([[1.0, 0.5], [0.25, 0.0]])
    path = tmp_path / "ramp.ppm"
    write_ppm(path, values)
    _, _, px = _pixels(path)
    assert list(px[1, 1]) == [255, 128, 0]


def test_ppm_deterministic_bytes(tmp_path):
    rng = np.random.default_rng(7)
    values = rng.normal(size=(6, 40))
    a, b = tmp_path / "a.ppm", tmp_path / "b.ppm"
    write_ppm(a, values)
    write_ppm(b, values.copy())
    assert a.read_bytes() == b.read_bytes()


def test_ppm_rejects_bad_shape(tmp_path):
    with pytest.raises(WaveidError):
        write_ppm(tmp_path / "bad.ppm", np.zeros(8))


def test_magnitude_csv_layout(tmp_path):
    path = tmp_path / "table.csv"
    write_magnitude_csv(path, np.array([[1.0, -2.0], [0.5, 0.25]]),
                        scales=[0.01, 0.02], dt=0.5, t0=1.0)
    lines = path.read_text().splitlines()
    assert lines[0] == "scale,1,1.5"
    assert lines[1] == "0.01,1,2"
    assert lines[2] == "0.02,0.5,0.25"


def test_magnitude_csv_scale_count_mismatch(tmp_path):
    with pytest.raises(WaveidError):
        write_magnitude_csv(tmp_path / "bad.csv", np.ones((2, 3)), [0.01], 0.5)


def test_surface_png_smoke(tmp_path):
    rng = np.random.default_rng(8)
    path = tmp_path / "surface.png"
    save_surface_png(path, rng.normal(size=(12, 64)),
                     scales=0.01 * 2.0 ** np.arange(12), dt=1e-3, title="surface")
    assert path.read_bytes()[:8] == PNG_MAGIC


def test_lines_png_smoke(tmp_path):
    t = np.linspace(0.0, 1.0, 200)
    path = tmp_path / "lines.png"
    save_lines_png(path, {"recorded": np.sin(t), "restored": np.cos(t)},
                   dt=1e-3, ylabel="value")
    assert path.read_bytes()[:8] == PNG_MAGIC


def test_lines_png_validation(tmp_path):
    with pytest.raises(WaveidError):
        save_lines_png(tmp_path / "no.png", {}, dt=1e-3)
    with pytest.raises(WaveidError):
        save_lines_png(tmp_path / "no.png", {"m": np.ones((2, 2))}, dt=1e-3)
