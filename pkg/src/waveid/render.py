"""Render time-scale surfaces and line data to image and table files.

Surfaces go out three ways: a dependency-free plain-text PPM heatmap, a
delimited magnitude table, and (for the CLI report path) matplotlib PNG
figures.  Matplotlib is imported lazily with the Agg backend so nothing
here needs a display.
"""

from __future__ import annotations

import numpy as np

from .errors import WaveidError

__all__ = [
    "write_ppm",
    "write_magnitude_csv",
    "save_surface_png",
    "save_lines_png",
]

# Piecewise-linear "hot" ramp: black -> red -> yellow -> white.  t in [0, 1].


def _hot_rgb(t: np.ndarray) -> np.ndarray:
    r = np.clip(3.0 * t, 0.0, 1.0)
    g = np.clip(3.0 * t - 1.0, 0.0, 1.0)
    b = np.clip(3.0 * t - 2.0, 0.0, 1.0)
    return np.stack([r, g, b], axis=-1)


def _surface_matrix(values) -> np.ndarray:
    v = np.asarray(values)
    if v.ndim != 2 or v.size == 0:
        raise WaveidError("surface values must be a non-empty 2-D array")
    return v


def write_ppm(path, values) -> None:
    """Plain-text PPM (P3) heatmap of |values|, largest scale on the top row.

    Rows are assumed ordered smallest scale first, as stored in surface
    objects, and are flipped so scale increases upward in the image.
    Colors follow a black-red-yellow-white ramp on |v| / max|v|.
    """
    v = np.abs(_surface_matrix(values)).astype(float)
    peak = v.max()
    t = v / peak if peak > 0 else np.zeros_like(v)
    rgb = np.rint(255.0 * _hot_rgb(t[::-1])).astype(int)
    rows, cols, _ = rgb.shape
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"P3\n{cols} {rows}\n255\n")
        for row in rgb:
            fh.write(" ".join(str(c) for c in row.ravel()))
            fh.write("\n")


def write_magnitude_csv(path, values, scales, dt: float, t0: float = 0.0) -> None:
    """Delimited magnitude table: header row of times, one row per scale.

    Layout: first cell "scale", then the time axis; each following row is
    the scale value followed by |v| along that row.
    """
    v = _surface_matrix(values)
    scales = np.asarray(scales, dtype=float)
    if scales.shape != (v.shape[0],):
        raise WaveidError("one scale per surface row required")
    times = t0 + dt * np.arange(v.shape[1])
    mag = np.abs(v)
    with open(path, "w", encoding="ascii") as fh:
        fh.write("scale," + ",".join(f"{t:.17g}" for t in times) + "\n")
        for a, row in zip(scales, mag):
            fh.write(f"{a:.17g}," + ",".join(f"{m:.17g}" for m in row) + "\n")


def _agg_pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def save_surface_png(path, values, scales, dt: float, t0: float = 0.0,
                     title: str = "", value_label: str = "magnitude") -> None:
    """Heatmap PNG of |values| on the time/scale plane (log scale axis)."""
    v = np.abs(_surface_matrix(values)).astype(float)
    scales = np.asarray(scales, dtype=float)
    if scales.shape != (v.shape[0],):
        raise WaveidError("one scale per surface row required")
    plt = _agg_pyplot()
    fig, ax = plt.subplots(figsize=(8.0, 4.5))
    extent = [t0, t0 + dt * v.shape[1], 0, v.shape[0]]
    im = ax.imshow(v, origin="lower", aspect="auto", extent=extent,
                   cmap="hot", interpolation="nearest")
    ticks = np.unique(np.linspace(0, v.shape[0] - 1, min(8, v.shape[0])).astype(int))
    ax.set_yticks(ticks + 0.5)
    ax.set_yticklabels([f"{scales[i]:.4g}" for i in ticks])
    ax.set_xlabel("time [s]")
    ax.set_ylabel("scale [s]")
    if title:
        ax.set_title(title)
    fig.colorbar(im, ax=ax, label=value_label)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_lines_png(path, curves, dt: float, t0: float = 0.0, title: str = "",
                   xlabel: str = "time [s]", ylabel: str = "") -> None:
    """Overlaid line plot PNG; ``curves`` maps legend label -> 1-D array."""
    if not curves:
        raise WaveidError("need at least one curve")
    plt = _agg_pyplot()
    fig, ax = plt.subplots(figsize=(8.0, 4.0))
    for label, values in curves.items():
        y = np.asarray(values, dtype=float)
        if y.ndim != 1:
            raise WaveidError(f"curve {label!r} must be 1-D")
        ax.plot(t0 + dt * np.arange(y.size), y, label=label, linewidth=1.0)
    ax.set_xlabel(xlabel)
    if ylabel:
        ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    if len(curves) > 1:
        ax.legend(loc="best", fontsize="small")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
