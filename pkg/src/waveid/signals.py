"""Sampled signals: containers, stochastic generation, and basic statistics.

A :class:`Signal` is a uniformly sampled real record.  Stochastic test
inputs are produced by a fixed, portable recipe -- PCG64 uniform variates
mapped through the Box-Muller transform for the Gaussian case -- so that a
given seed yields identical samples on every platform and numpy release
that ships PCG64 (all supported ones do).

Correlation estimates are the biased (divide-by-N) mean-removed form, which
keeps the autocorrelation matrix positive semi-definite and is the form the
identification routines expect.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import FormatError, WaveidError

__all__ = [
    "Signal",
    "StochasticSpec",
    "SummaryStats",
    "CorrelationFunction",
    "generate_stochastic",
    "summary_stats",
    "autocorrelation",
    "cross_correlation",
    "periodogram",
    "read_signal_csv",
    "write_signal_csv",
]


@dataclass(frozen=True, eq=False)
class Signal:
    """A real-valued record sampled at uniform spacing ``dt`` starting at ``t0``."""

    samples: np.ndarray
    dt: float
    t0: float = 0.0

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        if samples.ndim != 1 or samples.size == 0:
            raise WaveidError("signal samples must be a non-empty 1-D array")
        if not np.all(np.isfinite(samples)):
            raise WaveidError("signal samples must be finite")
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise WaveidError(f"sample interval must be positive, got {self.dt}")
        object.__setattr__(self, "samples", samples)

    def __len__(self):
        return self.samples.size

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.samples.size)

    @property
    def duration(self) -> float:
        return self.dt * self.samples.size


@dataclass(frozen=True)
class StochasticSpec:
    """Recipe for a reproducible random record.

    ``distribution`` is ``"gaussian"`` with ``params = (mean, stddev)`` or
    ``"uniform"`` with ``params = (lo, hi)``.
    """

    distribution: str
    params: tuple
    length: int
    dt: float
    seed: int

    def __post_init__(self):
        if self.distribution not in ("gaussian", "uniform"):
            raise WaveidError(f"unknown distribution {self.distribution!r}")
        if len(self.params) != 2:
            raise WaveidError("distribution takes exactly two parameters")
        a, b = (float(v) for v in self.params)
        if self.distribution == "gaussian" and not b > 0:
            raise WaveidError(f"gaussian stddev must be positive, got {b}")
        if self.distribution == "uniform" and not a < b:
            raise WaveidError(f"uniform bounds must satisfy lo < hi, got ({a}, {b})")
        if not (isinstance(self.length, (int, np.integer)) and self.length >= 1):
            raise WaveidError(f"length must be a positive integer, got {self.length}")
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise WaveidError(f"sample interval must be positive, got {self.dt}")
        if not (isinstance(self.seed, (int, np.integer)) and self.seed >= 0):
            raise WaveidError(f"seed must be a non-negative integer, got {self.seed}")


@dataclass(frozen=True)
class SummaryStats:
    mean: float
    variance: float
    minimum: float
    maximum: float
    rms: float


@dataclass(frozen=True, eq=False)
class CorrelationFunction:
    """Correlation estimates at lags ``0 .. max_lag`` (in samples)."""

    lags: np.ndarray
    values: np.ndarray
    dt: float

    def __post_init__(self):
        lags = np.asarray(self.lags, dtype=int)
        values = np.asarray(self.values, dtype=float)
        if lags.shape != values.shape or lags.ndim != 1:
            raise WaveidError("lag and value arrays must be 1-D and equal length")
        object.__setattr__(self, "lags", lags)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return self.values.size


def _uniform_variates(seed: int, count: int) -> np.ndarray:
    """Doubles in [0, 1) from the PCG64 stream for ``seed``."""
    return np.random.Generator(np.random.PCG64(seed)).random(count)


def _box_muller(u1: np.ndarray, u2: np.ndarray) -> np.ndarray:
    """Map pairs of uniforms to standard normal pairs.

    z0 = sqrt(-2 ln u1) cos(2 pi u2),  z1 = sqrt(-2 ln u1) sin(2 pi u2)

    ``1 - u1`` shifts the open end of the interval so the log argument is
    never zero.
    """
    radius = np.sqrt(-2.0 * np.log1p(-u1))
    angle = 2.0 * np.pi * u2
    return np.concatenate([radius * np.cos(angle), radius * np.sin(angle)])


def generate_stochastic(spec: StochasticSpec) -> Signal:
    """Generate the record described by ``spec``.

    Gaussian records draw ceil(n/2) uniform pairs and apply Box-Muller;
    uniform records affinely map the raw variates onto (lo, hi).  Both are
    exact functions of the seed alone.
    """
    n = spec.length
    if spec.distribution == "gaussian":
        mean, stddev = spec.params
        pairs = (n + 1) // 2
        u = _uniform_variates(spec.seed, 2 * pairs)
        z = _box_muller(u[:pairs], u[pairs:])
        samples = mean + stddev * z[:n]
    else:
        lo, hi = spec.params
        samples = lo + (hi - lo) * _uniform_variates(spec.seed, n)
    return Signal(samples, spec.dt)


def summary_stats(x: Signal) -> SummaryStats:
    """Mean, population variance, extrema, and root-mean-square of a record."""
    s = x.samples
    return SummaryStats(
        mean=float(s.mean()),
        variance=float(s.var()),
        minimum=float(s.min()),
        maximum=float(s.max()),
        rms=float(np.sqrt(np.mean(s * s))),
    )


def _check_max_lag(n: int, max_lag: int) -> None:
    if not (0 <= max_lag < n):
        raise WaveidError(f"max_lag must lie in [0, {n}), got {max_lag}")


def _xcorr_biased(x: np.ndarray, y: np.ndarray, max_lag: int) -> np.ndarray:
    """r[k] = (1/N) sum_i (x_i - xbar)(y_{i+k} - ybar) for k = 0..max_lag, via FFT."""
    n = x.size
    nfft = 1 << int(np.ceil(np.log2(2 * n)))
    xm = x - x.mean()
    ym = y - y.mean()
    spec = np.fft.rfft(ym, nfft) * np.conj(np.fft.rfft(xm, nfft))
    return np.fft.irfft(spec, nfft)[: max_lag + 1] / n


def autocorrelation(x: Signal, max_lag: int) -> CorrelationFunction:
    """Biased mean-removed autocorrelation at lags 0..max_lag.

    R(0) equals the population variance; |R(k)| <= R(0) for all k.
    """
    _check_max_lag(len(x), max_lag)
    values = _xcorr_biased(x.samples, x.samples, max_lag)
    return CorrelationFunction(np.arange(max_lag + 1), values, x.dt)


def cross_correlation(x: Signal, y: Signal, max_lag: int) -> CorrelationFunction:
    """Biased mean-removed cross-correlation R_xy(k), k = 0..max_lag.

    R_xy(k) = (1/N) sum_i (x_i - xbar)(y_{i+k} - ybar); positive lags mean
    y lags x, which is the orientation consumed by the identification solver.
    """
    if len(x) != len(y):
        raise WaveidError("cross-correlation requires equal-length records")
    if x.dt != y.dt:
        raise WaveidError("cross-correlation requires equal sample intervals")
    _check_max_lag(len(x), max_lag)
    values = _xcorr_biased(x.samples, y.samples, max_lag)
    return CorrelationFunction(np.arange(max_lag + 1), values, x.dt)


def periodogram(x: Signal) -> tuple[np.ndarray, np.ndarray]:
    """Raw periodogram: (frequencies in Hz, |X_k|^2 / N) for k = 0..N//2.

    The summed two-sided version satisfies Parseval: sum_k |X_k|^2 / N equals
    the signal energy sum_n x_n^2.
    """
    s = x.samples
    n = s.size
    power = np.abs(np.fft.rfft(s)) ** 2 / n
    freqs = np.fft.rfftfreq(n, d=x.dt)
    return freqs, power


# ---------------------------------------------------------------------------
# CSV serialization: header "t,value", one row per sample, %.17g fields.

_REL_DT_TOL = 1e-9


def write_signal_csv(x: Signal, path) -> None:
    with open(path, "w") as fh:
        fh.write("t,value\n")
        for t, v in zip(x.times, x.samples):
            fh.write(f"{t:.17g},{v:.17g}\n")


def read_signal_csv(path) -> Signal:
    """Parse a two-column record and validate uniform sampling.

    The time column must advance by a constant step to a relative tolerance
    of 1e-9; anything else (missing header, short rows, non-numeric fields,
    non-monotonic time) raises :class:`FormatError`.
    """
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or lines[0].replace(" ", "") != "t,value":
        raise FormatError(f"{path}: expected header 't,value'")
    if len(lines) < 2:
        raise FormatError(f"{path}: no samples")
    times = np.empty(len(lines) - 1)
    values = np.empty(len(lines) - 1)
    for i, line in enumerate(lines[1:]):
        parts = line.split(",")
        if len(parts) != 2:
            raise FormatError(f"{path}: line {i + 2}: expected two fields")
        try:
            times[i] = float(parts[0])
            values[i] = float(parts[1])
        except ValueError as exc:
            raise FormatError(f"{path}: line {i + 2}: {exc}") from None
    if not np.all(np.isfinite(times)) or not np.all(np.isfinite(values)):
        raise FormatError(f"{path}: non-finite entries")
    if times.size == 1:
        raise FormatError(f"{path}: a single sample does not define a sample interval")
    # The first step round-trips the writer's grid exactly; a mean or median
    # of all steps would pick up last-digit float noise and spoil exact
    # boundary checks downstream (e.g. a scale grid starting at 2 dt).
    dt = float(times[1] - times[0])
    steps = np.diff(times)
    if dt <= 0 or np.max(np.abs(steps - dt)) > _REL_DT_TOL * abs(dt):
        raise FormatError(f"{path}: time column is not uniformly spaced")
    return Signal(values, dt, t0=float(times[0]))
