"""Impulse-kernel identification from input/output records.

The record pair (x, y) of a system y = g * x is split into wavelet-domain
frequency channels, each channel's transfer estimate is formed by
regularized spectral division, and a causal kernel is fitted per channel,
yielding a time-scale surface whose rows all estimate the same g when the
system really is linear and time-invariant.  Row spread beyond statistical
scatter is therefore direct evidence of nonlinearity or time variation.

Two practical corrections keep the per-channel estimates honest:

* Record-edge completion.  A finite record truncates the convolution tail
  that y would have received after its last sample; dividing raw spectra
  bakes that truncation into the kernel as a several-percent bias.  A coarse
  windowed estimate of g synthesizes the missing tail, and two refinement
  sweeps re-estimate it.

* Off-band anchoring.  Each channel carries information only where its own
  spectral power clears the regularization floor.  The causal least-squares
  fit for a channel is therefore weighted by the channel's power where it
  has any, and tied with a small weight to the cross-channel average
  everywhere else, so a row stays equal to its channel's data in-band and
  coasts along the consensus out-of-band instead of oscillating freely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from scipy.signal import windows

from .errors import FormatError, NumericalError, WaveidError
from .signals import CorrelationFunction, Signal
from .spectral import RegularizationPolicy, dft, next_pow2, spectral_divide
from .wavelet import (
    MotherWavelet,
    ScaleGrid,
    _analyze,
    _delta_kappa,
    _log_ratio,
    _read_header,
    _read_scales,
    _synthesize,
)

__all__ = [
    "ITFSurface",
    "ChannelSpectrum",
    "RestoreReport",
    "channel_transfer",
    "channel_deconvolve",
    "identify_itf",
    "scale_average",
    "row_dispersion",
    "wiener_hopf_identify",
    "reconstruct",
    "restore_error",
    "channel_restore_errors",
    "read_itf",
    "write_itf",
    "default_lag_count",
]

# Channels whose input energy falls below this fraction of the strongest
# channel's carry no usable information and are zeroed and flagged.
DEAD_CHANNEL_FRACTION = 1e-12

# Relative weight tying a channel's causal fit to the cross-channel average
# on bins where the channel itself has no gated data.
_OFF_BAND_WEIGHT = 1e-3


@dataclass(frozen=True, eq=False)
class ITFSurface:
    """Identified kernels, one row per analysis scale.

    ``values[i, k]`` estimates the system kernel at lag ``k * dt`` from the
    channel at ``scales[i]``.  ``dead`` flags channels that carried no input
    energy; their rows are zero and they are excluded from averages.
    ``channel_energy`` holds each channel's input energy (the weights used
    by :func:`scale_average`); surfaces read back from disk have ``None``
    there and average with uniform weights.
    """

    scales: np.ndarray
    values: np.ndarray
    dt: float
    wavelet: MotherWavelet
    reg: RegularizationPolicy = None
    dead: np.ndarray = None
    channel_energy: np.ndarray = None

    def __post_init__(self):
        scales = np.asarray(self.scales, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 2 or values.shape[0] != scales.size:
            raise WaveidError("surface must have one row per scale")
        object.__setattr__(self, "scales", scales)
        object.__setattr__(self, "values", values)
        if self.dead is None:
            object.__setattr__(self, "dead", np.zeros(scales.size, dtype=bool))
        else:
            object.__setattr__(self, "dead", np.asarray(self.dead, dtype=bool))
        if self.channel_energy is not None:
            object.__setattr__(
                self, "channel_energy", np.asarray(self.channel_energy, dtype=float)
            )

    @property
    def n_lags(self) -> int:
        return self.values.shape[1]

    @property
    def lags(self) -> np.ndarray:
        return self.dt * np.arange(self.values.shape[1])


@dataclass(frozen=True, eq=False)
class ChannelSpectrum:
    """Regularized transfer estimate of one channel on the DFT bin grid."""

    bins: np.ndarray
    dt: float
    scale: float = None

    def __post_init__(self):
        object.__setattr__(self, "bins", np.asarray(self.bins, dtype=complex))


@dataclass(frozen=True, eq=False)
class RestoreReport:
    """Reconstruction quality figures.

    ``epsilon_rel`` is ||y - y_hat|| / ||y|| (None when ||y|| = 0, where
    the relative form is undefined); ``epsilon_rms`` is the RMS residual.
    """

    epsilon_rel: float
    epsilon_rms: float
    per_channel_error: np.ndarray = field(default=None)

    def __post_init__(self):
        pce = self.per_channel_error
        pce = np.array([]) if pce is None else np.asarray(pce, dtype=float)
        object.__setattr__(self, "per_channel_error", pce)


def default_lag_count(n_samples: int) -> int:
    """Default kernel length: a quarter record, capped at 512 lags."""
    return min(n_samples // 4, 512)


def channel_transfer(row_y, row_x, reg: RegularizationPolicy,
                     dt: float = 1.0, scale: float = None) -> ChannelSpectrum:
    """Regularized bin-wise transfer estimate DFT(row_y) / DFT(row_x)."""
    row_y = np.asarray(row_y)
    row_x = np.asarray(row_x)
    if row_y.shape != row_x.shape or row_y.ndim != 1:
        raise WaveidError("channel rows must be 1-D and equal length")
    spec = spectral_divide(dft(row_y, dt), dft(row_x, dt), reg)
    return ChannelSpectrum(spec.bins, dt, scale)


def _hermitian_complete(half: np.ndarray, nfft: int) -> np.ndarray:
    """Extend bins 0..nfft//2 to a full hermitian spectrum (real inverse)."""
    full = np.zeros(nfft, dtype=complex)
    full[: nfft // 2 + 1] = half
    full[0] = half[0].real
    full[nfft // 2] = half[nfft // 2].real
    full[nfft // 2 + 1 :] = np.conj(half[1 : nfft // 2][::-1])
    return full


def _fold_half(values: np.ndarray, nfft: int) -> np.ndarray:
    """Fold a full-grid array onto bins 0..nfft//2, adding each bin's mirror
    (conjugated for complex data).  DC and Nyquist mirror onto themselves
    and are not doubled."""
    half = values[: nfft // 2 + 1].copy()
    mirror = values[nfft // 2 + 1 :][::-1]  # bins nfft-1 .. nfft//2+1 = mirrors of 1..nfft//2-1
    if np.iscomplexobj(values):
        half[1 : nfft // 2] += np.conj(mirror)
    else:
        half[1 : nfft // 2] += mirror
    return half


def channel_deconvolve(row_y, row_x, reg: RegularizationPolicy, n_lags: int,
                       dt: float = 1.0, analytic: bool = False) -> np.ndarray:
    """Causal kernel of one channel by inverse transform of its transfer.

    The rows must hold at least ``2 * n_lags`` samples so the lag window is
    supported by the data.  For channels of an analytic (one-sided) wavelet,
    ``analytic=True`` completes the transfer spectrum hermitian-symmetrically
    before inversion; without it the real part of a one-sided inverse is
    half the kernel.
    """
    row_y = np.asarray(row_y)
    row_x = np.asarray(row_x)
    if row_y.shape != row_x.shape or row_y.ndim != 1:
        raise WaveidError("channel rows must be 1-D and equal length")
    if not (isinstance(n_lags, (int, np.integer)) and n_lags >= 1):
        raise WaveidError(f"n_lags must be a positive integer, got {n_lags}")
    if row_x.size < 2 * n_lags:
        raise WaveidError(
            f"insufficient data: {row_x.size} samples cannot support "
            f"{n_lags} lags (need at least {2 * n_lags})"
        )
    bins = spectral_divide(dft(row_y), dft(row_x), reg).bins
    if analytic:
        nfft = bins.size
        bins = _hermitian_complete(bins[: nfft // 2 + 1], nfft)
    return np.fft.ifft(bins).real[:n_lags] / dt


# ---------------------------------------------------------------------------
# Full-surface identification.


def _water_divide(num: np.ndarray, den: np.ndarray, level: float) -> np.ndarray:
    power = np.abs(den) ** 2
    return num * np.conj(den) / np.maximum(power, level * power.max())


def _coarse_kernel(x: np.ndarray, y: np.ndarray, dt: float, n_lags: int,
                   level: float) -> np.ndarray:
    """Windowed full-record estimate of g, refined by completing the record
    tail it predicts.  Used only to synthesize the missing convolution tail
    beyond the last sample of y."""
    n = x.size
    level = max(level, 1e-6)
    taper = windows.tukey(n, 0.25)
    nfft = next_pow2(2 * n)
    h = _water_divide(np.fft.fft(y * taper, nfft), np.fft.fft(x * taper, nfft), level)
    g = np.fft.ifft(h).real[:n_lags] / dt
    for _ in range(2):
        tail = np.convolve(x, g * dt)[n:]
        nfft = next_pow2(n + tail.size)
        h = _water_divide(
            np.fft.fft(np.concatenate([y, tail]), nfft), np.fft.fft(x, nfft), level
        )
        g = np.fft.ifft(h).real[:n_lags] / dt
    return g


def _fit_causal_row(w_half: np.ndarray, wh_half: np.ndarray, pull_target: np.ndarray,
                    nfft: int, n_lags: int, dt: float) -> np.ndarray:
    """Weighted causal least-squares kernel for one channel.

    Minimizes sum_k w_k |H_k - sum_m h_m exp(-i omega_k m)|^2 over causal h.
    The normal-equation matrix is the Toeplitz autocorrelation of the weight
    function, solved by scipy's Levinson path with a dense fallback.
    """
    w_full = _hermitian_complete(w_half, nfft).real
    wh_full = _hermitian_complete(wh_half, nfft)
    pull = _OFF_BAND_WEIGHT * float(w_full[w_full > 0].mean())
    off_band = pull * (w_full == 0.0)
    r_auto = np.fft.ifft(w_full + off_band).real
    r_cross = np.fft.ifft(wh_full + off_band * pull_target).real
    try:
        h = scipy.linalg.solve_toeplitz(r_auto[:n_lags], r_cross[:n_lags])
    except (np.linalg.LinAlgError, ValueError):
        h = None
    if h is None or not np.all(np.isfinite(h)):
        h = np.linalg.solve(scipy.linalg.toeplitz(r_auto[:n_lags]), r_cross[:n_lags])
        if not np.all(np.isfinite(h)):
            raise NumericalError("channel fit produced non-finite kernel values")
    return h / dt


def identify_itf(x: Signal, y: Signal, wavelet: MotherWavelet, grid: ScaleGrid,
                 reg: RegularizationPolicy, n_lags: int = None) -> ITFSurface:
    """Identify the time-scale kernel surface of the system mapping x to y.

    Returns one causal kernel per analysis scale (see the module docstring
    for how each is estimated).  For a linear time-invariant system every
    row estimates the same kernel; :func:`row_dispersion` quantifies how far
    the rows actually agree and :func:`scale_average` collapses the surface
    to a single kernel.
    """
    n = len(x)
    if len(y) != n:
        raise WaveidError("input and output records must have equal length")
    if abs(x.dt - y.dt) > 1e-12 * x.dt:
        raise WaveidError("input and output records must share the sample interval")
    if n < 8:
        raise WaveidError(f"record too short for identification: {n} < 8 samples")
    if grid.a_min < 2.0 * x.dt:
        raise WaveidError(
            f"scale {grid.a_min:g} s is below the resolution limit 2*dt = {2 * x.dt:g} s"
        )
    if n_lags is None:
        n_lags = default_lag_count(n)
    if not (isinstance(n_lags, (int, np.integer)) and n_lags >= 1):
        raise WaveidError(f"n_lags must be a positive integer, got {n_lags}")
    if n < 2 * n_lags:
        raise WaveidError(f"insufficient data: {n} samples cannot support {n_lags} lags")
    dt = x.dt
    scales = grid.values()
    level = reg.level

    # synthesize the convolution tail the finite record cut off
    g_coarse = _coarse_kernel(x.samples, y.samples, dt, n_lags, level)
    y_ext = np.concatenate([y.samples, np.convolve(x.samples, g_coarse * dt)[n:]])

    pad = int(math.ceil(wavelet.pad_radius * scales.max() / dt))
    nfft = next_pow2(y_ext.size + 2 * pad)
    x_spec = np.fft.fft(x.samples, nfft)
    y_spec = np.fft.fft(y_ext, nfft)
    omega = 2.0 * math.pi * np.fft.fftfreq(nfft, d=dt)
    n_half = nfft // 2 + 1

    def channel(a, with_energy):
        """Gated weight and transfer of the channel at scale a."""
        psi = math.sqrt(a) * np.conj(wavelet.spectrum(a * omega))
        den = x_spec * psi
        power = np.abs(den) ** 2
        pmax = power.max()
        transfer = np.zeros(nfft, dtype=complex)
        weight = np.zeros(nfft)
        energy = 0.0
        if pmax > 0.0:
            floor = level * pmax
            gate = power >= floor if floor > 0 else power > 0
            cross = (y_spec * psi * np.conj(den))[gate]
            if reg.kind == "water_level":
                transfer[gate] = cross / np.maximum(power[gate], floor)
            else:
                transfer[gate] = cross / (power[gate] + floor)
            weight[gate] = power[gate]
            if with_energy:
                energy = float(np.sum(np.abs(np.fft.ifft(den)[:n]) ** 2)) * dt
        return weight, transfer, energy

    # pass 1: channel energies and the power-weighted cross-channel average
    energies = np.empty(scales.size)
    w_accum = np.zeros(n_half)
    wh_accum = np.zeros(n_half, dtype=complex)
    for i, a in enumerate(scales):
        weight, transfer, energy = channel(a, with_energy=True)
        energies[i] = energy
        w_accum += _fold_half(weight, nfft)
        wh_accum += _fold_half(weight * transfer, nfft)

    e_max = energies.max()
    if e_max <= 0.0:
        dead = np.ones(scales.size, dtype=bool)
    else:
        dead = energies < DEAD_CHANNEL_FRACTION * e_max
    if dead.all():
        return ITFSurface(
            scales, np.zeros((scales.size, n_lags)), dt, wavelet, reg,
            dead=dead, channel_energy=energies,
        )

    covered = np.flatnonzero(w_accum > 0)
    avg_half = np.zeros(n_half, dtype=complex)
    avg_half[covered] = wh_accum[covered] / w_accum[covered]
    k_lo, k_hi = covered[0], covered[-1]
    avg_half[:k_lo] = avg_half[k_lo].real  # flat extension through DC
    avg_half[k_hi + 1 :] = avg_half[k_hi]
    bins = np.arange(n_half)
    holes = np.flatnonzero((w_accum == 0) & (bins > k_lo) & (bins < k_hi))
    if holes.size:
        pos = np.searchsorted(covered, holes)
        left = covered[np.maximum(pos - 1, 0)]
        right = covered[np.minimum(pos, covered.size - 1)]
        nearest = np.where(holes - left <= right - holes, left, right)
        avg_half[holes] = avg_half[nearest]
    avg_full = _hermitian_complete(avg_half, nfft)

    # pass 2: per-channel causal fits anchored to the average off-band
    rows = np.zeros((scales.size, n_lags))
    for i, a in enumerate(scales):
        if dead[i]:
            continue
        weight, transfer, _ = channel(a, with_energy=False)
        rows[i] = _fit_causal_row(
            _fold_half(weight, nfft), _fold_half(weight * transfer, nfft),
            avg_full, nfft, n_lags, dt,
        )

    return ITFSurface(scales, rows, dt, wavelet, reg, dead=dead, channel_energy=energies)


def scale_average(itf: ITFSurface, weights=None) -> np.ndarray:
    """Collapse a surface to one kernel by weighted row averaging.

    Default weights are the channels' input energies (uniform when the
    surface no longer carries them); dead rows are excluded.  Explicit
    weights must be non-negative, one per scale.
    """
    live = ~itf.dead
    if not live.any():
        return np.zeros(itf.n_lags)
    if weights is None:
        if itf.channel_energy is not None:
            weights = itf.channel_energy.copy()
        else:
            weights = live.astype(float)
    else:
        weights = np.asarray(weights, dtype=float).copy()
        if weights.shape != (itf.scales.size,) or np.any(weights < 0):
            raise WaveidError("weights must be non-negative, one per scale")
    weights[~live] = 0.0
    total = weights.sum()
    if total <= 0:
        raise WaveidError("averaging weights sum to zero")
    return (weights[:, None] * itf.values).sum(axis=0) / total


def row_dispersion(itf: ITFSurface) -> float:
    """Worst relative L2 deviation of any live row from the live-row mean.

    Near zero for a linear time-invariant system identified from clean
    records; grows with nonlinearity, which makes the apparent kernel
    depend on the analysis band.
    """
    live = itf.values[~itf.dead]
    if live.shape[0] < 2:
        return 0.0
    mean = live.mean(axis=0)
    norm = np.linalg.norm(mean)
    if norm == 0.0:
        return 0.0
    return float(max(np.linalg.norm(row - mean) / norm for row in live))


# ---------------------------------------------------------------------------
# Correlation-domain identification.


def _levinson_general(col: np.ndarray, rhs: np.ndarray):
    """Solve toeplitz(col) h = rhs for a symmetric positive-definite system.

    Classic Levinson recursion with a general right-hand side, O(n^2).
    Returns (solution, normalized prediction error); the solution is None
    when a reflection coefficient reaches the stability limit and a dense
    solver should take over.
    """
    r = col / col[0]
    b = rhs / col[0]
    y = np.array([b[0]])
    f = np.array([1.0])
    err = 1.0
    for k in range(1, rhs.size):
        past = r[k:0:-1]
        kappa = -(f @ past) / err
        if abs(kappa) >= 1.0 - 1e-10:
            return None, err
        f = np.concatenate([f, [0.0]]) + kappa * np.concatenate([[0.0], f[::-1]])
        err *= 1.0 - kappa * kappa
        mu = (b[k] - y @ past) / err
        y = np.concatenate([y, [0.0]]) + mu * f[::-1]
    return y, err


def wiener_hopf_identify(rxx: CorrelationFunction, rxy: CorrelationFunction,
                         n_lags: int) -> np.ndarray:
    """Kernel from correlation functions: solve the discrete normal equations

        sum_k h_k Rxx(|j - k|) dt = Rxy(j),   j = 0 .. n_lags-1.

    Solved by Levinson recursion; when a reflection coefficient reaches
    magnitude 1 - 1e-10 the solve restarts with a dense factorization.  A
    condition estimate above 1e12, or normal-equation residuals above 1e-8
    relative, raise :class:`NumericalError` instead of returning a wild
    kernel.
    """
    if not (isinstance(n_lags, (int, np.integer)) and n_lags >= 1):
        raise WaveidError(f"n_lags must be a positive integer, got {n_lags}")
    if len(rxx) < n_lags or len(rxy) < n_lags:
        raise WaveidError(f"correlation functions must cover at least {n_lags} lags")
    if rxx.dt != rxy.dt:
        raise WaveidError("correlation functions must share the sample interval")
    if rxx.values[0] <= 0:
        raise WaveidError("autocorrelation at lag zero must be positive")
    col = rxx.values[:n_lags] * rxx.dt
    b = rxy.values[:n_lags].astype(float)

    h, pred_err = _levinson_general(col, b)

    dense = scipy.linalg.toeplitz(col) if n_lags <= 1024 else None
    if dense is not None:
        cond = np.linalg.cond(dense)
    else:
        # Gershgorin bound on the largest eigenvalue over the Levinson
        # prediction-error proxy for the smallest
        cond = np.abs(col).sum() / max(col[0] * pred_err, np.finfo(float).tiny)
    if not math.isfinite(cond) or cond > 1e12:
        raise NumericalError(
            f"autocorrelation matrix is ill-conditioned (estimate {cond:.3g}); "
            "reduce n_lags or use a richer input"
        )
    if h is None or not np.all(np.isfinite(h)):
        try:
            h = np.linalg.solve(
                dense if dense is not None else scipy.linalg.toeplitz(col), b
            )
        except np.linalg.LinAlgError:
            raise NumericalError(
                "autocorrelation matrix is numerically singular; "
                "reduce n_lags or use a richer input"
            ) from None
    residual = scipy.linalg.matmul_toeplitz(col, h) - b
    scale = max(np.linalg.norm(b), col[0] * np.linalg.norm(h))
    if scale > 0 and np.linalg.norm(residual) > 1e-8 * scale:
        raise NumericalError(
            "normal equations were not solved to tolerance "
            f"(relative residual {np.linalg.norm(residual) / scale:.3g})"
        )
    return h


# ---------------------------------------------------------------------------
# Reconstruction and error reporting.


def reconstruct(x: Signal, itf: ITFSurface, mode: str = "wavelet_domain") -> Signal:
    """Predict the system output for ``x`` from an identified surface.

    ``time_domain`` convolves with the scale-averaged kernel.
    ``wavelet_domain`` convolves each channel of x with that channel's row,
    inverts the resulting surface, and adds the scale-averaged response of
    the residual the analysis grid did not cover: the inverse formula only
    reproduces content inside the covered band, and the residual term
    carries DC and out-of-band content through the averaged kernel instead
    of dropping it.  Requires the logarithmic grid the inverse needs.
    """
    if mode not in ("wavelet_domain", "time_domain"):
        raise WaveidError(f"unknown reconstruction mode {mode!r}")
    if abs(x.dt - itf.dt) > 1e-9 * itf.dt:
        raise WaveidError("record and surface sample intervals differ")
    h_avg = scale_average(itf)
    n = len(x)
    if mode == "time_domain":
        return Signal(np.convolve(x.samples, h_avg)[:n] * x.dt, x.dt, x.t0)
    scales = itf.scales
    dj = math.log2(_log_ratio(scales))
    span = math.log2(scales[-1] / scales[0])
    kappa = _delta_kappa(itf.wavelet.kind, itf.wavelet.param, scales.size, round(span, 9))
    wx = _analyze(x.samples, x.dt, scales, itf.wavelet)
    nfft = next_pow2(n + itf.n_lags)
    wy = np.empty_like(wx)
    for i in range(scales.size):
        prod = np.fft.fft(wx[i], nfft) * np.fft.fft(itf.values[i], nfft)
        wy[i] = np.fft.ifft(prod)[:n] * x.dt
    y_band = _synthesize(wy, scales, dj, kappa)
    residual = x.samples - _synthesize(wx, scales, dj, kappa)
    y_rest = np.convolve(residual, h_avg)[:n] * x.dt
    return Signal(y_band + y_rest, x.dt, x.t0)


def restore_error(y: Signal, y_hat: Signal, per_channel_error=None) -> RestoreReport:
    """Compare a reconstruction against the recorded output.

    epsilon_rms = sqrt(mean (y - y_hat)^2); epsilon_rel normalizes by ||y||
    and is None for an identically zero reference.
    """
    if len(y) != len(y_hat):
        raise WaveidError("records must have equal length")
    if abs(y.dt - y_hat.dt) > 1e-9 * y.dt:
        raise WaveidError("records must share the sample interval")
    diff = y.samples - y_hat.samples
    rms = float(np.sqrt(np.mean(diff * diff)))
    norm = float(np.linalg.norm(y.samples))
    rel = float(np.linalg.norm(diff) / norm) if norm > 0 else None
    return RestoreReport(rel, rms, per_channel_error)


def channel_restore_errors(x: Signal, y: Signal, itf: ITFSurface) -> np.ndarray:
    """Relative wavelet-domain reconstruction error per channel.

    For each live scale, convolves the x channel with the identified row
    and compares against the y channel: ||row * W_x - W_y|| / ||W_y||.
    Dead channels (and channels where y has no energy) report NaN.
    """
    if len(x) != len(y):
        raise WaveidError("records must have equal length")
    n = len(x)
    wx = _analyze(x.samples, x.dt, itf.scales, itf.wavelet)
    wy = _analyze(y.samples, y.dt, itf.scales, itf.wavelet)
    nfft = next_pow2(n + itf.n_lags)
    out = np.full(itf.scales.size, np.nan)
    for i in range(itf.scales.size):
        if itf.dead[i]:
            continue
        prod = np.fft.fft(wx[i], nfft) * np.fft.fft(itf.values[i], nfft)
        predicted = np.fft.ifft(prod)[:n] * x.dt
        norm = np.linalg.norm(wy[i])
        if norm > 0:
            out[i] = float(np.linalg.norm(predicted - wy[i]) / norm)
    return out


# ---------------------------------------------------------------------------
# Surface serialization: same layout as the coefficient format but with the
# itf-v1 tag and real-valued rows.


def write_itf(itf: ITFSurface, path) -> None:
    with open(path, "w") as fh:
        fh.write(
            f"itf-v1 {itf.wavelet.label()} {itf.dt:.17g} "
            f"{itf.values.shape[0]} {itf.values.shape[1]}\n"
        )
        fh.write(" ".join(f"{a:.17g}" for a in itf.scales) + "\n")
        for row in itf.values:
            fh.write(" ".join(f"{v:.17g}" for v in row) + "\n")


def read_itf(path) -> ITFSurface:
    """Read a kernel surface.  The format does not carry the regularization
    policy or the channel energies, so those fields come back empty and row
    averaging falls back to uniform weights; all-zero rows are flagged dead
    on the way in."""
    with open(path) as fh:
        lines = fh.read().splitlines()
    if len(lines) < 3:
        raise FormatError(f"{path}: truncated surface file")
    wavelet, dt, n_rows, n_cols = _read_header(lines[0], path, "itf-v1")
    scales = _read_scales(lines[1], path, n_rows)
    if len(lines) != 2 + n_rows:
        raise FormatError(f"{path}: expected {n_rows} kernel rows")
    values = np.empty((n_rows, n_cols))
    for i, line in enumerate(lines[2:]):
        cells = line.split()
        if len(cells) != n_cols:
            raise FormatError(f"{path}: row {i} has {len(cells)} entries, expected {n_cols}")
        try:
            values[i] = [float(c) for c in cells]
        except ValueError:
            raise FormatError(f"{path}: row {i}: malformed value") from None
    if not np.all(np.isfinite(values)):
        raise FormatError(f"{path}: non-finite kernel values")
    dead = ~np.any(values != 0.0, axis=1)
    return ITFSurface(scales, values, dt, wavelet, dead=dead)
