"""Discrete Fourier analysis, convolution, and regularized spectral division.

Transforms follow the plain engineering convention

    X_k = sum_n x_n exp(-2 pi i k n / N),   x_n = (1/N) sum_k X_k exp(+...)

with no dt factors; physical scaling is applied by the callers that know the
sample interval.  Everything is exact for arbitrary N (the FFT backend is
mixed-radix), not just powers of two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import WaveidError
from .signals import Signal

__all__ = [
    "ComplexSpectrum",
    "RegularizationPolicy",
    "dft",
    "idft",
    "convolve_direct",
    "convolve_fft",
    "spectral_divide",
    "next_pow2",
]


def next_pow2(n: int) -> int:
    """Smallest power of two >= n."""
    return 1 << max(0, int(math.ceil(math.log2(n)))) if n > 1 else 1


@dataclass(frozen=True, eq=False)
class ComplexSpectrum:
    """DFT bins of a record together with the originating sample interval."""

    bins: np.ndarray
    dt: float = 1.0

    def __post_init__(self):
        bins = np.asarray(self.bins, dtype=complex)
        if bins.ndim != 1 or bins.size == 0:
            raise WaveidError("spectrum bins must be a non-empty 1-D array")
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise WaveidError(f"sample interval must be positive, got {self.dt}")
        object.__setattr__(self, "bins", bins)

    def __len__(self):
        return self.bins.size

    @property
    def frequencies(self) -> np.ndarray:
        """Bin frequencies in Hz (positive then negative half)."""
        return np.fft.fftfreq(self.bins.size, d=self.dt)


@dataclass(frozen=True)
class RegularizationPolicy:
    """How spectral division treats small denominators.

    ``kind`` is ``"water_level"`` (clamp |den|^2 from below at
    level * max |den|^2) or ``"tikhonov"`` (add level * max |den|^2 to the
    denominator everywhere).  ``level = 0`` requests exact division and is
    only meaningful for the water-level form.
    """

    kind: str
    level: float

    def __post_init__(self):
        if self.kind not in ("water_level", "tikhonov"):
            raise WaveidError(f"unknown regularization kind {self.kind!r}")
        if not (math.isfinite(self.level) and self.level >= 0):
            raise WaveidError(f"regularization level must be >= 0, got {self.level}")
        if self.kind == "tikhonov" and self.level == 0:
            raise WaveidError("tikhonov regularization requires a positive level")


def dft(x, dt: float = 1.0) -> ComplexSpectrum:
    """Forward DFT of a real or complex sequence, any length."""
    x = np.asarray(x)
    if x.ndim != 1 or x.size == 0:
        raise WaveidError("dft expects a non-empty 1-D sequence")
    return ComplexSpectrum(np.fft.fft(x), dt)


def idft(spectrum: ComplexSpectrum) -> np.ndarray:
    """Inverse DFT; returns the complex sequence (callers take .real if wanted)."""
    return np.fft.ifft(spectrum.bins)


def convolve_direct(x: Signal, kernel) -> Signal:
    """Causal running convolution y_n = dt * sum_{k<=n} h_k x_{n-k}.

    The input is implicitly zero before its first sample and the output is
    truncated to the input length, so y depends only on past and present
    input values.
    """
    h = np.asarray(kernel, dtype=float)
    if h.ndim != 1 or h.size == 0:
        raise WaveidError("kernel must be a non-empty 1-D array")
    n = len(x)
    y = np.convolve(x.samples, h)[:n] * x.dt
    return Signal(y, x.dt, x.t0)


def convolve_fft(x: Signal, kernel) -> Signal:
    """Same contract as :func:`convolve_direct`, evaluated by zero-padded FFT."""
    h = np.asarray(kernel, dtype=float)
    if h.ndim != 1 or h.size == 0:
        raise WaveidError("kernel must be a non-empty 1-D array")
    n = len(x)
    nfft = next_pow2(n + h.size - 1)
    y = np.fft.irfft(np.fft.rfft(x.samples, nfft) * np.fft.rfft(h, nfft), nfft)
    return Signal(y[:n] * x.dt, x.dt, x.t0)


def spectral_divide(
    numerator: ComplexSpectrum,
    denominator: ComplexSpectrum,
    reg: RegularizationPolicy,
) -> ComplexSpectrum:
    """Bin-wise regularized division H_k = N_k / D_k.

    water_level:  H_k = N_k conj(D_k) / max(|D_k|^2, level * max_j |D_j|^2)
    tikhonov:     H_k = N_k conj(D_k) / (|D_k|^2 + level * max_j |D_j|^2)

    With level = 0 (water level only) the division is exact and the
    denominator spectrum must not vanish anywhere.
    """
    num = numerator.bins
    den = denominator.bins
    if num.shape != den.shape:
        raise WaveidError(
            f"spectrum shapes differ: {num.shape} vs {den.shape}"
        )
    power = np.abs(den) ** 2
    floor = reg.level * power.max()
    if reg.kind == "water_level":
        if floor == 0.0 and np.any(power == 0.0):
            raise WaveidError(
                "exact division requested (level=0) but the denominator "
                "spectrum has zero bins"
            )
        h = num * np.conj(den) / np.maximum(power, floor) if floor > 0 else num / den
    else:
        h = num * np.conj(den) / (power + floor)
    return ComplexSpectrum(h, numerator.dt)
