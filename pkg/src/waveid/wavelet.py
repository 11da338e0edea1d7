"""Continuous and discrete wavelet transforms.

The forward transform correlates the record with scaled copies of an
L2-normalized mother wavelet,

    W(a, b) = integral x(t) (1/sqrt(a)) conj(psi((t - b)/a)) dt,

evaluated per scale in the frequency domain on a zero-padded grid, so the
transform is linear (non-circular) up to the wavelet's decay.  Analytic
mothers (Morlet, Paul) have one-sided spectra; real mothers (derivative-of-
Gaussian families, Shannon) are two-sided.  All mothers are unit-energy:
integral |psi|^2 dt = 1.

The inverse for logarithmic scale grids is the single-sum delta projection

    x(b) ~ (dj * sqrt(dt) / C) * sum_i Re{W(a_i, b)} / sqrt(a_i),

where C is obtained by running the forward/inverse pair on a unit impulse
(see :func:`calibrate_delta_constant`).  The calibration deliberately runs
on a scale grid extended four octaves past both ends of the requested one:
C measures the mother's reconstruction weight, and estimating it on the
bare grid would fold the grid's own band edges into the constant and bias
every in-band reconstruction.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import trapezoid
from scipy.special import erf, gamma

from .errors import FormatError, NumericalError, WaveidError
from .signals import Signal
from .spectral import next_pow2

__all__ = [
    "MotherWavelet",
    "ScaleGrid",
    "CoefficientSurface",
    "DwtTree",
    "parse_wavelet",
    "cwt",
    "icwt",
    "shift_check",
    "calibrate_delta_constant",
    "dwt_d4",
    "idwt_d4",
    "read_surface",
    "write_surface",
]

# Cone-of-influence half-width in units of the scale: boundary effects from
# zero padding are taken to reach 4*a to either side of each sample.
COI_FACTOR = 4.0

_FAMILIES = ("morlet", "dog", "gauss", "paul", "shannon")

# family members whose admissibility quadrature already ran this process
_VALIDATED: set = set()


@dataclass(frozen=True)
class MotherWavelet:
    """A mother wavelet family member.

    kind/param: "morlet" (center frequency omega0 >= 5), "dog" (derivative
    order n >= 1 of exp(-t^2/2); order 2 is the mexican hat), "gauss"
    (derivative order n >= 1 of exp(-t^2)), "paul" (order m >= 1), or
    "shannon" (no parameter).

    Constructing a member verifies admissibility: zero mean and unit energy,
    each to 1e-6.  Gaussian-derivative families are checked by time-domain
    quadrature over their (fast-decaying) support; Morlet, Paul, and Shannon
    are defined spectrally and are checked on the frequency axis, where the
    same integrals live via Parseval and where 1/t time tails (Paul at low
    order, Shannon) do not defeat the quadrature.
    """

    kind: str
    param: float = 0.0

    def __post_init__(self):
        if self.kind not in _FAMILIES:
            raise WaveidError(f"unknown wavelet family {self.kind!r}")
        p = float(self.param)
        if self.kind == "morlet" and p < 5.0:
            raise WaveidError(
                f"morlet center frequency must be >= 5 for admissibility, got {p}"
            )
        if self.kind in ("dog", "gauss", "paul"):
            if p != int(p) or not 1 <= int(p) <= 16:
                raise WaveidError(
                    f"{self.kind} order must be an integer in 1..16, got {self.param}"
                )
        object.__setattr__(self, "param", p)
        self._check_admissibility()

    # -- defining forms ----------------------------------------------------

    @property
    def is_analytic(self) -> bool:
        return self.kind in ("morlet", "paul")

    def label(self) -> str:
        if self.kind == "shannon":
            return "shannon"
        if self.kind == "morlet":
            return f"morlet:{self.param:g}"
        return f"{self.kind}:{int(self.param)}"

    def spectrum(self, omega: np.ndarray) -> np.ndarray:
        """The mother's Fourier transform psi_hat(omega), unit-energy
        normalized so that integral |psi_hat|^2 d omega = 2 pi."""
        w = np.asarray(omega, dtype=float)
        if self.kind == "morlet":
            w0 = self.param
            out = np.zeros(w.shape, dtype=complex)
            pos = w > 0
            out[pos] = math.sqrt(2.0) * math.pi**0.25 * np.exp(-0.5 * (w[pos] - w0) ** 2)
            return out
        if self.kind == "paul":
            m = int(self.param)
            out = np.zeros(w.shape, dtype=complex)
            pos = w > 0
            coef = 2.0**m * math.sqrt(4.0 * math.pi / math.factorial(2 * m))
            out[pos] = coef * w[pos] ** m * np.exp(-w[pos])
            return out
        if self.kind == "shannon":
            out = np.zeros(w.shape, dtype=complex)
            band = (np.abs(w) >= math.pi) & (np.abs(w) <= 2 * math.pi)
            out[band] = 1.0
            return out
        n = int(self.param)
        if self.kind == "dog":
            coef = -math.sqrt(2.0 * math.pi / gamma(n + 0.5)) * (-1.0) ** n
            return coef * (1j * w) ** n * np.exp(-0.5 * w * w)
        # gauss: derivatives of exp(-t^2); FT of exp(-t^2) is sqrt(pi) exp(-w^2/4)
        coef = -((-1.0) ** n) * math.sqrt(math.pi) * self._gauss_norm(n)
        return coef * (1j * w) ** n * np.exp(-0.25 * w * w)

    @staticmethod
    def _gauss_norm(n: int) -> float:
        # || d^n/dt^n exp(-t^2) ||^2 = (1/2pi) int w^2n pi exp(-w^2/2) dw
        #                            = double-factorial(2n-1) * sqrt(pi/2)
        dfact = 1.0
        for k in range(2 * n - 1, 0, -2):
            dfact *= k
        return 1.0 / math.sqrt(dfact * math.sqrt(math.pi / 2.0))

    def time(self, t: np.ndarray) -> np.ndarray:
        """The mother psi(t).  Exact closed forms, including the Heaviside
        truncation correction for the analytic families."""
        t = np.asarray(t, dtype=float)
        if self.kind == "morlet":
            w0 = self.param
            out = np.zeros(t.shape, dtype=complex)
            # beyond |t| ~ 30 the Gaussian factor underflows before the
            # complex erf overflows, so clamp the window instead
            inside = np.abs(t) < 30.0
            ti = t[inside]
            out[inside] = (
                0.5
                * math.pi**-0.25
                * np.exp(1j * w0 * ti - 0.5 * ti * ti)
                * (1.0 + erf((w0 + 1j * ti) / math.sqrt(2.0)))
            )
            return out
        if self.kind == "paul":
            m = int(self.param)
            coef = 2.0**m * math.factorial(m) / math.sqrt(math.pi * math.factorial(2 * m))
            return coef * (1.0 - 1j * t) ** (-(m + 1))
        if self.kind == "shannon":
            return 2.0 * np.sinc(2.0 * t) - np.sinc(t)
        n = int(self.param)
        if self.kind == "dog":
            herm = np.polynomial.hermite_e.hermeval(t, [0.0] * n + [1.0])
            return -herm * np.exp(-0.5 * t * t) / math.sqrt(gamma(n + 0.5))
        herm = np.polynomial.hermite.hermval(t, [0.0] * n + [1.0])
        return -self._gauss_norm(n) * herm * np.exp(-t * t)

    @property
    def pad_radius(self) -> float:
        """Half-width, in units of the scale, beyond which the mother is
        treated as negligible when sizing transform padding.  Slow-decay
        members (Shannon, low-order Paul) are capped at 256 and carry a
        correspondingly larger wrap-around residual."""
        if self.kind == "morlet":
            return 8.0
        if self.kind in ("dog", "gauss"):
            return 10.0 + 0.5 * self.param
        if self.kind == "paul":
            return min(256.0, max(10.0, 10.0 ** (8.0 / (self.param + 1))))
        return 256.0

    def peak_omega(self) -> float:
        """Angular frequency at which |psi_hat| peaks: a sinusoid of angular
        frequency w has its strongest response at scale a = peak_omega / w."""
        if self.kind == "morlet":
            return self.param
        if self.kind == "paul":
            return float(self.param)
        if self.kind == "shannon":
            return 1.5 * math.pi
        if self.kind == "dog":
            return math.sqrt(self.param)
        return math.sqrt(2.0 * self.param)

    # -- admissibility -----------------------------------------------------

    def _check_admissibility(self) -> None:
        key = (self.kind, self.param)
        if key in _VALIDATED:
            return
        tol = 1e-6
        if self.kind in ("dog", "gauss"):
            half = 20.0 + self.param
            t = np.linspace(-half, half, 60001)
            psi = self.time(t)
            mean = abs(trapezoid(psi, t))
            energy = trapezoid(np.abs(psi) ** 2, t)
        elif self.kind == "shannon":
            # piecewise-constant spectrum: both integrals are exact sums
            mean = abs(complex(self.spectrum(np.array([0.0]))[0]))
            energy = 2.0 * (2.0 * math.pi - math.pi) / (2.0 * math.pi)
        else:
            # spectrally defined: psi_hat(0) gives the mean exactly and
            # Parseval turns the energy integral into (1/2pi) int |psi_hat|^2
            hi = 40.0 + 4.0 * self.param
            w = np.linspace(0.0, hi, 400001)
            ph = self.spectrum(w)
            mean = abs(complex(self.spectrum(np.array([0.0]))[0]))
            energy = trapezoid(np.abs(ph) ** 2, w) / (2.0 * math.pi)
        if mean > tol:
            raise WaveidError(
                f"{self.label()}: mother is not zero-mean (|integral| = {mean:.3g})"
            )
        if abs(energy - 1.0) > tol:
            raise WaveidError(
                f"{self.label()}: mother is not unit-energy (got {energy:.9f})"
            )
        _VALIDATED.add(key)


def parse_wavelet(text: str) -> MotherWavelet:
    """Parse a wavelet spec: morlet:<omega0>, dog:<n>, gauss:<n>, paul:<m>,
    shannon, or mhat / mexican_hat (aliases for dog:2).  A bare family name
    uses its default parameter (morlet:6, dog:2, gauss:2, paul:4)."""
    text = text.strip()
    name, _, arg = text.partition(":")
    name = name.strip().lower()
    if name in ("mhat", "mexican_hat"):
        if arg:
            raise FormatError(f"{text!r}: the mexican hat takes no parameter")
        return MotherWavelet("dog", 2)
    if name == "shannon":
        if arg:
            raise FormatError(f"{text!r}: shannon takes no parameter")
        return MotherWavelet("shannon")
    defaults = {"morlet": 6.0, "dog": 2.0, "gauss": 2.0, "paul": 4.0}
    if name not in defaults:
        raise FormatError(f"unknown wavelet spec {text!r}")
    if not arg:
        return MotherWavelet(name, defaults[name])
    try:
        value = float(arg)
    except ValueError:
        raise FormatError(f"{text!r}: parameter must be numeric") from None
    return MotherWavelet(name, value)


@dataclass(frozen=True)
class ScaleGrid:
    """A set of analysis scales from a_min to a_max (seconds).

    spacing "log" places the scales at a constant ratio (required by the
    inverse transform); "linear" at a constant difference.
    """

    a_min: float
    a_max: float
    count: int
    spacing: str = "log"

    def __post_init__(self):
        if not (self.a_min > 0 and math.isfinite(self.a_min)):
            raise WaveidError(f"a_min must be positive, got {self.a_min}")
        if not (self.a_max > self.a_min and math.isfinite(self.a_max)):
            raise WaveidError(f"a_max must exceed a_min, got {self.a_max}")
        if not (isinstance(self.count, (int, np.integer)) and self.count >= 2):
            raise WaveidError(f"scale count must be an integer >= 2, got {self.count}")
        if self.spacing not in ("log", "linear"):
            raise WaveidError(f"spacing must be 'log' or 'linear', got {self.spacing!r}")

    def values(self) -> np.ndarray:
        if self.spacing == "log":
            return self.a_min * (self.a_max / self.a_min) ** (
                np.arange(self.count) / (self.count - 1)
            )
        return np.linspace(self.a_min, self.a_max, self.count)


@dataclass(frozen=True, eq=False)
class CoefficientSurface:
    """CWT coefficients: one row per scale, one column per translation."""

    scales: np.ndarray
    values: np.ndarray
    dt: float
    wavelet: MotherWavelet
    t0: float = 0.0
    coi_margins: np.ndarray = field(default=None)

    def __post_init__(self):
        scales = np.asarray(self.scales, dtype=float)
        values = np.asarray(self.values)
        if values.ndim != 2 or values.shape[0] != scales.size:
            raise WaveidError("surface must have one row per scale")
        object.__setattr__(self, "scales", scales)
        object.__setattr__(self, "values", values)
        if self.coi_margins is None:
            object.__setattr__(self, "coi_margins", _coi_margins(scales, self.dt, values.shape[1]))
        else:
            object.__setattr__(self, "coi_margins", np.asarray(self.coi_margins, dtype=int))

    @property
    def translations(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.values.shape[1])


def _coi_margins(scales: np.ndarray, dt: float, n: int) -> np.ndarray:
    """Per-scale count of boundary-affected samples at each record end."""
    return np.minimum(np.ceil(COI_FACTOR * scales / dt).astype(int), n)


def _analyze(x: np.ndarray, dt: float, scales: np.ndarray, w: MotherWavelet,
             extra_tail: int = 0) -> np.ndarray:
    """Forward transform core: one frequency-domain correlation per scale.

    The record is zero-padded so the wavelet response of the padded block is
    linear, not circular; ``extra_tail`` reserves further room when callers
    append data later at the same padded length.
    """
    n = x.size
    pad = int(math.ceil(w.pad_radius * scales.max() / dt))
    nfft = next_pow2(n + extra_tail + 2 * pad)
    spec = np.fft.fft(x, nfft)
    omega = 2.0 * math.pi * np.fft.fftfreq(nfft, d=dt)
    rows = np.empty((scales.size, n), dtype=complex)
    for i, a in enumerate(scales):
        rows[i] = np.fft.ifft(spec * (math.sqrt(a) * np.conj(w.spectrum(a * omega))))[:n]
    return rows


def cwt(x: Signal, wavelet: MotherWavelet, grid: ScaleGrid) -> CoefficientSurface:
    """Continuous wavelet transform of a record.

    The record must hold at least 8 samples and every scale must be
    resolvable, i.e. a_min >= 2 dt.  Boundary handling is zero padding; the
    affected margin (4a to each side) is recorded per scale in
    ``coi_margins``.
    """
    if len(x) < 8:
        raise WaveidError(f"record too short for analysis: {len(x)} < 8 samples")
    if grid.a_min < 2.0 * x.dt * (1.0 - 1e-12):
        raise WaveidError(
            f"scale {grid.a_min:g} s is below the resolution limit 2*dt = {2 * x.dt:g} s"
        )
    scales = grid.values()
    rows = _analyze(x.samples, x.dt, scales, wavelet)
    return CoefficientSurface(scales, rows, x.dt, wavelet, x.t0)


def _log_ratio(scales: np.ndarray) -> float:
    """The common ratio of a logarithmic grid, or raise if the grid is not
    logarithmic (relative tolerance 1e-9)."""
    if scales.size < 2:
        raise WaveidError("at least two scales are required")
    ratios = scales[1:] / scales[:-1]
    r0 = float(ratios[0])
    if r0 <= 1.0 or np.max(np.abs(ratios - r0)) > 1e-9 * r0:
        raise WaveidError(
            "inverse transform requires an ascending logarithmic scale grid"
        )
    return r0


@functools.lru_cache(maxsize=32)
def _delta_kappa(kind: str, param: float, count: int, log2_span: float) -> float:
    """Dimensionless reconstruction constant kappa = C / sqrt(dt).

    Runs the transform of a unit impulse on the requested grid extended four
    octaves past each end (same log density) and sums the inverse formula at
    the impulse position.  kappa is invariant under joint rescaling of dt
    and the scales, so it is cached per grid shape rather than per grid.
    """
    dj = log2_span / (count - 1)
    n_ext = int(math.ceil(4.0 / dj))
    idx = np.arange(-n_ext, count + n_ext)
    scales = 2.0 * np.power(2.0, dj * idx)  # in dt units; a_min = 2 dt
    w = MotherWavelet(kind, param)
    n = 4096
    delta = np.zeros(n)
    delta[n // 2] = 1.0
    rows = _analyze(delta, 1.0, scales, w)
    center = rows[:, n // 2]
    kappa = dj * float(np.sum(center.real / np.sqrt(scales)))
    floor = 1e-6 * dj * float(np.sum(np.abs(center) / np.sqrt(scales)))
    if not math.isfinite(kappa) or kappa <= max(floor, 0.0):
        raise NumericalError(
            f"delta calibration failed for {w.label()}: the impulse projects "
            f"to {kappa:.3g}; this mother has no single-sum inverse on this grid"
        )
    return kappa


def calibrate_delta_constant(wavelet: MotherWavelet, grid: ScaleGrid) -> float:
    """Reconstruction constant C for the single-sum inverse on ``grid``.

    C scales as sqrt(dt); the returned value is referred to the interval
    dt = a_min / 2 (the finest resolvable sampling for this grid), and
    :func:`icwt` rescales it to the surface's actual interval.  For the
    Morlet with omega0 = 6, C / (sqrt(dt) * pi**-0.25) is about 0.776, the
    factor tabulated for the unit-peak wavelet convention.

    Odd-symmetric mothers (odd derivative orders) project an impulse to
    zero at its own position and therefore admit no constant; they raise
    :class:`NumericalError`.
    """
    scales = grid.values()
    if grid.spacing != "log":
        raise WaveidError("delta calibration requires a logarithmic scale grid")
    ratio = _log_ratio(scales)
    span = math.log2(scales[-1] / scales[0])
    kappa = _delta_kappa(wavelet.kind, wavelet.param, scales.size, round(span, 9))
    dt_ref = grid.a_min / 2.0
    return kappa * math.sqrt(dt_ref)


def icwt(surface: CoefficientSurface) -> Signal:
    """Invert a surface computed on a logarithmic scale grid.

    Linear grids raise: the single-sum inverse weighs each scale by the
    constant log-bandwidth dj it covers, which linear spacing does not have.
    """
    scales = surface.scales
    ratio = _log_ratio(scales)
    dj = math.log2(ratio)
    span = math.log2(scales[-1] / scales[0])
    kappa = _delta_kappa(
        surface.wavelet.kind, surface.wavelet.param, scales.size, round(span, 9)
    )
    rec = _synthesize(surface.values, scales, dj, kappa)
    return Signal(rec, surface.dt, surface.t0)


def _synthesize(rows: np.ndarray, scales: np.ndarray, dj: float,
                kappa: float) -> np.ndarray:
    """Inverse-formula core shared by icwt and the identification module.

    kappa = C / sqrt(dt) is dimensionless, which cancels the sqrt(dt) of the
    formula's prefactor against the sqrt(dt) carried by the coefficients, so
    no explicit dt appears here.
    """
    weights = 1.0 / np.sqrt(scales)
    return (dj / kappa) * (rows.real * weights[:, None]).sum(axis=0)


def shift_check(x: Signal, wavelet: MotherWavelet, grid: ScaleGrid, shift: int) -> float:
    """Maximum coefficient discrepancy under a time shift of the input.

    Computes the transforms of x and of x delayed by ``shift`` samples and
    compares W_delayed(a, b) with W(a, b - shift) over the columns that sit
    outside both records' boundary margins (4a per side).  Scales whose
    margins leave no valid columns are skipped.

    The delayed record keeps every sample of x (it grows by ``shift``), and
    the reference record is zero-extended to the same length.  Dropping the
    trailing samples instead would leave their wavelet-tail contribution in
    the difference -- for broadband input that floor sits around 1e-4 of the
    coefficient peak no matter how wide the excluded margin is.  With a common
    record length the two transforms share one frequency grid, the delay is a
    plain index shift of the same data, and the discrepancy is FFT round-off.
    """
    n = len(x)
    if not (isinstance(shift, (int, np.integer)) and 0 <= shift < n // 4):
        raise WaveidError(f"shift must be an integer in [0, {n // 4}), got {shift}")
    extended = np.concatenate([x.samples, np.zeros(shift)])
    delayed = np.concatenate([np.zeros(shift), x.samples])
    base = cwt(Signal(extended, x.dt, x.t0), wavelet, grid)
    moved = cwt(Signal(delayed, x.dt, x.t0), wavelet, grid)
    worst = 0.0
    any_valid = False
    for i, margin in enumerate(base.coi_margins):
        lo = margin + shift
        hi = n + shift - margin
        if lo >= hi:
            continue
        any_valid = True
        disc = np.max(np.abs(moved.values[i, lo:hi] - base.values[i, lo - shift : hi - shift]))
        worst = max(worst, float(disc))
    if not any_valid:
        raise WaveidError(
            "record too short: every scale's boundary margin covers the whole record"
        )
    return worst


# ---------------------------------------------------------------------------
# Daubechies-4 discrete transform, periodic boundary.

_SQRT3 = math.sqrt(3.0)
_D4_LO = np.array([1.0 + _SQRT3, 3.0 + _SQRT3, 3.0 - _SQRT3, 1.0 - _SQRT3]) / (4.0 * math.sqrt(2.0))
_D4_HI = np.array([_D4_LO[3], -_D4_LO[2], _D4_LO[1], -_D4_LO[0]])


@dataclass(frozen=True, eq=False)
class DwtTree:
    """Multi-level DWT coefficients: details[0] is the finest level."""

    approx: np.ndarray
    details: list

    @property
    def levels(self) -> int:
        return len(self.details)


def dwt_d4(x, levels: int) -> DwtTree:
    """Daubechies-4 analysis with periodic boundary handling.

    The input length must be divisible by 2**levels.  The filter bank is
    orthonormal, so the coefficients conserve energy and the inverse is
    exact.
    """
    s = np.asarray(x, dtype=float)
    if s.ndim != 1 or s.size == 0:
        raise WaveidError("dwt expects a non-empty 1-D array")
    if not (isinstance(levels, (int, np.integer)) and levels >= 1):
        raise WaveidError(f"levels must be a positive integer, got {levels}")
    if s.size % (1 << levels) != 0:
        raise WaveidError(
            f"record length {s.size} is not divisible by 2**{levels}"
        )
    details = []
    for _ in range(levels):
        n = s.size
        idx = (2 * np.arange(n // 2)[:, None] + np.arange(4)[None, :]) % n
        windows = s[idx]
        details.append(windows @ _D4_HI)
        s = windows @ _D4_LO
    return DwtTree(s, details)


def idwt_d4(tree: DwtTree) -> np.ndarray:
    """Exact inverse of :func:`dwt_d4`."""
    s = np.asarray(tree.approx, dtype=float)
    for d in reversed(tree.details):
        d = np.asarray(d, dtype=float)
        if d.shape != s.shape:
            raise WaveidError("detail/approximation lengths are inconsistent")
        n = 2 * s.size
        out = np.zeros(n)
        idx = (2 * np.arange(s.size)[:, None] + np.arange(4)[None, :]) % n
        np.add.at(out, idx, s[:, None] * _D4_LO[None, :] + d[:, None] * _D4_HI[None, :])
        s = out
    return s


# ---------------------------------------------------------------------------
# Surface serialization (text, 17 significant digits).

def write_surface(surface: CoefficientSurface, path) -> None:
    """Write a coefficient surface:

    line 1: ``wcs-v1 <wavelet> <dt> <n_scales> <n_translations>``
    line 2: the scale values
    then one line per scale of ``re:im`` coefficient pairs.
    """
    values = surface.values
    with open(path, "w") as fh:
        fh.write(
            f"wcs-v1 {surface.wavelet.label()} {surface.dt:.17g} "
            f"{values.shape[0]} {values.shape[1]}\n"
        )
        fh.write(" ".join(f"{a:.17g}" for a in surface.scales) + "\n")
        for row in values:
            fh.write(" ".join(f"{c.real:.17g}:{c.imag:.17g}" for c in row) + "\n")


def _read_header(line: str, path, tag: str):
    parts = line.split()
    if len(parts) != 5 or parts[0] != tag:
        raise FormatError(f"{path}: expected header '{tag} <wavelet> <dt> <rows> <cols>'")
    try:
        wavelet = parse_wavelet(parts[1])
        dt = float(parts[2])
        n_rows = int(parts[3])
        n_cols = int(parts[4])
    except (ValueError, FormatError) as exc:
        raise FormatError(f"{path}: bad header: {exc}") from None
    if dt <= 0 or n_rows < 1 or n_cols < 1:
        raise FormatError(f"{path}: bad header dimensions")
    return wavelet, dt, n_rows, n_cols


def _read_scales(line: str, path, n_rows: int) -> np.ndarray:
    try:
        scales = np.array([float(v) for v in line.split()])
    except ValueError:
        raise FormatError(f"{path}: non-numeric scale value") from None
    if scales.size != n_rows or np.any(scales <= 0) or np.any(np.diff(scales) <= 0):
        raise FormatError(f"{path}: expected {n_rows} ascending positive scales")
    return scales


def read_surface(path) -> CoefficientSurface:
    """Read a surface written by :func:`write_surface`.

    The record start time is not stored in the format; surfaces read back
    in are referred to t0 = 0.
    """
    with open(path) as fh:
        lines = fh.read().splitlines()
    if len(lines) < 3:
        raise FormatError(f"{path}: truncated surface file")
    wavelet, dt, n_rows, n_cols = _read_header(lines[0], path, "wcs-v1")
    scales = _read_scales(lines[1], path, n_rows)
    if len(lines) != 2 + n_rows:
        raise FormatError(f"{path}: expected {n_rows} coefficient rows")
    values = np.empty((n_rows, n_cols), dtype=complex)
    for i, line in enumerate(lines[2:]):
        cells = line.split()
        if len(cells) != n_cols:
            raise FormatError(f"{path}: row {i} has {len(cells)} entries, expected {n_cols}")
        try:
            for j, cell in enumerate(cells):
                re_part, _, im_part = cell.partition(":")
                values[i, j] = complex(float(re_part), float(im_part))
        except ValueError:
            raise FormatError(f"{path}: row {i}: malformed coefficient") from None
    return CoefficientSurface(scales, values, dt, wavelet)
