"""Synthetic test systems: linear blocks, static nonlinearities, cascades.

Linear blocks are the classic first- and second-order lowpass elements

    first order:   H(s) = gain / (1 + T s)
    second order:  H(s) = gain * wn^2 / (s^2 + 2 zeta wn s + wn^2)

simulated by sampling the analytic impulse response (impulse invariance)
and convolving.  Cascade variants place a static nonlinearity before
(hammerstein) or after (wiener) a linear block.

A model spec mini-language builds systems from text, e.g.
``so:wn=50,zeta=0.2,gain=1`` or ``hammerstein:sat=0.8|fo:T=0.05,gain=2``;
see :func:`parse_model`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import FormatError, WaveidError
from .signals import Signal
from .spectral import convolve_fft

__all__ = [
    "IDENTITY",
    "Nonlinearity",
    "SystemModel",
    "SystemClass",
    "first_order",
    "second_order",
    "hammerstein",
    "wiener_cascade",
    "impulse_response",
    "simulate",
    "classify",
    "parse_model",
]


@dataclass(frozen=True)
class Nonlinearity:
    """A static (memoryless) nonlinearity.

    kinds: "identity"; "saturation" (clip at +-limit); "cubic"
    (c1 x + c3 x^3); "deadzone" (zero inside +-width, shifted toward zero
    outside, the standard backlash-free dead band).
    """

    kind: str
    params: tuple = ()

    def __post_init__(self):
        if self.kind == "identity":
            expected = 0
        elif self.kind in ("saturation", "deadzone"):
            expected = 1
        elif self.kind == "cubic":
            expected = 2
        else:
            raise WaveidError(f"unknown nonlinearity {self.kind!r}")
        if len(self.params) != expected:
            raise WaveidError(
                f"{self.kind} takes {expected} parameter(s), got {len(self.params)}"
            )
        params = tuple(float(p) for p in self.params)
        if self.kind == "saturation" and not params[0] > 0:
            raise WaveidError(f"saturation limit must be positive, got {params[0]}")
        if self.kind == "deadzone" and not params[0] > 0:
            raise WaveidError(f"deadzone width must be positive, got {params[0]}")
        object.__setattr__(self, "params", params)

    def apply(self, values: np.ndarray) -> np.ndarray:
        v = np.asarray(values, dtype=float)
        if self.kind == "identity":
            return v.copy()
        if self.kind == "saturation":
            limit = self.params[0]
            return np.clip(v, -limit, limit)
        if self.kind == "cubic":
            c1, c3 = self.params
            return c1 * v + c3 * v**3
        width = self.params[0]
        return np.sign(v) * np.maximum(np.abs(v) - width, 0.0)


IDENTITY = Nonlinearity("identity")


@dataclass(frozen=True)
class SystemModel:
    """A test system: a linear block, optionally wrapped in a cascade.

    variant "first_order" uses (T_const, gain); "second_order" uses
    (wn, zeta, gain); "hammerstein" and "wiener" hold the static block in
    ``nonlinearity`` and the linear block in ``inner``.
    """

    variant: str
    gain: float = 1.0
    T_const: float = None
    wn: float = None
    zeta: float = None
    nonlinearity: Nonlinearity = None
    inner: "SystemModel" = None

    def __post_init__(self):
        if self.variant == "first_order":
            if self.T_const is None or not self.T_const > 0:
                raise WaveidError(f"time constant must be positive, got {self.T_const}")
        elif self.variant == "second_order":
            if self.wn is None or not self.wn > 0:
                raise WaveidError(f"natural frequency must be positive, got {self.wn}")
            if self.zeta is None or not self.zeta > 0:
                raise WaveidError(f"damping ratio must be positive, got {self.zeta}")
        elif self.variant in ("hammerstein", "wiener"):
            if self.nonlinearity is None or self.inner is None:
                raise WaveidError(f"{self.variant} cascade needs a nonlinearity and a linear block")
            if self.inner.variant not in ("first_order", "second_order"):
                raise WaveidError("the cascaded block must be a linear model")
        else:
            raise WaveidError(f"unknown system variant {self.variant!r}")

    @property
    def is_linear(self) -> bool:
        if self.variant in ("first_order", "second_order"):
            return True
        return self.nonlinearity.kind == "identity"


def first_order(T_const: float, gain: float = 1.0) -> SystemModel:
    return SystemModel("first_order", gain=gain, T_const=T_const)


def second_order(wn: float, zeta: float, gain: float = 1.0) -> SystemModel:
    return SystemModel("second_order", gain=gain, wn=wn, zeta=zeta)


def hammerstein(nonlinearity: Nonlinearity, inner: SystemModel) -> SystemModel:
    return SystemModel("hammerstein", nonlinearity=nonlinearity, inner=inner)


def wiener_cascade(inner: SystemModel, nonlinearity: Nonlinearity) -> SystemModel:
    return SystemModel("wiener", nonlinearity=nonlinearity, inner=inner)


def impulse_response(model: SystemModel, n_lags: int, dt: float) -> np.ndarray:
    """Sampled analytic impulse response h(k dt), k = 0..n_lags-1.

    Only linear blocks have one; cascades raise unless their nonlinearity
    is the identity, in which case the linear block's response is returned.
    """
    if model.variant in ("hammerstein", "wiener"):
        if model.nonlinearity.kind != "identity":
            raise WaveidError("a nonlinear cascade has no impulse response")
        return impulse_response(model.inner, n_lags, dt)
    if not (isinstance(n_lags, (int, np.integer)) and n_lags >= 1):
        raise WaveidError(f"n_lags must be a positive integer, got {n_lags}")
    if not dt > 0:
        raise WaveidError(f"sample interval must be positive, got {dt}")
    t = dt * np.arange(n_lags)
    if model.variant == "first_order":
        return (model.gain / model.T_const) * np.exp(-t / model.T_const)
    wn, zeta, gain = model.wn, model.zeta, model.gain
    if zeta < 1.0:
        wd = wn * math.sqrt(1.0 - zeta * zeta)
        return gain * (wn * wn / wd) * np.exp(-zeta * wn * t) * np.sin(wd * t)
    if zeta == 1.0:
        return gain * wn * wn * t * np.exp(-wn * t)
    rad = wn * math.sqrt(zeta * zeta - 1.0)
    s1 = -zeta * wn + rad
    s2 = -zeta * wn - rad
    return gain * (wn * wn / (2.0 * rad)) * (np.exp(s1 * t) - np.exp(s2 * t))


def _check_sampling(model: SystemModel, dt: float) -> None:
    """Refuse simulations whose sampling undersamples the block dynamics."""
    if model.variant == "second_order":
        if model.wn * dt >= 0.5:
            raise WaveidError(
                f"sample interval too coarse: wn*dt = {model.wn * dt:.3g} >= 0.5"
            )
    elif model.variant == "first_order":
        if dt >= 0.5 * model.T_const:
            raise WaveidError(
                f"sample interval too coarse: dt = {dt:g} >= T/2 = {0.5 * model.T_const:g}"
            )


def simulate(model: SystemModel, x: Signal) -> Signal:
    """Response of a model to an input record.

    Linear blocks sample the analytic impulse response over the record
    length and convolve (y_n = dt * sum h_k x_{n-k}); cascades apply their
    static block before (hammerstein) or after (wiener) the linear block.
    """
    if model.variant == "hammerstein":
        shaped = Signal(model.nonlinearity.apply(x.samples), x.dt, x.t0)
        return simulate(model.inner, shaped)
    if model.variant == "wiener":
        linear = simulate(model.inner, x)
        return Signal(model.nonlinearity.apply(linear.samples), x.dt, x.t0)
    _check_sampling(model, x.dt)
    kernel = impulse_response(model, len(x), x.dt)
    return convolve_fft(x, kernel)


@dataclass(frozen=True)
class SystemClass:
    """Four-bit structural classification ⟨alpha, beta, gamma, delta⟩:
    dynamic memory, stochastic excitation, nonlinearity, discrete sampling.
    """

    alpha: int
    beta: int
    gamma: int
    delta: int

    def __str__(self):
        return f"<{self.alpha},{self.beta},{self.gamma},{self.delta}>"


def classify(model: SystemModel, input_kind: str) -> SystemClass:
    """Classify a sampled identification scenario.

    alpha is always 1 (every model here has memory); beta flags a
    stochastic input ("stochastic" vs "deterministic"); gamma flags a
    non-identity nonlinearity; delta is always 1 (sampled records).
    """
    if input_kind not in ("stochastic", "deterministic"):
        raise WaveidError(f"unknown input kind {input_kind!r}")
    return SystemClass(
        alpha=1,
        beta=1 if input_kind == "stochastic" else 0,
        gamma=0 if model.is_linear else 1,
        delta=1,
    )


# ---------------------------------------------------------------------------
# Model spec mini-language.


def _parse_params(text: str, spec: str) -> dict:
    out = {}
    if not text:
        return out
    for item in text.split(","):
        key, sep, value = item.partition("=")
        if not sep:
            raise FormatError(f"{spec!r}: expected key=value, got {item!r}")
        try:
            out[key.strip()] = float(value)
        except ValueError:
            raise FormatError(f"{spec!r}: non-numeric value for {key.strip()!r}") from None
    return out


def _parse_linear(text: str, spec: str) -> SystemModel:
    name, _, args = text.partition(":")
    name = name.strip()
    params = _parse_params(args, spec)
    try:
        if name == "fo":
            allowed = {"T", "gain"}
            if set(params) - allowed or "T" not in params:
                raise FormatError(f"{spec!r}: fo takes T=<s> and optional gain=<g>")
            return first_order(params["T"], params.get("gain", 1.0))
        if name == "so":
            allowed = {"wn", "zeta", "gain"}
            if set(params) - allowed or not {"wn", "zeta"} <= set(params):
                raise FormatError(f"{spec!r}: so takes wn=<rad/s>, zeta=<z>, optional gain=<g>")
            return second_order(params["wn"], params["zeta"], params.get("gain", 1.0))
    except WaveidError as exc:
        raise FormatError(f"{spec!r}: {exc}") from None
    raise FormatError(f"{spec!r}: unknown linear block {name!r} (use fo: or so:)")


def _parse_nonlinearity(text: str, spec: str) -> Nonlinearity:
    name, sep, args = text.partition("=")
    name = name.strip()
    try:
        if name == "identity":
            if sep:
                raise FormatError(f"{spec!r}: identity takes no parameter")
            return IDENTITY
        if name == "sat":
            return Nonlinearity("saturation", (float(args),))
        if name == "deadzone":
            return Nonlinearity("deadzone", (float(args),))
        if name == "cubic":
            parts = args.split(",")
            if len(parts) != 2:
                raise FormatError(f"{spec!r}: cubic takes c1,c3")
            return Nonlinearity("cubic", (float(parts[0]), float(parts[1])))
    except ValueError:
        raise FormatError(f"{spec!r}: non-numeric nonlinearity parameter") from None
    except WaveidError as exc:
        raise FormatError(f"{spec!r}: {exc}") from None
    raise FormatError(f"{spec!r}: unknown nonlinearity {name!r}")


def parse_model(spec: str) -> SystemModel:
    """Build a system from its text form.

    Linear blocks: ``fo:T=<s>[,gain=<g>]`` and ``so:wn=<rad/s>,zeta=<z>[,gain=<g>]``.
    Cascades: ``hammerstein:<nl>|<linear>`` (nonlinearity first) and
    ``wiener:<linear>|<nl>`` (nonlinearity last), where <nl> is one of
    ``identity``, ``sat=<limit>``, ``cubic=<c1>,<c3>``, ``deadzone=<width>``.
    """
    text = spec.strip()
    head, _, rest = text.partition(":")
    head = head.strip()
    if head in ("fo", "so"):
        return _parse_linear(text, spec)
    if head == "hammerstein":
        nl_text, sep, lin_text = rest.partition("|")
        if not sep:
            raise FormatError(f"{spec!r}: hammerstein needs <nl>|<linear>")
        return hammerstein(_parse_nonlinearity(nl_text.strip(), spec),
                           _parse_linear(lin_text.strip(), spec))
    if head == "wiener":
        lin_text, sep, nl_text = rest.partition("|")
        if not sep:
            raise FormatError(f"{spec!r}: wiener needs <linear>|<nl>")
        return wiener_cascade(_parse_linear(lin_text.strip(), spec),
                              _parse_nonlinearity(nl_text.strip(), spec))
    raise FormatError(f"unknown model spec {spec!r}")
