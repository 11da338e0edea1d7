import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from waveid import (
    ComplexSpectrum,
    RegularizationPolicy,
    Signal,
    WaveidError,
    convolve_direct,
    convolve_fft,
    dft,
    idft,
    next_pow2,
    spectral_divide,
)


def test_next_pow2():
    assert next_pow2(1) == 1
    assert next_pow2(2) == 2
    assert next_pow2(3) == 4
    assert next_pow2(1023) == 1024
    assert next_pow2(1024) == 1024
    assert next_pow2(1025) == 2048


def test_dft_constant():
    assert np.allclose(dft([1.0, 1.0, 1.0, 1.0]).bins, [4, 0, 0, 0], atol=1e-14)


def test_dft_alternating():
    assert np.allclose(dft([1.0, -1.0, 1.0, -1.0]).bins, [0, 0, 4, 0], atol=1e-14)


def test_dft_matches_naive_oracle():
    rng = np.random.default_rng(11)
    x = rng.standard_normal(257)
    k = np.arange(257)
    naive = np.exp(-2j * np.pi * np.outer(k, k) / 257) @ x
    assert np.max(np.abs(dft(x).bins - naive)) < 1e-9


def test_dft_round_trip():
    rng = np.random.default_rng(12)
    x = rng.standard_normal(1000)
    back = idft(dft(x))
    assert np.max(np.abs(back - x)) < 1e-10


def test_dft_validation():
    with pytest.raises(WaveidError):
        dft([])
    with pytest.raises(WaveidError):
        dft(np.ones((2, 2)))
    with pytest.raises(WaveidError):
        ComplexSpectrum(np.ones(4), dt=0.0)


def test_spectrum_frequencies():
    s = dft(np.ones(8), dt=0.5)
    assert np.allclose(s.frequencies, np.fft.fftfreq(8, d=0.5))


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.floats(-1e3, 1e3), min_size=2, max_size=64),
    st.floats(-3, 3),
    st.floats(-3, 3),
)
def test_dft_linearity(values, alpha, beta):
    x = np.asarray(values)
    y = np.roll(x, 1) + 1.0
    combined = dft(alpha * x + beta * y).bins
    separate = alpha * dft(x).bins + beta * dft(y).bins
    assert np.max(np.abs(combined - separate)) <= 1e-9 * (1 + np.max(np.abs(separate)))


# ---------------------------------------------------------------------------
# Convolution


def test_convolve_delta_kernel_is_identity():
    x = Signal(np.arange(1.0, 9.0), 0.25)
    y = convolve_direct(x, np.array([1.0 / 0.25]))
    assert np.array_equal(y.samples, x.samples)


def test_convolve_hand_case():
    y = convolve_direct(Signal([1.0, 1.0], 1.0), np.array([1.0, 1.0]))
    assert np.allclose(y.samples, [1.0, 2.0])


def test_convolve_matches_nested_loop_oracle():
    rng = np.random.default_rng(3)
    x = rng.standard_normal(97)
    h = rng.standard_normal(31)
    dt = 0.1
    got = convolve_direct(Signal(x, dt), h).samples
    want = np.zeros(97)
    for i in range(97):
        for k in range(min(i, 30) + 1):
            want[i] += h[k] * x[i - k]
    want *= dt
    assert np.max(np.abs(got - want)) < 1e-12


def test_convolve_fft_matches_direct():
    rng = np.random.default_rng(4)
    for n, m in [(8, 3), (100, 100), (1024, 257), (513, 64)]:
        x = Signal(rng.standard_normal(n), 0.01)
        h = rng.standard_normal(m)
        a = convolve_direct(x, h).samples
        b = convolve_fft(x, h).samples
        assert np.linalg.norm(a - b) <= 1e-8 * np.linalg.norm(a)


def test_convolve_zero_and_delta_kernels():
    x = Signal(np.sin(np.arange(64)), 2.0)
    assert np.allclose(convolve_fft(x, np.zeros(5)).samples, 0.0)
    ident = convolve_fft(x, np.array([0.5]))  # 1/dt
    assert np.allclose(ident.samples, x.samples, atol=1e-12)


def test_convolve_validation():
    x = Signal(np.ones(8), 1.0)
    with pytest.raises(WaveidError):
        convolve_direct(x, np.array([]))
    with pytest.raises(WaveidError):
        convolve_fft(x, np.ones((2, 2)))


# ---------------------------------------------------------------------------
# Regularized spectral division


def test_policy_validation():
    with pytest.raises(WaveidError):
        RegularizationPolicy("ridge", 1e-3)
    with pytest.raises(WaveidError):
        RegularizationPolicy("water_level", -1e-3)
    with pytest.raises(WaveidError):
        RegularizationPolicy("tikhonov", 0.0)


def test_divide_self_is_ones():
    rng = np.random.default_rng(5)
    den = dft(rng.standard_normal(128) + 3.0)
    out = spectral_divide(den, den, RegularizationPolicy("water_level", 0.0))
    assert np.allclose(out.bins, 1.0, atol=1e-12)


def test_divide_scalar_gain():
    rng = np.random.default_rng(6)
    den = dft(rng.standard_normal(64))
    num = ComplexSpectrum(3.5 * den.bins, den.dt)
    for policy in (
        RegularizationPolicy("water_level", 1e-14),
        RegularizationPolicy("tikhonov", 1e-14),
    ):
        out = spectral_divide(num, den, policy)
        assert np.allclose(out.bins, 3.5, atol=1e-9)


def test_divide_exact_rejects_zero_bin():
    den = ComplexSpectrum(np.array([1.0, 0.0, 1.0, 1.0], dtype=complex))
    num = ComplexSpectrum(np.ones(4, dtype=complex))
    with pytest.raises(WaveidError):
        spectral_divide(num, den, RegularizationPolicy("water_level", 0.0))


def test_divide_water_level_caps_zero_bin():
    rng = np.random.default_rng(7)
    phase = np.exp(2j * np.pi * rng.random(32))
    mags = 0.5 + 0.5 * rng.random(32)
    bins = mags * phase
    bins[13] = 0.0
    den = ComplexSpectrum(bins)
    num = ComplexSpectrum(np.exp(2j * np.pi * rng.random(32)))
    out = spectral_divide(num, den, RegularizationPolicy("water_level", 1e-3))
    assert np.all(np.isfinite(out.bins))
    assert out.bins[13] == 0.0  # num * conj(0) / floor
    keep = np.arange(32) != 13
    exact = num.bins[keep] / bins[keep]
    assert np.max(np.abs(out.bins[keep] - exact)) <= 1e-3 * np.max(np.abs(exact))


def test_divide_tikhonov_formula():
    den = ComplexSpectrum(np.array([2.0, 1.0], dtype=complex))
    num = ComplexSpectrum(np.array([4.0, 3.0], dtype=complex))
    out = spectral_divide(num, den, RegularizationPolicy("tikhonov", 0.01))
    floor = 0.01 * 4.0
    assert out.bins[0] == pytest.approx(4.0 * 2.0 / (4.0 + floor))
    assert out.bins[1] == pytest.approx(3.0 * 1.0 / (1.0 + floor))


def test_divide_length_mismatch():
    with pytest.raises(WaveidError):
        spectral_divide(
            ComplexSpectrum(np.ones(4)),
            ComplexSpectrum(np.ones(8)),
            RegularizationPolicy("water_level", 1e-3),
        )
