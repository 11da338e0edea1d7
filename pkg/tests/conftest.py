import numpy as np
import pytest

from waveid import (
    RegularizationPolicy,
    ScaleGrid,
    Signal,
    StochasticSpec,
    generate_stochastic,
    parse_wavelet,
    second_order,
    simulate,
)


def rel_l2(got, want) -> float:
    got = np.asarray(got, dtype=float)
    want = np.asarray(want, dtype=float)
    return float(np.linalg.norm(got - want) / np.linalg.norm(want))


def white_noise(n, dt, seed, mean=0.0, std=1.0) -> Signal:
    return generate_stochastic(StochasticSpec("gaussian", (mean, std), n, dt, seed))


@pytest.fixture(scope="session")
def morlet6():
    return parse_wavelet("morlet:6")


@pytest.fixture(scope="session")
def water_reg():
    return RegularizationPolicy("water_level", 1e-3)


@pytest.fixture(scope="session")
def resonant_model():
    """The shared reference plant: a moderately damped resonance."""
    return second_order(50.0, 0.2, 1.0)


@pytest.fixture(scope="session")
def resonant_records(resonant_model):
    """White-noise input and simulated output, mid-sized record."""
    x = white_noise(2048, 1e-3, seed=5)
    return x, simulate(resonant_model, x)


@pytest.fixture(scope="session")
def analysis_grid():
    """Log grid matching the resonant_records scale band."""
    return ScaleGrid(0.002, 0.512, 48, "log")
