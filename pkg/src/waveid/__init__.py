"""waveid: wavelet-channel identification of dynamic system kernels.

The workflow: decompose input and output records into wavelet-domain
frequency channels, deconvolve each channel for a per-scale kernel, and
assemble the results into a time-scale kernel surface that reconstructs
the output and exposes scale-dependent (nonlinear) behaviour.
"""

from .errors import FormatError, NumericalError, WaveidError
from .identify import (
    ChannelSpectrum,
    ITFSurface,
    RestoreReport,
    channel_deconvolve,
    channel_restore_errors,
    channel_transfer,
    default_lag_count,
    identify_itf,
    read_itf,
    reconstruct,
    restore_error,
    row_dispersion,
    scale_average,
    wiener_hopf_identify,
    write_itf,
)
from .signals import (
    CorrelationFunction,
    Signal,
    StochasticSpec,
    SummaryStats,
    autocorrelation,
    cross_correlation,
    generate_stochastic,
    periodogram,
    read_signal_csv,
    summary_stats,
    write_signal_csv,
)
from .spectral import (
    ComplexSpectrum,
    RegularizationPolicy,
    convolve_direct,
    convolve_fft,
    dft,
    idft,
    next_pow2,
    spectral_divide,
)
from .systems import (
    IDENTITY,
    Nonlinearity,
    SystemClass,
    SystemModel,
    classify,
    first_order,
    hammerstein,
    impulse_response,
    parse_model,
    second_order,
    simulate,
    wiener_cascade,
)
from .wavelet import (
    CoefficientSurface,
    DwtTree,
    MotherWavelet,
    ScaleGrid,
    calibrate_delta_constant,
    cwt,
    dwt_d4,
    icwt,
    idwt_d4,
    parse_wavelet,
    read_surface,
    shift_check,
    write_surface,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "WaveidError", "FormatError", "NumericalError",
    # signals
    "Signal", "StochasticSpec", "SummaryStats", "CorrelationFunction",
    "generate_stochastic", "summary_stats", "autocorrelation",
    "cross_correlation", "periodogram", "read_signal_csv", "write_signal_csv",
    # spectral
    "ComplexSpectrum", "RegularizationPolicy", "next_pow2", "dft", "idft",
    "convolve_direct", "convolve_fft", "spectral_divide",
    # wavelet
    "MotherWavelet", "ScaleGrid", "CoefficientSurface", "DwtTree",
    "parse_wavelet", "cwt", "icwt", "calibrate_delta_constant", "shift_check",
    "dwt_d4", "idwt_d4", "read_surface", "write_surface",
    # identify
    "ITFSurface", "ChannelSpectrum", "RestoreReport", "identify_itf",
    "channel_transfer", "channel_deconvolve", "scale_average",
    "row_dispersion", "wiener_hopf_identify", "reconstruct", "restore_error",
    "channel_restore_errors", "read_itf", "write_itf", "default_lag_count",
    # systems
    "IDENTITY", "Nonlinearity", "SystemModel", "SystemClass", "first_order",
    "second_order", "hammerstein", "wiener_cascade", "impulse_response",
    "simulate", "classify", "parse_model",
]
