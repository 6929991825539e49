"""Encoded adiabatic computation under classical Gaussian noise with dynamical decoupling."""

from ._core import (
    InputError,
    NumericalError,
    PulseSchedule,
    __version__,
    autocorrelation,
    cdd_schedule,
    compare_cdd_qdd,
    distance_curve,
    gap_scan,
    qdd_schedule,
    sample_noise,
    spectral_density,
    sweep_beta_tau,
    udd_schedule,
    uhrig_times,
    validate_noise,
)

__all__ = [
    "InputError",
    "NumericalError",
    "PulseSchedule",
    "__version__",
    "autocorrelation",
    "cdd_schedule",
    "compare_cdd_qdd",
    "distance_curve",
    "gap_scan",
    "qdd_schedule",
    "sample_noise",
    "spectral_density",
    "sweep_beta_tau",
    "udd_schedule",
    "uhrig_times",
    "validate_noise",
]
