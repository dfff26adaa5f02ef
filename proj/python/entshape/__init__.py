"""Python access to the entshape simulator."""

import json as _json

from ._core import (
    ConfigError,
    Error,
    bandwidth_nm_to_hz,
    coincidence_regime,
    correlation_fwhm,
    flux_to_power,
    max_pair_flux,
    power_to_flux,
    relative_wavefunction,
    sfg_rate_terms,
    simulate_counts,
    spectral_photon_density,
    wavelength_to_angular_frequency,
)
from ._core import run as _run


def run(command, config_yaml="", out_dir="."):
    """Run a CLI command in-process and return its summary as a dict."""
    return _json.loads(_run(command, config_yaml, out_dir))


__all__ = [
    "ConfigError",
    "Error",
    "bandwidth_nm_to_hz",
    "coincidence_regime",
    "correlation_fwhm",
    "flux_to_power",
    "max_pair_flux",
    "power_to_flux",
    "relative_wavefunction",
    "run",
    "sfg_rate_terms",
    "simulate_counts",
    "spectral_photon_density",
    "wavelength_to_angular_frequency",
]
