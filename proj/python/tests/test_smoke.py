import math

import pytest

import entshape


def test_setup_numbers():
    dc = entshape.bandwidth_nm_to_hz(31e-9, 1064e-9)
    assert dc == pytest.approx(8.2091679486545311e12, rel=1e-14)
    assert entshape.flux_to_power(entshape.max_pair_flux(8.2e12), 1064e-9) == pytest.approx(1.5309075e-6, rel=1e-7)
    n = entshape.spectral_photon_density(entshape.power_to_flux(0.25e-6, 1064e-9), dc)
    assert n == pytest.approx(0.1631195, rel=1e-6)


def test_regime_and_rates():
    t = entshape.sfg_rate_terms(0.16, 1.06e11, 8.2e12)
    assert t.entangled / t.thermal == pytest.approx(6.25)
    verdict = entshape.coincidence_regime(8.2e12, 1.06e11, 8.2e12, 8.2e12, 5e6, 0.16)
    assert verdict == "EntangledPairCoincidence"


def test_wavefunction():
    t, g = entshape.relative_wavefunction("spectrum: {bandwidth: 8.2 THz}")
    assert len(t) == len(g) == 4096
    assert entshape.correlation_fwhm("spectrum: {bandwidth: 8.2 THz}") == pytest.approx(0.441 / 8.2e12, rel=0.02)
    peak = max(range(len(g)), key=lambda j: abs(g[j]))
    assert t[peak] == 0.0


def test_counts_deterministic():
    a = entshape.simulate_counts([0.0, 100.0], 50.0, 10.0, 3)
    assert a == entshape.simulate_counts([0.0, 100.0], 50.0, 10.0, 3)
    assert all(isinstance(x, int) for x in a)


def test_run_and_errors(tmp_path):
    summary = entshape.run("regime", "", str(tmp_path))
    assert summary["verdict"] == "EntangledPairCoincidence"
    assert (tmp_path / "regime_summary.json").exists()
    with pytest.raises(entshape.ConfigError):
        entshape.run("info", "spectrum: {bandwidth: -3 nm}", str(tmp_path))
    with pytest.raises(entshape.Error):
        entshape.run("fly", "", str(tmp_path))
    assert not math.isnan(entshape.wavelength_to_angular_frequency(1064e-9))
