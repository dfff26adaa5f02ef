#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "entshape/units.hpp"

namespace entshape {

using Complex = std::complex<double>;

// Down-conversion amplitude g(omega) sampled on a grid, peak-normalized.
struct SpectralAmplitude {
    FrequencyGrid grid;
    std::vector<Complex> values;

    double power_integral() const;  // sum |g|^2 * d_omega
    // g(k) == g(mirror(k)) for every k, within tol relative to the peak.
    bool is_mirror_symmetric(double tol = 1e-12) const;
    bool is_real(double tol = 1e-12) const;
};

// Physical SLM phase M(omega) [rad].
struct PhaseMask {
    FrequencyGrid grid;
    std::vector<double> phase;
};

// Effective two-photon filter Phi(omega) = Phi_s(omega) Phi_i(omega_p - omega).
struct PairFilter {
    FrequencyGrid grid;
    std::vector<Complex> values;

    PairFilter& operator*=(PairFilter const& other);
};

PairFilter operator*(PairFilter lhs, PairFilter const& rhs);

// Gaussian amplitude whose |g|^2 has the given FWHM [rad/s]; requires
// 0 < fwhm < span/2.
SpectralAmplitude gaussian_spectrum(FrequencyGrid const& grid, double fwhm);

// sinc(kappa (omega - omega_0)^2) with kappa chosen so the |g|^2 FWHM equals
// `fwhm`. Degenerate type-I phase matching has a quadratic mismatch about the
// degeneracy point.
SpectralAmplitude sinc_phasematch_spectrum(FrequencyGrid const& grid, double fwhm);

// Value of u in (0, pi) where sinc(u)^2 = 1/2, found by bisection.
double sinc_half_power_argument();

/*!
 * Flat-top amplitude of the given full width [rad/s].
 *
 * Only cells lying wholly inside the band are set to 1, so the band edges
 * fall on cell boundaries at +-(M + 1/2) * d_omega. The effective full width is
 * therefore (2M + 1) * d_omega, at most one cell narrower than requested.
 */
SpectralAmplitude flattop_spectrum(FrequencyGrid const& grid, double full_width);

PhaseMask zero_mask(FrequencyGrid const& grid);

// V-shaped mask: slope -T/2 on the signal half (omega > omega_0), +T/2 on the
// idler half, zero at omega_0. Shifts the relative-time amplitude to t = +T.
PhaseMask mask_opposite_linear(FrequencyGrid const& grid, double delay);

// pi for omega > step_omega, 0 otherwise.
PhaseMask mask_pi_step(FrequencyGrid const& grid, double step_omega);

/*!
 * Pair filter seen by a pair whose photons both traverse `mask`.
 *
 * For a signal detuning x > 0 the pair acquires M(omega_0 + x) M(omega_0 - x).
 * The detuning -x describes the same pair with the labels swapped, so it
 * carries the conjugate factor; the filter is conjugate-symmetric,
 * Phi(omega_p - omega) = conj(Phi(omega)), and self-mirrored cells get 1.
 */
PairFilter compose_pair_filter(PhaseMask const& mask);

PairFilter unity_filter(FrequencyGrid const& grid);

// Finite-pixel, finite-level SLM: block means snapped to `levels` values in [0, 2 pi).
PhaseMask slm_quantize(PhaseMask const& mask, std::size_t pixels, std::size_t levels);

// Two-column text: angular frequency [rad/s], phase [rad].
void write_mask(std::ostream& out, PhaseMask const& mask);
// Reads a mask for `grid`; throws ConfigurationError when the file's
// frequencies do not coincide with the grid points.
PhaseMask read_mask(std::istream& in, FrequencyGrid const& grid);

}  // namespace entshape
