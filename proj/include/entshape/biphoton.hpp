#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

#include "entshape/spectra.hpp"
#include "entshape/units.hpp"

namespace entshape {

/*!
 * Relative-time biphoton amplitude G(t) in baseband form.
 *
 * Values are the un-normalized transform
 *   G(t) = (1 / 2 pi) sum_k g_k Phi_k exp(i x_k t) d_omega,
 * with x_k the detuning from the carrier, so sum |G|^2 dt equals
 * sum |g Phi|^2 d_omega / (2 pi) exactly. The carrier exp(i omega_0 t) is
 * stripped and kept in `carrier`.
 */
struct TimeAmplitude {
    TimeGrid grid;
    std::vector<Complex> values;
    double peak = 0.0;     // max |G| before any normalization
    double carrier = 0.0;  // omega_0 [rad/s]

    // Linear interpolation of the complex samples; RangeError outside the grid.
    Complex at(double t) const;
    // |G(t)|^2 / peak^2 with the intensity interpolated linearly.
    double normalized_intensity(double t) const;
    std::vector<double> intensity() const;  // |G_j|^2
    double energy() const;                  // sum |G|^2 dt
};

struct TwoPhotonWavefunction {
    TimeAmplitude relative;
    double pump_bandwidth = 0.0;  // delta_p [rad/s]

    // psi(t_s, t_i) = exp(-delta_p^2 (t_s + t_i)^2 / 32) G(t_s - t_i), with G
    // normalized to unit peak.
    Complex amplitude(double t_signal, double t_idler) const;
};

// Inverse transform of g * Phi via FFT. Throws UsageError on grid mismatch.
TimeAmplitude relative_wavefunction(SpectralAmplitude const& spectrum, PairFilter const& filter);

// Spectral side of the Parseval identity: sum |g Phi|^2 d_omega / (2 pi).
double spectral_energy(SpectralAmplitude const& spectrum, PairFilter const& filter);

/*!
 * Continuous-spectrum envelope for a piecewise-constant (cell-averaged)
 * spectrum: multiplies each sample by sinc(d_omega t / 2), the transform of a
 * single frequency cell. For spectra whose discontinuities lie on cell
 * boundaries this equals the exact continuous Fourier integral.
 */
TimeAmplitude cell_integrated(TimeAmplitude const& amplitude);

// Direct quadrature of (1/2pi) sum g Phi exp(i x t) d_omega at arbitrary
// times, one complex exponential per term. Independent of the FFT path.
std::vector<Complex> oracle_dft(SpectralAmplitude const& spectrum, PairFilter const& filter,
                                std::span<double const> times);

// |psi(t_s, t_i)|^2; RangeError if t_s - t_i is outside the time grid.
double two_photon_density(TwoPhotonWavefunction const& wf, double t_signal, double t_idler);

struct CorrelationWidth {
    double fwhm = 0.0;        // width of the half-maximum run containing the peak
    bool multimodal = false;  // global maximum not unique (ties within 1e-9)
    std::vector<double> lobe_widths;  // width of every run above half maximum
    double peak_time = 0.0;
};

CorrelationWidth correlation_fwhm(TimeAmplitude const& amplitude);

// Half-maximum runs of a sampled non-negative curve, linearly interpolated.
CorrelationWidth half_maximum_widths(std::span<double const> x, std::span<double const> y);

// Three columns: t [s], Re G, Im G.
void write_time_amplitude(std::ostream& out, TimeAmplitude const& amplitude);

}  // namespace entshape
