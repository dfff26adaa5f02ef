#pragma once

#include <iosfwd>
#include <vector>

#include "entshape/spectra.hpp"

namespace entshape {

enum class TraceKind { Biphoton, SinglePhoton };

struct InterferenceTrace {
    std::vector<double> retardations;  // s, strictly increasing
    std::vector<double> values;        // normalized to max 1
    TraceKind kind = TraceKind::Biphoton;
    double carrier = 0.0;              // omega_0 [rad/s]

    // Fringe period in retardation: pi/omega_0 for pairs, 2 pi/omega_0 for single photons.
    double fringe_period() const;
};

// Retardation sweep of the interferometer around a fixed offset.
struct MzScanSpec {
    double offset = 0.0;  // tau_0 [s], e.g. birefringent plate retardation / c
    double start = 0.0;   // relative to offset [s]
    double stop = 0.0;
    double step = 0.0;

    // Throws ConfigurationError unless step > 0, stop > start and the step
    // gives at least 8 samples per pair fringe at carrier omega_0.
    void validate(double carrier) const;
    std::vector<double> retardations() const;
};

// Constant retardation of a birefringent plate expressed as a delay [s].
double retardation_to_delay(double optical_path);

// | sum g (cos(omega_0 tau) + cos((omega - omega_0) tau)) d_omega |^2.
// Requires a real spectrum symmetric about omega_0 (UsageError otherwise).
double mz_biphoton_rate(SpectralAmplitude const& spectrum, double tau);

// sum |g|^2 (1 + cos(omega tau)) d_omega, the IR power at one output port.
double ir_interference(SpectralAmplitude const& spectrum, double tau);

// (max - min) / (max + min) inside [center - width/2, center + width/2],
// resampled to >= 32 points per fringe period.
double visibility(InterferenceTrace const& trace, double window_center, double window_width);

struct MzScanResult {
    InterferenceTrace biphoton;
    InterferenceTrace single_photon;
};

MzScanResult mz_scan(SpectralAmplitude const& spectrum, MzScanSpec const& spec);

struct DominantFrequency {
    double frequency = 0.0;  // cycles per second of retardation
    double bin_width = 0.0;
};

// Largest non-DC component of the mean-removed trace: direct DFT, then the
// peak is refined between the neighbouring bins.
DominantFrequency dominant_frequency(InterferenceTrace const& trace);

// CSV: tau_s,biphoton_rate_rel,ir_intensity_rel
void write_mz_csv(std::ostream& out, MzScanResult const& result);

}  // namespace entshape
