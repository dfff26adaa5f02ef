#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "entshape/biphoton.hpp"

namespace entshape {

// Phase-matching bandwidths of the up-converting crystal, all ordinary
// frequencies [Hz].
struct SfgDetectorSpec {
    double low_frequency_bandwidth = 0.0;  // Delta_LF
    double upconverted_bandwidth = 0.0;    // delta_UC
    double input_bandwidth = 0.0;          // Delta
    double downconversion_bandwidth = 0.0; // Delta_DC
    double pump_bandwidth = 0.0;           // delta_p

    // Identical down- and up-converting crystals: Delta_LF = Delta = Delta_DC.
    static SfgDetectorSpec matched_crystals(double downconversion_bandwidth,
                                            double upconverted_bandwidth, double pump_bandwidth);
    void validate() const;
};

struct FluxState {
    double flux = 0.0;        // photons/s
    double density = 0.0;     // n = flux / Delta_DC
    double wavelength = 0.0;  // m
};

struct CountModel {
    double peak_rate = 0.0;         // counts/s at the scan maximum
    double dark_rate = 0.0;         // counts/s
    double integration_time = 1.0;  // s
    std::uint64_t seed = 0;

    void validate() const;
};

// Maximal flux at which down-converted light is still separated pairs: the
// down-conversion bandwidth itself, read as photons/s.
double max_pair_flux(double downconversion_bandwidth_hz);
double spectral_photon_density(double flux, double downconversion_bandwidth_hz);
double flux_to_power(double flux, double wavelength);
double power_to_flux(double power, double wavelength);
FluxState flux_state(double flux, double downconversion_bandwidth_hz, double wavelength);

struct RateTerms {
    double coherent = 0.0;   // delta_UC n^2
    double thermal = 0.0;    // Delta_DC n^2
    double entangled = 0.0;  // Delta_DC n
    double total() const { return coherent + thermal + entangled; }
};

struct RateWeights {
    double coherent = 1.0;
    double thermal = 1.0;
    double entangled = 1.0;
};

// Relative SFG rate contributions; no overall proportionality constant.
RateTerms sfg_rate_terms(double density, double upconverted_bandwidth_hz,
                         double downconversion_bandwidth_hz, RateWeights const& weights = {});

enum class CoincidenceVerdict { NotCoincidence = 0, EntangledPairCoincidence = 1, UniversalCoincidence = 2 };

std::string to_string(CoincidenceVerdict v);

struct ConditionCheck {
    std::string name;
    bool holds = false;
};

struct RegimeReport {
    CoincidenceVerdict verdict = CoincidenceVerdict::NotCoincidence;
    std::vector<ConditionCheck> conditions;
};

/*!
 * Classify the SFG crystal as a coincidence detector.
 *
 * Universal: Delta_LF >= Delta and delta_UC > 2 Delta, so every spectral
 * component of any light can be up-converted. Entangled-pair: Delta_LF >=
 * Delta, delta_UC > delta_p and n < 1, so only the pump-locked sum frequency
 * of genuine pairs has to fit. Strict inequalities are strict.
 */
RegimeReport coincidence_regime(SfgDetectorSpec const& spec, double density);

// |G(tau)|^2 / max|G|^2 at each delay, intensity interpolated linearly.
std::vector<double> delay_scan(TimeAmplitude const& amplitude, std::span<double const> delays);

struct CountSample {
    std::uint64_t raw = 0;
    double dark_subtracted = 0.0;  // (raw - dark T) / T  [counts/s]
};

// Poisson((rate + dark) T) per rate with one generator seeded from model.seed.
std::vector<CountSample> simulate_counts(std::span<double const> rates, CountModel const& model);

// CSV: delay_s,rate_rel,counts_raw,counts_dark_subtracted
void write_scan_csv(std::ostream& out, std::span<double const> delays,
                    std::span<double const> relative_rates, std::span<CountSample const> counts);

}  // namespace entshape
