#include "entshape/sfg.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "entshape/error.hpp"

namespace entshape {

namespace {

void require_non_negative(double v, char const* what) {
    if (!std::isfinite(v) || v < 0.0) {
        throw DomainError(std::string(what) + " must be non-negative and finite");
    }
}

}  // namespace

SfgDetectorSpec SfgDetectorSpec::matched_crystals(double downconversion_bandwidth,
                                                  double upconverted_bandwidth,
                                                  double pump_bandwidth) {
    SfgDetectorSpec spec{downconversion_bandwidth, upconverted_bandwidth, downconversion_bandwidth,
                         downconversion_bandwidth, pump_bandwidth};
    spec.validate();
    return spec;
}

void SfgDetectorSpec::validate() const {
    require_non_negative(low_frequency_bandwidth, "Delta_LF");
    require_non_negative(upconverted_bandwidth, "delta_UC");
    require_non_negative(input_bandwidth, "Delta");
    require_non_negative(downconversion_bandwidth, "Delta_DC");
    require_non_negative(pump_bandwidth, "delta_p");
}

void CountModel::validate() const {
    require_non_negative(peak_rate, "peak rate");
    require_non_negative(dark_rate, "dark rate");
    if (!std::isfinite(integration_time) || integration_time <= 0.0) {
        throw DomainError("integration time must be positive");
    }
}

double max_pair_flux(double downconversion_bandwidth_hz) {
    require_non_negative(downconversion_bandwidth_hz, "down-conversion bandwidth");
    return downconversion_bandwidth_hz;
}

double spectral_photon_density(double flux, double downconversion_bandwidth_hz) {
    require_non_negative(flux, "photon flux");
    if (!std::isfinite(downconversion_bandwidth_hz) || downconversion_bandwidth_hz <= 0.0) {
        throw DomainError("down-conversion bandwidth must be positive");
    }
    return flux / downconversion_bandwidth_hz;
}

double flux_to_power(double flux, double wavelength) {
    if (!std::isfinite(wavelength) || wavelength <= 0.0) {
        throw DomainError("wavelength must be positive");
    }
    require_non_negative(flux, "photon flux");
    return flux * constants::planck * constants::speed_of_light / wavelength;
}

double power_to_flux(double power, double wavelength) {
    if (!std::isfinite(wavelength) || wavelength <= 0.0) {
        throw DomainError("wavelength must be positive");
    }
    require_non_negative(power, "optical power");
    return power * wavelength / (constants::planck * constants::speed_of_light);
}

FluxState flux_state(double flux, double downconversion_bandwidth_hz, double wavelength) {
    return FluxState{flux, spectral_photon_density(flux, downconversion_bandwidth_hz), wavelength};
}

RateTerms sfg_rate_terms(double density, double upconverted_bandwidth_hz,
                         double downconversion_bandwidth_hz, RateWeights const& weights) {
    require_non_negative(density, "spectral photon density");
    require_non_negative(upconverted_bandwidth_hz, "delta_UC");
    require_non_negative(downconversion_bandwidth_hz, "Delta_DC");
    double const n2 = density * density;
    return RateTerms{weights.coherent * upconverted_bandwidth_hz * n2,
                     weights.thermal * downconversion_bandwidth_hz * n2,
                     weights.entangled * downconversion_bandwidth_hz * density};
}

std::string to_string(CoincidenceVerdict v) {
    switch (v) {
        case CoincidenceVerdict::UniversalCoincidence: return "UniversalCoincidence";
        case CoincidenceVerdict::EntangledPairCoincidence: return "EntangledPairCoincidence";
        case CoincidenceVerdict::NotCoincidence: break;
    }
    return "NotCoincidence";
}

RegimeReport coincidence_regime(SfgDetectorSpec const& spec, double density) {
    spec.validate();
    require_non_negative(density, "spectral photon density");
    bool const input_fits = spec.low_frequency_bandwidth >= spec.input_bandwidth;
    bool const all_upconverted = spec.upconverted_bandwidth > 2.0 * spec.input_bandwidth;
    bool const pump_fits = spec.upconverted_bandwidth > spec.pump_bandwidth;
    bool const below_max_flux = density < 1.0;

    RegimeReport report;
    report.conditions = {{"Delta_LF >= Delta", input_fits},
                         {"delta_UC > 2 Delta", all_upconverted},
                         {"delta_UC > delta_p", pump_fits},
                         {"n < 1", below_max_flux}};
    if (input_fits && all_upconverted) {
        report.verdict = CoincidenceVerdict::UniversalCoincidence;
    } else if (input_fits && pump_fits && below_max_flux) {
        report.verdict = CoincidenceVerdict::EntangledPairCoincidence;
    } else {
        report.verdict = CoincidenceVerdict::NotCoincidence;
    }
    return report;
}

std::vector<double> delay_scan(TimeAmplitude const& amplitude, std::span<double const> delays) {
    std::vector<double> out;
    out.reserve(delays.size());
    for (double tau : delays) out.push_back(amplitude.normalized_intensity(tau));
    return out;
}

std::vector<CountSample> simulate_counts(std::span<double const> rates, CountModel const& model) {
    model.validate();
    std::mt19937_64 rng(model.seed);
    std::vector<CountSample> out;
    out.reserve(rates.size());
    double const t = model.integration_time;
    for (double rate : rates) {
        if (!std::isfinite(rate) || rate < 0.0) throw DomainError("count rate must be non-negative");
        double const mean = (rate + model.dark_rate) * t;
        std::uint64_t raw = 0;
        if (mean > 0.0) {
            std::poisson_distribution<std::uint64_t> dist(mean);
            raw = dist(rng);
        }
        out.push_back({raw, (static_cast<double>(raw) - model.dark_rate * t) / t});
    }
    return out;
}

void write_scan_csv(std::ostream& out, std::span<double const> delays,
                    std::span<double const> relative_rates, std::span<CountSample const> counts) {
    if (delays.size() != relative_rates.size() || delays.size() != counts.size()) {
        throw UsageError("scan columns have different lengths");
    }
    out << "delay_s,rate_rel,counts_raw,counts_dark_subtracted\n";
    char line[160];
    for (std::size_t i = 0; i < delays.size(); ++i) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%llu,%.17g\n", delays[i], relative_rates[i],
                      static_cast<unsigned long long>(counts[i].raw), counts[i].dark_subtracted);
        out << line;
    }
}

}  // namespace entshape
