#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "entshape/error.hpp"

namespace entshape {

// Config errors carry the dotted field path they refer to.
class ConfigError : public Error {
  public:
    ConfigError(std::string field, std::string const& message)
        : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}
    std::string const& field() const { return field_; }

  private:
    std::string field_;
};

class ConfigSyntaxError : public ConfigError {
  public:
    using ConfigError::ConfigError;
};

class UnknownKeyError : public ConfigError {
  public:
    using ConfigError::ConfigError;
};

class ConstraintError : public ConfigError {
  public:
    using ConfigError::ConfigError;
};

enum class SpectrumModel { Gaussian, Sinc, FlatTop };
enum class MaskKind { None, OppositeLinear, PiStep, File };

std::string_view to_string(SpectrumModel m);
std::string_view to_string(MaskKind m);

/*!
 * Fully resolved experiment description. All quantities are SI: lengths in
 * m, bandwidths in Hz (ordinary frequency), times in s, powers in W.
 * Wavelength-denominated inputs are converted while parsing.
 */
struct ExperimentConfig {
    struct Spectrum {
        SpectrumModel model = SpectrumModel::Gaussian;
        double bandwidth = 0.0;           // Delta_DC [Hz]; FWHM, or full width for flattop
        double center_wavelength = 1064e-9;
        bool operator==(Spectrum const&) const = default;
    } spectrum;

    double pump_bandwidth = 5e6;  // delta_p [Hz]

    struct Grid {
        double span_factor = 32.0;  // span = factor * 2 pi Delta_DC
        std::size_t points = 4096;
        bool operator==(Grid const&) const = default;
    } grid;

    struct Mask {
        MaskKind kind = MaskKind::None;
        double delay = 0.0;          // T for opposite_linear [s]
        double step_fraction = 0.5;  // pi-step position inside the upper half-band
        double step_wavelength = 0.0;  // overrides step_fraction when > 0 [m]
        std::string path;            // for kind == File
        std::size_t slm_pixels = 0;  // 0: no quantization
        std::size_t slm_levels = 0;
        bool operator==(Mask const&) const = default;
    } mask;

    struct Detector {
        double low_frequency_bandwidth = 0.0;  // Delta_LF [Hz]
        double upconverted_bandwidth = 0.0;    // delta_UC [Hz]
        double input_bandwidth = 0.0;          // Delta [Hz]
        bool operator==(Detector const&) const = default;
    } detector;

    double flux = 0.0;  // photons/s of the down-converted beam

    struct Scan {
        double start = -400e-15;
        double stop = 400e-15;
        double step = 2e-15;
        std::vector<double> delays{-300e-15, -150e-15, 0.0, 150e-15, 300e-15};  // T sweep
        bool operator==(Scan const&) const = default;
    } scan;

    struct Mz {
        double offset = 0.0;  // tau_0 [s]
        double start = -5e-15;
        double stop = 10e-15;
        double step = 0.02e-15;
        double window = 3.6e-15;  // visibility window width [s]
        bool operator==(Mz const&) const = default;
    } mz;

    struct Counts {
        double peak_rate = 1000.0;
        double dark_rate = 50.0;
        double integration_time = 10.0;
        std::uint64_t seed = 1;
        bool operator==(Counts const&) const = default;
    } counts;

    std::string output_dir;  // empty: caller decides

    bool operator==(ExperimentConfig const&) const = default;

    double pump_wavelength() const { return 0.5 * spectrum.center_wavelength; }
};

// Defaults: 31 nm at 1064 nm, 532 nm pump with 5 MHz linewidth, 0.1 nm
// up-conversion bandwidth, 0.25 uW, 163 um birefringent offset, 50/s dark
// counts and 10 s integration.
ExperimentConfig default_config();

// Parses a YAML document. Numeric fields accept a bare number in SI units or
// a string "<value> <unit>", e.g. "31 nm", "5 MHz", "300 fs", "0.25 uW".
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(std::string const& path);

// YAML with plain SI numbers at 17 significant digits; reparses to an equal config.
std::string serialize_config(ExperimentConfig const& config);

}  // namespace entshape
