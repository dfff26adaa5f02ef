#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "entshape/config.hpp"
#include "entshape/spectra.hpp"

namespace entshape {

// The output directory could not be created or written.
class OutputError : public Error {
  public:
    using Error::Error;
};

enum class Command { Wavefunction, DelayScan, PiStep, MzScan, Regime, Info };

std::optional<Command> parse_command(std::string_view name);
std::string_view to_string(Command c);

// Grid, spectrum and configured mask assembled from a config.
struct OpticalChain {
    FrequencyGrid grid;
    SpectralAmplitude spectrum;
    PhaseMask mask;
    PairFilter filter;
};

FrequencyGrid build_grid(ExperimentConfig const& config);
SpectralAmplitude build_spectrum(ExperimentConfig const& config, FrequencyGrid const& grid);
OpticalChain build_chain(ExperimentConfig const& config);

// Angular frequency of the pi step: either the configured wavelength or the
// configured fraction of the signal half-band above omega_0.
double pi_step_position(ExperimentConfig const& config, SpectralAmplitude const& spectrum);

struct RunResult {
    std::vector<std::filesystem::path> files;
    nlohmann::ordered_json summary;
};

/*!
 * Run one named experiment and write its files into `out_dir`.
 *
 *  - wavefunction: wavefunction.txt (t, Re G, Im G), mask.txt, summary
 *  - delay-scan:   delay_scan_<i>.csv for each configured delay T, summary
 *  - pi-step:      pi_step.csv, summary with the null depth and lobe count
 *  - mz-scan:      mz_scan.csv, mz_visibility.json
 *  - regime, info: flux, power, density, rate terms and detector verdict
 *
 * Every command also writes <command>_summary.json. Outputs depend only on
 * (config, command).
 */
RunResult run_experiment(ExperimentConfig const& config, Command command,
                         std::filesystem::path const& out_dir);

}  // namespace entshape
