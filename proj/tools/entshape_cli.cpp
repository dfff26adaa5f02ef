// Command-line front end: entshape <command> --config <path> [--out <dir>] [--seed <u64>]
//
// Exit codes: 0 success, 2 configuration error, 3 runtime error. Errors are
// reported on stderr as a single line "error: <class>: <reason>".

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "entshape/config.hpp"
#include "entshape/experiment.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;
constexpr char const* kOutputEnv = "ENTSHAPE_OUTPUT_DIR";

int fail(int code, std::string const& kind, std::string const& message) {
    std::string line = message;
    for (char& ch : line) {
        if (ch == '\n' || ch == '\r') ch = ' ';
    }
    std::cerr << "error: " << kind << ": " << line << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral-phase shaping of entangled photon pairs with SFG coincidence detection"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;

    std::pair<char const*, char const*> const commands[] = {
        {"wavefunction", "relative-time amplitude of the configured mask"},
        {"delay-scan", "SFG rate vs reference delay for each opposite-linear delay T"},
        {"pi-step", "SFG rate vs delay behind a pi phase step"},
        {"mz-scan", "Mach-Zehnder pair and single-photon traces with visibilities"},
        {"regime", "flux, photon density, SFG rate terms and detector verdict"},
        {"info", "regime quantities plus the numerical grid"},
    };
    for (auto const& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config,-c", config_path, "experiment configuration (YAML)")->required();
        sub->add_option("--out,-o", out_dir, "output directory");
        sub->add_option("--seed", seed, "override counts.seed");
    }

    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const& e) {
        return app.exit(e);
    } catch (CLI::ParseError const& e) {
        return fail(kConfigError, "usage", e.what());
    }

    auto const command = entshape::parse_command(app.get_subcommands().front()->get_name());

    entshape::ExperimentConfig config;
    try {
        config = entshape::load_config(config_path);
    } catch (entshape::UnknownKeyError const& e) {
        return fail(kConfigError, "unknown-key", e.what());
    } catch (entshape::ConfigSyntaxError const& e) {
        return fail(kConfigError, "syntax", e.what());
    } catch (entshape::ConfigError const& e) {
        return fail(kConfigError, "constraint", e.what());
    }
    if (seed) config.counts.seed = *seed;

    std::string dir = out_dir;
    if (dir.empty()) dir = config.output_dir;
    if (dir.empty()) {
        char const* env = std::getenv(kOutputEnv);
        dir = env != nullptr && *env != '\0' ? env : ".";
    }

    try {
        auto const result = entshape::run_experiment(config, *command, dir);
        std::cout << result.summary.dump(2) << "\n";
    } catch (entshape::OutputError const& e) {
        return fail(kRuntimeError, "output", e.what());
    } catch (entshape::ConfigurationError const& e) {
        return fail(kConfigError, "configuration", std::string(entshape::to_string(*command)) +
                                                       ": " + e.what());
    } catch (entshape::Error const& e) {
        return fail(kRuntimeError, "runtime", std::string(entshape::to_string(*command)) + ": " +
                                                  e.what());
    } catch (std::exception const& e) {
        return fail(kRuntimeError, "internal", e.what());
    }
    return 0;
}
