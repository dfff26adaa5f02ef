#include "entshape/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "entshape/biphoton.hpp"
#include "entshape/interference.hpp"
#include "entshape/sfg.hpp"

namespace entshape {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::ofstream open_output(fs::path const& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputError("cannot write '" + path.string() + "'");
    return out;
}

void write_json(fs::path const& path, ordered_json const& doc) {
    auto out = open_output(path);
    out << doc.dump(2) << "\n";
    if (!out) throw OutputError("failed writing '" + path.string() + "'");
}

std::vector<double> scan_delays(ExperimentConfig::Scan const& scan) {
    auto const count =
        static_cast<std::size_t>(std::floor((scan.stop - scan.start) / scan.step + 1e-9)) + 1;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = scan.start + static_cast<double>(i) * scan.step;
    return out;
}

struct Lobe {
    double peak_delay;
    double peak_value;
};

// Runs of the scan at or above `threshold`, with the maximum of each run.
std::vector<Lobe> lobes_above(std::vector<double> const& delays, std::vector<double> const& values,
                              double threshold) {
    std::vector<Lobe> lobes;
    std::size_t i = 0;
    while (i < values.size()) {
        if (values[i] < threshold) {
            ++i;
            continue;
        }
        Lobe lobe{delays[i], values[i]};
        while (i < values.size() && values[i] >= threshold) {
            if (values[i] > lobe.peak_value) lobe = {delays[i], values[i]};
            ++i;
        }
        lobes.push_back(lobe);
    }
    return lobes;
}

ordered_json grid_summary(FrequencyGrid const& grid) {
    auto const tg = grid.conjugate();
    return {{"points", grid.size()},
            {"center_rad_s", grid.center()},
            {"d_omega_rad_s", grid.spacing()},
            {"dt_s", tg.spacing()}};
}

ordered_json flux_summary(ExperimentConfig const& c) {
    double const dc = c.spectrum.bandwidth;
    double const phi_max = max_pair_flux(dc);
    double const n = spectral_photon_density(c.flux, dc);
    auto const terms = sfg_rate_terms(n, c.detector.upconverted_bandwidth, dc);
    SfgDetectorSpec const spec{c.detector.low_frequency_bandwidth, c.detector.upconverted_bandwidth,
                               c.detector.input_bandwidth, dc, c.pump_bandwidth};
    auto const regime = coincidence_regime(spec, n);

    ordered_json conditions = ordered_json::array();
    for (auto const& cond : regime.conditions) {
        conditions.push_back({{"condition", cond.name}, {"holds", cond.holds}});
    }
    return {
        {"center_wavelength_m", c.spectrum.center_wavelength},
        {"pump_wavelength_m", c.pump_wavelength()},
        {"downconversion_bandwidth_hz", dc},
        {"max_pair_flux_per_s", phi_max},
        {"max_pair_flux_power_w", flux_to_power(phi_max, c.spectrum.center_wavelength)},
        {"flux_per_s", c.flux},
        {"power_w", flux_to_power(c.flux, c.spectrum.center_wavelength)},
        {"spectral_photon_density", n},
        {"rate_terms",
         {{"coherent", terms.coherent},
          {"thermal", terms.thermal},
          {"entangled", terms.entangled},
          {"entangled_over_thermal", terms.thermal > 0.0 ? terms.entangled / terms.thermal : 0.0}}},
        {"detector",
         {{"low_frequency_bandwidth_hz", spec.low_frequency_bandwidth},
          {"upconverted_bandwidth_hz", spec.upconverted_bandwidth},
          {"input_bandwidth_hz", spec.input_bandwidth},
          {"pump_bandwidth_hz", spec.pump_bandwidth}}},
        {"verdict", to_string(regime.verdict)},
        {"conditions", conditions},
    };
}

RunResult run_wavefunction(ExperimentConfig const& c, fs::path const& dir) {
    auto const chain = build_chain(c);
    auto const g = relative_wavefunction(chain.spectrum, chain.filter);
    auto const width = correlation_fwhm(g);

    RunResult r;
    {
        auto path = dir / "wavefunction.txt";
        auto out = open_output(path);
        write_time_amplitude(out, g);
        r.files.push_back(path);
    }
    {
        auto path = dir / "mask.txt";
        auto out = open_output(path);
        write_mask(out, chain.mask);
        r.files.push_back(path);
    }
    r.summary = {{"command", "wavefunction"},
                 {"mask", to_string(c.mask.kind)},
                 {"grid", grid_summary(chain.grid)},
                 {"peak_time_s", width.peak_time},
                 {"fwhm_s", width.fwhm},
                 {"multimodal", width.multimodal},
                 {"lobe_widths_s", width.lobe_widths},
                 {"energy_time", g.energy()},
                 {"energy_spectral", spectral_energy(chain.spectrum, chain.filter)}};
    return r;
}

RunResult run_delay_scan(ExperimentConfig const& c, fs::path const& dir) {
    auto const chain = build_chain(c);
    auto const delays = scan_delays(c.scan);
    RunResult r;
    ordered_json entries = ordered_json::array();
    for (std::size_t i = 0; i < c.scan.delays.size(); ++i) {
        double const t = c.scan.delays[i];
        auto const filter = compose_pair_filter(mask_opposite_linear(chain.grid, t)) * chain.filter;
        auto const g = relative_wavefunction(chain.spectrum, filter);
        auto const rel = delay_scan(g, delays);
        std::vector<double> rates(rel.size());
        std::transform(rel.begin(), rel.end(), rates.begin(),
                       [&](double v) { return v * c.counts.peak_rate; });
        CountModel model{c.counts.peak_rate, c.counts.dark_rate, c.counts.integration_time,
                         c.counts.seed + i};
        auto const counts = simulate_counts(rates, model);

        char name[32];
        std::snprintf(name, sizeof name, "delay_scan_%02zu.csv", i);
        auto path = dir / name;
        auto out = open_output(path);
        write_scan_csv(out, delays, rel, counts);
        r.files.push_back(path);

        auto const best = static_cast<std::size_t>(std::max_element(rel.begin(), rel.end()) - rel.begin());
        auto const width = half_maximum_widths(delays, rel);
        entries.push_back({{"file", name},
                           {"delay_T_s", t},
                           {"argmax_delay_s", delays[best]},
                           {"peak_rate_rel", rel[best]},
                           {"fwhm_s", width.fwhm}});
    }
    r.summary = {{"command", "delay-scan"},
                 {"grid", grid_summary(chain.grid)},
                 {"scan_step_s", c.scan.step},
                 {"scans", entries}};
    return r;
}

RunResult run_pi_step(ExperimentConfig const& c, fs::path const& dir) {
    auto const grid = build_grid(c);
    auto const spectrum = build_spectrum(c, grid);
    double const step = pi_step_position(c, spectrum);
    auto const filter = compose_pair_filter(mask_pi_step(grid, step));
    auto const g = relative_wavefunction(spectrum, filter);
    auto const delays = scan_delays(c.scan);
    auto const rel = delay_scan(g, delays);
    std::vector<double> rates(rel.size());
    std::transform(rel.begin(), rel.end(), rates.begin(),
                   [&](double v) { return v * c.counts.peak_rate; });
    CountModel model{c.counts.peak_rate, c.counts.dark_rate, c.counts.integration_time,
                     c.counts.seed};
    auto const counts = simulate_counts(rates, model);

    RunResult r;
    auto path = dir / "pi_step.csv";
    auto out = open_output(path);
    write_scan_csv(out, delays, rel, counts);
    r.files.push_back(path);

    ordered_json lobes = ordered_json::array();
    for (auto const& l : lobes_above(delays, rel, 0.5)) {
        lobes.push_back({{"peak_delay_s", l.peak_delay}, {"peak_rate_rel", l.peak_value}});
    }
    r.summary = {{"command", "pi-step"},
                 {"spectrum", to_string(c.spectrum.model)},
                 {"grid", grid_summary(grid)},
                 {"step_omega_rad_s", step},
                 {"step_wavelength_m", angular_frequency_to_wavelength(step)},
                 {"rate_at_zero_delay", g.normalized_intensity(0.0)},
                 {"lobe_count", lobes.size()},
                 {"lobes", lobes}};
    return r;
}

RunResult run_mz_scan(ExperimentConfig const& c, fs::path const& dir) {
    auto const grid = build_grid(c);
    auto const spectrum = build_spectrum(c, grid);
    MzScanSpec const spec{c.mz.offset, c.mz.start, c.mz.stop, c.mz.step};
    auto const result = mz_scan(spectrum, spec);

    RunResult r;
    auto path = dir / "mz_scan.csv";
    {
        auto out = open_output(path);
        write_mz_csv(out, result);
    }
    r.files.push_back(path);

    ordered_json windows = ordered_json::array();
    double const w = c.mz.window;
    for (double center = spec.offset + spec.start + 0.5 * w;
         center + 0.5 * w <= spec.offset + spec.stop + 1e-30; center += w) {
        windows.push_back({{"center_s", center},
                           {"width_s", w},
                           {"biphoton_visibility", visibility(result.biphoton, center, w)},
                           {"single_photon_visibility", visibility(result.single_photon, center, w)}});
    }
    auto const fringe = dominant_frequency(result.biphoton);
    ordered_json report = {{"offset_s", spec.offset},
                           {"classical_limit", 0.5},
                           {"biphoton_fringe_period_s", 1.0 / fringe.frequency},
                           {"biphoton_fringe_frequency_hz", fringe.frequency},
                           {"frequency_bin_hz", fringe.bin_width},
                           {"expected_fringe_period_s", constants::two_pi / grid.pump()},
                           {"windows", windows}};
    auto vis_path = dir / "mz_visibility.json";
    write_json(vis_path, report);
    r.files.push_back(vis_path);

    r.summary = {{"command", "mz-scan"}, {"grid", grid_summary(grid)}, {"visibility", report}};
    return r;
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
    if (name == "wavefunction") return Command::Wavefunction;
    if (name == "delay-scan") return Command::DelayScan;
    if (name == "pi-step") return Command::PiStep;
    if (name == "mz-scan") return Command::MzScan;
    if (name == "regime") return Command::Regime;
    if (name == "info") return Command::Info;
    return std::nullopt;
}

std::string_view to_string(Command c) {
    switch (c) {
        case Command::Wavefunction: return "wavefunction";
        case Command::DelayScan: return "delay-scan";
        case Command::PiStep: return "pi-step";
        case Command::MzScan: return "mz-scan";
        case Command::Regime: return "regime";
        case Command::Info: break;
    }
    return "info";
}

FrequencyGrid build_grid(ExperimentConfig const& c) {
    double const center = wavelength_to_angular_frequency(c.spectrum.center_wavelength);
    double const span = c.grid.span_factor * hz_to_rad(c.spectrum.bandwidth);
    return make_frequency_grid(center, span, c.grid.points);
}

SpectralAmplitude build_spectrum(ExperimentConfig const& c, FrequencyGrid const& grid) {
    double const width = hz_to_rad(c.spectrum.bandwidth);
    switch (c.spectrum.model) {
        case SpectrumModel::Gaussian: return gaussian_spectrum(grid, width);
        case SpectrumModel::Sinc: return sinc_phasematch_spectrum(grid, width);
        case SpectrumModel::FlatTop: break;
    }
    return flattop_spectrum(grid, width);
}

double pi_step_position(ExperimentConfig const& c, SpectralAmplitude const& spectrum) {
    if (c.mask.step_wavelength > 0.0) return wavelength_to_angular_frequency(c.mask.step_wavelength);
    double half_band = 0.5 * hz_to_rad(c.spectrum.bandwidth);
    if (c.spectrum.model == SpectrumModel::FlatTop) {
        auto const cells = std::count_if(spectrum.values.begin(), spectrum.values.end(),
                                         [](Complex const& v) { return v != Complex{}; });
        half_band = 0.5 * static_cast<double>(cells) * spectrum.grid.spacing();
    }
    return spectrum.grid.center() + c.mask.step_fraction * half_band;
}

OpticalChain build_chain(ExperimentConfig const& c) {
    auto grid = build_grid(c);
    auto spectrum = build_spectrum(c, grid);
    PhaseMask mask = zero_mask(grid);
    switch (c.mask.kind) {
        case MaskKind::None: break;
        case MaskKind::OppositeLinear: mask = mask_opposite_linear(grid, c.mask.delay); break;
        case MaskKind::PiStep: mask = mask_pi_step(grid, pi_step_position(c, spectrum)); break;
        case MaskKind::File: {
            std::ifstream in(c.mask.path);
            if (!in) throw ConfigurationError("cannot open mask file '" + c.mask.path + "'");
            mask = read_mask(in, grid);
            break;
        }
    }
    if (c.mask.slm_pixels > 0) mask = slm_quantize(mask, c.mask.slm_pixels, c.mask.slm_levels);
    auto filter = compose_pair_filter(mask);
    return OpticalChain{std::move(grid), std::move(spectrum), std::move(mask), std::move(filter)};
}

RunResult run_experiment(ExperimentConfig const& config, Command command, fs::path const& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir)) {
        throw OutputError("cannot create output directory '" + out_dir.string() + "'");
    }

    RunResult r;
    switch (command) {
        case Command::Wavefunction: r = run_wavefunction(config, out_dir); break;
        case Command::DelayScan: r = run_delay_scan(config, out_dir); break;
        case Command::PiStep: r = run_pi_step(config, out_dir); break;
        case Command::MzScan: r = run_mz_scan(config, out_dir); break;
        case Command::Regime:
        case Command::Info: {
            r.summary = {{"command", to_string(command)}};
            r.summary.update(flux_summary(config));
            if (command == Command::Info) r.summary["grid"] = grid_summary(build_grid(config));
            break;
        }
    }
    auto summary_path = out_dir / (std::string(to_string(command)) + "_summary.json");
    write_json(summary_path, r.summary);
    r.files.push_back(summary_path);
    return r;
}

}  // namespace entshape
