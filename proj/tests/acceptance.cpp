// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "entshape/biphoton.hpp"
#include "entshape/config.hpp"
#include "entshape/experiment.hpp"
#include "entshape/interference.hpp"
#include "entshape/sfg.hpp"
#include "oracles.hpp"

using namespace entshape;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, std::string const& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
        pass = pass && ok;
    }
};

std::string fmt(char const* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

std::vector<double> arange(double start, double stop, double step) {
    std::vector<double> out;
    auto const count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
}

double max_relative_oracle_error(SpectralAmplitude const& spectrum, PairFilter const& filter) {
    auto const g = relative_wavefunction(spectrum, filter);
    std::vector<double> times(g.grid.size());
    for (std::size_t j = 0; j < times.size(); ++j) times[j] = g.grid.time(j);
    auto const ref = oracle_dft(spectrum, filter, times);
    double ref_peak = 0.0;
    for (auto const& v : ref) ref_peak = std::max(ref_peak, std::abs(v));
    double err = 0.0;
    for (std::size_t j = 0; j < times.size(); ++j) err = std::max(err, std::abs(g.values[j] - ref[j]));
    return err / ref_peak;
}

// Spectrum/filter pairs exercised by criteria 4-7, collected for criterion 8.
struct Case {
    std::string name;
    SpectralAmplitude spectrum;
    PairFilter filter;
};
std::vector<Case> g_cases;

ExperimentConfig pi_step_config() {
    return parse_config(R"(
spectrum: {model: flattop, bandwidth: 31 nm}
grid: {span_factor: 16, points: 4096}
mask: {type: pi_step, step_fraction: 0.5}
)");
}

Outcome criterion1() {
    Outcome o;
    double const dc = bandwidth_nm_to_hz(31e-9, 1064e-9);
    double const phi = max_pair_flux(dc);
    double const p = flux_to_power(phi, 1064e-9);
    o.require(std::abs(phi / 8.2e12 - 1.0) <= 0.01, "Phi_max=" + fmt("%.4e", phi) + "/s");
    o.require(std::abs(p / 1.5e-6 - 1.0) <= 0.03, "P=" + fmt("%.4e", p) + " W");
    return o;
}

Outcome criterion2() {
    Outcome o;
    double const dc = bandwidth_nm_to_hz(31e-9, 1064e-9);
    double const flux = power_to_flux(0.25e-6, 1064e-9);
    double const n = spectral_photon_density(flux, dc);
    o.require(std::abs(n - 0.16) <= 0.01, "flux=" + fmt("%.4e", flux) + "/s n=" + fmt("%.4f", n));
    return o;
}

Outcome criterion3() {
    Outcome o;
    auto const t = sfg_rate_terms(0.16, 1.06e11, 8.2e12);
    double const ratio = t.entangled / t.thermal;
    o.require(std::abs(ratio / 6.25 - 1.0) <= 0.01, "entangled/thermal=" + fmt("%.4f", ratio));
    auto const spec = SfgDetectorSpec::matched_crystals(8.2e12, 1.06e11, 5e6);
    auto const verdict = coincidence_regime(spec, 0.16).verdict;
    o.require(verdict == CoincidenceVerdict::EntangledPairCoincidence, "verdict=" + to_string(verdict));
    return o;
}

Outcome criterion4() {
    Outcome o;
    auto const chain = build_chain(default_config());
    double const step = 2e-15;
    auto const delays = arange(-400e-15, 400e-15, step);
    double worst_shift = 0.0;
    double worst_asym = 0.0;
    for (double t : {-300e-15, -150e-15, 0.0, 150e-15, 300e-15}) {
        auto const filter = compose_pair_filter(mask_opposite_linear(chain.grid, t));
        g_cases.push_back({"delay T=" + fmt("%.0f", t * 1e15) + " fs", chain.spectrum, filter});
        auto const r = delay_scan(relative_wavefunction(chain.spectrum, filter), delays);
        auto const best = static_cast<std::size_t>(std::max_element(r.begin(), r.end()) - r.begin());
        worst_shift = std::max(worst_shift, std::abs(delays[best] - t));
        if (t == 0.0) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                worst_asym = std::max(worst_asym, std::abs(r[i] - r[r.size() - 1 - i]));
            }
        }
    }
    o.require(worst_shift <= step && worst_shift <= 5e-15,
              "max |argmax - T|=" + fmt("%.2f", worst_shift * 1e15) + " fs");
    o.require(worst_asym <= 1e-9, "T=0 asymmetry=" + fmt("%.2e", worst_asym));
    return o;
}

Outcome criterion5() {
    Outcome o;
    auto const config = pi_step_config();
    auto const grid = build_grid(config);
    auto const spectrum = build_spectrum(config, grid);
    auto const mask = mask_pi_step(grid, pi_step_position(config, spectrum));
    auto const filter = compose_pair_filter(mask);
    g_cases.push_back({"pi step flattop", spectrum, filter});

    auto const g = relative_wavefunction(spectrum, filter);
    auto const scan_delays = arange(-200e-15, 200e-15, 0.5e-15);
    auto const r = delay_scan(g, scan_delays);
    double const r0 = g.normalized_intensity(0.0);
    std::size_t lobes = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] >= 0.5 && (i == 0 || r[i - 1] < 0.5)) ++lobes;
    }
    o.require(r0 < 1e-3, "r(0)=" + fmt("%.2e", r0));
    o.require(lobes == 2, "lobes=" + std::to_string(lobes));

    // Spectral edge b and step a in the lattice: half a cell beyond the last
    // occupied / unflipped cell.
    double const h = grid.spacing();
    std::ptrdiff_t last_cell = 0;
    std::ptrdiff_t last_unflipped = 0;
    for (std::size_t k = grid.center_index(); k < grid.size(); ++k) {
        if (spectrum.values[k] != Complex{}) last_cell = grid.offset_index(k);
        if (mask.phase[k] == 0.0 && spectrum.values[k] != Complex{}) last_unflipped = grid.offset_index(k);
    }
    double const b = (static_cast<double>(last_cell) + 0.5) * h;
    double const a = (static_cast<double>(last_unflipped) + 0.5) * h;
    auto const exact = cell_integrated(g);
    double peak = 0.0;
    for (std::size_t j = 0; j < exact.grid.size(); ++j) {
        peak = std::max(peak, std::abs(oracle::pi_step_flattop(a, b, exact.grid.time(j))));
    }
    double err = 0.0;
    std::size_t points = 0;
    for (std::size_t j = 0; j < exact.grid.size(); ++j) {
        double const ref = oracle::pi_step_flattop(a, b, exact.grid.time(j));
        if (std::abs(ref) * std::abs(ref) < 0.5 * peak * peak) continue;  // main lobes only
        err = std::max(err, std::abs(exact.values[j] - Complex(ref, 0.0)) / peak);
        ++points;
    }
    o.require(points > 0 && err <= 1e-6,
              "closed-form error=" + fmt("%.2e", err) + " over " + std::to_string(points) + " pts");
    return o;
}

Outcome criterion6() {
    Outcome o;
    auto c = default_config();
    c.spectrum.bandwidth = 8.2e12;
    auto const chain = build_chain(c);
    g_cases.push_back({"transform limit", chain.spectrum, chain.filter});
    auto const w = correlation_fwhm(relative_wavefunction(chain.spectrum, chain.filter));
    double const target = 0.441 / 8.2e12;
    o.require(!w.multimodal && std::abs(w.fwhm / target - 1.0) <= 0.02,
              "fwhm=" + fmt("%.2f", w.fwhm * 1e15) + " fs (target " + fmt("%.2f", target * 1e15) + ")");
    return o;
}

Outcome criterion7() {
    Outcome o;
    auto const c = default_config();
    auto const grid = build_grid(c);
    auto const spectrum = build_spectrum(c, grid);
    g_cases.push_back({"mz gaussian", spectrum, unity_filter(grid)});
    MzScanSpec const spec{c.mz.offset, c.mz.start, c.mz.stop, c.mz.step};
    auto const scan = mz_scan(spectrum, spec);
    double const vb = visibility(scan.biphoton, 550e-15, c.mz.window);
    double const vs = visibility(scan.single_photon, 550e-15, c.mz.window);
    o.require(vb >= 0.99, "V_pair=" + fmt("%.4f", vb) + " (classical limit 0.5)");
    o.require(vs < 0.01, "V_IR=" + fmt("%.2e", vs));

    auto const f = dominant_frequency(scan.biphoton);
    double const expected = constants::two_pi / grid.pump();
    o.require(std::abs(1.0 / f.frequency - expected) <= c.mz.step,
              "fringe period=" + fmt("%.4f", 1e15 / f.frequency) + " fs vs " + fmt("%.4f", expected * 1e15));

    // small-tau: R/R0 - (I/I0)^2 vanishes to second order, so it scales as tau^4
    auto const flat_grid = make_frequency_grid(grid.center(), 16.0 * hz_to_rad(c.spectrum.bandwidth), 4096);
    auto const flat = flattop_spectrum(flat_grid, hz_to_rad(c.spectrum.bandwidth));
    g_cases.push_back({"mz flattop", flat, unity_filter(flat_grid)});
    double const r0 = mz_biphoton_rate(flat, 0.0);
    double const i0 = ir_interference(flat, 0.0);
    auto residual = [&](double tau) {
        double const i = ir_interference(flat, tau) / i0;
        return mz_biphoton_rate(flat, tau) / r0 - i * i;
    };
    double const tau = 2e-17;
    double const second = 1.0 - mz_biphoton_rate(flat, tau) / r0;
    double const ratio = residual(tau) / residual(0.5 * tau);
    o.require(std::abs(ratio / 16.0 - 1.0) < 0.05 && std::abs(residual(tau)) < 1e-3 * second,
              "residual order ratio=" + fmt("%.3f", ratio) + " (16 = fourth order)");
    return o;
}

Outcome criterion8() {
    Outcome o;
    double worst = 0.0;
    std::string worst_name;
    for (auto const& c : g_cases) {
        double const e = max_relative_oracle_error(c.spectrum, c.filter);
        if (e > worst) {
            worst = e;
            worst_name = c.name;
        }
    }
    o.require(!g_cases.empty() && worst <= 1e-10,
              std::to_string(g_cases.size()) + " cases, worst=" + fmt("%.2e", worst) +
                  (worst_name.empty() ? "" : " (" + worst_name + ")"));
    return o;
}

Outcome criterion9() {
    Outcome o;
    auto const chain = build_chain(default_config());
    auto const& grid = chain.grid;
    double const ref = relative_wavefunction(chain.spectrum, unity_filter(grid)).energy();
    std::vector<PhaseMask> masks{mask_opposite_linear(grid, 300e-15),
                                 mask_pi_step(grid, grid.center() + 0.5 * hz_to_rad(default_config().spectrum.bandwidth))};
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> phase(0.0, constants::two_pi);
    for (int i = 0; i < 8; ++i) {
        PhaseMask m = zero_mask(grid);
        for (double& p : m.phase) p = phase(rng);
        masks.push_back(m);
        masks.push_back(slm_quantize(m, 128, 16));
    }
    double worst = 0.0;
    for (auto const& m : masks) {
        double const e = relative_wavefunction(chain.spectrum, compose_pair_filter(m)).energy();
        worst = std::max(worst, std::abs(e / ref - 1.0));
    }
    o.require(worst <= 1e-10, std::to_string(masks.size()) + " masks, worst=" + fmt("%.2e", worst));
    return o;
}

Outcome criterion10() {
    Outcome o;
    auto const start = std::chrono::steady_clock::now();
    std::vector<double> const rates{0.0, 20.0, 500.0};
    std::vector<double> sums(rates.size(), 0.0);
    int const seeds = 10000;
    for (int s = 0; s < seeds; ++s) {
        auto const c = simulate_counts(rates, CountModel{500.0, 50.0, 10.0, static_cast<std::uint64_t>(s)});
        for (std::size_t i = 0; i < rates.size(); ++i) sums[i] += static_cast<double>(c[i].raw);
    }
    double worst_z = 0.0;
    for (std::size_t i = 0; i < rates.size(); ++i) {
        double const expected = (rates[i] + 50.0) * 10.0;
        double const se = std::sqrt(expected / seeds);
        worst_z = std::max(worst_z, std::abs(sums[i] / seeds - expected) / se);
    }
    double const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(worst_z < 3.0, "worst |z|=" + fmt("%.2f", worst_z));
    o.require(secs < 10.0, "runtime=" + fmt("%.2f", secs) + " s");
    return o;
}

}  // namespace

int main() {
    std::vector<std::function<Outcome()>> const criteria{criterion1, criterion2, criterion3, criterion4,
                                                         criterion5, criterion6, criterion7, criterion8,
                                                         criterion9, criterion10};
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i]();
        } catch (std::exception const& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::printf("%s criterion %zu: %s\n", o.pass ? "PASS" : "FAIL", i + 1, o.detail.c_str());
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
