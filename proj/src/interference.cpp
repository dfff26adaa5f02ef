#include "entshape/interference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "entshape/error.hpp"

namespace entshape {

namespace {

void normalize(std::vector<double>& v) {
    double const peak = *std::max_element(v.begin(), v.end());
    if (peak > 0.0) {
        for (double& x : v) x /= peak;
    }
}

double interpolate(std::vector<double> const& x, std::vector<double> const& y, double at) {
    auto it = std::upper_bound(x.begin(), x.end(), at);
    if (it == x.begin()) return y.front();
    if (it == x.end()) return y.back();
    auto const j = static_cast<std::size_t>(it - x.begin());
    double const frac = (at - x[j - 1]) / (x[j] - x[j - 1]);
    return y[j - 1] + frac * (y[j] - y[j - 1]);
}

}  // namespace

double InterferenceTrace::fringe_period() const {
    double const base = constants::two_pi / carrier;
    return kind == TraceKind::Biphoton ? 0.5 * base : base;
}

void MzScanSpec::validate(double carrier) const {
    if (!std::isfinite(step) || step <= 0.0) throw ConfigurationError("MZ scan step must be positive");
    if (!(stop > start)) throw ConfigurationError("MZ scan stop must exceed start");
    if (!std::isfinite(offset)) throw ConfigurationError("MZ offset must be finite");
    double const pair_period = std::numbers::pi / carrier;
    if (step > pair_period / 8.0) {
        throw ConfigurationError("MZ scan step must resolve the pump-period fringe (>= 8 samples)");
    }
}

std::vector<double> MzScanSpec::retardations() const {
    auto const count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = offset + start + static_cast<double>(i) * step;
    return out;
}

double retardation_to_delay(double optical_path) {
    return optical_path / constants::speed_of_light;
}

double mz_biphoton_rate(SpectralAmplitude const& spectrum, double tau) {
    if (!spectrum.is_real(1e-9) || !spectrum.is_mirror_symmetric(1e-9)) {
        throw UsageError(
            "two-photon interference rate assumes a real spectrum symmetric about omega_0");
    }
    auto const& grid = spectrum.grid;
    double const pair_term = std::cos(grid.center() * tau);
    double sum = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        double const g = spectrum.values[k].real();
        if (g == 0.0) continue;
        sum += g * (pair_term + std::cos(grid.detuning(k) * tau));
    }
    sum *= grid.spacing();
    return sum * sum;
}

double ir_interference(SpectralAmplitude const& spectrum, double tau) {
    auto const& grid = spectrum.grid;
    double sum = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        double const p = std::norm(spectrum.values[k]);
        if (p == 0.0) continue;
        sum += p * (1.0 + std::cos(grid.omega(k) * tau));
    }
    return sum * grid.spacing();
}

double visibility(InterferenceTrace const& trace, double window_center, double window_width) {
    if (trace.retardations.size() != trace.values.size() || trace.values.size() < 2) {
        throw UsageError("interference trace is malformed");
    }
    double const period = trace.fringe_period();
    if (!(window_width >= period)) {
        throw UsageError("visibility window narrower than one fringe period");
    }
    double const lo = window_center - 0.5 * window_width;
    double const hi = window_center + 0.5 * window_width;
    if (lo < trace.retardations.front() || hi > trace.retardations.back()) {
        throw UsageError("visibility window extends beyond the scanned retardations");
    }
    std::size_t in_window = 0;
    for (double r : trace.retardations) in_window += (r >= lo && r <= hi) ? 1 : 0;
    auto const needed = static_cast<std::size_t>(std::ceil(32.0 * window_width / period));
    std::size_t const samples = std::max({needed, in_window, std::size_t{2}});

    double vmax = -std::numeric_limits<double>::infinity();
    double vmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < samples; ++i) {
        double const at = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
        double const v = interpolate(trace.retardations, trace.values, at);
        vmax = std::max(vmax, v);
        vmin = std::min(vmin, v);
    }
    // original samples inside the window are extrema candidates too
    for (std::size_t i = 0; i < trace.values.size(); ++i) {
        if (trace.retardations[i] < lo || trace.retardations[i] > hi) continue;
        vmax = std::max(vmax, trace.values[i]);
        vmin = std::min(vmin, trace.values[i]);
    }
    if (vmax + vmin <= 0.0) return 0.0;
    return (vmax - vmin) / (vmax + vmin);
}

MzScanResult mz_scan(SpectralAmplitude const& spectrum, MzScanSpec const& spec) {
    double const carrier = spectrum.grid.center();
    spec.validate(carrier);
    auto taus = spec.retardations();
    std::vector<double> pair(taus.size());
    std::vector<double> single(taus.size());
    for (std::size_t i = 0; i < taus.size(); ++i) {
        pair[i] = mz_biphoton_rate(spectrum, taus[i]);
        single[i] = ir_interference(spectrum, taus[i]);
    }
    normalize(pair);
    normalize(single);
    return MzScanResult{InterferenceTrace{taus, std::move(pair), TraceKind::Biphoton, carrier},
                        InterferenceTrace{taus, std::move(single), TraceKind::SinglePhoton, carrier}};
}

DominantFrequency dominant_frequency(InterferenceTrace const& trace) {
    std::size_t const n = trace.values.size();
    if (n < 4) throw UsageError("trace too short for a spectral estimate");
    double const step = (trace.retardations.back() - trace.retardations.front()) /
                        static_cast<double>(n - 1);
    double mean = 0.0;
    for (double v : trace.values) mean += v;
    mean /= static_cast<double>(n);

    // power of the mean-removed trace at `cycles` cycles per record
    auto power = [&](double cycles) {
        double re = 0.0;
        double im = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double const phase =
                -constants::two_pi * cycles * static_cast<double>(i) / static_cast<double>(n);
            re += (trace.values[i] - mean) * std::cos(phase);
            im += (trace.values[i] - mean) * std::sin(phase);
        }
        return re * re + im * im;
    };

    double best = -1.0;
    std::size_t best_bin = 1;
    for (std::size_t m = 1; m <= n / 2; ++m) {
        double const p = power(static_cast<double>(m));
        if (p > best) {
            best = p;
            best_bin = m;
        }
    }

    // golden-section refinement between the neighbouring bins
    double lo = static_cast<double>(best_bin) - 1.0;
    double hi = static_cast<double>(best_bin) + 1.0;
    double const ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - ratio * (hi - lo);
    double x2 = lo + ratio * (hi - lo);
    double p1 = power(x1);
    double p2 = power(x2);
    while (hi - lo > 1e-6) {
        if (p1 > p2) {
            hi = x2;
            x2 = x1;
            p2 = p1;
            x1 = hi - ratio * (hi - lo);
            p1 = power(x1);
        } else {
            lo = x1;
            x1 = x2;
            p1 = p2;
            x2 = lo + ratio * (hi - lo);
            p2 = power(x2);
        }
    }
    double const bin_width = 1.0 / (static_cast<double>(n) * step);
    return DominantFrequency{0.5 * (lo + hi) * bin_width, bin_width};
}

void write_mz_csv(std::ostream& out, MzScanResult const& result) {
    out << "tau_s,biphoton_rate_rel,ir_intensity_rel\n";
    char line[128];
    for (std::size_t i = 0; i < result.biphoton.retardations.size(); ++i) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", result.biphoton.retardations[i],
                      result.biphoton.values[i], result.single_photon.values[i]);
        out << line;
    }
}

}  // namespace entshape
