#include "entshape/biphoton.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>

#include "entshape/error.hpp"

namespace entshape {

namespace {

// FFTW's planner is not reentrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// out_j = sum_k in_k exp(+2 pi i k j / N), in place.
void backward_dft(std::vector<Complex>& data) {
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    int const n = static_cast<int>(data.size());
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw InternalError("FFTW failed to create a plan");
    fftw_execute(plan);
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
}

double max_abs(std::vector<Complex> const& v) {
    double m = 0.0;
    for (auto const& z : v) m = std::max(m, std::abs(z));
    return m;
}

// Fractional index of t on the grid; RangeError outside.
double grid_position(TimeGrid const& grid, double t) {
    if (!std::isfinite(t) || !grid.contains(t)) {
        throw RangeError("relative time outside the sampled window");
    }
    return (t - grid.min_time()) / grid.spacing();
}

}  // namespace

Complex TimeAmplitude::at(double t) const {
    double const pos = grid_position(grid, t);
    auto const j = std::min(static_cast<std::size_t>(pos), values.size() - 2);
    double const frac = pos - static_cast<double>(j);
    return values[j] * (1.0 - frac) + values[j + 1] * frac;
}

double TimeAmplitude::normalized_intensity(double t) const {
    double const pos = grid_position(grid, t);
    auto const j = std::min(static_cast<std::size_t>(pos), values.size() - 2);
    double const frac = pos - static_cast<double>(j);
    double const i0 = std::norm(values[j]);
    double const i1 = std::norm(values[j + 1]);
    return (i0 * (1.0 - frac) + i1 * frac) / (peak * peak);
}

std::vector<double> TimeAmplitude::intensity() const {
    std::vector<double> out(values.size());
    std::transform(values.begin(), values.end(), out.begin(),
                   [](Complex const& z) { return std::norm(z); });
    return out;
}

double TimeAmplitude::energy() const {
    double sum = 0.0;
    for (auto const& z : values) sum += std::norm(z);
    return sum * grid.spacing();
}

Complex TwoPhotonWavefunction::amplitude(double t_signal, double t_idler) const {
    double const sum = t_signal + t_idler;
    double const envelope = std::exp(-pump_bandwidth * pump_bandwidth * sum * sum / 32.0);
    return envelope * relative.at(t_signal - t_idler) / relative.peak;
}

TimeAmplitude relative_wavefunction(SpectralAmplitude const& spectrum, PairFilter const& filter) {
    if (!(spectrum.grid == filter.grid)) {
        throw UsageError("spectrum and pair filter are defined on different grids");
    }
    auto const& grid = spectrum.grid;
    std::size_t const n = grid.size();
    std::vector<Complex> data(n);
    for (std::size_t k = 0; k < n; ++k) {
        data[k] = spectrum.values[k] * filter.values[k] * ((k % 2 == 0) ? 1.0 : -1.0);
    }
    backward_dft(data);
    double const scale = grid.spacing() / constants::two_pi;
    bool const half_odd = (n / 2) % 2 == 1;
    for (std::size_t j = 0; j < n; ++j) {
        bool const flip = (j % 2 == 1) != half_odd;
        data[j] *= flip ? -scale : scale;
    }
    TimeAmplitude out{grid.conjugate(), std::move(data)};
    out.peak = max_abs(out.values);
    out.carrier = grid.center();
    return out;
}

double spectral_energy(SpectralAmplitude const& spectrum, PairFilter const& filter) {
    double sum = 0.0;
    for (std::size_t k = 0; k < spectrum.values.size(); ++k) {
        sum += std::norm(spectrum.values[k] * filter.values[k]);
    }
    return sum * spectrum.grid.spacing() / constants::two_pi;
}

TimeAmplitude cell_integrated(TimeAmplitude const& amplitude) {
    TimeAmplitude out = amplitude;
    double const d_omega =
        constants::two_pi / (static_cast<double>(amplitude.grid.size()) * amplitude.grid.spacing());
    for (std::size_t j = 0; j < out.values.size(); ++j) {
        double const u = 0.5 * d_omega * out.grid.time(j);
        out.values[j] *= u == 0.0 ? 1.0 : std::sin(u) / u;
    }
    out.peak = max_abs(out.values);
    return out;
}

std::vector<Complex> oracle_dft(SpectralAmplitude const& spectrum, PairFilter const& filter,
                                std::span<double const> times) {
    if (!(spectrum.grid == filter.grid)) {
        throw UsageError("spectrum and pair filter are defined on different grids");
    }
    auto const& grid = spectrum.grid;
    std::vector<Complex> product(grid.size());
    std::vector<double> detuning(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        product[k] = spectrum.values[k] * filter.values[k];
        detuning[k] = grid.detuning(k);
    }
    double const scale = grid.spacing() / constants::two_pi;
    std::vector<Complex> out;
    out.reserve(times.size());
    for (double t : times) {
        Complex acc = 0.0;
        for (std::size_t k = 0; k < product.size(); ++k) {
            if (product[k] == Complex{}) continue;
            acc += product[k] * std::polar(1.0, detuning[k] * t);
        }
        out.push_back(acc * scale);
    }
    return out;
}

double two_photon_density(TwoPhotonWavefunction const& wf, double t_signal, double t_idler) {
    return std::norm(wf.amplitude(t_signal, t_idler));
}

CorrelationWidth half_maximum_widths(std::span<double const> x, std::span<double const> y) {
    if (x.size() != y.size() || y.size() < 2) {
        throw UsageError("half-maximum analysis needs matching x/y with at least two samples");
    }
    auto const peak_it = std::max_element(y.begin(), y.end());
    double const peak = *peak_it;
    auto const peak_idx = static_cast<std::size_t>(peak_it - y.begin());
    CorrelationWidth result;
    result.peak_time = x[peak_idx];
    if (!(peak > 0.0)) throw UsageError("curve has no positive maximum");

    // ties: samples within 1e-9 of the peak that are not one contiguous block
    double const tie = peak * (1.0 - 1e-9);
    std::size_t first = y.size();
    std::size_t last = 0;
    std::size_t tied = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] >= tie) {
            first = std::min(first, i);
            last = i;
            ++tied;
        }
    }
    result.multimodal = tied != last - first + 1;

    double const half = 0.5 * peak;
    auto crossing = [&](std::size_t lo, std::size_t hi) {
        return x[lo] + (half - y[lo]) / (y[hi] - y[lo]) * (x[hi] - x[lo]);
    };
    std::size_t i = 0;
    while (i < y.size()) {
        if (y[i] < half) {
            ++i;
            continue;
        }
        std::size_t const start = i;
        while (i < y.size() && y[i] >= half) ++i;
        std::size_t const stop = i - 1;
        double const left = start == 0 ? x[0] : crossing(start - 1, start);
        double const right = stop + 1 == y.size() ? x[stop] : crossing(stop, stop + 1);
        double const width = right - left;
        result.lobe_widths.push_back(width);
        if (peak_idx >= start && peak_idx <= stop) result.fwhm = width;
    }
    return result;
}

CorrelationWidth correlation_fwhm(TimeAmplitude const& amplitude) {
    std::vector<double> t(amplitude.grid.size());
    for (std::size_t j = 0; j < t.size(); ++j) t[j] = amplitude.grid.time(j);
    auto const y = amplitude.intensity();
    return half_maximum_widths(t, y);
}

void write_time_amplitude(std::ostream& out, TimeAmplitude const& amplitude) {
    char line[128];
    for (std::size_t j = 0; j < amplitude.values.size(); ++j) {
        std::snprintf(line, sizeof line, "%.17g %.17g %.17g\n", amplitude.grid.time(j),
                      amplitude.values[j].real(), amplitude.values[j].imag());
        out << line;
    }
}

}  // namespace entshape
