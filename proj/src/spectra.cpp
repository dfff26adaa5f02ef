#include "entshape/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "entshape/error.hpp"

namespace entshape {

namespace {

void require_same_grid(FrequencyGrid const& a, FrequencyGrid const& b) {
    if (!(a == b)) throw UsageError("operands are defined on different frequency grids");
}

double peak_magnitude(std::vector<Complex> const& values) {
    double peak = 0.0;
    for (auto const& v : values) peak = std::max(peak, std::abs(v));
    return peak;
}

double sinc(double u) { return u == 0.0 ? 1.0 : std::sin(u) / u; }

}  // namespace

double SpectralAmplitude::power_integral() const {
    double sum = 0.0;
    for (auto const& v : values) sum += std::norm(v);
    return sum * grid.spacing();
}

bool SpectralAmplitude::is_mirror_symmetric(double tol) const {
    double const scale = std::max(peak_magnitude(values), 1e-300);
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (std::abs(values[k] - values[grid.mirror(k)]) > tol * scale) return false;
    }
    return true;
}

bool SpectralAmplitude::is_real(double tol) const {
    double const scale = std::max(peak_magnitude(values), 1e-300);
    return std::all_of(values.begin(), values.end(),
                       [&](Complex const& v) { return std::abs(v.imag()) <= tol * scale; });
}

PairFilter& PairFilter::operator*=(PairFilter const& other) {
    require_same_grid(grid, other.grid);
    for (std::size_t k = 0; k < values.size(); ++k) values[k] *= other.values[k];
    return *this;
}

PairFilter operator*(PairFilter lhs, PairFilter const& rhs) {
    lhs *= rhs;
    return lhs;
}

SpectralAmplitude gaussian_spectrum(FrequencyGrid const& grid, double fwhm) {
    if (!std::isfinite(fwhm) || fwhm <= 0.0 || fwhm >= grid.span() / 2.0) {
        throw ConfigurationError("gaussian FWHM must lie in (0, span/2) to avoid aliasing");
    }
    // |g|^2 = exp(-4 ln2 x^2 / fwhm^2)
    double const a = 2.0 * std::numbers::ln2 / (fwhm * fwhm);
    SpectralAmplitude s{grid, std::vector<Complex>(grid.size())};
    for (std::size_t k = 0; k < grid.size(); ++k) {
        double const x = grid.detuning(k);
        s.values[k] = std::exp(-a * x * x);
    }
    return s;
}

double sinc_half_power_argument() {
    // sinc(u)^2 - 1/2 changes sign once on (0, pi).
    auto f = [](double u) { return sinc(u) * sinc(u) - 0.5; };
    double lo = 1e-3;
    double hi = std::numbers::pi - 1e-3;
    if (f(lo) <= 0.0 || f(hi) >= 0.0) {
        throw InternalError("sinc half-power calibration: no root in bracket");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        double const mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

SpectralAmplitude sinc_phasematch_spectrum(FrequencyGrid const& grid, double fwhm) {
    if (!std::isfinite(fwhm) || fwhm <= 0.0 || fwhm >= grid.span() / 2.0) {
        throw ConfigurationError("phase-matching bandwidth must lie in (0, span/2)");
    }
    double const half = 0.5 * fwhm;
    double const kappa = sinc_half_power_argument() / (half * half);
    SpectralAmplitude s{grid, std::vector<Complex>(grid.size())};
    for (std::size_t k = 0; k < grid.size(); ++k) {
        double const x = grid.detuning(k);
        s.values[k] = sinc(kappa * x * x);
    }
    return s;
}

SpectralAmplitude flattop_spectrum(FrequencyGrid const& grid, double full_width) {
    if (!std::isfinite(full_width) || full_width <= 0.0 || full_width >= grid.span() / 2.0) {
        throw ConfigurationError("flat-top width must lie in (0, span/2)");
    }
    // cells [x - h/2, x + h/2] fully inside [-w/2, w/2]
    double const half_cells = 0.5 * full_width / grid.spacing() - 0.5;
    auto const m_max = static_cast<long>(std::floor(half_cells + 1e-9));
    if (m_max < 0) throw ConfigurationError("flat-top narrower than one grid cell");
    SpectralAmplitude s{grid, std::vector<Complex>(grid.size(), 0.0)};
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (std::labs(grid.offset_index(k)) <= m_max) s.values[k] = 1.0;
    }
    return s;
}

PhaseMask zero_mask(FrequencyGrid const& grid) {
    return PhaseMask{grid, std::vector<double>(grid.size(), 0.0)};
}

PhaseMask mask_opposite_linear(FrequencyGrid const& grid, double delay) {
    if (!std::isfinite(delay)) throw ConfigurationError("delay must be finite");
    double const max_excursion = 0.5 * std::abs(delay) * 0.5 * grid.span();
    if (max_excursion >= static_cast<double>(grid.size()) * std::numbers::pi) {
        throw ConfigurationError("opposite-linear mask exceeds the sampling guard (|T| too large)");
    }
    PhaseMask m = zero_mask(grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        m.phase[k] = -0.5 * delay * std::abs(grid.detuning(k));
    }
    return m;
}

PhaseMask mask_pi_step(FrequencyGrid const& grid, double step_omega) {
    if (!std::isfinite(step_omega) || step_omega < grid.min_omega() ||
        step_omega >= grid.max_omega()) {
        throw ConfigurationError("pi-step position lies outside the grid");
    }
    PhaseMask m = zero_mask(grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (grid.omega(k) > step_omega) m.phase[k] = std::numbers::pi;
    }
    return m;
}

PairFilter compose_pair_filter(PhaseMask const& mask) {
    auto const& grid = mask.grid;
    if (mask.phase.size() != grid.size()) throw UsageError("mask size does not match its grid");
    PairFilter f{grid, std::vector<Complex>(grid.size())};
    for (std::size_t k = 0; k < grid.size(); ++k) {
        std::size_t const mk = grid.mirror(k);
        long const sign = mk == k ? 0 : (grid.offset_index(k) > 0 ? 1 : -1);
        double const theta = static_cast<double>(sign) * (mask.phase[k] + mask.phase[mk]);
        f.values[k] = std::polar(1.0, theta);
    }
    return f;
}

PairFilter unity_filter(FrequencyGrid const& grid) {
    return PairFilter{grid, std::vector<Complex>(grid.size(), 1.0)};
}

PhaseMask slm_quantize(PhaseMask const& mask, std::size_t pixels, std::size_t levels) {
    std::size_t const n = mask.grid.size();
    if (pixels < 1 || pixels > n) {
        throw ConfigurationError("SLM pixel count must lie in [1, N]");
    }
    if (levels < 2) throw ConfigurationError("SLM needs at least 2 phase levels");
    double const quantum = constants::two_pi / static_cast<double>(levels);
    PhaseMask out = mask;
    for (std::size_t p = 0; p < pixels; ++p) {
        std::size_t const begin = p * n / pixels;
        std::size_t const end = (p + 1) * n / pixels;
        double mean = 0.0;
        for (std::size_t k = begin; k < end; ++k) mean += mask.phase[k];
        mean /= static_cast<double>(end - begin);
        double const wrapped = mean - constants::two_pi * std::floor(mean / constants::two_pi);
        auto level = static_cast<std::size_t>(std::llround(wrapped / quantum)) % levels;
        double const snapped = static_cast<double>(level) * quantum;
        for (std::size_t k = begin; k < end; ++k) out.phase[k] = snapped;
    }
    return out;
}

void write_mask(std::ostream& out, PhaseMask const& mask) {
    char line[96];
    for (std::size_t k = 0; k < mask.grid.size(); ++k) {
        std::snprintf(line, sizeof line, "%.17g %.17g\n", mask.grid.omega(k), mask.phase[k]);
        out << line;
    }
}

PhaseMask read_mask(std::istream& in, FrequencyGrid const& grid) {
    PhaseMask m = zero_mask(grid);
    std::string line;
    std::size_t k = 0;
    std::size_t lineno = 0;
    double const tol = 1e-6 * grid.spacing();
    while (std::getline(in, line)) {
        ++lineno;
        auto const first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        double omega = 0.0;
        double phase = 0.0;
        if (!(fields >> omega >> phase)) {
            throw ConfigurationError("mask file line " + std::to_string(lineno) +
                                     ": expected two numeric columns");
        }
        if (k >= grid.size()) throw ConfigurationError("mask file has more rows than grid points");
        if (std::abs(omega - grid.omega(k)) > tol) {
            throw ConfigurationError("mask file line " + std::to_string(lineno) +
                                     ": frequency does not match grid point " + std::to_string(k));
        }
        if (!std::isfinite(phase)) {
            throw ConfigurationError("mask file line " + std::to_string(lineno) + ": non-finite phase");
        }
        m.phase[k++] = phase;
    }
    if (k != grid.size()) {
        throw ConfigurationError("mask file has " + std::to_string(k) + " rows, grid has " +
                                 std::to_string(grid.size()));
    }
    return m;
}

}  // namespace entshape
