#include "entshape/units.hpp"

#include <cmath>
#include <string>

#include "entshape/error.hpp"

namespace entshape {

double wavelength_to_angular_frequency(double wavelength) {
    if (!std::isfinite(wavelength) || wavelength <= 0.0) {
        throw DomainError("wavelength must be positive and finite, got " +
                          std::to_string(wavelength));
    }
    return constants::two_pi * constants::speed_of_light / wavelength;
}

double angular_frequency_to_wavelength(double omega) {
    if (!std::isfinite(omega) || omega <= 0.0) {
        throw DomainError("angular frequency must be positive and finite, got " +
                          std::to_string(omega));
    }
    return constants::two_pi * constants::speed_of_light / omega;
}

double bandwidth_nm_to_hz(double delta_lambda, double center_wavelength) {
    if (!std::isfinite(center_wavelength) || center_wavelength <= 0.0) {
        throw DomainError("center wavelength must be positive, got " +
                          std::to_string(center_wavelength));
    }
    if (!std::isfinite(delta_lambda) || delta_lambda < 0.0) {
        throw DomainError("wavelength bandwidth must be non-negative, got " +
                          std::to_string(delta_lambda));
    }
    return constants::speed_of_light * delta_lambda / (center_wavelength * center_wavelength);
}

FrequencyGrid::FrequencyGrid(double center, double spacing, std::size_t count)
    : center_(center), spacing_(spacing), count_(count) {
    if (count_ < 8 || count_ % 2 != 0) {
        throw ConfigurationError("grid point count must be even and >= 8, got " +
                                 std::to_string(count_));
    }
    if (!std::isfinite(spacing_) || spacing_ <= 0.0) {
        throw ConfigurationError("grid spacing must be positive");
    }
    if (!std::isfinite(center_) || center_ <= 0.0) {
        throw ConfigurationError("grid center must be a positive angular frequency");
    }
}

double FrequencyGrid::detuning(std::size_t k) const {
    return static_cast<double>(offset_index(k)) * spacing_;
}

double FrequencyGrid::omega(std::size_t k) const { return center_ + detuning(k); }

bool FrequencyGrid::contains(double omega) const {
    double const half = 0.5 * spacing_;
    return omega >= min_omega() - half && omega <= max_omega() + half;
}

std::size_t FrequencyGrid::nearest_index(double omega) const {
    if (!contains(omega)) {
        throw RangeError("angular frequency outside grid");
    }
    double const pos = (omega - center_) / spacing_ + static_cast<double>(count_ / 2);
    auto k = static_cast<long>(std::lround(pos));
    if (k < 0) k = 0;
    if (k >= static_cast<long>(count_)) k = static_cast<long>(count_) - 1;
    return static_cast<std::size_t>(k);
}

TimeGrid FrequencyGrid::conjugate() const {
    return TimeGrid(constants::two_pi / (static_cast<double>(count_) * spacing_), count_);
}

TimeGrid::TimeGrid(double spacing, std::size_t count) : spacing_(spacing), count_(count) {
    if (!std::isfinite(spacing_) || spacing_ <= 0.0 || count_ < 2 || count_ % 2 != 0) {
        throw ConfigurationError("invalid time grid");
    }
}

FrequencyGrid make_frequency_grid(double center, double span, std::size_t count) {
    if (!std::isfinite(span) || span <= 0.0) {
        throw ConfigurationError("grid span must be positive");
    }
    if (count < 8 || count % 2 != 0) {
        throw ConfigurationError("grid point count must be even and >= 8, got " +
                                 std::to_string(count));
    }
    return FrequencyGrid(center, span / static_cast<double>(count), count);
}

TimeGrid conjugate_time_grid(FrequencyGrid const& grid) { return grid.conjugate(); }

}  // namespace entshape
