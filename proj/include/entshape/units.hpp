#pragma once

#include <cstddef>
#include <numbers>

namespace entshape {

namespace constants {
inline constexpr double speed_of_light = 299'792'458.0;   // m/s, exact
inline constexpr double planck = 6.626'070'15e-34;        // J s, exact
inline constexpr double two_pi = 2.0 * std::numbers::pi;
}  // namespace constants

// lambda [m] -> 2 pi c / lambda [rad/s]
double wavelength_to_angular_frequency(double wavelength);
double angular_frequency_to_wavelength(double omega);

// First-order conversion of a wavelength bandwidth to an ordinary-frequency
// bandwidth: c * dlambda / lambda^2 [Hz].
double bandwidth_nm_to_hz(double delta_lambda, double center_wavelength);

inline constexpr double hz_to_rad(double hz) { return constants::two_pi * hz; }
inline constexpr double rad_to_hz(double omega) { return omega / constants::two_pi; }

class TimeGrid;

/*!
 * Uniform angular-frequency lattice centered on the degeneracy point.
 *
 * Point k sits at center + (k - N/2) * spacing for k = 0..N-1. Index k and
 * index (N - k) mod N are mirror images about the center, so omega -> 2*center
 * - omega is an exact index permutation. Index 0 is the Nyquist cell and is
 * its own mirror image under the periodic lattice.
 */
class FrequencyGrid {
  public:
    FrequencyGrid(double center, double spacing, std::size_t count);

    double center() const { return center_; }
    double spacing() const { return spacing_; }
    std::size_t size() const { return count_; }
    double pump() const { return 2.0 * center_; }
    double span() const { return spacing_ * static_cast<double>(count_); }

    double omega(std::size_t k) const;
    // Offset from the center, (k - N/2) * spacing.
    double detuning(std::size_t k) const;
    long offset_index(std::size_t k) const {
        return static_cast<long>(k) - static_cast<long>(count_ / 2);
    }
    std::size_t mirror(std::size_t k) const { return (count_ - k) % count_; }
    std::size_t center_index() const { return count_ / 2; }

    // Index whose point is closest to omega; throws RangeError outside the lattice.
    std::size_t nearest_index(double omega) const;
    bool contains(double omega) const;

    double min_omega() const { return omega(0); }
    double max_omega() const { return omega(count_ - 1); }

    TimeGrid conjugate() const;

    bool operator==(FrequencyGrid const&) const = default;

  private:
    double center_;
    double spacing_;
    std::size_t count_;
};

// Relative-time lattice conjugate to a FrequencyGrid; t = 0 at index N/2.
class TimeGrid {
  public:
    TimeGrid(double spacing, std::size_t count);

    double spacing() const { return spacing_; }
    std::size_t size() const { return count_; }
    double time(std::size_t j) const {
        return (static_cast<double>(j) - static_cast<double>(count_ / 2)) * spacing_;
    }
    std::size_t zero_index() const { return count_ / 2; }
    double min_time() const { return time(0); }
    double max_time() const { return time(count_ - 1); }
    bool contains(double t) const { return t >= min_time() && t <= max_time(); }

    bool operator==(TimeGrid const&) const = default;

  private:
    double spacing_;
    std::size_t count_;
};

// Grid with spacing span / count. Throws ConfigurationError for odd count,
// count < 8, or non-positive span/center.
FrequencyGrid make_frequency_grid(double center, double span, std::size_t count);

TimeGrid conjugate_time_grid(FrequencyGrid const& grid);

}  // namespace entshape
