#include <doctest.h>

#include <cmath>
#include <limits>

#include "entshape/error.hpp"
#include "entshape/units.hpp"

using namespace entshape;

TEST_SUITE("units") {

TEST_CASE("wavelength to angular frequency") {
    // 2 pi c / 1064 nm, evaluated at 30 digits
    CHECK(wavelength_to_angular_frequency(1064e-9) ==
          doctest::Approx(1.7703492173955388e15).epsilon(1e-14));
    CHECK(wavelength_to_angular_frequency(532e-9) ==
          doctest::Approx(2.0 * wavelength_to_angular_frequency(1064e-9)).epsilon(1e-15));
    CHECK_THROWS_AS(wavelength_to_angular_frequency(0.0), DomainError);
    CHECK_THROWS_AS(wavelength_to_angular_frequency(-1e-6), DomainError);
    CHECK_THROWS_AS(wavelength_to_angular_frequency(std::numeric_limits<double>::infinity()),
                    DomainError);
}

TEST_CASE("frequency/wavelength round trip") {
    for (double omega : {1e12, 3.3e14, 1.7703e15, 2.1e16, 7.77e17}) {
        double const back = wavelength_to_angular_frequency(angular_frequency_to_wavelength(omega));
        CHECK(std::abs(back - omega) / omega < 1e-12);
    }
}

TEST_CASE("bandwidth conversion") {
    CHECK(bandwidth_nm_to_hz(31e-9, 1064e-9) == doctest::Approx(8.2e12).epsilon(0.01));
    CHECK(bandwidth_nm_to_hz(31e-9, 1064e-9) ==
          doctest::Approx(8.2091679486545311e12).epsilon(1e-14));
    CHECK(bandwidth_nm_to_hz(0.0, 1064e-9) == 0.0);
    CHECK(bandwidth_nm_to_hz(0.1e-9, 532e-9) ==
          doctest::Approx(1.0592474772457459e11).epsilon(1e-14));
    CHECK_THROWS_AS(bandwidth_nm_to_hz(1e-9, 0.0), DomainError);
}

TEST_CASE("frequency grid construction") {
    double const center = wavelength_to_angular_frequency(1064e-9);
    double const span = hz_to_rad(20e12);
    auto const grid = make_frequency_grid(center, span, 4096);
    CHECK(grid.spacing() == doctest::Approx(span / 4096));
    CHECK(grid.omega(grid.center_index()) == center);
    CHECK(grid.pump() == 2.0 * center);

    CHECK_THROWS_AS(make_frequency_grid(center, span, 7), ConfigurationError);
    CHECK_THROWS_AS(make_frequency_grid(center, span, 6), ConfigurationError);
    CHECK_THROWS_AS(make_frequency_grid(center, 0.0, 4096), ConfigurationError);
    CHECK_THROWS_AS(make_frequency_grid(center, -1.0, 4096), ConfigurationError);
}

TEST_CASE("conjugate time grid") {
    double const center = wavelength_to_angular_frequency(1064e-9);
    for (std::size_t n : {8u, 64u, 4096u, 8192u}) {
        auto const grid = make_frequency_grid(center, hz_to_rad(20e12), n);
        auto const tg = conjugate_time_grid(grid);
        CHECK(tg.size() == n);
        CHECK(static_cast<double>(n) * grid.spacing() * tg.spacing() ==
              doctest::Approx(constants::two_pi).epsilon(1e-15));
        CHECK(tg.time(tg.zero_index()) == 0.0);
    }
    // span 2 pi * 20 THz -> dt = 1 / 20 THz = 50 fs
    auto const tg = make_frequency_grid(center, hz_to_rad(20e12), 4096).conjugate();
    CHECK(tg.spacing() == doctest::Approx(50e-15).epsilon(1e-13));
}

TEST_CASE("grid mirror symmetry is an exact index permutation") {
    auto const grid = make_frequency_grid(wavelength_to_angular_frequency(1064e-9), 1e15, 1024);
    for (std::size_t k = 1; k < grid.size(); ++k) {
        std::size_t const m = grid.mirror(k);
        CHECK(grid.offset_index(k) == -grid.offset_index(m));
        CHECK(grid.mirror(m) == k);
    }
    // Nyquist cell maps onto itself under the periodic lattice
    CHECK(grid.mirror(0) == 0);
    CHECK(grid.mirror(grid.center_index()) == grid.center_index());
}

TEST_CASE("nearest index") {
    auto const grid = make_frequency_grid(1.0e15, 1.0e14, 100);
    CHECK(grid.nearest_index(1.0e15) == 50);
    CHECK(grid.nearest_index(grid.omega(17) + 0.3 * grid.spacing()) == 17);
    CHECK_THROWS_AS(grid.nearest_index(2.0e15), RangeError);
}

}  // TEST_SUITE
