#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "entshape/biphoton.hpp"
#include "entshape/config.hpp"
#include "entshape/experiment.hpp"
#include "entshape/interference.hpp"
#include "entshape/sfg.hpp"

namespace py = pybind11;
using namespace entshape;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spectral-phase shaping of entangled photon pairs";

    auto const base = py::register_exception<Error>(m, "Error");
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

    m.def("wavelength_to_angular_frequency", &wavelength_to_angular_frequency, py::arg("wavelength"));
    m.def("bandwidth_nm_to_hz", &bandwidth_nm_to_hz, py::arg("delta_lambda"), py::arg("wavelength"));
    m.def("max_pair_flux", &max_pair_flux, py::arg("downconversion_bandwidth_hz"));
    m.def("flux_to_power", &flux_to_power, py::arg("flux"), py::arg("wavelength"));
    m.def("power_to_flux", &power_to_flux, py::arg("power"), py::arg("wavelength"));
    m.def("spectral_photon_density", &spectral_photon_density, py::arg("flux"),
          py::arg("downconversion_bandwidth_hz"));

    py::class_<RateTerms>(m, "RateTerms")
        .def_readonly("coherent", &RateTerms::coherent)
        .def_readonly("thermal", &RateTerms::thermal)
        .def_readonly("entangled", &RateTerms::entangled)
        .def("total", &RateTerms::total);
    m.def("sfg_rate_terms",
          [](double n, double uc, double dc) { return sfg_rate_terms(n, uc, dc); },
          py::arg("density"), py::arg("upconverted_bandwidth_hz"), py::arg("downconversion_bandwidth_hz"));

    m.def(
        "coincidence_regime",
        [](double low_frequency, double upconverted, double input, double downconversion, double pump,
           double density) {
            SfgDetectorSpec const s{low_frequency, upconverted, input, downconversion, pump};
            return to_string(coincidence_regime(s, density).verdict);
        },
        py::arg("low_frequency_bandwidth"), py::arg("upconverted_bandwidth"), py::arg("input_bandwidth"),
        py::arg("downconversion_bandwidth"), py::arg("pump_bandwidth"), py::arg("density"));

    m.def(
        "correlation_fwhm",
        [](std::string const& yaml) {
            auto const chain = build_chain(parse_config(yaml));
            return correlation_fwhm(relative_wavefunction(chain.spectrum, chain.filter)).fwhm;
        },
        py::arg("config_yaml") = "");

    m.def(
        "relative_wavefunction",
        [](std::string const& yaml) {
            auto const chain = build_chain(parse_config(yaml));
            auto const g = relative_wavefunction(chain.spectrum, chain.filter);
            std::vector<double> t(g.grid.size());
            for (std::size_t j = 0; j < t.size(); ++j) t[j] = g.grid.time(j);
            return py::make_tuple(t, g.values);
        },
        py::arg("config_yaml") = "", "Time axis [s] and complex relative-time amplitude.");

    m.def(
        "simulate_counts",
        [](std::vector<double> const& rates, double dark_rate, double integration_time, std::uint64_t seed) {
            auto const c = simulate_counts(rates, CountModel{0.0, dark_rate, integration_time, seed});
            std::vector<std::uint64_t> raw(c.size());
            for (std::size_t i = 0; i < c.size(); ++i) raw[i] = c[i].raw;
            return raw;
        },
        py::arg("rates"), py::arg("dark_rate"), py::arg("integration_time"), py::arg("seed"));

    m.def(
        "run",
        [](std::string const& command, std::string const& yaml, std::filesystem::path const& out_dir) {
            auto const c = parse_command(command);
            if (!c) throw UsageError("unknown command '" + command + "'");
            return run_experiment(parse_config(yaml), *c, out_dir).summary.dump();
        },
        py::arg("command"), py::arg("config_yaml"), py::arg("out_dir"),
        "Run a command and return its JSON summary as a string.");
}
