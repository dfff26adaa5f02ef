#include "entshape/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <map>
#include <set>
#include <sstream>

#include "entshape/sfg.hpp"
#include "entshape/units.hpp"

namespace entshape {

namespace {

enum class Dim { Length, Frequency, Time, Power, Rate, None };

struct Unit {
    Dim dim;
    double scale;
};

std::map<std::string, Unit, std::less<>> const& unit_table() {
    static std::map<std::string, Unit, std::less<>> const table{
        {"m", {Dim::Length, 1.0}},        {"mm", {Dim::Length, 1e-3}},
        {"um", {Dim::Length, 1e-6}},      {"\xC2\xB5m", {Dim::Length, 1e-6}},
        {"nm", {Dim::Length, 1e-9}},      {"pm", {Dim::Length, 1e-12}},
        {"Hz", {Dim::Frequency, 1.0}},    {"kHz", {Dim::Frequency, 1e3}},
        {"MHz", {Dim::Frequency, 1e6}},   {"GHz", {Dim::Frequency, 1e9}},
        {"THz", {Dim::Frequency, 1e12}},  {"s", {Dim::Time, 1.0}},
        {"ms", {Dim::Time, 1e-3}},        {"us", {Dim::Time, 1e-6}},
        {"ns", {Dim::Time, 1e-9}},        {"ps", {Dim::Time, 1e-12}},
        {"fs", {Dim::Time, 1e-15}},       {"as", {Dim::Time, 1e-18}},
        {"W", {Dim::Power, 1.0}},         {"mW", {Dim::Power, 1e-3}},
        {"uW", {Dim::Power, 1e-6}},       {"\xC2\xB5W", {Dim::Power, 1e-6}},
        {"nW", {Dim::Power, 1e-9}},       {"pW", {Dim::Power, 1e-12}},
        {"/s", {Dim::Rate, 1.0}},         {"1/s", {Dim::Rate, 1.0}},
        {"s^-1", {Dim::Rate, 1.0}},       {"cps", {Dim::Rate, 1.0}},
    };
    return table;
}

std::string_view dim_name(Dim d) {
    switch (d) {
        case Dim::Length: return "length";
        case Dim::Frequency: return "frequency";
        case Dim::Time: return "time";
        case Dim::Power: return "power";
        case Dim::Rate: return "rate";
        case Dim::None: break;
    }
    return "dimensionless";
}

struct Quantity {
    double value;
    Dim dim;  // None when given as a bare number
};

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

bool parse_number(std::string_view text, double& out) {
    std::string const s = trim(text);
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && std::isfinite(out);
}

Quantity parse_quantity(YAML::Node const& node, std::string const& field,
                        std::initializer_list<Dim> allowed) {
    if (!node.IsScalar()) throw ConstraintError(field, "expected a scalar quantity");
    std::string const raw = node.Scalar();
    double value = 0.0;
    if (parse_number(raw, value)) return {value, Dim::None};

    // split "<number><space?><unit>"
    std::size_t pos = 0;
    std::string const s = trim(raw);
    while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.' ||
                              s[pos] == '-' || s[pos] == '+' ||
                              ((s[pos] == 'e' || s[pos] == 'E') && pos + 1 < s.size() &&
                               (std::isdigit(static_cast<unsigned char>(s[pos + 1])) ||
                                s[pos + 1] == '-' || s[pos + 1] == '+')))) {
        ++pos;
    }
    std::string const unit = trim(std::string_view(s).substr(pos));
    if (!parse_number(std::string_view(s).substr(0, pos), value) || unit.empty()) {
        throw ConfigSyntaxError(field, "cannot parse quantity '" + raw + "'");
    }
    auto const it = unit_table().find(unit);
    if (it == unit_table().end()) throw ConstraintError(field, "unknown unit '" + unit + "'");
    for (Dim d : allowed) {
        if (d == it->second.dim) return {value * it->second.scale, d};
    }
    throw ConstraintError(field, "unit '" + unit + "' has dimension " +
                                     std::string(dim_name(it->second.dim)) + ", not allowed here");
}

void check_keys(YAML::Node const& node, std::string const& prefix,
                std::set<std::string> const& allowed) {
    if (!node) return;
    if (!node.IsMap()) {
        throw ConstraintError(prefix.empty() ? std::string("<root>") : prefix, "expected a mapping");
    }
    for (auto const& kv : node) {
        auto const key = kv.first.as<std::string>();
        if (!allowed.count(key)) {
            throw UnknownKeyError(prefix.empty() ? key : prefix + "." + key, "unknown key");
        }
    }
}

std::string join(std::string const& a, std::string const& b) { return a + "." + b; }

// Reads a quantity in one fixed dimension; bare numbers are taken as SI.
void read(YAML::Node const& parent, std::string const& prefix, char const* key, Dim dim,
          double& out) {
    auto const n = parent[key];
    if (!n) return;
    out = parse_quantity(n, join(prefix, key), {dim}).value;
}

void read_size(YAML::Node const& parent, std::string const& prefix, char const* key,
               std::size_t& out) {
    auto const n = parent[key];
    if (!n) return;
    double v = 0.0;
    if (!n.IsScalar() || !parse_number(n.Scalar(), v)) {
        throw ConfigSyntaxError(join(prefix, key), "expected an integer");
    }
    if (v < 0.0 || v != std::floor(v)) {
        throw ConstraintError(join(prefix, key), "must be a non-negative integer");
    }
    out = static_cast<std::size_t>(v);
}

void require(bool ok, std::string const& field, std::string const& what) {
    if (!ok) throw ConstraintError(field, what);
}

// Bandwidth given either as a frequency or as a wavelength span at `wavelength`.
double read_bandwidth(YAML::Node const& n, std::string const& field, double wavelength) {
    auto const q = parse_quantity(n, field, {Dim::Length, Dim::Frequency});
    require(q.value > 0.0 || (q.value == 0.0 && q.dim != Dim::Length), field,
            "bandwidth must be positive");
    if (q.dim == Dim::Length) return bandwidth_nm_to_hz(q.value, wavelength);
    return q.value;
}

std::string quoted(std::string const& s) {
    YAML::Emitter e;
    e << YAML::DoubleQuoted << s;
    return e.c_str();
}

void validate(ExperimentConfig const& c) {
    require(c.spectrum.center_wavelength > 0.0, "spectrum.center_wavelength", "must be positive");
    require(c.spectrum.bandwidth > 0.0, "spectrum.bandwidth", "must be positive");
    require(c.pump_bandwidth >= 0.0, "pump.bandwidth", "must be non-negative");
    require(c.grid.points >= 8 && c.grid.points % 2 == 0, "grid.points", "must be even and >= 8");
    require(c.grid.span_factor > 2.0, "grid.span_factor", "must exceed 2 (aliasing guard)");
    require(c.mask.step_fraction > 0.0 && c.mask.step_fraction <= 1.0, "mask.step_fraction",
            "must lie in (0, 1]");
    require(c.mask.step_wavelength >= 0.0, "mask.step_wavelength", "must be non-negative");
    require(c.mask.kind != MaskKind::File || !c.mask.path.empty(), "mask.path",
            "required when mask.type is file");
    require(c.mask.slm_pixels <= c.grid.points, "mask.slm.pixels", "must not exceed grid.points");
    require(c.mask.slm_pixels == 0 || c.mask.slm_levels >= 2, "mask.slm.levels",
            "must be >= 2 when pixels are set");
    require(c.detector.low_frequency_bandwidth >= 0.0, "detector.low_frequency_bandwidth",
            "must be non-negative");
    require(c.detector.upconverted_bandwidth >= 0.0, "detector.upconverted_bandwidth",
            "must be non-negative");
    require(c.detector.input_bandwidth >= 0.0, "detector.input_bandwidth", "must be non-negative");
    require(c.flux >= 0.0, "flux", "must be non-negative");
    require(c.scan.step > 0.0, "scan.step", "must be positive");
    require(c.scan.stop > c.scan.start, "scan.stop", "must exceed scan.start");
    require(!c.scan.delays.empty(), "scan.delays", "must list at least one delay");
    require(c.mz.step > 0.0, "mz.step", "must be positive");
    require(c.mz.stop > c.mz.start, "mz.stop", "must exceed mz.start");
    require(c.mz.window > 0.0, "mz.window", "must be positive");
    require(c.counts.peak_rate >= 0.0, "counts.peak_rate", "must be non-negative");
    require(c.counts.dark_rate >= 0.0, "counts.dark_rate", "must be non-negative");
    require(c.counts.integration_time > 0.0, "counts.integration_time", "must be positive");
}

}  // namespace

std::string_view to_string(SpectrumModel m) {
    switch (m) {
        case SpectrumModel::Gaussian: return "gaussian";
        case SpectrumModel::Sinc: return "sinc";
        case SpectrumModel::FlatTop: break;
    }
    return "flattop";
}

std::string_view to_string(MaskKind m) {
    switch (m) {
        case MaskKind::None: return "none";
        case MaskKind::OppositeLinear: return "opposite_linear";
        case MaskKind::PiStep: return "pi_step";
        case MaskKind::File: break;
    }
    return "file";
}

ExperimentConfig default_config() { return parse_config(""); }

ExperimentConfig parse_config(std::string_view text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (YAML::Exception const& e) {
        throw ConfigSyntaxError("", std::string("YAML syntax error: ") + e.what());
    }
    if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
    check_keys(root, "", {"spectrum", "pump", "grid", "mask", "detector", "flux", "scan", "mz",
                          "counts", "output_dir"});

    ExperimentConfig c;
    try {
        auto const sp = root["spectrum"];
        check_keys(sp, "spectrum", {"model", "bandwidth", "center_wavelength"});
        if (sp) {
            if (auto m = sp["model"]) {
                auto const name = m.as<std::string>();
                if (name == "gaussian") c.spectrum.model = SpectrumModel::Gaussian;
                else if (name == "sinc") c.spectrum.model = SpectrumModel::Sinc;
                else if (name == "flattop") c.spectrum.model = SpectrumModel::FlatTop;
                else throw ConstraintError("spectrum.model", "must be gaussian, sinc or flattop");
            }
            read(sp, "spectrum", "center_wavelength", Dim::Length, c.spectrum.center_wavelength);
        }
        require(c.spectrum.center_wavelength > 0.0, "spectrum.center_wavelength", "must be positive");
        c.spectrum.bandwidth = bandwidth_nm_to_hz(31e-9, c.spectrum.center_wavelength);
        if (sp && sp["bandwidth"]) {
            c.spectrum.bandwidth =
                read_bandwidth(sp["bandwidth"], "spectrum.bandwidth", c.spectrum.center_wavelength);
        }

        auto const pump = root["pump"];
        check_keys(pump, "pump", {"bandwidth"});
        if (pump) read(pump, "pump", "bandwidth", Dim::Frequency, c.pump_bandwidth);

        auto const grid = root["grid"];
        check_keys(grid, "grid", {"span_factor", "points"});
        if (grid) {
            if (auto f = grid["span_factor"]) {
                c.grid.span_factor = parse_quantity(f, "grid.span_factor", {}).value;
            }
            read_size(grid, "grid", "points", c.grid.points);
        }

        auto const mask = root["mask"];
        check_keys(mask, "mask", {"type", "delay", "step_fraction", "step_wavelength", "path", "slm"});
        if (mask) {
            if (auto t = mask["type"]) {
                auto const name = t.as<std::string>();
                if (name == "none") c.mask.kind = MaskKind::None;
                else if (name == "opposite_linear") c.mask.kind = MaskKind::OppositeLinear;
                else if (name == "pi_step") c.mask.kind = MaskKind::PiStep;
                else if (name == "file") c.mask.kind = MaskKind::File;
                else throw ConstraintError("mask.type", "must be none, opposite_linear, pi_step or file");
            }
            read(mask, "mask", "delay", Dim::Time, c.mask.delay);
            if (auto f = mask["step_fraction"]) {
                c.mask.step_fraction = parse_quantity(f, "mask.step_fraction", {}).value;
            }
            read(mask, "mask", "step_wavelength", Dim::Length, c.mask.step_wavelength);
            if (auto p = mask["path"]) c.mask.path = p.as<std::string>();
            auto const slm = mask["slm"];
            check_keys(slm, "mask.slm", {"pixels", "levels"});
            if (slm) {
                read_size(slm, "mask.slm", "pixels", c.mask.slm_pixels);
                read_size(slm, "mask.slm", "levels", c.mask.slm_levels);
            }
        }

        // matched crystals unless overridden
        c.detector.low_frequency_bandwidth = c.spectrum.bandwidth;
        c.detector.input_bandwidth = c.spectrum.bandwidth;
        c.detector.upconverted_bandwidth = bandwidth_nm_to_hz(0.1e-9, c.pump_wavelength());
        auto const det = root["detector"];
        check_keys(det, "detector",
                   {"low_frequency_bandwidth", "upconverted_bandwidth", "input_bandwidth"});
        if (det) {
            if (auto n = det["low_frequency_bandwidth"]) {
                c.detector.low_frequency_bandwidth = read_bandwidth(
                    n, "detector.low_frequency_bandwidth", c.spectrum.center_wavelength);
            }
            if (auto n = det["input_bandwidth"]) {
                c.detector.input_bandwidth =
                    read_bandwidth(n, "detector.input_bandwidth", c.spectrum.center_wavelength);
            }
            if (auto n = det["upconverted_bandwidth"]) {
                c.detector.upconverted_bandwidth =
                    read_bandwidth(n, "detector.upconverted_bandwidth", c.pump_wavelength());
            }
        }

        c.flux = power_to_flux(0.25e-6, c.spectrum.center_wavelength);
        if (auto f = root["flux"]) {
            auto const q = parse_quantity(f, "flux", {Dim::Power, Dim::Rate});
            require(q.value >= 0.0, "flux", "must be non-negative");
            c.flux = q.dim == Dim::Power ? power_to_flux(q.value, c.spectrum.center_wavelength)
                                         : q.value;
        }

        auto const scan = root["scan"];
        check_keys(scan, "scan", {"start", "stop", "step", "delays"});
        if (scan) {
            read(scan, "scan", "start", Dim::Time, c.scan.start);
            read(scan, "scan", "stop", Dim::Time, c.scan.stop);
            read(scan, "scan", "step", Dim::Time, c.scan.step);
            if (auto d = scan["delays"]) {
                if (!d.IsSequence()) throw ConstraintError("scan.delays", "expected a list");
                c.scan.delays.clear();
                for (std::size_t i = 0; i < d.size(); ++i) {
                    auto const field = "scan.delays[" + std::to_string(i) + "]";
                    c.scan.delays.push_back(parse_quantity(d[i], field, {Dim::Time}).value);
                }
            }
        }

        c.mz.offset = 163e-6 / constants::speed_of_light;  // 163 um birefringent plate
        auto const mz = root["mz"];
        check_keys(mz, "mz", {"offset", "start", "stop", "step", "window"});
        if (mz) {
            if (auto o = mz["offset"]) {
                auto const q = parse_quantity(o, "mz.offset", {Dim::Time, Dim::Length});
                c.mz.offset = q.dim == Dim::Length ? q.value / constants::speed_of_light : q.value;
            }
            read(mz, "mz", "start", Dim::Time, c.mz.start);
            read(mz, "mz", "stop", Dim::Time, c.mz.stop);
            read(mz, "mz", "step", Dim::Time, c.mz.step);
            read(mz, "mz", "window", Dim::Time, c.mz.window);
        }

        auto const counts = root["counts"];
        check_keys(counts, "counts", {"peak_rate", "dark_rate", "integration_time", "seed"});
        if (counts) {
            read(counts, "counts", "peak_rate", Dim::Rate, c.counts.peak_rate);
            read(counts, "counts", "dark_rate", Dim::Rate, c.counts.dark_rate);
            read(counts, "counts", "integration_time", Dim::Time, c.counts.integration_time);
            if (auto s = counts["seed"]) {
                try {
                    c.counts.seed = s.as<std::uint64_t>();
                } catch (YAML::Exception const&) {
                    throw ConstraintError("counts.seed", "must be an unsigned 64-bit integer");
                }
            }
        }

        if (auto o = root["output_dir"]) c.output_dir = o.as<std::string>();
    } catch (YAML::Exception const& e) {
        throw ConfigSyntaxError("", std::string("malformed value: ") + e.what());
    } catch (DomainError const& e) {
        throw ConstraintError("", e.what());
    }

    validate(c);
    return c;
}

ExperimentConfig load_config(std::string const& path) {
    std::ifstream in(path);
    if (!in) throw ConfigSyntaxError("", "cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(ExperimentConfig const& c) {
    auto num = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    std::ostringstream out;
    out << "spectrum:\n"
        << "  model: " << to_string(c.spectrum.model) << "\n"
        << "  bandwidth: " << num(c.spectrum.bandwidth) << " Hz\n"
        << "  center_wavelength: " << num(c.spectrum.center_wavelength) << " m\n"
        << "pump:\n"
        << "  bandwidth: " << num(c.pump_bandwidth) << " Hz\n"
        << "grid:\n"
        << "  span_factor: " << num(c.grid.span_factor) << "\n"
        << "  points: " << c.grid.points << "\n"
        << "mask:\n"
        << "  type: " << to_string(c.mask.kind) << "\n"
        << "  delay: " << num(c.mask.delay) << " s\n"
        << "  step_fraction: " << num(c.mask.step_fraction) << "\n"
        << "  step_wavelength: " << num(c.mask.step_wavelength) << " m\n";
    if (!c.mask.path.empty()) {
        out << "  path: " << quoted(c.mask.path) << "\n";
    }
    out << "  slm:\n"
        << "    pixels: " << c.mask.slm_pixels << "\n"
        << "    levels: " << c.mask.slm_levels << "\n"
        << "detector:\n"
        << "  low_frequency_bandwidth: " << num(c.detector.low_frequency_bandwidth) << " Hz\n"
        << "  upconverted_bandwidth: " << num(c.detector.upconverted_bandwidth) << " Hz\n"
        << "  input_bandwidth: " << num(c.detector.input_bandwidth) << " Hz\n"
        << "flux: " << num(c.flux) << " /s\n"
        << "scan:\n"
        << "  start: " << num(c.scan.start) << " s\n"
        << "  stop: " << num(c.scan.stop) << " s\n"
        << "  step: " << num(c.scan.step) << " s\n"
        << "  delays:\n";
    for (double d : c.scan.delays) out << "    - " << num(d) << " s\n";
    out << "mz:\n"
        << "  offset: " << num(c.mz.offset) << " s\n"
        << "  start: " << num(c.mz.start) << " s\n"
        << "  stop: " << num(c.mz.stop) << " s\n"
        << "  step: " << num(c.mz.step) << " s\n"
        << "  window: " << num(c.mz.window) << " s\n"
        << "counts:\n"
        << "  peak_rate: " << num(c.counts.peak_rate) << " /s\n"
        << "  dark_rate: " << num(c.counts.dark_rate) << " /s\n"
        << "  integration_time: " << num(c.counts.integration_time) << " s\n"
        << "  seed: " << c.counts.seed << "\n";
    if (!c.output_dir.empty()) out << "output_dir: " << quoted(c.output_dir) << "\n";
    return out.str();
}

}  // namespace entshape
