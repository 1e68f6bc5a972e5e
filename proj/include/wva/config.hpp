// config.hpp — INI run configuration: parsing, validation hooks, canonical dump
#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wva/detector.hpp"
#include "wva/params.hpp"
#include "wva/weakvalue.hpp"

namespace wva {

enum class EngineKind {
    Effective,        // dispersive conditional-phase engine
    ExactLinear,      // per-position exact engine, linearized coupling
    ExactSinusoidal,  // per-position exact engine, standing-wave coupling
};

struct RunConfig {
    PhysicalParams physical;

    struct Qubit {  // raw amplitudes, validated when the state is built
        double alpha = 1.0 / std::sqrt(2.0);
        double beta = 1.0 / std::sqrt(2.0);
        double theta = 0.5 * std::numbers::pi;
    } qubit;

    PostselectionSpec postselect{0.25 * std::numbers::pi, PostselectedOutcome::Ground};

    struct Numerics {
        std::size_t grid_points = 1024;
        double half_width = 8.0;
        std::size_t n_max = 4;
        EngineKind engine = EngineKind::Effective;
        bool keep_quadratic_phase = true;
        double carrier_ratio = 25.0;
        CavityDisposal disposal = CavityDisposal::VacuumProjection;
        int threads = 1;
    } numerics;

    struct Detector {
        DetectorWindow window{1.2, 1.0};
        double atoms = 1e6;
        std::size_t trials = 10000;
        std::optional<double> chi;     // defaults to the physical value
        std::optional<double> delta0;  // defaults to the physical value
        std::optional<std::uint64_t> seed;
    } detector;

    struct Sweep {  // active when parameter is non-empty
        std::string parameter;
        std::vector<double> values;
    } sweep;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] inline void config_error(std::size_t line, const std::string& what) {
    throw std::invalid_argument("config line " + std::to_string(line) + ": " + what);
}

inline double parse_double(const std::string& value, std::size_t line,
                           const std::string& key) {
    std::size_t consumed = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &consumed);
    } catch (const std::exception&) {
        config_error(line, "value '" + value + "' for " + key + " is not a number");
    }
    if (consumed != value.size())
        config_error(line, "trailing characters in value '" + value + "' for " + key);
    return v;
}

inline std::uint64_t parse_unsigned(const std::string& value, std::size_t line,
                                    const std::string& key) {
    std::size_t consumed = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(value, &consumed);
    } catch (const std::exception&) {
        config_error(line, "value '" + value + "' for " + key +
                               " is not a non-negative integer");
    }
    if (consumed != value.size() || value.find('-') != std::string::npos)
        config_error(line, "value '" + value + "' for " + key +
                               " is not a non-negative integer");
    return v;
}

inline bool parse_bool(const std::string& value, std::size_t line,
                       const std::string& key) {
    if (value == "true") return true;
    if (value == "false") return false;
    config_error(line, "value '" + value + "' for " + key + " must be true or false");
}

inline const char* format_double(double v, char* buf, std::size_t n) {
    std::snprintf(buf, n, "%.17g", v);
    return buf;
}

}  // namespace detail

inline const char* to_string(EngineKind k) {
    switch (k) {
        case EngineKind::Effective: return "effective";
        case EngineKind::ExactLinear: return "exact-linear";
        case EngineKind::ExactSinusoidal: return "exact-sin";
    }
    return "effective";
}

inline const char* to_string(PostselectedOutcome o) {
    return o == PostselectedOutcome::Ground ? "ground" : "excited";
}

inline const char* to_string(CavityDisposal d) {
    return d == CavityDisposal::VacuumProjection ? "vacuum" : "trace";
}

inline EngineKind parse_engine(const std::string& v) {
    if (v == "effective") return EngineKind::Effective;
    if (v == "exact-linear") return EngineKind::ExactLinear;
    if (v == "exact-sin") return EngineKind::ExactSinusoidal;
    throw std::invalid_argument(
        "engine must be one of effective, exact-linear, exact-sin; got '" + v + "'");
}

// Strict INI parser: unknown sections or keys, malformed values, and keys
// outside a section are hard errors with the line number attached.
inline RunConfig parse_config(const std::string& text) {
    using detail::config_error;
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw, section;
    std::size_t line_no = 0;
    std::vector<std::string> seen;  // section.key duplicates are errors

    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t comment = raw.find_first_of("#;");
        std::string line = detail::trim(comment == std::string::npos
                                            ? raw
                                            : raw.substr(0, comment));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                config_error(line_no, "unterminated section header '" + line + "'");
            section = detail::trim(line.substr(1, line.size() - 2));
            if (section != "physical" && section != "qubit" && section != "postselect" &&
                section != "numerics" && section != "detector" && section != "sweep")
                config_error(line_no, "unknown section [" + section + "]");
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            config_error(line_no, "expected key = value, got '" + line + "'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (section.empty())
            config_error(line_no, "key '" + key + "' appears before any section");
        if (key.empty() || value.empty())
            config_error(line_no, "empty key or value in '" + line + "'");
        const std::string path = section + "." + key;
        for (const auto& s : seen)
            if (s == path) config_error(line_no, "duplicate key " + path);
        seen.push_back(path);

        auto num = [&] { return detail::parse_double(value, line_no, path); };
        auto uns = [&] { return detail::parse_unsigned(value, line_no, path); };

        if (section == "physical") {
            if (key == "lambda") cfg.physical.lambda = num();
            else if (key == "omega0_over_2pi") cfg.physical.omega0_over_2pi = num();
            else if (key == "k_x0") cfg.physical.k_x0 = num();
            else if (key == "delta_over_2pi") cfg.physical.delta_over_2pi = num();
            else if (key == "t") cfg.physical.t = num();
            else if (key == "Delta") cfg.physical.Delta = num();
            else if (key == "mass") cfg.physical.mass = num();
            else if (key == "chi") cfg.physical.chi = num();
            else if (key == "delta0") cfg.physical.delta0 = num();
            else config_error(line_no, "unknown key " + path);
        } else if (section == "qubit") {
            if (key == "alpha") cfg.qubit.alpha = num();
            else if (key == "beta") cfg.qubit.beta = num();
            else if (key == "theta") cfg.qubit.theta = num();
            else config_error(line_no, "unknown key " + path);
        } else if (section == "postselect") {
            if (key == "eta") cfg.postselect.eta = num();
            else if (key == "outcome") {
                if (value == "ground") cfg.postselect.outcome = PostselectedOutcome::Ground;
                else if (value == "excited")
                    cfg.postselect.outcome = PostselectedOutcome::Excited;
                else config_error(line_no, "outcome must be ground or excited");
            } else config_error(line_no, "unknown key " + path);
        } else if (section == "numerics") {
            if (key == "grid_points") cfg.numerics.grid_points = uns();
            else if (key == "half_width") cfg.numerics.half_width = num();
            else if (key == "n_max") cfg.numerics.n_max = uns();
            else if (key == "engine") {
                try {
                    cfg.numerics.engine = parse_engine(value);
                } catch (const std::invalid_argument& e) {
                    config_error(line_no, e.what());
                }
            } else if (key == "keep_quadratic_phase")
                cfg.numerics.keep_quadratic_phase = detail::parse_bool(value, line_no, path);
            else if (key == "carrier_ratio") cfg.numerics.carrier_ratio = num();
            else if (key == "cavity_disposal") {
                if (value == "vacuum")
                    cfg.numerics.disposal = CavityDisposal::VacuumProjection;
                else if (value == "trace") cfg.numerics.disposal = CavityDisposal::PartialTrace;
                else config_error(line_no, "cavity_disposal must be vacuum or trace");
            } else if (key == "threads")
                cfg.numerics.threads = static_cast<int>(uns());
            else config_error(line_no, "unknown key " + path);
        } else if (section == "detector") {
            if (key == "window_center") cfg.detector.window.center = num();
            else if (key == "window_width") cfg.detector.window.width = num();
            else if (key == "atoms") cfg.detector.atoms = num();
            else if (key == "trials") cfg.detector.trials = uns();
            else if (key == "chi") cfg.detector.chi = num();
            else if (key == "delta0") cfg.detector.delta0 = num();
            else if (key == "seed") cfg.detector.seed = uns();
            else config_error(line_no, "unknown key " + path);
        } else {  // sweep
            if (key == "parameter") cfg.sweep.parameter = value;
            else if (key == "values") {
                std::istringstream vals(value);
                std::string item;
                while (std::getline(vals, item, ',')) {
                    item = detail::trim(item);
                    if (item.empty())
                        config_error(line_no, "empty entry in sweep values");
                    cfg.sweep.values.push_back(
                        detail::parse_double(item, line_no, "sweep.values"));
                }
                if (cfg.sweep.values.empty())
                    config_error(line_no, "sweep values list is empty");
            } else config_error(line_no, "unknown key " + path);
        }
    }
    return cfg;
}

inline RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

// canonical dump; parsing it back reproduces the configuration bit for bit
inline std::string dump_config(const RunConfig& c) {
    char buf[64];
    auto d = [&buf](double v) { return std::string(detail::format_double(v, buf, 64)); };
    std::ostringstream out;
    out << "[physical]\n"
        << "lambda = " << d(c.physical.lambda) << "\n"
        << "omega0_over_2pi = " << d(c.physical.omega0_over_2pi) << "\n"
        << "k_x0 = " << d(c.physical.k_x0) << "\n"
        << "delta_over_2pi = " << d(c.physical.delta_over_2pi) << "\n"
        << "t = " << d(c.physical.t) << "\n"
        << "Delta = " << d(c.physical.Delta) << "\n"
        << "mass = " << d(c.physical.mass) << "\n"
        << "chi = " << d(c.physical.chi) << "\n"
        << "delta0 = " << d(c.physical.delta0) << "\n\n"
        << "[qubit]\n"
        << "alpha = " << d(c.qubit.alpha) << "\n"
        << "beta = " << d(c.qubit.beta) << "\n"
        << "theta = " << d(c.qubit.theta) << "\n\n"
        << "[postselect]\n"
        << "eta = " << d(c.postselect.eta) << "\n"
        << "outcome = " << to_string(c.postselect.outcome) << "\n\n"
        << "[numerics]\n"
        << "grid_points = " << c.numerics.grid_points << "\n"
        << "half_width = " << d(c.numerics.half_width) << "\n"
        << "n_max = " << c.numerics.n_max << "\n"
        << "engine = " << to_string(c.numerics.engine) << "\n"
        << "keep_quadratic_phase = "
        << (c.numerics.keep_quadratic_phase ? "true" : "false") << "\n"
        << "carrier_ratio = " << d(c.numerics.carrier_ratio) << "\n"
        << "cavity_disposal = " << to_string(c.numerics.disposal) << "\n"
        << "threads = " << c.numerics.threads << "\n\n"
        << "[detector]\n"
        << "window_center = " << d(c.detector.window.center) << "\n"
        << "window_width = " << d(c.detector.window.width) << "\n"
        << "atoms = " << d(c.detector.atoms) << "\n"
        << "trials = " << c.detector.trials << "\n";
    if (c.detector.chi) out << "chi = " << d(*c.detector.chi) << "\n";
    if (c.detector.delta0) out << "delta0 = " << d(*c.detector.delta0) << "\n";
    if (c.detector.seed) out << "seed = " << *c.detector.seed << "\n";
    if (!c.sweep.parameter.empty()) {
        out << "\n[sweep]\n"
            << "parameter = " << c.sweep.parameter << "\n"
            << "values = ";
        for (std::size_t i = 0; i < c.sweep.values.size(); ++i)
            out << (i ? ", " : "") << d(c.sweep.values[i]);
        out << "\n";
    }
    return out.str();
}

// numeric leaf a sweep may write to; throws on unknown or unsafe paths
inline double* sweep_target(RunConfig& c, const std::string& path) {
    if (path == "physical.lambda") return &c.physical.lambda;
    if (path == "physical.omega0_over_2pi") return &c.physical.omega0_over_2pi;
    if (path == "physical.k_x0") return &c.physical.k_x0;
    if (path == "physical.delta_over_2pi") return &c.physical.delta_over_2pi;
    if (path == "physical.t") return &c.physical.t;
    if (path == "physical.Delta") return &c.physical.Delta;
    if (path == "physical.mass") return &c.physical.mass;
    if (path == "physical.chi") return &c.physical.chi;
    if (path == "physical.delta0") return &c.physical.delta0;
    if (path == "qubit.theta") return &c.qubit.theta;
    if (path == "postselect.eta") return &c.postselect.eta;
    if (path == "numerics.carrier_ratio") return &c.numerics.carrier_ratio;
    if (path == "detector.window_center") return &c.detector.window.center;
    if (path == "detector.window_width") return &c.detector.window.width;
    if (path == "detector.atoms") return &c.detector.atoms;
    throw std::invalid_argument("sweep parameter '" + path +
                                "' is not a sweepable numeric setting");
}

}  // namespace wva
