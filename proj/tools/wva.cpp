// wva.cpp — command-line driver: validate, run, sweep, detect
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wva/config.hpp"
#include "wva/pipeline.hpp"

namespace {

constexpr int k_exit_ok = 0;       // success (validate: pass or warn)
constexpr int k_exit_failure = 1;  // the computation itself failed or regime fails
constexpr int k_exit_usage = 2;    // bad flags, unreadable or malformed config

struct Options {
    std::string config_path;
    std::string out_path;          // empty writes to stdout
    std::string format = "json";   // json or csv
    std::string engine;            // optional engine override
    std::uint64_t seed = 0;
    CLI::Option* seed_given = nullptr;
    bool dump_config = false;
};

void add_common_options(CLI::App* sub, Options& o,
                        const std::vector<std::string>& formats) {
    sub->add_option("-c,--config", o.config_path, "configuration file (INI)")
        ->required();
    sub->add_option("-o,--out", o.out_path, "write output to this file");
    if (!formats.empty()) {
        o.format = formats.front();
        sub->add_option("-f,--format", o.format, "output format")
            ->check(CLI::IsMember(formats));
    }
    sub->add_option("-e,--engine", o.engine,
                    "engine override: effective, exact-linear, exact-sin")
        ->check(CLI::IsMember({"effective", "exact-linear", "exact-sin"}));
    o.seed_given =
        sub->add_option("-s,--seed", o.seed, "random seed (overrides [detector] seed)");
    sub->add_flag("--dump-config", o.dump_config,
                  "print the effective configuration and exit");
}

// configuration acquisition: any failure here is a usage error
wva::RunConfig load_config(const Options& o) {
    wva::RunConfig cfg = wva::parse_config_file(o.config_path);
    if (!o.engine.empty()) cfg.numerics.engine = wva::parse_engine(o.engine);
    if (o.seed_given && o.seed_given->count() > 0) cfg.detector.seed = o.seed;
    return cfg;
}

int emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return k_exit_ok;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot open output file '" << out_path << "'\n";
        return k_exit_failure;
    }
    out << text;
    return k_exit_ok;
}

std::string validate_text(const wva::ValidationReport& v) {
    char buf[256];
    std::string out;
    auto line = [&](const char* fmt, auto... args) {
        std::snprintf(buf, sizeof buf, fmt, args...);
        out += buf;
        out += '\n';
    };
    line("%s", "couplings:");
    line("  Omega x_c / 2pi  %.*g Hz", 10, v.couplings.omega_x_c / (2 * std::numbers::pi));
    line("  g0 / 2pi         %.*g Hz", 10, v.couplings.g0 / (2 * std::numbers::pi));
    line("  x_c              %.*g m", 10, v.couplings.x_c);
    line("  g_c              %.*g", 10, v.couplings.g_c);
    line("  g_c'             %.*g", 10, v.couplings.g_c_prime);
    line("%s", "weak value:");
    line("  A_w              %.*g %+.*gi", 10, v.wv.a_w.real(), 10, v.wv.a_w.imag());
    line("  p_success        %.*g", 10, v.wv.p_success);
    line("  <p> shift        %.*g (unselected %.*g)", 10, v.predicted.momentum, 10,
         v.unselected_shift);
    line("  <x> shift        %.*g", 10, v.predicted.position);
    line("%s", "regime (ratio must stay << 1):");
    for (const auto& r : v.regime)
        line("  %-22s %.3e  %s", r.name.c_str(), r.ratio, wva::to_string(r.status));
    line("status: %s", wva::to_string(v.worst));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weak-value amplification of an atom-cavity momentum kick"};
    app.require_subcommand(1);

    Options validate_opts, run_opts, sweep_opts, detect_opts;
    CLI::App* validate = app.add_subcommand(
        "validate", "derive couplings and check the working-regime ratios");
    add_common_options(validate, validate_opts, {"text", "json"});
    CLI::App* run = app.add_subcommand(
        "run", "propagate one configuration and report shifts and counts");
    add_common_options(run, run_opts, {"json", "csv"});
    CLI::App* sweep = app.add_subcommand(
        "sweep", "repeat the run over the configured parameter values");
    add_common_options(sweep, sweep_opts, {"json", "csv"});
    CLI::App* detect = app.add_subcommand(
        "detect", "Monte Carlo mirrored-counting trials (requires a seed)");
    add_common_options(detect, detect_opts, {});

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return k_exit_usage;
    }

    const Options& opts = validate->parsed() ? validate_opts
                          : run->parsed()    ? run_opts
                          : sweep->parsed()  ? sweep_opts
                                             : detect_opts;

    wva::RunConfig cfg;
    try {
        cfg = load_config(opts);
        if (detect->parsed() && !cfg.detector.seed) {
            std::cerr << "error: detect needs a seed (--seed or [detector] seed)\n";
            return k_exit_usage;
        }
        if (sweep->parsed() && cfg.sweep.parameter.empty()) {
            std::cerr << "error: sweep needs a [sweep] section with a parameter\n";
            return k_exit_usage;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return k_exit_usage;
    }
    if (opts.dump_config) return emit(wva::dump_config(cfg), opts.out_path);

    try {
        if (validate->parsed()) {
            const wva::ValidationReport v = wva::validate_run(cfg);
            const int rc = emit(opts.format == "json" ? wva::to_json(v) + "\n"
                                                      : validate_text(v),
                                opts.out_path);
            if (rc != k_exit_ok) return rc;
            return v.worst == wva::RegimeStatus::Fail ? k_exit_failure : k_exit_ok;
        }
        if (run->parsed()) {
            const wva::RunResult r = wva::run_single(cfg);
            return emit(opts.format == "json" ? wva::to_json(r) + "\n"
                                              : wva::run_to_csv(r),
                        opts.out_path);
        }
        if (sweep->parsed()) {
            const std::vector<wva::SweepRow> rows = wva::run_sweep(cfg);
            return emit(opts.format == "json"
                            ? wva::sweep_to_json(cfg.sweep.parameter, rows) + "\n"
                            : wva::sweep_to_csv(cfg.sweep.parameter, rows),
                        opts.out_path);
        }
        const wva::DetectionResult d = wva::run_detection(cfg, *cfg.detector.seed);
        return emit(wva::to_json(d) + "\n", opts.out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return k_exit_failure;
    }
}
