// pipeline.hpp — end-to-end orchestration shared by the command-line tool and tests
#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wva/composite.hpp"
#include "wva/config.hpp"
#include "wva/detector.hpp"
#include "wva/propagator.hpp"
#include "wva/weakvalue.hpp"

namespace wva {

inline const char* to_string(RegimeStatus s) {
    switch (s) {
        case RegimeStatus::Pass: return "pass";
        case RegimeStatus::Warn: return "warn";
        case RegimeStatus::Fail: return "fail";
    }
    return "fail";
}

// ------------------------------- validation ---------------------------------

// Everything that can be predicted without touching a wavefunction. The weak
// value uses the interaction-shifted relative phase: the conditional evolution
// multiplies the excited branch by a constant phase exp(-i g0 t) on top of the
// pointer kick, so the readout interference sees theta - g0 t.
struct ValidationReport {
    Couplings couplings;
    EngineScales scales;
    std::vector<RegimeRatio> regime;
    RegimeStatus worst;
    WeakValueResult wv;
    PredictedShifts predicted;
    double unselected_shift;  // momentum shift with no post-selection
};

inline ValidationReport validate_run(const RunConfig& c) {
    ValidationReport r{};
    r.couplings = derive_couplings(c.physical);
    r.scales = engine_scales(c.physical, c.numerics.carrier_ratio);
    const QubitState qubit{c.qubit.alpha, c.qubit.beta, c.qubit.theta};
    const QubitState sensed = with_phase_shift(qubit, -r.scales.g0_t);
    r.wv = weak_value(sensed, c.postselect, r.scales.g_c);
    r.predicted = predicted_shifts(r.wv, r.scales.g_c);
    r.unselected_shift = unselected_momentum_shift(qubit, r.scales.g_c);
    r.regime = regime_report(c.physical, r.wv.amplification);
    r.worst = worst_status(r.regime);
    return r;
}

// --------------------------------- single run -------------------------------

struct RunResult {
    ValidationReport prediction;
    double p_success;   // measured post-selection weight
    double discarded;   // weight dropped with the excited cavity branches
    Moments momentum;   // post-selected pointer, momentum units hbar/Delta
    Moments position;   // and position in units of Delta
    ExpectedCounts counts;
    double s_bar;            // mirrored count asymmetry; NaN if minus is empty
    double s_first_order;    // 4 g_c Im(A_w) <x>_window
    PropagationDiagnostics diagnostics;
};

inline RunResult run_single(const RunConfig& c) {
    RunResult r{};
    r.prediction = validate_run(c);
    const EngineScales& s = r.prediction.scales;
    const Grid1D grid{c.numerics.grid_points, c.numerics.half_width};
    const WavepacketState packet = make_gaussian(grid);
    const QubitState qubit{c.qubit.alpha, c.qubit.beta, c.qubit.theta};

    DisposedPointer disposed;
    if (c.numerics.engine == EngineKind::Effective) {
        const SpinorState out = propagate_effective(to_momentum(packet), qubit, s,
                                                    c.numerics.keep_quadratic_phase);
        r.diagnostics.norm_drift = std::abs(norm(out) - 1.0);
        const PostselectedPointer post = postselect(out, c.postselect);
        disposed = DisposedPointer{{post.pointer}, post.p_success, 0.0};
    } else {
        const HamiltonianKind kind = c.numerics.engine == EngineKind::ExactLinear
                                         ? HamiltonianKind::Linearized
                                         : HamiltonianKind::FullSinusoidal;
        const CompositeState psi0 = factorized(packet, qubit, FockSpace{c.numerics.n_max});
        PropagateOptions opts;
        opts.n_threads = c.numerics.threads;
        const PropagatorResult evolved = propagate_exact(psi0, kind, s, opts);
        r.diagnostics = evolved.diagnostics;
        disposed = postselect_composite(to_interaction_frame(evolved, s).state,
                                        c.postselect, c.numerics.disposal);
    }
    r.p_success = disposed.p_success;
    r.discarded = disposed.discarded;

    DisposedPointer in_position = disposed, in_momentum = disposed;
    for (auto& comp : in_position.components)
        if (comp.rep == Representation::Momentum) comp = to_position(comp);
    for (auto& comp : in_momentum.components)
        if (comp.rep == Representation::Position) comp = to_momentum(comp);
    r.position = mixture_moments(in_position);
    r.momentum = mixture_moments(in_momentum);

    r.counts = expected_counts(in_position, c.detector.atoms, c.detector.window);
    r.s_bar = r.counts.minus > 0.0 ? signal(r.counts)
                                   : std::numeric_limits<double>::quiet_NaN();
    r.s_first_order =
        first_order_signal(s.g_c, r.prediction.wv.a_w.imag(), c.detector.window);
    return r;
}

// --------------------------------- detection --------------------------------

struct DetectionResult {
    RunResult run;
    SuppressionReport report;
    double chi;     // efficiency actually used (detector override or physical)
    double delta0;  // deterministic miscount floor actually used
    std::uint64_t seed;
};

inline DetectionResult run_detection(const RunConfig& c, std::uint64_t seed) {
    DetectionResult d{run_single(c), {},
                      c.detector.chi.value_or(c.physical.chi),
                      c.detector.delta0.value_or(c.physical.delta0), seed};
    d.report = run_counting_trials(d.run.counts, d.chi, d.delta0, seed, c.detector.trials);
    return d;
}

// ----------------------------------- sweep ----------------------------------

struct SweepRow {
    double value;
    std::optional<RunResult> result;
    std::string error;  // empty on success; rows never abort the sweep
};

inline std::vector<SweepRow> run_sweep(const RunConfig& base) {
    if (base.sweep.parameter.empty())
        throw std::invalid_argument("run_sweep: no sweep parameter configured");
    if (base.sweep.values.empty())
        throw std::invalid_argument("run_sweep: sweep values list is empty");
    {
        RunConfig probe = base;  // reject unknown paths before doing any work
        sweep_target(probe, base.sweep.parameter);
    }
    std::vector<SweepRow> rows;
    rows.reserve(base.sweep.values.size());
    for (double v : base.sweep.values) {
        RunConfig c = base;
        c.sweep = {};
        *sweep_target(c, base.sweep.parameter) = v;
        SweepRow row{v, std::nullopt, ""};
        try {
            row.result = run_single(c);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

// ------------------------------- JSON output --------------------------------

namespace detail {

inline std::string json_number(double v) {
    if (!std::isfinite(v)) return "null";  // JSON has no inf/nan
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    return out;
}

}  // namespace detail

inline std::string to_json(const Couplings& c) {
    using detail::json_number;
    std::ostringstream o;
    o << "{\"k\":" << json_number(c.k) << ",\"omega\":" << json_number(c.omega)
      << ",\"x_c\":" << json_number(c.x_c)
      << ",\"omega_x_c\":" << json_number(c.omega_x_c)
      << ",\"delta\":" << json_number(c.delta) << ",\"g0\":" << json_number(c.g0)
      << ",\"g_c\":" << json_number(c.g_c)
      << ",\"g_c_prime\":" << json_number(c.g_c_prime) << "}";
    return o.str();
}

inline std::string to_json(const EngineScales& s) {
    using detail::json_number;
    std::ostringstream o;
    o << "{\"omega0_t\":" << json_number(s.omega0_t)
      << ",\"omega_xc_t\":" << json_number(s.omega_xc_t)
      << ",\"omega_delta_t\":" << json_number(s.omega_delta_t)
      << ",\"delta_t\":" << json_number(s.delta_t)
      << ",\"g0_t\":" << json_number(s.g0_t) << ",\"g_c\":" << json_number(s.g_c)
      << ",\"g_c_prime\":" << json_number(s.g_c_prime)
      << ",\"k_delta\":" << json_number(s.k_delta)
      << ",\"k_x0\":" << json_number(s.k_x0)
      << ",\"delta_over_xc\":" << json_number(s.delta_over_xc)
      << ",\"carrier_ratio\":" << json_number(s.carrier_ratio)
      << ",\"omega_c_t\":" << json_number(s.omega_c_t)
      << ",\"omega_a_t\":" << json_number(s.omega_a_t) << "}";
    return o.str();
}

inline std::string to_json(const ValidationReport& v) {
    using detail::json_number;
    std::ostringstream o;
    o << "{\"couplings\":" << to_json(v.couplings)
      << ",\"scales\":" << to_json(v.scales) << ",\"regime\":[";
    for (std::size_t i = 0; i < v.regime.size(); ++i) {
        const RegimeRatio& r = v.regime[i];
        o << (i ? "," : "") << "{\"name\":\"" << detail::json_escape(r.name)
          << "\",\"ratio\":" << json_number(r.ratio) << ",\"status\":\""
          << to_string(r.status) << "\"}";
    }
    o << "],\"regime_worst\":\"" << to_string(v.worst) << "\""
      << ",\"weak_value\":{\"re\":" << json_number(v.wv.a_w.real())
      << ",\"im\":" << json_number(v.wv.a_w.imag())
      << ",\"abs\":" << json_number(std::abs(v.wv.a_w))
      << ",\"route_ratio\":" << json_number(v.wv.route_ratio)
      << ",\"route_phase\":" << json_number(v.wv.route_phase)
      << ",\"p_success\":" << json_number(v.wv.p_success)
      << ",\"kick\":" << json_number(v.wv.kick)
      << ",\"amplification\":" << json_number(v.wv.amplification) << "}"
      << ",\"predicted\":{\"p_shift\":" << json_number(v.predicted.momentum)
      << ",\"x_shift\":" << json_number(v.predicted.position)
      << ",\"amplification\":" << json_number(v.predicted.amplification)
      << ",\"status\":\"" << to_string(v.predicted.status) << "\""
      << ",\"p_shift_unselected\":" << json_number(v.unselected_shift) << "}}";
    return o.str();
}

inline std::string to_json(const RunResult& r) {
    using detail::json_number;
    std::string prediction = to_json(r.prediction);
    prediction.pop_back();  // splice the measured blocks into the same object
    std::ostringstream o;
    o << prediction << ",\"measured\":{\"p_success\":" << json_number(r.p_success)
      << ",\"p_shift\":" << json_number(r.momentum.mean)
      << ",\"x_shift\":" << json_number(r.position.mean)
      << ",\"rms_p\":" << json_number(r.momentum.rms)
      << ",\"rms_x\":" << json_number(r.position.rms)
      << ",\"discarded\":" << json_number(r.discarded) << "}"
      << ",\"counts\":{\"plus\":" << json_number(r.counts.plus)
      << ",\"minus\":" << json_number(r.counts.minus)
      << ",\"s_bar\":" << json_number(r.s_bar)
      << ",\"s_first_order\":" << json_number(r.s_first_order) << "}"
      << ",\"diagnostics\":{\"norm_drift\":" << json_number(r.diagnostics.norm_drift)
      << ",\"cavity_excitation\":" << json_number(r.diagnostics.cavity_excitation)
      << ",\"cutoff_delta\":" << json_number(r.diagnostics.cutoff_delta)
      << ",\"cutoff_warning\":" << (r.diagnostics.cutoff_warning ? "true" : "false")
      << "}}";
    return o.str();
}

inline std::string to_json(const DetectionResult& d) {
    using detail::json_number;
    std::ostringstream o;
    o << "{\"run\":" << to_json(d.run) << ",\"suppression\":{\"chi\":"
      << json_number(d.chi) << ",\"delta0\":" << json_number(d.delta0)
      << ",\"seed\":" << d.seed << ",\"trials\":" << d.report.trials
      << ",\"degenerate\":" << d.report.degenerate
      << ",\"s_bar\":" << json_number(d.report.s_bar)
      << ",\"mean_signal\":" << json_number(d.report.mean_signal)
      << ",\"std_signal\":" << json_number(d.report.std_signal)
      << ",\"predicted_std\":" << json_number(d.report.predicted_std)
      << ",\"bias\":" << json_number(d.report.bias)
      << ",\"bias_se\":" << json_number(d.report.bias_se) << "}}";
    return o.str();
}

inline std::string sweep_to_json(const std::string& parameter,
                                 const std::vector<SweepRow>& rows) {
    std::ostringstream o;
    o << "{\"parameter\":\"" << detail::json_escape(parameter) << "\",\"rows\":[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const SweepRow& row = rows[i];
        o << (i ? "," : "") << "{\"value\":" << detail::json_number(row.value)
          << ",\"error\":";
        if (row.error.empty())
            o << "null";
        else
            o << "\"" << detail::json_escape(row.error) << "\"";
        o << ",\"result\":" << (row.result ? to_json(*row.result) : "null") << "}";
    }
    o << "]}";
    return o.str();
}

// -------------------------------- CSV output --------------------------------

namespace detail {

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        out += ch;
        if (ch == '"') out += '"';
    }
    out += '"';
    return out;
}

inline std::string csv_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_row(const std::string& parameter, const std::string& value,
                           const RunResult* r, const std::string& error) {
    std::ostringstream o;
    o << csv_escape(parameter) << "," << value << ",";
    if (r) {
        const WeakValueResult& wv = r->prediction.wv;
        o << csv_number(wv.a_w.real()) << "," << csv_number(wv.a_w.imag()) << ","
          << csv_number(std::abs(wv.a_w)) << "," << csv_number(r->p_success) << ","
          << csv_number(r->prediction.predicted.momentum) << ","
          << csv_number(r->prediction.predicted.position) << ","
          << csv_number(r->momentum.mean) << "," << csv_number(r->position.mean)
          << "," << csv_number(r->s_bar);
    } else {
        o << ",,,,,,,,";
    }
    o << "," << csv_escape(error) << "\n";
    return o.str();
}

}  // namespace detail

inline std::string csv_header() {
    return "parameter,value,re_a_w,im_a_w,abs_a_w,p_success,p_shift_pred,"
           "x_shift_pred,p_shift_meas,x_shift_meas,s_bar,error\n";
}

inline std::string run_to_csv(const RunResult& r) {
    return csv_header() + detail::csv_row("", "", &r, "");
}

inline std::string sweep_to_csv(const std::string& parameter,
                                const std::vector<SweepRow>& rows) {
    std::string out = csv_header();
    for (const SweepRow& row : rows)
        out += detail::csv_row(parameter, detail::csv_number(row.value),
                               row.result ? &*row.result : nullptr, row.error);
    return out;
}

}  // namespace wva
