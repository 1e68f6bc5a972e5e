// acceptance.cpp — one pass/fail line per shipped guarantee; exits nonzero on any failure
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "wva/composite.hpp"
#include "wva/detector.hpp"
#include "wva/propagator.hpp"
#include "wva/weakvalue.hpp"

using namespace wva;

namespace {

int g_failures = 0;

void report(int id, bool ok, const std::string& text) {
    std::printf("%s  %2d  %s\n", ok ? "PASS" : "FAIL", id, text.c_str());
    if (!ok) ++g_failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof buf, f, args);
    va_end(args);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// least-squares slope of ln(y) against ln(x)
double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// dispersive engine scales from the two dimensionless knobs
EngineScales dispersive(double g0_t, double w) {
    EngineScales s{};
    s.g0_t = g0_t;
    s.delta_over_xc = w;
    s.g_c = 2.0 * g0_t * w;
    s.g_c_prime = g0_t * w * w;
    return s;
}

// physical parameters at drive ratio r = Omega x_c / delta with delta t fixed
// at 4 pi + pi/3 (a quarter-way interference point, nothing special beyond
// avoiding sin = 0); Delta may be overridden to scan k Delta
PhysicalParams operating(double drive_ratio, double Delta = 1e-5) {
    PhysicalParams p;
    const double delta_t = 4.0 * std::numbers::pi + std::numbers::pi / 3.0;
    p.t = 1e-3;
    p.delta_over_2pi = delta_t / (2.0 * std::numbers::pi * p.t);
    p.omega0_over_2pi = drive_ratio * p.delta_over_2pi / std::sin(p.k_x0);
    p.Delta = Delta;
    return p;
}

Complex spinor_overlap(const SpinorState& a, const SpinorState& b) {
    const double w = a.rep == Representation::Position ? a.grid.dx() : a.grid.dp();
    const Complex g = (a.ground.adjoint() * b.ground)(0, 0);
    const Complex e = (a.excited.adjoint() * b.excited)(0, 0);
    return (g + e) * w;
}

Complex composite_overlap(const CompositeState& a, const CompositeState& b) {
    const Complex s = (a.amplitudes.conjugate().cwiseProduct(b.amplitudes)).sum();
    return s * (a.rep == Representation::Position ? a.grid.dx() : a.grid.dp());
}

double composite_l2_diff(const CompositeState& a, const CompositeState& b) {
    const double s = (a.amplitudes - b.amplitudes).squaredNorm();
    return std::sqrt(s * (a.rep == Representation::Position ? a.grid.dx() : a.grid.dp()));
}

struct EngineComparison {
    double fidelity;
    double excitation;
    double norm_drift;
};

// exact linearized engine against the conditional-phase engine, balanced qubit
EngineComparison compare_engines(double drive_ratio, std::size_t n_max,
                                 std::size_t n_points) {
    const PhysicalParams p = operating(drive_ratio);
    const EngineScales s = engine_scales(p);
    const Grid1D grid{n_points, 8.0};
    const WavepacketState packet = make_gaussian(grid);
    const QubitState qubit{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0),
                           0.5 * std::numbers::pi};

    const CompositeState psi0 = factorized(packet, qubit, FockSpace{n_max});
    const PropagatorResult evolved = propagate_exact(psi0, HamiltonianKind::Linearized, s);
    const SpinorState vacuum_part =
        to_momentum(fock_component(to_interaction_frame(evolved, s).state, 0));

    const SpinorState effective =
        propagate_effective(to_momentum(packet), qubit, s, true);

    EngineComparison out{};
    out.fidelity = std::norm(spinor_overlap(effective, vacuum_part));
    out.excitation = evolved.diagnostics.cavity_excitation;
    out.norm_drift = evolved.diagnostics.norm_drift;
    return out;
}

QubitState random_qubit(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double a = u(rng);
    return QubitState{std::sqrt(a), std::sqrt(1.0 - a),
                      2.0 * std::numbers::pi * u(rng)};
}

// ---------------------------------- criteria ---------------------------------

void criterion_1_couplings() {
    const Couplings c = derive_couplings(PhysicalParams{});
    const double omega_xc_hz = c.omega_x_c / (2.0 * std::numbers::pi);
    const double g0_hz = c.g0 / (2.0 * std::numbers::pi);
    const bool golden = std::abs(omega_xc_hz - 7071.067811865475) < 1e-8 &&
                        std::abs(g0_hz - 707.1067811865476) < 1e-9;
    const bool rounded = std::abs(omega_xc_hz / 7000.0 - 1.0) <= 0.02 &&
                         std::abs(g0_hz / 700.0 - 1.0) <= 0.02;
    report(1, golden && rounded,
           fmt("reference couplings: Omega*x_c/2pi = %.6f Hz, g0/2pi = %.7f Hz "
               "(2%% of the rounded 7000 / 700 Hz)",
               omega_xc_hz, g0_hz));
}

void criterion_2_unselected_shift() {
    const Grid1D grid{1024, 8.0};
    const WavepacketState packet = to_momentum(make_gaussian(grid));
    double worst = 0.0;
    bool ok = true;
    for (double beta2 : {0.0, 0.25, 0.5, 1.0}) {
        const QubitState qubit{std::sqrt(1.0 - beta2), std::sqrt(beta2), 0.7};
        for (double g_c : {1e-3, 1e-2, 1e-1}) {
            const EngineScales s = dispersive(0.5, g_c / (2.0 * 0.5));
            const SpinorState out = propagate_effective(packet, qubit, s, false);
            const double expected = -beta2 * g_c;
            const double err = std::abs(moments(out).mean - expected);
            const double bound = 1e-8 * std::abs(expected) + 1e-12;
            worst = std::max(worst, err / bound);
            ok = ok && err <= bound;
        }
    }
    report(2, ok,
           fmt("unselected <p> = -beta^2 g_c over beta^2 in {0..1}, g_c in "
               "{1e-3,1e-2,1e-1} (worst error %.2f of the 1e-8 rel budget)",
               worst));
}

void criterion_3_shift_laws() {
    const Grid1D grid{1024, 8.0};
    const WavepacketState packet = to_momentum(make_gaussian(grid));
    const double w = 0.4;  // fixed geometry so the quadratic error term leads
    const std::vector<double> kicks{1e-3, 3e-3, 1e-2};
    const double golden_phase = -2.94225534860746918;  // Im(A_w) = 5 at A = 1

    bool bounds_ok = true;
    std::vector<double> max_errs;
    double max_abs_aw = 0.0;
    for (double g_c : kicks) {
        const double g0_t = g_c / (2.0 * w);
        const EngineScales s = dispersive(g0_t, w);
        // four working points: mixed, imaginary-dominant (|A_w| ~ 5),
        // real-amplified, and a generic unbalanced qubit
        struct Point {
            QubitState qubit;
            PostselectionSpec spec;
        };
        const double quarter = 0.25 * std::numbers::pi;
        const std::vector<Point> points{
            {{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0),
              0.5 * std::numbers::pi - 2.4 + g0_t},
             {quarter, PostselectedOutcome::Ground}},
            {{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0),
              0.5 * std::numbers::pi - golden_phase + g0_t},
             {quarter, PostselectedOutcome::Ground}},
            {{0.6, 0.8, 0.5 * std::numbers::pi + g0_t},
             {3.0 * quarter, PostselectedOutcome::Ground}},
            {{0.6, 0.8, 0.3 + g0_t}, {0.9, PostselectedOutcome::Ground}},
        };
        double max_err = 0.0;
        for (const Point& pt : points) {
            const WeakValueResult wv =
                weak_value(with_phase_shift(pt.qubit, -g0_t), pt.spec, g_c);
            const double abs_aw = std::abs(wv.a_w);
            max_abs_aw = std::max(max_abs_aw, abs_aw);
            const SpinorState out = propagate_effective(packet, pt.qubit, s, true);
            const PostselectedPointer post = postselect(out, pt.spec);
            const WavepacketState pointer = normalized(post.pointer);
            const double p_meas = moments(pointer).mean;
            const double x_meas = moments(to_position(pointer)).mean;
            const double err_p = std::abs(p_meas - (-g_c * wv.a_w.real()));
            const double err_x = std::abs(x_meas - 2.0 * g_c * wv.a_w.imag());
            const double err = std::max(err_p, err_x);
            const double bound = 5.0 * g_c * g_c * abs_aw * abs_aw + 1e-8;
            bounds_ok = bounds_ok && err <= bound && abs_aw <= 30.0 &&
                        g_c * g_c * abs_aw <= 0.01;
            max_err = std::max(max_err, err);
        }
        max_errs.push_back(max_err);
    }
    const double slope = loglog_slope(kicks, max_errs);
    const bool slope_ok = std::abs(slope - 2.0) <= 0.3;
    report(3, bounds_ok && slope_ok,
           fmt("first-order shift laws: errors within 5 g_c^2 |A_w|^2 (|A_w| up "
               "to %.2f), error slope vs g_c = %.3f (need 2 +- 0.3)",
               max_abs_aw, slope));
}

void criterion_4_exact_vs_effective() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::vector<double> infidelities;
    std::string detail;
    for (double r : {0.2, 0.1, 0.05}) {
        const EngineComparison cmp = compare_engines(r, 4, 1024);
        const double infidelity = 1.0 - cmp.fidelity;
        infidelities.push_back(infidelity);
        ok = ok && infidelity <= 5.0 * r * r && cmp.excitation <= 3.0 * r * r;
        detail += fmt("%sr=%.2f: 1-F=%.2e (cap %.2e), exc=%.2e", detail.empty() ? "" : "; ",
                      r, infidelity, 5.0 * r * r, cmp.excitation);
    }
    const bool monotone =
        infidelities[0] > infidelities[1] && infidelities[1] > infidelities[2];
    const double elapsed = seconds_since(t0);
    report(4, ok && monotone && elapsed < 60.0,
           fmt("exact linearized vs conditional-phase engine: %s; monotone %s; "
               "%.1f s (cap 60)",
               detail.c_str(), monotone ? "yes" : "NO", elapsed));
}

void criterion_5_linearization() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> k_deltas{0.03, 0.01, 0.003};
    std::vector<double> l2_diffs, infidelities;
    const Grid1D grid{512, 8.0};
    const QubitState qubit{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0),
                           0.5 * std::numbers::pi};
    for (double kd : k_deltas) {
        PhysicalParams p = operating(0.1);
        p.Delta = kd * p.lambda / (2.0 * std::numbers::pi);  // k Delta = kd
        const EngineScales s = engine_scales(p);
        const CompositeState psi0 = factorized(make_gaussian(grid), qubit, FockSpace{4});
        const PropagatorResult a = propagate_exact(psi0, HamiltonianKind::FullSinusoidal, s);
        const PropagatorResult b = propagate_exact(psi0, HamiltonianKind::Linearized, s);
        l2_diffs.push_back(composite_l2_diff(a.state, b.state));
        infidelities.push_back(1.0 - std::norm(composite_overlap(a.state, b.state)));
    }
    const double l2_slope = loglog_slope(k_deltas, l2_diffs);
    const double infid_slope = loglog_slope(k_deltas, infidelities);
    const double elapsed = seconds_since(t0);
    report(5, std::abs(l2_slope - 2.0) <= 0.4 && elapsed < 120.0,
           fmt("standing-wave vs linearized coupling: state discrepancy slope vs "
               "k*Delta = %.3f (need 2 +- 0.4; overlap infidelity slope %.2f), "
               "%.1f s (cap 120)",
               l2_slope, infid_slope, elapsed));
}

void criterion_6_projective_limit() {
    const EngineScales s = dispersive(0.5, 0.1);
    const QubitState qubit{0.6, 0.8, 1.0};
    const QubitState sensed = with_phase_shift(qubit, -s.g0_t);
    const WeakValueResult wg =
        weak_value(sensed, {0.0, PostselectedOutcome::Ground}, s.g_c);
    const WeakValueResult we =
        weak_value(sensed, {0.0, PostselectedOutcome::Excited}, s.g_c);
    const bool exact_values = wg.a_w.real() == 0.0 && wg.a_w.imag() == 0.0 &&
                              we.a_w.real() == 1.0 && we.a_w.imag() == 0.0;

    const Grid1D grid{1024, 8.0};
    const SpinorState out =
        propagate_effective(to_momentum(make_gaussian(grid)), qubit, s, true);
    double worst_x = 0.0;
    for (PostselectedOutcome o : {PostselectedOutcome::Ground, PostselectedOutcome::Excited}) {
        const PostselectedPointer post = postselect(out, {0.0, o});
        const double x = moments(to_position(normalized(post.pointer))).mean;
        worst_x = std::max(worst_x, std::abs(x));
    }
    report(6, exact_values && worst_x <= 1e-10,
           fmt("projective limit (eta = 0): A_g = 0 and A_e = 1 bitwise, "
               "post-selected |<x>| = %.1e (cap 1e-10)",
               worst_x));
}

void criterion_7_route_identity() {
    std::mt19937_64 rng(20250816);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    std::size_t rejected = 0;
    for (int i = 0; i < 10000; ++i) {
        QubitState q = random_qubit(rng);
        PostselectionSpec spec{2.0 * std::numbers::pi * u(rng),
                               i % 2 ? PostselectedOutcome::Excited
                                     : PostselectedOutcome::Ground};
        RouteOverlaps o = postselection_overlaps(q, spec);
        while (std::norm(o.full) < 1e-6) {  // reject near-orthogonal draws
            ++rejected;
            q = random_qubit(rng);
            spec.eta = 2.0 * std::numbers::pi * u(rng);
            o = postselection_overlaps(q, spec);
        }
        const Complex closed = weak_value(q, spec).a_w;
        const Complex direct = o.excited_part / o.full;
        const double scale = std::max(1.0, std::abs(closed));
        worst = std::max(worst, std::abs(closed - direct) / scale);
    }
    report(7, worst <= 1e-12,
           fmt("closed-form vs overlap-ratio weak value over 10^4 draws: worst "
               "relative gap %.2e (cap 1e-12, %zu degenerate draws redrawn)",
               worst, rejected));
}

// the criterion-8/9 chain: imaginary-dominant weak value read out by mirrored
// count windows; returns the exact expected counts and the signal pair
struct CountingChain {
    ExpectedCounts counts;
    double s_exact;
    double s_first;
};

CountingChain counting_chain(double g_c) {
    const double g0_t = 0.5;  // fixed; g_c is swept through the geometry ratio
    const EngineScales s = dispersive(g0_t, g_c / (2.0 * g0_t));
    const double golden_phase = -2.94225534860746918;  // tan(phase/2) = -10
    const QubitState qubit{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0),
                           0.5 * std::numbers::pi - golden_phase + g0_t};
    const PostselectionSpec spec{0.25 * std::numbers::pi, PostselectedOutcome::Ground};
    const DetectorWindow window{1.2, 1.0};

    const Grid1D grid{2048, 8.0};
    const SpinorState out =
        propagate_effective(to_momentum(make_gaussian(grid)), qubit, s, true);
    const PostselectedPointer post = postselect(out, spec);
    const WavepacketState pointer = to_position(post.pointer);

    CountingChain chain{};
    chain.counts = expected_counts(pointer, 1e8, window);
    chain.s_exact = signal(chain.counts);
    const WeakValueResult wv = weak_value(with_phase_shift(qubit, -g0_t), spec, g_c);
    chain.s_first = first_order_signal(g_c, wv.a_w.imag(), window);
    return chain;
}

void criterion_8_detector_signal() {
    const CountingChain strong = counting_chain(5e-3);
    const CountingChain weak = counting_chain(2.5e-3);
    const double rel_strong = std::abs(strong.s_exact - strong.s_first) /
                              std::abs(strong.s_first);
    const double rel_weak = std::abs(weak.s_exact - weak.s_first) /
                            std::abs(weak.s_first);
    report(8, rel_strong <= 0.10 && rel_weak < rel_strong,
           fmt("count asymmetry at g_c = 5e-3, Im(A_w) = 5: exact %.5f vs "
               "first-order %.5f (gap %.1f%%, cap 10%%; %.1f%% at half g_c)",
               strong.s_exact, strong.s_first, 100.0 * rel_strong,
               100.0 * rel_weak));
}

void criterion_9_error_suppression() {
    const ExpectedCounts counts = counting_chain(5e-3).counts;
    const double chi = 0.8, delta0 = 0.1;
    const std::uint64_t seed = 777;
    const SuppressionReport clean = run_counting_trials(counts, chi, 0.0, seed, 10000);
    const SuppressionReport offset = run_counting_trials(counts, chi, delta0, seed, 10000);
    const bool bias_ok = std::abs(offset.bias) <= 3.0 * offset.bias_se &&
                         std::abs(clean.bias) <= 3.0 * clean.bias_se;

    bool channel_invariant = true;  // same seed => identical random increments
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        const CountPair a = sample_counts(counts, chi, 0.0, seed, trial);
        const CountPair b = sample_counts(counts, chi, delta0, seed, trial);
        channel_invariant = channel_invariant &&
                            b.plus - a.plus == std::llround(delta0 * counts.plus) &&
                            b.minus - a.minus == std::llround(delta0 * counts.minus);
    }

    const ExpectedCounts halved{0.5 * counts.plus, 0.5 * counts.minus};
    const SuppressionReport rare = run_counting_trials(halved, chi, 0.0, seed + 1, 10000);
    const double inflation = rare.std_signal / clean.std_signal;
    const bool inflation_ok = inflation >= 1.25 && inflation <= 1.60;

    report(9, bias_ok && channel_invariant && inflation_ok,
           fmt("count-floor suppression: bias %.2e vs 3 SE %.2e, random channel "
               "bit-invariant %s, std inflation at halved counts %.3f (need "
               "1.25..1.60 around sqrt(2))",
               offset.bias, 3.0 * offset.bias_se, channel_invariant ? "yes" : "NO",
               inflation));
}

void criterion_10_infrastructure() {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Grid1D grid{1024, 8.0};
    const WavepacketState packet = to_momentum(make_gaussian(grid));

    double worst_drift = 0.0;  // unitarity over random dispersive settings
    for (int i = 0; i < 50; ++i) {
        const EngineScales s = dispersive(0.1 + 1.9 * u(rng), 1e-4 + 0.05 * u(rng));
        const SpinorState out = propagate_effective(packet, random_qubit(rng), s, true);
        worst_drift = std::max(worst_drift, std::abs(norm(out) - 1.0));
    }
    const EngineComparison small = compare_engines(0.1, 4, 512);
    const bool unitary = worst_drift <= 1e-10 && small.norm_drift <= 1e-10;

    double worst_round_trip = 0.0;
    for (int i = 0; i < 20; ++i) {
        WavepacketState state{grid, Representation::Position, Vector(grid.n_points)};
        for (auto& a : state.amplitudes) a = Complex{u(rng) - 0.5, u(rng) - 0.5};
        const WavepacketState back = to_position(to_momentum(state));
        worst_round_trip = std::max(
            worst_round_trip, (back.amplitudes - state.amplitudes).cwiseAbs().maxCoeff());
    }

    const double up = uncertainty_product(make_gaussian(grid));
    const bool minimal = std::abs(up - 0.5) <= 1e-8 * 0.5;

    const ExpectedCounts counts{1.05e4, 1e4};
    const SuppressionReport a = run_counting_trials(counts, 0.8, 0.1, 4242, 500);
    const SuppressionReport b = run_counting_trials(counts, 0.8, 0.1, 4242, 500);
    const SuppressionReport c = run_counting_trials(counts, 0.8, 0.1, 4243, 500);
    const bool deterministic = a.mean_signal == b.mean_signal &&
                               a.std_signal == b.std_signal &&
                               a.mean_signal != c.mean_signal;

    const double f4 = compare_engines(0.1, 4, 1024).fidelity;
    const double f6 = compare_engines(0.1, 6, 1024).fidelity;
    const bool converged = std::abs(f4 - f6) < 1e-6;

    report(10,
           unitary && worst_round_trip <= 1e-12 && minimal && deterministic && converged,
           fmt("infrastructure: drift %.1e, round trip %.1e, dx*dp = %.10f, "
               "seeded reruns bitwise %s, |F(n_max 4) - F(6)| = %.1e (cap 1e-6)",
               std::max(worst_drift, small.norm_drift), worst_round_trip, up,
               deterministic ? "equal" : "UNEQUAL", std::abs(f4 - f6)));
}

}  // namespace

int main() {
    criterion_1_couplings();
    criterion_2_unselected_shift();
    criterion_3_shift_laws();
    criterion_4_exact_vs_effective();
    criterion_5_linearization();
    criterion_6_projective_limit();
    criterion_7_route_identity();
    criterion_8_detector_signal();
    criterion_9_error_suppression();
    criterion_10_infrastructure();
    if (g_failures == 0)
        std::printf("acceptance: all 10 criteria passed\n");
    else
        std::printf("acceptance: %d of 10 criteria FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
