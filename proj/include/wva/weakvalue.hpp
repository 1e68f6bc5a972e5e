// weakvalue.hpp — post-selected readout: weak values, pointer shifts, disposal
#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "wva/composite.hpp"
#include "wva/grid.hpp"
#include "wva/params.hpp"
#include "wva/qubit.hpp"
#include "wva/wavepacket.hpp"

namespace wva {

enum class PostselectedOutcome { Ground, Excited };

struct PostselectionSpec {
    double eta = 0.0;  // qubit rotation applied before the projective readout
    PostselectedOutcome outcome = PostselectedOutcome::Ground;
};

// <f|i> and <f|P_e|i> for <f| = <outcome| after the rotation; the measured
// operator is the excited-state projector, so its weak value is the ratio
struct RouteOverlaps {
    Complex full;          // <f|i>
    Complex excited_part;  // <f|P_e|i>
};

inline RouteOverlaps postselection_overlaps(const QubitState& q,
                                            const PostselectionSpec& spec) {
    const Complex mi(0.0, -1.0);
    const double c = std::cos(spec.eta), s = std::sin(spec.eta);
    // rows of the rotation: <g|U = (c, -i s), <e|U = (-i s, c)
    const Complex f_g = spec.outcome == PostselectedOutcome::Ground ? c : mi * s;
    const Complex f_e = spec.outcome == PostselectedOutcome::Ground ? mi * s : c;
    const Complex excited_part = f_e * q.excited();
    return {f_g * q.ground() + excited_part, excited_part};
}

struct WeakValueResult {
    Complex a_w;          // weak value of the excited-state projector
    double route_ratio;   // A in a_w = 1 / (A e^{i phase} + 1)
    double route_phase;   // relative phase between the two readout routes
    double p_success;     // |<f|i>|^2
    double kick;          // |g_c a_w|, first-order pointer displacement
    double amplification; // g_c^2 |a_w|, size of the neglected second order
};

namespace detail {

inline double wrap_pi(double angle) {  // into (-pi, pi]
    const double r = std::remainder(angle, 2.0 * std::numbers::pi);
    return r <= -std::numbers::pi ? r + 2.0 * std::numbers::pi : r;
}

}  // namespace detail

// Weak value via the two-route interference form. The closed form divides the
// ground-route amplitude by the excited-route amplitude; when the latter
// vanishes the direct overlap ratio is used instead (the result is then an
// exact 0 or 1, the projective limit).
inline WeakValueResult weak_value(const QubitState& q, const PostselectionSpec& spec,
                                  double g_c = 0.0) {
    const RouteOverlaps o = postselection_overlaps(q, spec);
    const double p = std::norm(o.full);
    if (p < 1e-300)
        throw std::domain_error(
            "weak_value: post-selection is orthogonal to the preparation");

    const bool ground_outcome = spec.outcome == PostselectedOutcome::Ground;
    const double c = std::cos(spec.eta), s = std::sin(spec.eta);
    const double excited_route = ground_outcome ? q.beta * s : q.beta * c;
    const double ground_route = ground_outcome ? q.alpha * c : q.alpha * s;

    WeakValueResult r{};
    r.p_success = p;
    if (excited_route != 0.0) {
        r.route_ratio = ground_route / excited_route;
        // ground route carries no phase; the excited route carries theta and
        // the -i of the rotation (ground outcome) or +(-i) on alpha (excited)
        r.route_phase = detail::wrap_pi(ground_outcome
                                            ? 0.5 * std::numbers::pi - q.theta
                                            : -0.5 * std::numbers::pi - q.theta);
        const double a = r.route_ratio, vt = r.route_phase;
        const double denom = a * a + 2.0 * a * std::cos(vt) + 1.0;
        r.a_w = Complex((1.0 + a * std::cos(vt)) / denom, -a * std::sin(vt) / denom);
    } else {
        r.a_w = o.excited_part / o.full;
        r.route_ratio = std::numeric_limits<double>::infinity();
        r.route_phase = 0.0;
    }
    r.kick = std::abs(g_c) * std::abs(r.a_w);
    r.amplification = g_c * g_c * std::abs(r.a_w);
    return r;
}

// ------------------------------ pointer shifts ------------------------------

struct PredictedShifts {
    double momentum;       // first-order <p> in units of hbar / Delta
    double position;       // first-order <x> in units of Delta
    double amplification;  // g_c^2 |a_w|, controls the error of first order
    RegimeStatus status;   // Pass below 0.01, Warn to 0.1, Fail above
};

inline PredictedShifts predicted_shifts(const WeakValueResult& wv, double g_c) {
    PredictedShifts s{};
    s.momentum = -g_c * wv.a_w.real();
    s.position = 2.0 * g_c * wv.a_w.imag();
    s.amplification = g_c * g_c * std::abs(wv.a_w);
    s.status = s.amplification > 0.1    ? RegimeStatus::Fail
               : s.amplification > 0.01 ? RegimeStatus::Warn
                                        : RegimeStatus::Pass;
    return s;
}

// mean momentum without any post-selection: each branch keeps its weight
inline double unselected_momentum_shift(const QubitState& q, double g_c) {
    return -q.beta * q.beta * g_c;
}

// ----------------------------- pointer readout ------------------------------

struct PostselectedPointer {
    WavepacketState pointer;  // unnormalized: its squared norm is p_success
    double p_success;
};

inline PostselectedPointer postselect(const SpinorState& s, const PostselectionSpec& spec) {
    const SpinorState rotated = apply_qubit_rotation(s, postselection_rotation(spec.eta));
    WavepacketState pointer{
        s.grid, s.rep,
        spec.outcome == PostselectedOutcome::Ground ? rotated.ground : rotated.excited};
    const double p = norm(pointer) * norm(pointer);
    if (p < 1e-300)
        throw std::domain_error(
            "postselect: post-selection removed all amplitude (orthogonal outcome)");
    return {std::move(pointer), p};
}

enum class CavityDisposal {
    VacuumProjection,  // condition on an empty cavity, report what was dropped
    PartialTrace       // keep every cavity level as one mixture component
};

struct DisposedPointer {
    std::vector<WavepacketState> components;  // unnormalized mixture branches
    double p_success;                         // total weight of the components
    double discarded;                         // weight dropped by the disposal
};

inline DisposedPointer postselect_composite(const CompositeState& s,
                                            const PostselectionSpec& spec,
                                            CavityDisposal disposal) {
    DisposedPointer out{};
    for (std::size_t n = 0; n < s.fock.dim(); ++n) {
        const PostselectedPointer branch = postselect(fock_component(s, n), spec);
        if (disposal == CavityDisposal::PartialTrace || n == 0) {
            out.components.push_back(branch.pointer);
            out.p_success += branch.p_success;
        } else {
            out.discarded += branch.p_success;
        }
    }
    if (out.p_success < 1e-300)
        throw std::domain_error("postselect_composite: no amplitude survived the readout");
    return out;
}

// moments of the (generally mixed) disposed pointer
inline Moments mixture_moments(const DisposedPointer& d) {
    if (d.components.empty())
        throw std::invalid_argument("mixture_moments: empty mixture");
    const Grid1D grid = d.components.front().grid;
    const Representation rep = d.components.front().rep;
    const double w = rep == Representation::Position ? grid.dx() : grid.dp();
    double mean = 0.0, second = 0.0;
    for (const auto& comp : d.components) {
        if (!(comp.grid == grid) || comp.rep != rep)
            throw std::invalid_argument("mixture_moments: components disagree on grid");
        for (std::size_t j = 0; j < grid.n_points; ++j) {
            const double q = rep == Representation::Position ? grid.x(j) : grid.p(j);
            const double density = w * std::norm(comp.amplitudes(j));
            mean += q * density;
            second += q * q * density;
        }
    }
    mean /= d.p_success;
    second /= d.p_success;
    return {mean, std::sqrt(std::max(0.0, second - mean * mean))};
}

// ---------------------------- projective limit ------------------------------

struct ProjectiveBranch {
    double eigenvalue;        // measured-operator eigenvalue: 0 or 1
    double probability;       // Born weight
    WavepacketState pointer;  // normalized momentum pointer after the kick
};

// strong-measurement decomposition: each eigenvalue displaces the pointer by
// its own share of the kick, with no interference between the branches
inline std::vector<ProjectiveBranch> projective_decomposition(const QubitState& q,
                                                              const Grid1D& grid,
                                                              double g_c) {
    const WavepacketState envelope = make_gaussian(grid);
    std::vector<ProjectiveBranch> branches;
    for (double eigenvalue : {0.0, 1.0}) {
        WavepacketState kicked = envelope;
        for (std::size_t j = 0; j < grid.n_points; ++j)
            kicked.amplitudes(j) *= std::polar(1.0, -eigenvalue * g_c * grid.x(j));
        const double weight =
            eigenvalue == 0.0 ? q.alpha * q.alpha : q.beta * q.beta;
        branches.push_back({eigenvalue, weight, to_momentum(kicked)});
    }
    return branches;
}

}  // namespace wva
