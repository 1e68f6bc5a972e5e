// propagator.hpp — exact per-position propagation and the dispersive short-cut
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "wva/composite.hpp"
#include "wva/hamiltonian.hpp"
#include "wva/params.hpp"
#include "wva/qubit.hpp"
#include "wva/wavepacket.hpp"

namespace wva {

enum class ExpmMethod {
    Pade,               // scaling-and-squaring Pade approximant
    Eigendecomposition  // spectral form, used to cross-check the Pade route
};

enum class Frame { Lab, Interaction };

struct PropagateOptions {
    ExpmMethod method = ExpmMethod::Pade;
    int n_threads = 1;
    bool check_cutoff = true;
};

struct PropagationDiagnostics {
    double norm_drift = 0.0;         // |norm(out) - norm(in)|
    double cavity_excitation = 0.0;  // probability outside the cavity vacuum
    double cutoff_delta = 0.0;       // probe-point sensitivity to enlarging the Fock space
    bool cutoff_warning = false;
};

struct PropagatorResult {
    CompositeState state;
    Frame frame = Frame::Lab;
    PropagationDiagnostics diagnostics;
};

// exp(-i h) for Hermitian h (h already carries the evolution time)
inline Matrix propagator_exponential(const Matrix& h, ExpmMethod method) {
    if (h.rows() != h.cols())
        throw std::invalid_argument("propagator_exponential: matrix is not square");
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("propagator_exponential: matrix is not Hermitian");
    if (method == ExpmMethod::Pade) {
        const Matrix a = Complex(0.0, -1.0) * h;
        return a.exp();
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("propagator_exponential: eigendecomposition failed");
    const auto dim = h.rows();
    Vector phases(dim);
    for (Eigen::Index k = 0; k < dim; ++k)
        phases(k) = std::polar(1.0, -es.eigenvalues()(k));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

namespace detail {

// largest relative change of the propagated probe vectors when the cavity
// space is enlarged by two levels; flags a too-small Fock cutoff
inline double cutoff_probe(const CompositeState& psi0, HamiltonianKind kind,
                           const EngineScales& s, ExpmMethod method) {
    const FockSpace small = psi0.fock;
    const FockSpace big{small.n_max + 2};
    double worst = 0.0;
    const std::size_t n = psi0.grid.n_points;
    for (std::size_t m = 0; m < 8; ++m) {
        const std::size_t j = n / 16 + m * (n / 8);
        const Vector v_small = psi0.amplitudes.col(j);
        const double v_norm = v_small.norm();
        if (v_norm < 1e-30) continue;
        Vector v_big = Vector::Zero(2 * big.dim());
        for (std::size_t q = 0; q < 2; ++q)
            for (std::size_t l = 0; l < small.dim(); ++l)
                v_big(q * big.dim() + l) = v_small(q * small.dim() + l);
        const double x = psi0.grid.x(j);
        const Vector r_small =
            propagator_exponential(build_local_hamiltonian(kind, s, small, x), method) * v_small;
        const Vector r_big =
            propagator_exponential(build_local_hamiltonian(kind, s, big, x), method) * v_big;
        Vector r_embedded = Vector::Zero(2 * big.dim());
        for (std::size_t q = 0; q < 2; ++q)
            for (std::size_t l = 0; l < small.dim(); ++l)
                r_embedded(q * big.dim() + l) = r_small(q * small.dim() + l);
        worst = std::max(worst, (r_embedded - r_big).norm() / v_norm);
    }
    return worst;
}

}  // namespace detail

// evolve every grid column with its local propagator (position is a spectator)
inline PropagatorResult propagate_exact(const CompositeState& psi0, HamiltonianKind kind,
                                        const EngineScales& s, PropagateOptions opts = {}) {
    if (kind != HamiltonianKind::FullSinusoidal && kind != HamiltonianKind::Linearized)
        throw std::invalid_argument(
            "propagate_exact: kind must be FullSinusoidal or Linearized");
    if (psi0.rep != Representation::Position)
        throw std::invalid_argument(
            "propagate_exact: state must be in the position representation");
    if (cavity_excitation(psi0) > 1e-12)
        throw std::invalid_argument("propagate_exact: initial cavity state must be the vacuum");
    if (opts.n_threads < 1 || opts.n_threads > 256)
        throw std::invalid_argument("propagate_exact: n_threads must be in [1, 256]");

    const double norm_in = norm(psi0);
    PropagatorResult result{psi0, Frame::Lab, {}};
    Matrix& amps = result.state.amplitudes;
    const std::size_t n = psi0.grid.n_points;

    const auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
            const Matrix h = build_local_hamiltonian(kind, s, psi0.fock, psi0.grid.x(j));
            amps.col(j) = (propagator_exponential(h, opts.method) * amps.col(j)).eval();
        }
    };

    const auto n_threads = static_cast<std::size_t>(opts.n_threads);
    if (n_threads == 1) {
        work(0, n);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(n_threads);
        const std::size_t chunk = (n + n_threads - 1) / n_threads;
        for (std::size_t t = 0; t < n_threads; ++t) {
            const std::size_t begin = t * chunk;
            const std::size_t end = std::min(n, begin + chunk);
            pool.emplace_back([&, t, begin, end] {
                try {
                    if (begin < end) work(begin, end);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    result.diagnostics.norm_drift = std::abs(norm(result.state) - norm_in);
    result.diagnostics.cavity_excitation = cavity_excitation(result.state);
    if (opts.check_cutoff) {
        const double delta = detail::cutoff_probe(psi0, kind, s, opts.method);
        result.diagnostics.cutoff_delta = delta;
        if (delta > 1e-3)
            throw std::runtime_error("propagate_exact: Fock cutoff n_max=" +
                                     std::to_string(psi0.fock.n_max) +
                                     " is insufficient (probe delta " + std::to_string(delta) +
                                     "); raise n_max");
        result.diagnostics.cutoff_warning = delta > 1e-6;
    }
    return result;
}

// strip the free qubit and cavity phases accumulated during the evolution
inline PropagatorResult to_interaction_frame(const PropagatorResult& r, const EngineScales& s) {
    if (r.frame == Frame::Interaction)
        throw std::invalid_argument(
            "to_interaction_frame: state is already in the interaction frame");
    PropagatorResult out = r;
    for (std::size_t q = 0; q < 2; ++q) {
        const double sz = q == 1 ? 0.5 : -0.5;
        for (std::size_t n = 0; n < r.state.fock.dim(); ++n) {
            const double phase =
                s.omega_c_t * (static_cast<double>(n) + 0.5) + s.omega_a_t * sz;
            out.state.amplitudes.row(out.state.row(q, n)) *= std::polar(1.0, phase);
        }
    }
    out.frame = Frame::Interaction;
    return out;
}

// dispersive engine: the cavity is never populated, only a qubit-conditioned
// position-dependent phase survives.  Input pointer in momentum representation;
// set keep_quadratic_phase = false to drop the phase-curvature term.
inline SpinorState propagate_effective(const WavepacketState& packet, const QubitState& qubit,
                                       const EngineScales& s,
                                       bool keep_quadratic_phase = true) {
    if (packet.rep != Representation::Momentum)
        throw std::invalid_argument(
            "propagate_effective: pointer must be in the momentum representation");
    if (std::abs(norm(packet) - 1.0) > 1e-10)
        throw std::invalid_argument("propagate_effective: pointer norm is " +
                                    std::to_string(norm(packet)) + ", expected 1");
    const double p_max = packet.grid.p_max();
    if (std::abs(s.g_c) > 0.5 * p_max - 4.0)
        throw std::invalid_argument(
            "propagate_effective: momentum kick " + std::to_string(s.g_c) +
            " would push the pointer outside the resolvable band; enlarge the grid");

    WavepacketState pos = to_position(packet);
    SpinorState out{packet.grid, Representation::Position,
                    qubit.ground() * pos.amplitudes, Vector(packet.grid.n_points)};
    const Complex excited = qubit.excited();
    for (std::size_t j = 0; j < packet.grid.n_points; ++j) {
        const double x = packet.grid.x(j);
        const double shift = keep_quadratic_phase
                                 ? (1.0 + s.delta_over_xc * x) * (1.0 + s.delta_over_xc * x)
                                 : 1.0 + 2.0 * s.delta_over_xc * x;
        out.excited(j) = excited * std::polar(1.0, -s.g0_t * shift) * pos.amplitudes(j);
    }
    return to_momentum(out);
}

}  // namespace wva
