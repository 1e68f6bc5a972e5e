// composite.hpp — motion x qubit and motion x qubit x cavity product states
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wva/fock.hpp"
#include "wva/grid.hpp"
#include "wva/qubit.hpp"
#include "wva/wavepacket.hpp"

namespace wva {

// --------------------------- motion x qubit ---------------------------

struct SpinorState {
    Grid1D grid;
    Representation rep{Representation::Momentum};
    Vector ground;   // amplitudes on |g>
    Vector excited;  // amplitudes on |e>
};

inline double norm(const SpinorState& s) {
    const double w = s.rep == Representation::Position ? s.grid.dx() : s.grid.dp();
    return std::sqrt(w * (s.ground.squaredNorm() + s.excited.squaredNorm()));
}

inline SpinorState to_position(const SpinorState& s) {
    if (s.rep == Representation::Position)
        throw std::invalid_argument("to_position: spinor is already in position representation");
    const double scale =
        s.grid.dp() * static_cast<double>(s.grid.n_points) / std::sqrt(2.0 * std::numbers::pi);
    return {s.grid, Representation::Position, detail::centered_fft(s.ground, false, scale),
            detail::centered_fft(s.excited, false, scale)};
}

inline SpinorState to_momentum(const SpinorState& s) {
    if (s.rep == Representation::Momentum)
        throw std::invalid_argument("to_momentum: spinor is already in momentum representation");
    const double scale = s.grid.dx() / std::sqrt(2.0 * std::numbers::pi);
    return {s.grid, Representation::Momentum, detail::centered_fft(s.ground, true, scale),
            detail::centered_fft(s.excited, true, scale)};
}

// moments of the motional density summed over both qubit branches
inline Moments moments(const SpinorState& s) {
    const double n = norm(s);
    if (std::abs(n - 1.0) > 1e-8)
        throw std::domain_error("moments: spinor norm is " + std::to_string(n) +
                                ", expected 1 (renormalize first)");
    const double w = s.rep == Representation::Position ? s.grid.dx() : s.grid.dp();
    double mean = 0.0, second = 0.0;
    for (std::size_t j = 0; j < s.grid.n_points; ++j) {
        const double q = s.rep == Representation::Position ? s.grid.x(j) : s.grid.p(j);
        const double d = w * (std::norm(s.ground(j)) + std::norm(s.excited(j)));
        mean += q * d;
        second += q * q * d;
    }
    return {mean, std::sqrt(std::max(0.0, second - mean * mean))};
}

inline SpinorState apply_qubit_rotation(const SpinorState& s, const Eigen::Matrix2cd& u) {
    SpinorState out{s.grid, s.rep, u(0, 0) * s.ground + u(0, 1) * s.excited,
                    u(1, 0) * s.ground + u(1, 1) * s.excited};
    return out;
}

// ----------------------- motion x qubit x cavity -----------------------

// amplitudes(row, j): row = q * (n_max + 1) + n over qubit q in {g=0, e=1}
// and cavity occupation n; column j runs over the grid.
struct CompositeState {
    Grid1D grid;
    Representation rep{Representation::Position};
    FockSpace fock;
    Matrix amplitudes;

    std::size_t row(std::size_t q, std::size_t n) const { return q * fock.dim() + n; }
    std::size_t internal_dim() const { return 2 * fock.dim(); }
};

inline double norm(const CompositeState& s) {
    const double w = s.rep == Representation::Position ? s.grid.dx() : s.grid.dp();
    return std::sqrt(w * s.amplitudes.squaredNorm());
}

// packet (x) qubit (x) cavity vacuum
inline CompositeState factorized(const WavepacketState& packet, const QubitState& qubit,
                                 const FockSpace& fock) {
    if (std::abs(norm(packet) - 1.0) > 1e-10)
        throw std::invalid_argument("factorized: packet norm is " +
                                    std::to_string(norm(packet)) + ", expected 1");
    CompositeState s{packet.grid, packet.rep, fock,
                     Matrix::Zero(2 * fock.dim(), packet.grid.n_points)};
    s.amplitudes.row(s.row(0, 0)) = qubit.ground() * packet.amplitudes.transpose();
    s.amplitudes.row(s.row(1, 0)) = qubit.excited() * packet.amplitudes.transpose();
    return s;
}

// probability of finding any cavity excitation (state assumed normalized)
inline double cavity_excitation(const CompositeState& s) {
    const double w = s.rep == Representation::Position ? s.grid.dx() : s.grid.dp();
    double p = 0.0;
    for (std::size_t q = 0; q < 2; ++q)
        for (std::size_t n = 1; n < s.fock.dim(); ++n)
            p += w * s.amplitudes.row(s.row(q, n)).squaredNorm();
    return p;
}

// cavity occupation probabilities, one entry per Fock level
inline std::vector<double> fock_populations(const CompositeState& s) {
    const double w = s.rep == Representation::Position ? s.grid.dx() : s.grid.dp();
    std::vector<double> pops(s.fock.dim(), 0.0);
    for (std::size_t n = 0; n < s.fock.dim(); ++n)
        for (std::size_t q = 0; q < 2; ++q)
            pops[n] += w * s.amplitudes.row(s.row(q, n)).squaredNorm();
    return pops;
}

// unnormalized motion x qubit component <n|psi> for one cavity level
inline SpinorState fock_component(const CompositeState& s, std::size_t n) {
    if (n >= s.fock.dim())
        throw std::invalid_argument("fock_component: level " + std::to_string(n) +
                                    " outside the truncated space");
    return {s.grid, s.rep, s.amplitudes.row(s.row(0, n)).transpose(),
            s.amplitudes.row(s.row(1, n)).transpose()};
}

struct VacuumProjection {
    SpinorState state;      // renormalized motion x qubit state
    double retained;        // norm^2 kept by the projection
};

// dispose of the cavity by projecting onto |0>; retained = 1 - excitation
inline VacuumProjection project_vacuum(const CompositeState& s) {
    SpinorState raw = fock_component(s, 0);
    const double n = norm(raw);
    if (n == 0.0)
        throw std::domain_error("project_vacuum: no amplitude left in the cavity vacuum");
    raw.ground /= n;
    raw.excited /= n;
    return {std::move(raw), n * n};
}

}  // namespace wva
