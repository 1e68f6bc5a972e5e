// hamiltonian.hpp — local (fixed-position) Hamiltonian blocks in dimensionless form
#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "wva/fock.hpp"
#include "wva/params.hpp"
#include "wva/wavepacket.hpp"

namespace wva {

enum class HamiltonianKind {
    FullSinusoidal,  // coupling follows the standing-wave profile sin(k x + k x0)
    Linearized,      // coupling linearized around the node-offset point x0
    RWAInteraction,  // co-rotating exchange term only, in the interaction frame
    Effective,       // dispersive qubit-conditioned phase, cavity eliminated
};

namespace detail {

inline Eigen::Matrix2cd sigma_z() {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = -1.0;  // |g>
    m(1, 1) = 1.0;   // |e>
    return m;
}

inline Eigen::Matrix2cd sigma_x() {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

inline Eigen::Matrix2cd sigma_plus() {  // |e><g|
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(1, 0) = 1.0;
    return m;
}

}  // namespace detail

// H(x) * t for the given engine at one grid position x (in units of the packet
// width).  Energies carry the evolution time, so the propagator is exp(-i H).
// Ordering matches CompositeState: row = qubit * fock.dim() + cavity level.
inline Matrix build_local_hamiltonian(HamiltonianKind kind, const EngineScales& s,
                                      const FockSpace& fock, double x,
                                      double interaction_phase = 0.0) {
    using detail::sigma_plus;
    using detail::sigma_x;
    using detail::sigma_z;
    const auto dim = static_cast<Eigen::Index>(fock.dim());
    const Matrix id = Matrix::Identity(dim, dim);

    if (kind == HamiltonianKind::Effective) {
        // cavity already eliminated: qubit-conditioned phase only
        const double shift = 1.0 + s.delta_over_xc * x;
        Matrix h = Matrix::Zero(2, 2);
        h(1, 1) = s.g0_t * shift * shift;
        return h;
    }

    if (kind == HamiltonianKind::RWAInteraction) {
        const double coupling = s.omega_delta_t * x + s.omega_xc_t;
        const Complex phase = std::polar(1.0, interaction_phase);
        Matrix h = coupling * phase *
                   Eigen::kroneckerProduct(sigma_plus(), annihilation(fock)).eval();
        h += h.adjoint().eval();
        return h;
    }

    double coupling = 0.0;
    switch (kind) {
        case HamiltonianKind::FullSinusoidal:
            coupling = s.omega0_t * std::sin(s.k_delta * x + s.k_x0);
            break;
        case HamiltonianKind::Linearized:
            coupling = s.omega_delta_t * x + s.omega_xc_t;
            break;
        default:
            throw std::invalid_argument("build_local_hamiltonian: unsupported kind");
    }

    Matrix h = 0.5 * s.omega_a_t * Eigen::kroneckerProduct(sigma_z(), id).eval();
    h += s.omega_c_t *
         Eigen::kroneckerProduct(Eigen::Matrix2cd::Identity(),
                                 (number(fock) + 0.5 * id).eval())
             .eval();
    const Matrix quadrature = annihilation(fock) + creation(fock);
    h += coupling * Eigen::kroneckerProduct(sigma_x(), quadrature).eval();
    return h;
}

}  // namespace wva
