// qubit.hpp — two-level state |i> = alpha|g> + beta e^{i theta}|e> and the
// post-selection rotation U = exp(-i eta sigma_x)
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace wva {

inline double wrap_angle(double theta) {
    const double two_pi = 2.0 * std::numbers::pi;
    double w = std::fmod(theta, two_pi);
    if (w < 0.0) w += two_pi;
    return w;
}

struct QubitState {
    double alpha;  // ground amplitude, real >= 0
    double beta;   // excited amplitude magnitude, real >= 0
    double theta;  // relative phase in [0, 2 pi)

    QubitState(double a, double b, double th) : alpha(a), beta(b), theta(wrap_angle(th)) {
        if (a < 0.0 || b < 0.0)
            throw std::invalid_argument("QubitState: alpha and beta must be non-negative, got alpha=" +
                                        std::to_string(a) + " beta=" + std::to_string(b));
        const double n2 = a * a + b * b;
        if (std::abs(n2 - 1.0) > 1e-12)
            throw std::invalid_argument("QubitState: alpha^2 + beta^2 = " + std::to_string(n2) +
                                        " (alpha=" + std::to_string(a) + ", beta=" + std::to_string(b) +
                                        "), must be 1");
    }

    std::complex<double> ground() const { return {alpha, 0.0}; }
    std::complex<double> excited() const { return std::polar(beta, theta); }
};

// exp(-i eta sigma_x) in the (|g>, |e>) basis
inline Eigen::Matrix2cd postselection_rotation(double eta) {
    const std::complex<double> c{std::cos(eta), 0.0};
    const std::complex<double> ms{0.0, -std::sin(eta)};
    Eigen::Matrix2cd u;
    u << c, ms, ms, c;
    return u;
}

// absorb the bare phase e^{-i g0 t} acquired by |e> into the relative phase
inline QubitState with_phase_shift(const QubitState& q, double phase) {
    return {q.alpha, q.beta, q.theta + phase};
}

}  // namespace wva
