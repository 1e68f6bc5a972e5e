// wavepacket.hpp — pointer wavepackets on the grid, spectral transforms, moments
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "wva/grid.hpp"

namespace wva {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

enum class Representation { Position, Momentum };

// amplitudes(j) samples psi(x_j) (Position) or psi(p_k) (Momentum); the
// discrete norm carries the quadrature weight dx or dp.
struct WavepacketState {
    Grid1D grid;
    Representation rep{Representation::Position};
    Vector amplitudes;
};

inline double quadrature_weight(const WavepacketState& s) {
    return s.rep == Representation::Position ? s.grid.dx() : s.grid.dp();
}

inline double norm(const WavepacketState& s) {
    return std::sqrt(quadrature_weight(s) * s.amplitudes.squaredNorm());
}

inline WavepacketState normalized(WavepacketState s) {
    const double n = norm(s);
    if (n == 0.0) throw std::domain_error("normalized: zero-norm state");
    s.amplitudes /= n;
    return s;
}

inline Complex inner(const WavepacketState& a, const WavepacketState& b) {
    if (!(a.grid == b.grid) || a.rep != b.rep)
        throw std::invalid_argument("inner: states live on different grids or representations");
    return quadrature_weight(a) * a.amplitudes.dot(b.amplitudes);  // dot conjugates a
}

// phi(x) = (2*pi)^(-1/4) exp(-x^2/4), unit rms width, renormalized on the grid
inline WavepacketState make_gaussian(const Grid1D& grid) {
    Vector amp(grid.n_points);
    const double c = std::pow(2.0 * std::numbers::pi, -0.25);
    for (std::size_t j = 0; j < grid.n_points; ++j) {
        const double x = grid.x(j);
        amp(j) = c * std::exp(-0.25 * x * x);
    }
    WavepacketState s{grid, Representation::Position, std::move(amp)};
    s.amplitudes /= norm(s);
    return s;
}

namespace detail {

// Centered unitary transform via FFT. With x_j = (j - n/2) dx and
// p_k = (k - n/2) dp, dp dx = 2 pi / n, the continuum kernel e^{-i p x}
// becomes a plain DFT after (-1)^j / (-1)^k sign flips (n is a multiple
// of 4, so the residual phase is +1).
inline Vector centered_fft(const Vector& v, bool forward, double scale) {
    const Eigen::Index n = v.size();
    Vector tmp(n), out(n);
    for (Eigen::Index j = 0; j < n; ++j) tmp(j) = (j & 1) ? -v(j) : v(j);
    Eigen::FFT<double> fft;
    if (forward)
        fft.fwd(out, tmp);
    else
        fft.inv(out, tmp);  // includes the 1/n factor
    for (Eigen::Index k = 0; k < n; ++k) out(k) = ((k & 1) ? -out(k) : out(k)) * scale;
    return out;
}

}  // namespace detail

// psi(p) = (2 pi)^(-1/2) integral psi(x) e^{-i p x} dx
inline WavepacketState to_momentum(const WavepacketState& s) {
    if (s.rep == Representation::Momentum)
        throw std::invalid_argument("to_momentum: state is already in momentum representation");
    const double scale = s.grid.dx() / std::sqrt(2.0 * std::numbers::pi);
    return {s.grid, Representation::Momentum, detail::centered_fft(s.amplitudes, true, scale)};
}

// psi(x) = (2 pi)^(-1/2) integral psi(p) e^{+i p x} dp
inline WavepacketState to_position(const WavepacketState& s) {
    if (s.rep == Representation::Position)
        throw std::invalid_argument("to_position: state is already in position representation");
    const double scale =
        s.grid.dp() * static_cast<double>(s.grid.n_points) / std::sqrt(2.0 * std::numbers::pi);
    return {s.grid, Representation::Position, detail::centered_fft(s.amplitudes, false, scale)};
}

struct Moments {
    double mean;
    double rms;  // sqrt(<q^2> - <q>^2)
};

inline Moments moments(const WavepacketState& s) {
    const double n = norm(s);
    if (std::abs(n - 1.0) > 1e-8)
        throw std::domain_error("moments: state norm is " + std::to_string(n) +
                                ", expected 1 (renormalize first)");
    const double w = quadrature_weight(s);
    double mean = 0.0, second = 0.0;
    for (std::size_t j = 0; j < s.grid.n_points; ++j) {
        const double q = s.rep == Representation::Position ? s.grid.x(j) : s.grid.p(j);
        const double d = w * std::norm(s.amplitudes(j));
        mean += q * d;
        second += q * q * d;
    }
    return {mean, std::sqrt(std::max(0.0, second - mean * mean))};
}

// dimensionless product rms(x) * rms(p); 1/2 saturates the bound (hbar = 1 here)
inline double uncertainty_product(const WavepacketState& s) {
    const WavepacketState& pos = s.rep == Representation::Position ? s : to_position(s);
    const WavepacketState mom =
        s.rep == Representation::Momentum ? s : to_momentum(s);
    return moments(pos).rms * moments(mom).rms;
}

}  // namespace wva
