// grid.hpp — uniform symmetric position grid and its conjugate momentum grid
#pragma once

#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wva {

// Positions are dimensionless (units of the packet rms width Delta), momenta
// conjugate to them (units of hbar/Delta). x = 0 sits on a grid point; the
// momentum grid shares the same centering with spacing 2*pi/(n*dx).
struct Grid1D {
    std::size_t n_points;
    double half_width;

    Grid1D(std::size_t n, double hw) : n_points(n), half_width(hw) {
        if (n < 64 || (n & (n - 1)) != 0)
            throw std::invalid_argument(
                "Grid1D: n_points must be a power of two >= 64, got " + std::to_string(n));
        if (!(hw >= 6.0))
            throw std::invalid_argument(
                "Grid1D: half_width must be >= 6, got " + std::to_string(hw));
    }
    Grid1D() : Grid1D(1024, 8.0) {}

    double dx() const { return 2.0 * half_width / static_cast<double>(n_points); }
    double dp() const { return std::numbers::pi / half_width; }  // 2*pi/(n*dx)

    // j = n/2 is the origin for both axes
    double x(std::size_t j) const {
        return (static_cast<double>(j) - static_cast<double>(n_points) / 2.0) * dx();
    }
    double p(std::size_t k) const {
        return (static_cast<double>(k) - static_cast<double>(n_points) / 2.0) * dp();
    }

    double x_max() const { return x(n_points - 1); }
    double p_max() const { return p(n_points - 1); }

    bool operator==(const Grid1D&) const = default;
};

}  // namespace wva
