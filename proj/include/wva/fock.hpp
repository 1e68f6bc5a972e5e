// fock.hpp — truncated cavity Fock space and ladder operators
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace wva {

struct FockSpace {
    std::size_t n_max;  // basis |0> ... |n_max>

    explicit FockSpace(std::size_t nm) : n_max(nm) {
        if (nm < 1)
            throw std::invalid_argument("FockSpace: n_max must be >= 1, got " + std::to_string(nm));
    }
    FockSpace() : FockSpace(4) {}

    std::size_t dim() const { return n_max + 1; }
};

// a |n> = sqrt(n) |n-1>  ->  a_{n-1,n} = sqrt(n)
inline Eigen::MatrixXcd annihilation(const FockSpace& f) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(f.dim(), f.dim());
    for (std::size_t n = 1; n < f.dim(); ++n)
        m(n - 1, n) = std::sqrt(static_cast<double>(n));
    return m;
}

inline Eigen::MatrixXcd creation(const FockSpace& f) {
    return annihilation(f).adjoint();
}

inline Eigen::MatrixXcd number(const FockSpace& f) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(f.dim(), f.dim());
    for (std::size_t n = 0; n < f.dim(); ++n) m(n, n) = static_cast<double>(n);
    return m;
}

}  // namespace wva
