// Ladder-operator algebra on the truncated Fock space and qubit conventions.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "wva/fock.hpp"
#include "wva/qubit.hpp"

namespace {
constexpr double k_tight = 1e-14;
const std::complex<double> k_i{0.0, 1.0};
}  // namespace

TEST_CASE("ladder operators on the truncated space", "[fock]") {
    wva::FockSpace f{4};
    auto a = wva::annihilation(f);
    auto adag = wva::creation(f);

    SECTION("matrix elements a_{n-1,n} = sqrt(n)") {
        REQUIRE(a(0, 1).real() == Catch::Approx(1.0));
        REQUIRE(a(2, 3).real() == Catch::Approx(std::sqrt(3.0)));
        REQUIRE(std::abs(a(1, 0)) == 0.0);
    }
    SECTION("number operator equals a^dag a") {
        REQUIRE((adag * a - wva::number(f)).cwiseAbs().maxCoeff() < k_tight);
    }
    SECTION("commutator is the identity except at the truncation corner") {
        Eigen::MatrixXcd comm = a * adag - adag * a;
        for (std::size_t n = 0; n < f.dim() - 1; ++n)
            REQUIRE(std::abs(comm(n, n) - 1.0) < k_tight);
        // the lost |n_max+1> level shows up as -n_max on the last diagonal
        REQUIRE(comm(f.dim() - 1, f.dim() - 1).real() ==
                Catch::Approx(-static_cast<double>(f.n_max)));
    }
    SECTION("dimension checks") {
        REQUIRE(f.dim() == 5);
        REQUIRE_THROWS_AS(wva::FockSpace{0}, std::invalid_argument);
    }
}

TEST_CASE("qubit state validation", "[qubit]") {
    SECTION("normalization is enforced with the offending values in the message") {
        REQUIRE_THROWS_WITH(wva::QubitState(0.8, 0.8, 0.0),
                            Catch::Matchers::ContainsSubstring("0.8"));
        REQUIRE_THROWS_AS(wva::QubitState(-0.6, 0.8, 0.0), std::invalid_argument);
    }
    SECTION("theta is wrapped into [0, 2 pi)") {
        wva::QubitState q{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0),
                          -3.0 * std::numbers::pi / 2.0};
        REQUIRE(q.theta == Catch::Approx(std::numbers::pi / 2.0));
    }
    SECTION("amplitudes") {
        wva::QubitState q{0.6, 0.8, std::numbers::pi / 2.0};
        REQUIRE(q.ground() == std::complex<double>{0.6, 0.0});
        REQUIRE(std::abs(q.excited() - std::complex<double>{0.0, 0.8}) < k_tight);
    }
}

TEST_CASE("post-selection rotation", "[qubit]") {
    SECTION("eta = 0 gives the identity") {
        auto u = wva::postselection_rotation(0.0);
        REQUIRE((u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() == 0.0);
    }
    SECTION("matrix elements cos(eta), -i sin(eta)") {
        const double eta = 0.7;
        auto u = wva::postselection_rotation(eta);
        REQUIRE(std::abs(u(0, 0) - std::cos(eta)) < k_tight);
        REQUIRE(std::abs(u(0, 1) + k_i * std::sin(eta)) < k_tight);
        REQUIRE(std::abs(u(1, 0) - u(0, 1)) == 0.0);  // sigma_x is symmetric
    }
    SECTION("unitary for any angle") {
        for (double eta : {0.1, 0.9, 2.4, -1.3}) {
            auto u = wva::postselection_rotation(eta);
            REQUIRE((u * u.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <
                    k_tight);
        }
    }
    SECTION("composition: two rotations add their angles") {
        Eigen::Matrix2cd u = wva::postselection_rotation(0.3) * wva::postselection_rotation(0.5);
        REQUIRE((u - wva::postselection_rotation(0.8)).cwiseAbs().maxCoeff() < k_tight);
    }
}
