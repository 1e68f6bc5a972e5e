// params.hpp — physical inputs, derived couplings, regime diagnostics
#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace wva {

inline constexpr double k_hbar = 1.054571817e-34;  // J s

// All SI. The atom-cavity detuning enters the model only as delta; the
// absolute qubit/cavity frequencies needed by the lab-frame engines are set
// by a numerical carrier (see EngineScales::carrier_ratio).
struct PhysicalParams {
    double lambda = 1e-2;            // cavity wavelength [m]
    double omega0_over_2pi = 1e4;    // bare coupling Omega_0 / 2 pi [Hz]
    double k_x0 = std::numbers::pi / 4.0;  // offset phase k x_0 [rad], in (0, pi/2)
    double delta_over_2pi = 7.0710678118654755e4;  // detuning delta / 2 pi [Hz]
    double t = 1e-3;                 // interaction time [s] (illustrative default)
    double Delta = 1e-5;             // packet rms width [m]
    double mass = 1.443e-25;         // atom mass [kg] (illustrative default)
    double chi = 0.8;                // detector efficiency, (0, 1]
    double delta0 = 0.0;             // systematic miscount fraction, >= 0
};

inline void validate(const PhysicalParams& p) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0))
            throw std::invalid_argument(std::string("PhysicalParams: ") + name +
                                        " must be positive, got " + std::to_string(v));
    };
    positive(p.lambda, "lambda");
    positive(p.omega0_over_2pi, "omega0_over_2pi");
    positive(p.delta_over_2pi, "delta_over_2pi");
    positive(p.t, "t");
    positive(p.Delta, "Delta");
    positive(p.mass, "mass");
    if (!(p.k_x0 > 0.0) || !(p.k_x0 < std::numbers::pi / 2.0))
        throw std::invalid_argument(
            "PhysicalParams: k_x0 must lie strictly inside (0, pi/2), got " +
            std::to_string(p.k_x0) + " (tan(k x_0) leaves the linearization regime)");
    if (!(p.chi > 0.0) || p.chi > 1.0)
        throw std::invalid_argument("PhysicalParams: chi must be in (0, 1], got " +
                                    std::to_string(p.chi));
    if (p.delta0 < 0.0)
        throw std::invalid_argument("PhysicalParams: delta0 must be >= 0, got " +
                                    std::to_string(p.delta0));
}

// Derived coupling constants of the linearized interaction
// Omega (x + x_c)(a^dag + a) sigma_x, all SI.
struct Couplings {
    double k;          // 2 pi / lambda [1/m]
    double omega;      // Omega = k cos(k x_0) Omega_0 [rad/(s m)]
    double x_c;        // tan(k x_0) / k [m]
    double omega_x_c;  // Omega x_c = Omega_0 sin(k x_0) [rad/s]
    double delta;      // detuning [rad/s]
    double g0;         // (Omega x_c)^2 / delta [rad/s]
    double g_c;        // 2 g0 t (Delta / x_c), dimensionless momentum kick
    double g_c_prime;  // g0 t (Delta / x_c)^2, dimensionless chirp
};

inline Couplings derive_couplings(const PhysicalParams& p) {
    validate(p);
    const double two_pi = 2.0 * std::numbers::pi;
    Couplings c{};
    c.k = two_pi / p.lambda;
    const double omega0 = two_pi * p.omega0_over_2pi;
    c.omega = c.k * std::cos(p.k_x0) * omega0;
    c.x_c = std::tan(p.k_x0) / c.k;
    c.omega_x_c = omega0 * std::sin(p.k_x0);
    c.delta = two_pi * p.delta_over_2pi;
    c.g0 = c.omega_x_c * c.omega_x_c / c.delta;
    const double width_ratio = p.Delta / c.x_c;
    c.g_c = 2.0 * c.g0 * p.t * width_ratio;
    c.g_c_prime = c.g0 * p.t * width_ratio * width_ratio;
    return c;
}

// ---------------------------------- regime ----------------------------------

enum class RegimeStatus { Pass, Warn, Fail };

struct RegimeRatio {
    std::string name;
    double ratio;
    RegimeStatus status;
};

inline constexpr double k_regime_warn = 0.1;  // "<<" flags warn above this
inline constexpr double k_regime_fail = 0.5;  // and fail above this

inline RegimeStatus classify_ratio(double r) {
    if (r > k_regime_fail) return RegimeStatus::Fail;
    if (r > k_regime_warn) return RegimeStatus::Warn;
    return RegimeStatus::Pass;
}

// Every small parameter the model relies on, each reported as the ratio that
// must stay << 1. amplification = g_c^2 |A_w| when a weak value is in play.
inline std::vector<RegimeRatio> regime_report(const PhysicalParams& p,
                                              double amplification = 0.0) {
    const Couplings c = derive_couplings(p);
    std::vector<RegimeRatio> r;
    auto add = [&r](const std::string& name, double ratio) {
        r.push_back({name, ratio, classify_ratio(ratio)});
    };
    add("k_delta", c.k * p.Delta);                       // linearization
    add("drive_over_detuning", c.omega_x_c / c.delta);   // adiabatic elimination
    add("impulse", p.t * k_hbar / (p.mass * p.Delta * p.Delta));  // frozen kinetic term
    add("width_over_x_c", p.Delta / c.x_c);              // first-order pointer shift
    add("kick", std::abs(c.g_c));                        // weak-measurement strength
    if (amplification > 0.0) add("amplification", amplification);
    return r;
}

inline RegimeStatus worst_status(const std::vector<RegimeRatio>& report) {
    RegimeStatus w = RegimeStatus::Pass;
    for (const auto& r : report) {
        if (r.status == RegimeStatus::Fail) return RegimeStatus::Fail;
        if (r.status == RegimeStatus::Warn) w = RegimeStatus::Warn;
    }
    return w;
}

// ------------------------------ engine scales -------------------------------

// Dimensionless quantities actually used by the propagators: every frequency
// is multiplied by the interaction time t, every length measured in Delta.
struct EngineScales {
    double omega0_t;       // Omega_0 t
    double omega_xc_t;     // Omega x_c t
    double omega_delta_t;  // Omega Delta t
    double delta_t;        // delta t
    double g0_t;           // g0 t
    double g_c;
    double g_c_prime;
    double k_delta;        // k Delta
    double k_x0;
    double delta_over_xc;  // Delta / x_c
    double carrier_ratio;  // omega_c / delta (numerical carrier, not physical)
    double omega_c_t;      // carrier_ratio * delta t
    double omega_a_t;      // omega_c t + delta t
};

inline EngineScales engine_scales(const PhysicalParams& p, double carrier_ratio = 25.0) {
    if (!(carrier_ratio > 1.0))
        throw std::invalid_argument("engine_scales: carrier_ratio must exceed 1, got " +
                                    std::to_string(carrier_ratio));
    const Couplings c = derive_couplings(p);
    EngineScales s{};
    s.omega0_t = 2.0 * std::numbers::pi * p.omega0_over_2pi * p.t;
    s.omega_xc_t = c.omega_x_c * p.t;
    s.omega_delta_t = c.omega * p.Delta * p.t;
    s.delta_t = c.delta * p.t;
    s.g0_t = c.g0 * p.t;
    s.g_c = c.g_c;
    s.g_c_prime = c.g_c_prime;
    s.k_delta = c.k * p.Delta;
    s.k_x0 = p.k_x0;
    s.delta_over_xc = p.Delta / c.x_c;
    s.carrier_ratio = carrier_ratio;
    s.omega_c_t = carrier_ratio * s.delta_t;
    s.omega_a_t = s.omega_c_t + s.delta_t;
    return s;
}

}  // namespace wva
