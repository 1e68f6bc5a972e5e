// detector.hpp — mirrored counting windows, shot statistics, error suppression
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "wva/grid.hpp"
#include "wva/wavepacket.hpp"
#include "wva/weakvalue.hpp"

namespace wva {

// counting window centered at +center (its mirror sits at -center), in units
// of the pointer width; the windows must not overlap
struct DetectorWindow {
    double center = 1.2;
    double width = 1.0;
};

inline void validate(const DetectorWindow& w) {
    if (!(w.width > 0.0))
        throw std::invalid_argument("DetectorWindow: width must be positive, got " +
                                    std::to_string(w.width));
    if (!(w.center - 0.5 * w.width >= 0.0))
        throw std::invalid_argument(
            "DetectorWindow: mirrored windows overlap (center " +
            std::to_string(w.center) + ", width " + std::to_string(w.width) + ")");
}

// ----------------------------- window integrals -----------------------------

// trapezoid mass of |amplitudes|^2 over [a, b], endpoints linearly interpolated
inline double window_probability(const WavepacketState& pointer, double a, double b) {
    if (pointer.rep != Representation::Position)
        throw std::invalid_argument(
            "window_probability: pointer must be in the position representation");
    if (!(a < b))
        throw std::invalid_argument("window_probability: empty window [" +
                                    std::to_string(a) + ", " + std::to_string(b) + "]");
    const Grid1D& g = pointer.grid;
    const double lo_edge = g.x(0), hi_edge = g.x(g.n_points - 1);
    if (a < lo_edge || b > hi_edge)
        throw std::invalid_argument("window_probability: window [" + std::to_string(a) +
                                    ", " + std::to_string(b) + "] leaves the grid [" +
                                    std::to_string(lo_edge) + ", " +
                                    std::to_string(hi_edge) + "]");
    const double dx = g.dx();
    auto density = [&](std::size_t j) { return std::norm(pointer.amplitudes(j)); };
    auto interpolated = [&](double x) {
        const auto j = static_cast<std::size_t>(std::floor((x - lo_edge) / dx));
        const std::size_t k = std::min(j, g.n_points - 2);
        const double f = (x - g.x(k)) / dx;
        return (1.0 - f) * density(k) + f * density(k + 1);
    };
    const auto first_inside =
        static_cast<std::size_t>(std::ceil((a - lo_edge) / dx - 1e-12));
    const auto last_inside =
        static_cast<std::size_t>(std::floor((b - lo_edge) / dx + 1e-12));
    if (first_inside > last_inside)  // window inside a single cell
        return 0.5 * (interpolated(a) + interpolated(b)) * (b - a);
    double mass = 0.0;
    for (std::size_t j = first_inside; j < last_inside; ++j)
        mass += 0.5 * (density(j) + density(j + 1)) * dx;
    // partial cells at the window edges
    const double xa = g.x(first_inside), xb = g.x(last_inside);
    if (a < xa) mass += 0.5 * (interpolated(a) + density(first_inside)) * (xa - a);
    if (b > xb) mass += 0.5 * (density(last_inside) + interpolated(b)) * (b - xb);
    return mass;
}

// mean position of the bare pointer density restricted to [a, b], closed form
inline double window_mean_position(double a, double b) {
    if (!(a < b))
        throw std::invalid_argument("window_mean_position: empty window");
    const double num = std::exp(-0.5 * a * a) - std::exp(-0.5 * b * b);
    const double den = std::sqrt(0.5 * std::numbers::pi) *
                       (std::erf(b / std::sqrt(2.0)) - std::erf(a / std::sqrt(2.0)));
    if (den <= 0.0)
        throw std::domain_error("window_mean_position: window carries no weight");
    return num / den;
}

inline double window_mean_position(const DetectorWindow& w) {
    validate(w);
    return window_mean_position(w.center - 0.5 * w.width, w.center + 0.5 * w.width);
}

// ------------------------------ expected counts ------------------------------

struct ExpectedCounts {
    double plus;   // mean atom count in the window at +center
    double minus;  // and at -center
};

// pointer may be unnormalized (e.g. fresh from post-selection): its density
// already carries the success probability, so counts are atoms times mass
inline ExpectedCounts expected_counts(const WavepacketState& pointer, double atoms,
                                      const DetectorWindow& w) {
    validate(w);
    if (!(atoms > 0.0))
        throw std::invalid_argument("expected_counts: atom number must be positive");
    const double a = w.center - 0.5 * w.width, b = w.center + 0.5 * w.width;
    return {atoms * window_probability(pointer, a, b),
            atoms * window_probability(pointer, -b, -a)};
}

inline ExpectedCounts expected_counts(const DisposedPointer& mixture, double atoms,
                                      const DetectorWindow& w) {
    ExpectedCounts total{0.0, 0.0};
    for (const auto& comp : mixture.components) {
        const ExpectedCounts c = expected_counts(comp, atoms, w);
        total.plus += c.plus;
        total.minus += c.minus;
    }
    return total;
}

// relative count asymmetry; the amplified observable
inline double signal(double n_plus, double n_minus) {
    if (!(n_minus > 0.0))
        throw std::invalid_argument("signal: reference window count must be positive");
    return n_plus / n_minus - 1.0;
}

inline double signal(const ExpectedCounts& c) { return signal(c.plus, c.minus); }

// first-order prediction: the count asymmetry is the position shift times the
// logarithmic slope of the density averaged over the window
inline double first_order_signal(double g_c, double im_a_w, const DetectorWindow& w) {
    return 4.0 * g_c * im_a_w * window_mean_position(w);
}

// ------------------------------ count sampling ------------------------------

namespace detail {

inline std::uint64_t mix_stream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Poisson for tractable means, matched-moments normal above, clamped at zero
inline long long draw_count(double mean, std::mt19937_64& rng) {
    if (mean < 0.0)
        throw std::invalid_argument("draw_count: negative mean");
    if (mean == 0.0) return 0;
    if (mean <= 1e3) {
        std::poisson_distribution<long long> d(mean);
        return d(rng);
    }
    std::normal_distribution<double> d(mean, std::sqrt(mean));
    return std::max(0LL, std::llround(d(rng)));
}

inline double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 8) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

inline double pairwise_mean(const std::vector<double>& v) {
    return pairwise_sum(v, 0, v.size()) / static_cast<double>(v.size());
}

}  // namespace detail

struct CountPair {
    long long plus;
    long long minus;
};

// one shot of the two counters: an efficiency-thinned random count plus a
// deterministic miscount floor proportional to the expected count
inline CountPair sample_counts(const ExpectedCounts& counts, double chi, double delta0,
                               std::uint64_t seed, std::uint64_t trial) {
    if (!(chi > 0.0) || chi > 1.0)
        throw std::invalid_argument("sample_counts: chi must be in (0, 1], got " +
                                    std::to_string(chi));
    if (delta0 < 0.0)
        throw std::invalid_argument("sample_counts: delta0 must be >= 0");
    std::mt19937_64 rng_plus(detail::mix_stream(seed, 2 * trial));
    std::mt19937_64 rng_minus(detail::mix_stream(seed, 2 * trial + 1));
    return {detail::draw_count(chi * counts.plus, rng_plus) +
                std::llround(delta0 * counts.plus),
            detail::draw_count(chi * counts.minus, rng_minus) +
                std::llround(delta0 * counts.minus)};
}

// ---------------------------- suppression report ----------------------------

struct SuppressionReport {
    double s_bar;           // deterministic asymmetry of the expected counts
    double mean_signal;     // Monte Carlo mean of the sampled asymmetry
    double std_signal;      // Monte Carlo standard deviation
    double predicted_std;   // (1 + s_bar) sqrt((1/n_plus + 1/n_minus) / chi)
    double bias;            // mean_signal - s_bar
    double bias_se;         // standard error of the bias estimate
    std::size_t trials;
    std::size_t degenerate; // trials dropped for an empty reference window
};

inline SuppressionReport run_counting_trials(const ExpectedCounts& counts, double chi,
                                             double delta0, std::uint64_t seed,
                                             std::size_t trials) {
    if (trials < 30)
        throw std::invalid_argument("run_counting_trials: need at least 30 trials, got " +
                                    std::to_string(trials));
    std::vector<double> signals;
    signals.reserve(trials);
    std::size_t degenerate = 0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const CountPair c = sample_counts(counts, chi, delta0, seed, trial);
        if (c.minus <= 0) {
            ++degenerate;
            continue;
        }
        signals.push_back(static_cast<double>(c.plus) / static_cast<double>(c.minus) -
                          1.0);
    }
    if (signals.size() < 30)
        throw std::runtime_error(
            "run_counting_trials: too many degenerate trials (reference window kept "
            "emptying); increase the atom budget");

    SuppressionReport r{};
    r.trials = signals.size();
    r.degenerate = degenerate;
    r.s_bar = signal(counts);
    r.mean_signal = detail::pairwise_mean(signals);
    std::vector<double> dev2(signals.size());
    for (std::size_t i = 0; i < signals.size(); ++i) {
        const double d = signals[i] - r.mean_signal;
        dev2[i] = d * d;
    }
    r.std_signal = std::sqrt(detail::pairwise_sum(dev2, 0, dev2.size()) /
                             static_cast<double>(signals.size() - 1));
    r.predicted_std =
        (1.0 + r.s_bar) * std::sqrt((1.0 / counts.plus + 1.0 / counts.minus) / chi);
    r.bias = r.mean_signal - r.s_bar;
    r.bias_se = r.std_signal / std::sqrt(static_cast<double>(signals.size()));
    return r;
}

}  // namespace wva
