#pragma once

// Dimension-generic vector helpers, ReLU/threshold activations, augmented
// coordinates, the standard Gaussian law with its tail estimates, and a few
// elementary analytic inequalities used by the property suites.

#include <array>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ntk {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

using Vec = std::vector<double>;

// ---------------------------------------------------------------------------
// Reproducible random streams.
//
// Every source of randomness flows through an RngStream identified by
// (seed, stream-id); the same pair always yields the same sample sequence.
// Sweeps derive per-trial ids via substream() so trials are order-independent.
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : seed_(seed), stream_(stream_id),
          engine_(splitmix64(splitmix64(seed) ^ splitmix64(stream_id + 0x632BE59BD9B4E019ULL))) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_; }

    // Independent child stream; hash-derived so parallel sweeps stay reproducible.
    RngStream substream(std::uint64_t index) const {
        return RngStream(seed_, splitmix64(stream_ ^ splitmix64(index + 1)));
    }

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

    // Uniform sign in {-1,+1}.
    int sign() { return (engine_() & 1ULL) ? 1 : -1; }

    Vec gaussian_vec(std::size_t dim) {
        Vec v(dim);
        for (auto& x : v) x = normal();
        return v;
    }

    void gaussian_fill(std::span<double> out) {
        for (auto& x : out) x = normal();
    }

    std::mt19937_64& engine() { return engine_; }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Small vector algebra on spans (d <= 3 in practice, but nothing assumes it).
// ---------------------------------------------------------------------------

inline double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double sqnorm(std::span<const double> a) { return dot(a, a); }

inline double norm(std::span<const double> a) { return std::sqrt(sqnorm(a)); }

// x -> (x, 1): appends the bias slot.
inline Vec augment(std::span<const double> x) {
    Vec out(x.size() + 1);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i];
    out[x.size()] = 1.0;
    return out;
}

// <wtilde, (x,1)> without materializing the augmented vector.
inline double dot_aug(std::span<const double> wtilde, std::span<const double> x) {
    assert(wtilde.size() == x.size() + 1);
    double s = wtilde[x.size()];
    for (std::size_t i = 0; i < x.size(); ++i) s += wtilde[i] * x[i];
    return s;
}

// ---------------------------------------------------------------------------
// Activations. The threshold uses the closed indicator: step(0) = 1, so the
// positive-homogeneity identity relu(z) = z * step(z) holds everywhere.
// ---------------------------------------------------------------------------

inline double relu(double z) { return z > 0.0 ? z : 0.0; }

inline double step(double z) { return z >= 0.0 ? 1.0 : 0.0; }

// Random feature Phi(x; wtilde) = (x,1) * step(<wtilde,(x,1)>).
inline Vec feature(std::span<const double> x, std::span<const double> wtilde) {
    if (wtilde.size() != x.size() + 1)
        throw std::invalid_argument("feature: weight dimension must be dim(x)+1");
    Vec out = augment(x);
    const double ind = step(dot_aug(wtilde, x));
    for (auto& c : out) c *= ind;
    return out;
}

// ---------------------------------------------------------------------------
// Standard Gaussian law in a given dimension: density, moments, tails.
// ---------------------------------------------------------------------------

inline double gaussian_density(std::span<const double> w) {
    const double d = static_cast<double>(w.size());
    return std::exp(-0.5 * sqnorm(w)) * std::pow(kTwoPi, -0.5 * d);
}

inline double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// E||w|| for w ~ N(0, I_d); exact chi mean sqrt(2)*Gamma((d+1)/2)/Gamma(d/2).
inline double mean_norm(int d) {
    if (d < 1) throw std::invalid_argument("mean_norm: d must be >= 1");
    return std::sqrt(2.0) * std::exp(std::lgamma(0.5 * (d + 1)) - std::lgamma(0.5 * d));
}

// P[chi_k > r], closed forms for k = 1..7 (all that desk scale needs).
inline double chi_survival(int k, double r) {
    if (r <= 0.0) return 1.0;
    const double q = 0.5 * r * r;
    const double e = std::exp(-q);
    const double two_tail = 2.0 * (1.0 - std_normal_cdf(r));  // P[|N(0,1)| > r]
    const double c = std::sqrt(2.0 / kPi);
    switch (k) {
        case 1: return two_tail;
        case 2: return e;
        case 3: return two_tail + c * r * e;
        case 4: return e * (1.0 + q);
        case 5: return two_tail + c * e * (r + r * r * r / 3.0);
        case 6: return e * (1.0 + q + 0.5 * q * q);
        case 7: return two_tail + c * e * (r + r * r * r / 3.0 + std::pow(r, 5) / 15.0);
        default: throw std::invalid_argument("chi_survival: k must be in 1..7");
    }
}

// Exact truncated moments of the chi law via the survival recursion:
//   int_{||w||>r} ||w||   dG = mean_norm(d)   * P[chi_{d+1} > r]
//   int_{||w||>r} ||w||^2 dG = d              * P[chi_{d+2} > r]
inline double tail_norm_moment(int d, double r) {
    return mean_norm(d) * chi_survival(d + 1, r);
}

inline double tail_sqnorm_moment(int d, double r) {
    return static_cast<double>(d) * chi_survival(d + 2, r);
}

struct GaussianTailBounds {
    double prob_bound;         // P[||w|| > r]            <= exp(-(r-sqrt(d))^2/2)
    double norm_tail_bound;    // int_{>r} ||w||   dG     <= 2(sqrt(d)+3) exp(-(r-sqrt(d))^2/4)
    double sqnorm_tail_bound;  // int_{>r} ||w||^2 dG     <= 2(sqrt(d)+7)^2 exp(-(r-sqrt(d))^2/4)
};

inline GaussianTailBounds gaussian_tail_bounds(int d, double r) {
    if (d < 1) throw std::invalid_argument("gaussian_tail_bounds: d must be >= 1");
    const double sd = std::sqrt(static_cast<double>(d));
    if (r < sd) throw std::invalid_argument("gaussian_tail_bounds: requires r >= sqrt(d)");
    const double g = r - sd;
    GaussianTailBounds b;
    b.prob_bound = std::exp(-0.5 * g * g);
    b.norm_tail_bound = 2.0 * (sd + 3.0) * std::exp(-0.25 * g * g);
    b.sqnorm_tail_bound = 2.0 * (sd + 7.0) * (sd + 7.0) * std::exp(-0.25 * g * g);
    return b;
}

// (x+a)exp(-(x-b)^2/c) <= (a+b)exp(-(x-b)^2/(2c)).
// Valid at x = b (equality) and for x >= b + 2c/(a+b); in the open gap just
// above b the inequality genuinely fails (e.g. a=3, b=1, c=2, x=1.5), so that
// region is rejected as a precondition violation.
inline bool exp_simp_check(double a, double b, double c, double x) {
    if (!(b >= 0.0 && c > 0.0 && a >= 0.0 && a + b >= 2.0 * c && x >= b))
        throw std::invalid_argument("exp_simp_check: precondition violated");
    if (x > b && x - b < 2.0 * c / (a + b))
        throw std::invalid_argument("exp_simp_check: requires x = b or x >= b + 2c/(a+b)");
    const double g = (x - b) * (x - b);
    const double lhs = (x + a) * std::exp(-g / c);
    const double rhs = (a + b) * std::exp(-g / (2.0 * c));
    return lhs <= rhs * (1.0 + 1e-12);
}

}  // namespace ntk
