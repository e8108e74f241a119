#pragma once

// Probe measures on the unit ball, L2(P) estimators, the sampling-theorem
// bound calculators, and the frequency-certificate harness.

#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ntk/core.hpp"
#include "ntk/report.hpp"

namespace ntk {

struct ProbeMeasure {
    enum class Kind { UniformBall, Grid, Custom };
    Kind kind = Kind::Custom;
    int d = 1;
    std::vector<Vec> points;

    std::size_t size() const { return points.size(); }

    // Uniform on the unit ball via normalized Gaussian direction and U^{1/d} radius.
    static ProbeMeasure uniform_ball(int d, int n, RngStream rng) {
        ProbeMeasure p;
        p.kind = Kind::UniformBall;
        p.d = d;
        p.points.reserve(n);
        for (int i = 0; i < n; ++i) {
            Vec x = rng.gaussian_vec(d);
            const double nx = norm(x);
            const double r = std::pow(rng.uniform(), 1.0 / d);
            for (auto& c : x) c *= (nx > 0.0 ? r / nx : 0.0);
            p.points.push_back(std::move(x));
        }
        return p;
    }

    // Canonical deterministic grids: 2001 points on [-1,1] (d=1), a 201x201
    // square masked to the disk (d=2), 1e5 ball samples from a fixed stream (d=3).
    static ProbeMeasure grid(int d) {
        ProbeMeasure p;
        p.kind = Kind::Grid;
        p.d = d;
        if (d == 1) {
            for (int i = 0; i < 2001; ++i) p.points.push_back({-1.0 + 2.0 * i / 2000.0});
        } else if (d == 2) {
            for (int i = 0; i < 201; ++i) {
                for (int j = 0; j < 201; ++j) {
                    Vec x{-1.0 + 2.0 * i / 200.0, -1.0 + 2.0 * j / 200.0};
                    if (sqnorm(x) <= 1.0) p.points.push_back(std::move(x));
                }
            }
        } else if (d == 3) {
            ProbeMeasure ball = uniform_ball(3, 100000, RngStream(0x3D6B17ULL));
            p.points = std::move(ball.points);
        } else {
            throw std::invalid_argument("ProbeMeasure::grid: d must be 1..3");
        }
        return p;
    }

    static ProbeMeasure custom(int d, std::vector<Vec> pts) {
        ProbeMeasure p;
        p.kind = Kind::Custom;
        p.d = d;
        p.points = std::move(pts);
        return p;
    }
};

// Monte Carlo / grid estimate of ||g||_{L2(P)} together with its standard error.
template <class G>
std::pair<double, double> l2p_norm(const G& g, const ProbeMeasure& P) {
    if (P.points.empty()) throw std::invalid_argument("l2p_norm: empty probe measure");
    const double n = static_cast<double>(P.points.size());
    double s = 0.0, s2 = 0.0;
    for (const auto& x : P.points) {
        const double v = g(x);
        const double q = v * v;
        s += q;
        s2 += q * q;
    }
    const double mean = s / n;
    const double var_mean = std::max(0.0, s2 / n - mean * mean) / n;
    const double nrm = std::sqrt(std::max(mean, 0.0));
    const double se = nrm > 0.0 ? 0.5 * std::sqrt(var_mean) / nrm : std::sqrt(std::sqrt(var_mean));
    return {nrm, se};
}

// Values evaluated on a probe set; convenience for difference norms.
template <class G>
std::vector<double> eval_on(const G& g, const ProbeMeasure& P) {
    std::vector<double> out;
    out.reserve(P.points.size());
    for (const auto& x : P.points) out.push_back(g(x));
    return out;
}

inline std::pair<double, double> l2p_norm_of_values(std::span<const double> vals) {
    double s = 0.0, s2 = 0.0;
    const double n = static_cast<double>(vals.size());
    for (double v : vals) {
        const double q = v * v;
        s += q;
        s2 += q * q;
    }
    const double mean = s / n;
    const double var_mean = std::max(0.0, s2 / n - mean * mean) / n;
    const double nrm = std::sqrt(std::max(mean, 0.0));
    const double se = nrm > 0.0 ? 0.5 * std::sqrt(var_mean) / nrm : std::sqrt(std::sqrt(var_mean));
    return {nrm, se};
}

// ---------------------------------------------------------------------------
// Bound calculators for the sampling theorem.
//   eq1      = 2 (B/sqrt(m) + eps R) [1 + sqrt(ln(1/eta))]
//   eq2      = 2 (B^2/(eps m^{3/2}) + B R/m + B/sqrt(m) + eps R) [1 + sqrt(ln(1/eta))]
//   tau_move = B / (eps sqrt(m))
//   B_eps    = B / (eps sqrt(m)) + R
// ---------------------------------------------------------------------------

struct SampBounds {
    double eq1 = 0.0;
    double eq2 = 0.0;
    double tau_move = 0.0;
    double B_eps = 0.0;
};

inline SampBounds samp_bounds(double B, long m, double eps, double R, double eta) {
    if (B <= 0.0 || m < 1 || eps <= 0.0 || R <= 0.0 || eta <= 0.0 || eta > 1.0)
        throw std::invalid_argument("samp_bounds: all parameters must be positive, eta in (0,1]");
    const double sm = std::sqrt(static_cast<double>(m));
    const double bracket = 1.0 + std::sqrt(std::log(1.0 / eta));
    SampBounds out;
    out.tau_move = B / (eps * sm);
    out.B_eps = out.tau_move + R;
    out.eq1 = 2.0 * (B / sm + eps * R) * bracket;
    out.eq2 = 2.0 * (B * B / (eps * m * sm) + B * R / m + B / sm + eps * R) * bracket;
    return out;
}

// Truncation radius of the sampling theorem: R = sqrt(d+1) + 2 sqrt(ln(m/eta)).
inline double batch_truncation_radius(int d, long m, double eta) {
    return std::sqrt(static_cast<double>(d + 1)) +
           2.0 * std::sqrt(std::log(static_cast<double>(m) / eta));
}

// ---------------------------------------------------------------------------
// Frequency certificates: run independent trials of a high-probability
// statement and compare the violation frequency with k*eta plus binomial
// slack.  `trial` maps an RngStream to (empirical, theoretical-bound).
// A negative control shrinks every trial's bound by `bound_scale`.
// ---------------------------------------------------------------------------

struct CertifyOutcome {
    BoundReport report;
    int violations = 0;
    int trials = 0;
    double threshold = 0.0;
    std::vector<double> ratios;  // empirical / bound per trial
};

template <class TrialFn>
CertifyOutcome certify(const std::string& name, TrialFn&& trial, int trials, double eta,
                       int k_eta, RngStream rng, double bound_scale = 1.0) {
    if (trials < 200) throw std::invalid_argument("certify: trials must be >= 200");
    CertifyOutcome out;
    out.trials = trials;
    int viol = 0;
    out.ratios.reserve(trials);
    for (int t = 0; t < trials; ++t) {
        RngStream sub = rng.substream(static_cast<std::uint64_t>(t));
        const auto [emp, bound] = trial(sub);
        const double scaled = bound * bound_scale;
        out.ratios.push_back(bound > 0.0 ? emp / bound : 0.0);
        if (emp > scaled) ++viol;
    }
    out.violations = viol;
    const double freq = static_cast<double>(viol) / trials;
    const double slack = 2.0 * std::sqrt(eta * (1.0 - eta) / trials);
    out.threshold = k_eta * eta + slack;
    out.report = make_report(name, out.threshold, freq);
    out.report.eta = eta;
    out.report.m = trials;
    return out;
}

// Least-squares slope of log(y) against log(x); used by the rate-shape checks.
inline double fit_loglog_slope(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("fit_loglog_slope: need >= 2 matching points");
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace ntk
