#pragma once

// Registry of target functions with closed-form Fourier data, restricted L1
// norms, moduli of continuity, and Gaussian-convolution smoothing.
//
// Fourier convention throughout:  f^(w) = int f(x) exp(-2 pi i w.x) dx,
// inverse with exp(+2 pi i w.x); phases are stored as theta with
// f^ = |f^| exp(2 pi i theta).  All registry targets are real, so
// f^(-w) = conj(f^(w)).

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ntk/core.hpp"
#include "ntk/quadrature.hpp"
#include "ntk/report.hpp"

namespace ntk {

// Ghat_alpha(w) = exp(-2 pi^2 alpha^2 ||w||^2); equals (2 pi phi^2)^{d/2} G_phi(w)
// with phi = 1/(2 pi alpha).
inline double gaussian_fourier(double alpha, std::span<const double> w) {
    if (alpha <= 0.0) throw std::invalid_argument("gaussian_fourier: alpha must be > 0");
    return std::exp(-2.0 * kPi * kPi * alpha * alpha * sqnorm(w));
}

// Isotropic Gaussian density with std sigma in d dims, radial form.
inline double gauss_density_radial(double t, double sigma, int d) {
    return std::pow(kTwoPi * sigma * sigma, -0.5 * d) * std::exp(-0.5 * t * t / (sigma * sigma));
}

enum class TargetKind { Dirac, Gauss, Mix2, CosRidge, Custom };

// Fourier transform of the indicator of the centered ball of radius L,
// evaluated at radial frequency u >= 0.  Real and even; closed forms for d<=3.
inline double ball_indicator_fourier(int d, double L, double u) {
    const double z = kTwoPi * L * u;
    if (z < 1e-8) {
        switch (d) {
            case 1: return 2.0 * L;
            case 2: return kPi * L * L;
            case 3: return 4.0 / 3.0 * kPi * L * L * L;
        }
    }
    switch (d) {
        case 1: return std::sin(z) / (kPi * u);
        case 2: return L * std::cyl_bessel_j(1.0, z) / u;
        case 3: return (std::sin(z) - z * std::cos(z)) / (2.0 * kPi * kPi * u * u * u);
        default: throw std::invalid_argument("ball_indicator_fourier: d must be 1..3");
    }
}

class Target {
  public:
    TargetKind kind = TargetKind::Custom;
    std::string id;
    int d = 1;
    double amplitude = 1.0;

    // kind parameters
    double beta = 0.0;                // Gauss: std of the bump
    double b1 = 0.0, b2 = 0.0;        // Mix2: component stds
    double sep = 0.0;                 // Mix2: center separation along e1
    double ridge_freq = 0.0;          // CosRidge: a in cos(2 pi a x1)

    // Custom targets: evaluator plus optional closed-form modulus of continuity.
    std::function<double(std::span<const double>)> custom_eval;
    std::function<double(double)> custom_omega;

    bool dirac_flag() const { return kind == TargetKind::Dirac; }

    double eval(std::span<const double> x) const {
        switch (kind) {
            case TargetKind::Dirac:
                throw std::logic_error("dirac target has no pointwise evaluator");
            case TargetKind::Gauss:
                return amplitude * gauss_density_radial(norm(x), beta, d);
            case TargetKind::Mix2: {
                const double c = 0.5 * sep;
                Vec y(x.begin(), x.end());
                y[0] -= c;
                const double g1 = gauss_density_radial(norm(y), b1, d);
                y[0] += 2.0 * c;
                const double g2 = gauss_density_radial(norm(y), b2, d);
                return amplitude * 0.5 * (g1 + g2);
            }
            case TargetKind::CosRidge:
                return amplitude * std::cos(kTwoPi * ridge_freq * x[0]);
            case TargetKind::Custom:
                return custom_eval(x);
        }
        throw std::logic_error("unreachable");
    }

    // |f^| and theta of the data used by the pipeline.  For Gauss/Mix2 this is
    // the unrestricted transform (restriction slack is folded into reported
    // margins); for CosRidge the restriction to the (1+delta)-ball is applied
    // analytically, so the data depends on the restriction radius L.
    double fourier_modulus(std::span<const double> w, double L) const {
        double re, im;
        fourier_complex(w, L, re, im);
        return std::hypot(re, im);
    }

    double fourier_phase(std::span<const double> w, double L) const {
        double re, im;
        fourier_complex(w, L, re, im);
        if (re == 0.0 && im == 0.0) return 0.0;
        return std::atan2(im, re) / kTwoPi;
    }

    void fourier_complex(std::span<const double> w, double L, double& re, double& im) const {
        switch (kind) {
            case TargetKind::Dirac:
                re = amplitude;
                im = 0.0;
                return;
            case TargetKind::Gauss: {
                Vec wv(w.begin(), w.end());
                re = amplitude * gaussian_fourier(beta, wv);
                im = 0.0;
                return;
            }
            case TargetKind::Mix2: {
                const double a1 = std::exp(-2.0 * kPi * kPi * b1 * b1 * sqnorm(w));
                const double a2 = std::exp(-2.0 * kPi * kPi * b2 * b2 * sqnorm(w));
                const double ph = kPi * sep * w[0];  // 2 pi w.c with c = (sep/2) e1
                re = amplitude * 0.5 * (a1 + a2) * std::cos(ph);
                im = amplitude * 0.5 * (a2 - a1) * std::sin(ph);
                return;
            }
            case TargetKind::CosRidge: {
                // 0.5 [ D_L(w - a e1) + D_L(w + a e1) ], D_L = ball indicator FT.
                Vec u(w.begin(), w.end());
                u[0] -= ridge_freq;
                const double m1 = ball_indicator_fourier(d, L, norm(u));
                u[0] += 2.0 * ridge_freq;
                const double m2 = ball_indicator_fourier(d, L, norm(u));
                re = amplitude * 0.5 * (m1 + m2);
                im = 0.0;
                return;
            }
            case TargetKind::Custom:
                throw std::logic_error("custom target carries no Fourier data");
        }
        throw std::logic_error("unreachable");
    }

    // Whether |f^_alpha| is radially symmetric (mix2 loses it once separated).
    bool radial_modulus() const {
        switch (kind) {
            case TargetKind::Dirac:
            case TargetKind::Gauss: return true;
            case TargetKind::Mix2: return sep == 0.0;
            default: return false;
        }
    }

    // M = sup over ||x|| <= 1+delta of |f|.
    double sup_bound(double delta) const {
        const double L = 1.0 + delta;
        switch (kind) {
            case TargetKind::Dirac:
                throw std::logic_error("dirac target has no sup bound");
            case TargetKind::Gauss:
                return amplitude * gauss_density_radial(0.0, beta, d);
            case TargetKind::CosRidge:
                return amplitude;  // |cos| <= 1, attained inside the ball for a >= 1/(2L)
            case TargetKind::Mix2:
            case TargetKind::Custom: {
                // Max along the e1 axis (components are centered there), refined.
                double best = 0.0;
                const int n = 4001;
                Vec x(d, 0.0);
                for (int i = 0; i < n; ++i) {
                    x[0] = -L + 2.0 * L * i / (n - 1);
                    best = std::max(best, std::abs(eval(x)));
                }
                return best;
            }
        }
        throw std::logic_error("unreachable");
    }

    // || f_{|delta} ||_{L1}.
    double l1_restricted(double delta) const {
        const double L = 1.0 + delta;
        switch (kind) {
            case TargetKind::Dirac:
                return amplitude;
            case TargetKind::Gauss:
                return amplitude * (1.0 - chi_survival(d, L / beta));
            case TargetKind::Mix2: {
                const double c = 0.5 * sep;
                return amplitude * 0.5 *
                       (offset_ball_mass(b1, c, L) + offset_ball_mass(b2, c, L));
            }
            case TargetKind::CosRidge: {
                auto f = [&](double t) {
                    const double cs = std::abs(std::cos(kTwoPi * ridge_freq * t));
                    const double rr = std::max(L * L - t * t, 0.0);
                    double cross = 1.0;
                    if (d == 2) cross = 2.0 * std::sqrt(rr);
                    if (d == 3) cross = kPi * rr;
                    return cs * cross;
                };
                return amplitude * integrate(f, -L, L, 1e-9);
            }
            case TargetKind::Custom:
                throw std::logic_error("custom target has no restricted L1 norm");
        }
        throw std::logic_error("unreachable");
    }

    // Closed-form (or semi-analytic 1D) modulus of continuity where known.
    std::optional<double> omega_closed_form(double delta) const {
        switch (kind) {
            case TargetKind::Gauss:
                return amplitude * radial_profile_omega(
                                       [&](double t) { return gauss_density_radial(t, beta, d); },
                                       delta);
            case TargetKind::Mix2:
                if (sep == 0.0) {
                    return amplitude * radial_profile_omega(
                                           [&](double t) {
                                               return 0.5 * (gauss_density_radial(t, b1, d) +
                                                             gauss_density_radial(t, b2, d));
                                           },
                                           delta);
                }
                return std::nullopt;
            case TargetKind::CosRidge:
                return 2.0 * amplitude * std::sin(std::min(kPi * ridge_freq * delta, 0.5 * kPi));
            case TargetKind::Custom:
                if (custom_omega) return custom_omega(delta);
                return std::nullopt;
            default:
                return std::nullopt;
        }
    }

    // P[ || t e1 + b u || <= L ] for u ~ N(0, I_d).
    double offset_ball_mass(double b, double t, double L) const {
        if (d == 1) return std_normal_cdf((L - t) / b) - std_normal_cdf((-L - t) / b);
        auto f = [&](double s) {
            const double rr = L * L - s * s;
            if (rr <= 0.0) return 0.0;
            const double cross = 1.0 - chi_survival(d - 1, std::sqrt(rr) / b);
            return gauss_density_radial(s - t, b, 1) * cross;
        };
        return integrate(f, -L, L, 1e-9);
    }

  private:
    // sup over t in [0,1] of g(t) - g(t+delta) for a radial profile g, by
    // dense grid plus golden-section refinement.
    template <class G>
    static double radial_profile_omega(const G& g, double delta) {
        auto gap = [&](double t) { return g(t) - g(t + delta); };
        const int n = 8192;
        double best = 0.0, tbest = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double t = static_cast<double>(i) / n;
            const double v = gap(t);
            if (v > best) {
                best = v;
                tbest = t;
            }
        }
        double lo = std::max(0.0, tbest - 1.0 / n), hi = std::min(1.0, tbest + 1.0 / n);
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        for (int it = 0; it < 80; ++it) {
            if (gap(x1) < gap(x2)) {
                lo = x1;
                x1 = x2;
                x2 = lo + gr * (hi - lo);
            } else {
                hi = x2;
                x2 = x1;
                x1 = hi - gr * (hi - lo);
            }
        }
        return std::max(best, gap(0.5 * (lo + hi)));
    }
};

// ---------------------------------------------------------------------------
// Registry ids:  "dirac" | "gauss:<beta>" | "mix2:<b1>,<b2>,<sep>" |
//                "cosridge:<a>"
// ---------------------------------------------------------------------------

inline Target make_target(const std::string& id, int d, double amplitude = 1.0) {
    Target t;
    t.id = id;
    t.d = d;
    t.amplitude = amplitude;
    auto param_list = [](const std::string& s) {
        std::vector<double> out;
        std::size_t pos = 0;
        while (pos < s.size()) {
            std::size_t next = s.find(',', pos);
            if (next == std::string::npos) next = s.size();
            out.push_back(std::stod(s.substr(pos, next - pos)));
            pos = next + 1;
        }
        return out;
    };
    if (id == "dirac") {
        t.kind = TargetKind::Dirac;
    } else if (id.rfind("gauss:", 0) == 0) {
        t.kind = TargetKind::Gauss;
        t.beta = std::stod(id.substr(6));
        if (t.beta <= 0.0) throw std::invalid_argument("gauss target needs beta > 0");
    } else if (id.rfind("mix2:", 0) == 0) {
        auto p = param_list(id.substr(5));
        if (p.size() != 3) throw std::invalid_argument("mix2 needs b1,b2,sep");
        t.kind = TargetKind::Mix2;
        t.b1 = p[0];
        t.b2 = p[1];
        t.sep = p[2];
        if (t.b1 <= 0.0 || t.b2 <= 0.0) throw std::invalid_argument("mix2 needs positive stds");
    } else if (id.rfind("cosridge:", 0) == 0) {
        t.kind = TargetKind::CosRidge;
        t.ridge_freq = std::stod(id.substr(9));
        if (t.ridge_freq <= 0.0) throw std::invalid_argument("cosridge needs a > 0");
    } else {
        throw std::invalid_argument("unknown target id: " + id);
    }
    return t;
}

// Randomized pair probing with local refinement; a certified lower estimate.
inline double modulus_of_continuity_probe(const Target& f, double delta, int probe_budget,
                                          RngStream rng) {
    if (delta <= 0.0 || delta > 1.0)
        throw std::invalid_argument("modulus_of_continuity: delta must be in (0,1]");
    if (probe_budget < 100)
        throw std::invalid_argument("modulus_of_continuity: probe_budget must be >= 100");
    const int d = f.d;
    const double L = 1.0 + delta;
    auto clamp_ball = [&](Vec& x) {
        const double n = norm(x);
        if (n > L)
            for (auto& c : x) c *= L / n;
    };
    auto pair_gap = [&](const Vec& x, const Vec& u) {
        Vec x2(d);
        for (int i = 0; i < d; ++i) x2[i] = x[i] + delta * u[i];
        if (norm(x2) > L) return -1.0;
        return std::abs(f.eval(x) - f.eval(x2));
    };
    double best = 0.0;
    Vec best_x(d, 0.0), best_u(d, 0.0);
    for (int trial = 0; trial < probe_budget; ++trial) {
        Vec x = rng.gaussian_vec(d);
        const double rad = L * std::pow(rng.uniform(), 1.0 / d);
        const double nx = norm(x);
        for (auto& c : x) c *= (nx > 0 ? rad / nx : 0.0);
        Vec u = rng.gaussian_vec(d);
        const double nu = norm(u);
        if (nu == 0.0) continue;
        for (auto& c : u) c /= nu;
        const double v = pair_gap(x, u);
        if (v > best) {
            best = v;
            best_x = x;
            best_u = u;
        }
    }
    // local refinement: shrinking random perturbations around the best pair
    double scale = 0.25;
    for (int it = 0; it < 400; ++it) {
        Vec x = best_x, u = best_u;
        for (int i = 0; i < d; ++i) x[i] += scale * delta * rng.normal();
        clamp_ball(x);
        for (int i = 0; i < d; ++i) u[i] += scale * rng.normal();
        const double nu = norm(u);
        if (nu == 0.0) continue;
        for (auto& c : u) c /= nu;
        const double v = pair_gap(x, u);
        if (v > best) {
            best = v;
            best_x = x;
            best_u = u;
        } else {
            scale = std::max(0.02, scale * 0.99);
        }
    }
    return best;
}

// Returns the closed form for registry targets (probe value asserted below it),
// the probe estimate otherwise.  Values are floored at 1e-6 so the smoothing
// scale alpha stays finite.
inline double modulus_of_continuity(const Target& f, double delta, int probe_budget = 2000,
                                    std::uint64_t seed = 17) {
    constexpr double kOmegaFloor = 1e-6;
    const auto closed = f.omega_closed_form(delta);
    const double probe =
        f.dirac_flag() ? 0.0 : modulus_of_continuity_probe(f, delta, probe_budget, RngStream(seed));
    if (closed) {
        if (probe > *closed * (1.0 + 1e-6) + 1e-12)
            throw std::logic_error("modulus probe exceeded closed form for " + f.id);
        return std::max(*closed, kOmegaFloor);
    }
    return std::max(probe, kOmegaFloor);
}

// delta, omega, M and the induced smoothing scale
// alpha = delta / (sqrt(d) + sqrt(2 ln(2M/omega))).
struct ContinuityProfile {
    double delta = 0.0;
    double omega = 0.0;
    double M = 0.0;
    double alpha = 0.0;

    static ContinuityProfile make(const Target& f, double delta, int probe_budget = 2000) {
        if (f.dirac_flag())
            throw std::invalid_argument("continuity profile undefined for the dirac target");
        ContinuityProfile p;
        p.delta = delta;
        p.omega = modulus_of_continuity(f, delta, probe_budget);
        p.M = f.sup_bound(delta);
        p.alpha = delta / (std::sqrt(static_cast<double>(f.d)) +
                           std::sqrt(2.0 * std::log(2.0 * p.M / p.omega)));
        return p;
    }
};

// ---------------------------------------------------------------------------
// SmoothedTarget: h = f_{|delta} * G_alpha with evaluator and Fourier data
// |h^| = |f^_{|delta}| Ghat_alpha, theta_h = theta_f.
// ---------------------------------------------------------------------------

class SmoothedTarget {
  public:
    Target base;
    int d = 1;
    double alpha = 0.0;
    double phi = 0.0;       // (2 pi alpha)^{-1}
    double delta = 0.0;     // 0 for dirac built with an explicit alpha
    double L = 1.0;         // restriction radius 1+delta
    double M = 0.0;         // sup bound (dirac: G_alpha(0))
    double omega = 0.0;     // omega_f(delta); 0 for dirac
    double l1_restricted = 0.0;
    // Mf = envelope constant of the *stored* Fourier data: the L1 norm of the
    // function whose transform the target carries.  Gauss/Mix2 store the
    // unrestricted transform, so Mf is the full mass; CosRidge restricts
    // analytically, so Mf equals the restricted norm; 1 for the dirac.
    double Mf = 0.0;

    static SmoothedTarget make(const Target& f, const ContinuityProfile& profile) {
        SmoothedTarget h;
        h.base = f;
        h.d = f.d;
        h.alpha = profile.alpha;
        h.phi = 1.0 / (kTwoPi * h.alpha);
        h.delta = profile.delta;
        h.L = 1.0 + profile.delta;
        h.M = profile.M;
        h.omega = profile.omega;
        h.l1_restricted = f.l1_restricted(profile.delta);
        h.Mf = (f.kind == TargetKind::CosRidge) ? h.l1_restricted : f.amplitude;
        return h;
    }

    // Dirac surrogate: h = G_alpha exactly, alpha supplied by the caller.
    static SmoothedTarget make_dirac(int d, double alpha, double amplitude = 1.0) {
        SmoothedTarget h;
        h.base = make_target("dirac", d, amplitude);
        h.d = d;
        h.alpha = alpha;
        h.phi = 1.0 / (kTwoPi * alpha);
        h.delta = 0.0;
        h.L = 1.0;
        h.M = amplitude * std::pow(kTwoPi * alpha * alpha, -0.5 * d);  // = h(0)
        h.omega = 0.0;
        h.l1_restricted = amplitude;
        h.Mf = amplitude;
        return h;
    }

    bool dirac() const { return base.dirac_flag(); }

    double eval(std::span<const double> x) const {
        switch (base.kind) {
            case TargetKind::Dirac:
                return base.amplitude * gauss_density_radial(norm(x), alpha, d);
            case TargetKind::Gauss: {
                const double s = std::sqrt(base.beta * base.beta + alpha * alpha);
                return base.amplitude * gauss_density_radial(norm(x), s, d);
            }
            case TargetKind::Mix2: {
                const double c = 0.5 * base.sep;
                const double s1 = std::sqrt(base.b1 * base.b1 + alpha * alpha);
                const double s2 = std::sqrt(base.b2 * base.b2 + alpha * alpha);
                Vec y(x.begin(), x.end());
                y[0] -= c;
                const double g1 = gauss_density_radial(norm(y), s1, d);
                y[0] += 2.0 * c;
                const double g2 = gauss_density_radial(norm(y), s2, d);
                return base.amplitude * 0.5 * (g1 + g2);
            }
            case TargetKind::CosRidge:
                return cosridge_eval(x);
            case TargetKind::Custom:
                throw std::logic_error("custom targets cannot be smoothed");
        }
        throw std::logic_error("unreachable");
    }

    // |h^(w)| and theta_h(w).
    double fmod(std::span<const double> w) const {
        return base.fourier_modulus(w, L) * gaussian_fourier(alpha, w);
    }

    double fphase(std::span<const double> w) const { return base.fourier_phase(w, L); }

    // |f^_{|delta}(w)| of the pre-convolution data (used by the scaled transport).
    double base_fmod(std::span<const double> w) const { return base.fourier_modulus(w, L); }

    double base_fphase(std::span<const double> w) const { return base.fourier_phase(w, L); }

    bool radial_modulus() const { return base.radial_modulus(); }

  private:
    double cosridge_eval(std::span<const double> x) const {
        const double a = base.ridge_freq;
        if (d == 1) {
            auto f = [&](double s) {
                const double t = x[0] + alpha * s;
                if (std::abs(t) > L) return 0.0;
                return std::cos(kTwoPi * a * t) * gauss_density_radial(s, 1.0, 1);
            };
            return base.amplitude * integrate(f, -10.0, 10.0, 1e-10);
        }
        if (d == 2) {
            auto f = [&](double s) {
                const double t1 = x[0] + alpha * s;
                const double rr = L * L - t1 * t1;
                if (rr <= 0.0) return 0.0;
                const double half = std::sqrt(rr);
                const double mass = std_normal_cdf((half - x[1]) / alpha) -
                                    std_normal_cdf((-half - x[1]) / alpha);
                return std::cos(kTwoPi * a * t1) * gauss_density_radial(s, 1.0, 1) * mass;
            };
            return base.amplitude * integrate(f, -10.0, 10.0, 1e-9);
        }
        // d == 3: Monte Carlo over G_alpha with a fixed internal stream.
        RngStream rng(0xC05F1D6EULL);
        const int n = 200000;
        double sum = 0.0;
        Vec y(3);
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < 3; ++k) y[k] = x[k] - alpha * rng.normal();
            if (sqnorm(y) <= L * L) sum += std::cos(kTwoPi * a * y[0]);
        }
        return base.amplitude * sum / n;
    }
};

inline SmoothedTarget smooth(const Target& f, const ContinuityProfile& profile) {
    return SmoothedTarget::make(f, profile);
}

// sup-grid | f - f_{|delta} * G_alpha |  vs  2 omega_f(delta).
inline BoundReport convolution_error_check(const Target& f, const ContinuityProfile& profile,
                                           std::span<const Vec> grid) {
    if (f.dirac_flag())
        throw std::invalid_argument("convolution check excludes the dirac surrogate");
    SmoothedTarget h = smooth(f, profile);
    double sup = 0.0;
    for (const auto& x : grid) sup = std::max(sup, std::abs(f.eval(x) - h.eval(x)));
    auto r = make_report("conv_error:" + f.id, 2.0 * profile.omega, sup);
    r.delta = profile.delta;
    return r;
}

}  // namespace ntk
