#pragma once

// Infinite-width Fourier representations and the transport mappings built
// from them.
//
// With the convention  h(x) = int |h^(w)| cos(2 pi (w.x + theta(w))) dw  and
// chi(z) = cos(2 pi z), the fundamental-theorem-of-calculus step
//   chi(w.x + theta) - chi(theta - ||w||)
//     = -2 pi int sin(2 pi (theta - b)) 1[w.x + b >= 0] 1[|b| <= ||w||] db
// yields the threshold representation
//   h(x) = C0 - 2 pi int sigma'(<wt,xt>) |h^(w)| sin(2 pi (theta(w) - b))
//                 1[|b| <= ||w|| <= r] d(w,b)        (exact at r = infinity)
// with C0 = int |h^| cos(2 pi (theta - ||w||)) dw.  The inner b-integral has
// a closed form, so the evaluators below only quadrature over w.  The ReLU
// variant replaces chi by its second-order remainder and produces constant,
// linear, and sigma terms in the same way.

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "ntk/core.hpp"
#include "ntk/metrics.hpp"
#include "ntk/quadrature.hpp"
#include "ntk/report.hpp"
#include "ntk/targets.hpp"

namespace ntk {

// Radius beyond which |h^| is numerically zero (Gaussian factor < 1e-18).
inline double fourier_support_radius(const SmoothedTarget& h) {
    double w = 1.45 / h.alpha;
    if (h.base.kind == TargetKind::CosRidge) w += h.base.ridge_freq;
    return w;
}

// ---------------------------------------------------------------------------
// Cached Fourier constants of a smoothed target at truncation radius r
// (in the original frequency units).
// ---------------------------------------------------------------------------

class FourierNet {
  public:
    FourierNet(SmoothedTarget h, double r, double tol = 1e-10)
        : h_(std::move(h)), r_(r), tol_(tol) {
        if (h_.d > 2) throw std::invalid_argument("FourierNet: quadrature oracle needs d <= 2");
        W_ = fourier_support_radius(h_);
        const double rc = std::min(r_, W_);
        C0_ = angle_integral([](double cs, double) { return cs; }, W_);
        C1_ = C0_ - kTwoPi * weighted_integral(W_);
        D_r_ = rc > 0.0 ? angle_integral([](double cs, double) { return cs; }, rc) : 0.0;
        K_r_ = rc > 0.0 ? weighted_integral(rc) : 0.0;
        J_full_ = linear_integral(W_);
        J_r_ = rc > 0.0 ? linear_integral(rc) : Vec(h_.d, 0.0);
        tail_F_ = 4.0 * kPi * tail_moment(rc, 1);
        tail_Q_ = 12.0 * kPi * kPi * tail_moment(rc, 2);
    }

    const SmoothedTarget& target() const { return h_; }
    double trunc_radius() const { return r_; }
    double c0_constant() const { return C0_; }
    double c1_constant() const { return C1_; }
    Vec linear_term() const { return J_full_; }
    double tail_bound_threshold() const { return tail_F_; }
    double tail_bound_relu() const { return tail_Q_; }

    // F_r(x): infinite-width threshold network.
    double threshold(std::span<const double> x) const {
        return C0_ - D_r_ + cos_integral(x);
    }

    // Q_r(x): infinite-width ReLU network.
    double relu_net(std::span<const double> x) const {
        double lin = 0.0, lin_r = 0.0;
        for (int i = 0; i < h_.d; ++i) {
            lin += x[i] * J_full_[i];
            lin_r += x[i] * J_r_[i];
        }
        return C1_ - kTwoPi * lin + kTwoPi * (lin_r + K_r_) - D_r_ + cos_integral(x);
    }

  private:
    SmoothedTarget h_;
    double r_, tol_, W_;
    double C0_ = 0.0, C1_ = 0.0, D_r_ = 0.0, K_r_ = 0.0;
    double tail_F_ = 0.0, tail_Q_ = 0.0;
    Vec J_full_, J_r_;

    double mod_at(double w0, double w1) const {
        if (h_.d == 1) {
            const Vec w{w0};
            return h_.fmod(w);
        }
        const Vec w{w0, w1};
        return h_.fmod(w);
    }

    double phase_at(double w0, double w1) const {
        if (h_.d == 1) {
            const Vec w{w0};
            return h_.fphase(w);
        }
        const Vec w{w0, w1};
        return h_.fphase(w);
    }

    // int_{||w||<=R} |h^| g(cos(2pi(theta-||w||)), sin(2pi(theta-||w||))) dw
    template <class G>
    double angle_integral(const G& g, double R) const {
        auto f1 = [&](double w) {
            const double m = mod_at(w, 0.0);
            const double th = phase_at(w, 0.0);
            const double z = kTwoPi * (th - std::abs(w));
            return m * g(std::cos(z), std::sin(z));
        };
        if (h_.d == 1) return integrate(f1, -R, R, tol_);
        if (h_.radial_modulus()) {
            auto fr = [&](double rho) {
                const double m = mod_at(rho, 0.0);
                const double z = kTwoPi * (phase_at(rho, 0.0) - rho);
                return kTwoPi * rho * m * g(std::cos(z), std::sin(z));
            };
            return integrate(fr, 0.0, R, tol_);
        }
        auto f2 = [&](double w0, double w1) {
            const double m = mod_at(w0, w1);
            const double z = kTwoPi * (phase_at(w0, w1) - std::hypot(w0, w1));
            return m * g(std::cos(z), std::sin(z));
        };
        return integrate_disk(f2, R, 256, 1e-8);
    }

    // int_{||w||<=R} ||w|| |h^| sin(2pi(theta-||w||)) dw
    double weighted_integral(double R) const {
        if (h_.d == 1) {
            auto f = [&](double w) {
                const double z = kTwoPi * (phase_at(w, 0.0) - std::abs(w));
                return std::abs(w) * mod_at(w, 0.0) * std::sin(z);
            };
            return integrate(f, -R, R, tol_);
        }
        if (h_.radial_modulus()) {
            auto fr = [&](double rho) {
                const double z = kTwoPi * (phase_at(rho, 0.0) - rho);
                return kTwoPi * rho * rho * mod_at(rho, 0.0) * std::sin(z);
            };
            return integrate(fr, 0.0, R, tol_);
        }
        auto f2 = [&](double w0, double w1) {
            const double rho = std::hypot(w0, w1);
            const double z = kTwoPi * (phase_at(w0, w1) - rho);
            return rho * mod_at(w0, w1) * std::sin(z);
        };
        return integrate_disk(f2, R, 256, 1e-8);
    }

    // int_{||w||<=R} w |h^| sin(2pi(theta-||w||)) dw (componentwise)
    Vec linear_integral(double R) const {
        Vec out(h_.d, 0.0);
        if (h_.radial_modulus()) return out;  // odd integrand
        if (h_.d == 1) {
            auto f = [&](double w) {
                const double z = kTwoPi * (phase_at(w, 0.0) - std::abs(w));
                return w * mod_at(w, 0.0) * std::sin(z);
            };
            out[0] = integrate(f, -R, R, tol_);
            return out;
        }
        for (int k = 0; k < 2; ++k) {
            auto f2 = [&](double w0, double w1) {
                const double rho = std::hypot(w0, w1);
                const double z = kTwoPi * (phase_at(w0, w1) - rho);
                return (k == 0 ? w0 : w1) * mod_at(w0, w1) * std::sin(z);
            };
            out[k] = integrate_disk(f2, R, 256, 1e-8);
        }
        return out;
    }

    // int_{||w||<=R} |h^| cos(2pi(theta + w.x)) dw
    double cos_integral(std::span<const double> x) const {
        const double R = std::min(r_, W_);
        if (R <= 0.0) return 0.0;
        if (h_.d == 1) {
            auto f = [&](double w) {
                return mod_at(w, 0.0) * std::cos(kTwoPi * (phase_at(w, 0.0) + w * x[0]));
            };
            return integrate(f, -R, R, tol_);
        }
        if (h_.radial_modulus()) {
            // angular integral of cos(2 pi rho ||x|| cos psi) is 2 pi J0(2 pi rho ||x||)
            const double nx = norm(x);
            auto fr = [&](double rho) {
                return kTwoPi * rho * mod_at(rho, 0.0) *
                       std::cyl_bessel_j(0.0, kTwoPi * rho * nx);
            };
            return integrate(fr, 0.0, R, tol_);
        }
        auto f2 = [&](double w0, double w1) {
            const double ph = phase_at(w0, w1) + w0 * x[0] + w1 * x[1];
            return mod_at(w0, w1) * std::cos(kTwoPi * ph);
        };
        return integrate_disk(f2, R, 256, 1e-8);
    }

    // int_{R < ||w|| <= W} ||w||^pow |h^| dw  (positive integrand)
    double tail_moment(double R, int pow) const {
        if (R >= W_) return 0.0;
        if (h_.d == 1) {
            auto f = [&](double w) { return std::pow(std::abs(w), pow) * mod_at(w, 0.0); };
            return integrate(f, R, W_, tol_) + integrate(f, -W_, -R, tol_);
        }
        if (h_.radial_modulus()) {
            auto fr = [&](double rho) {
                return kTwoPi * rho * std::pow(rho, pow) * mod_at(rho, 0.0);
            };
            return integrate(fr, R, W_, tol_);
        }
        auto ring = [&](double rho) {
            const int n = 256;
            double s = 0.0;
            for (int i = 0; i < n; ++i) {
                const double phi = kTwoPi * i / n;
                s += mod_at(rho * std::cos(phi), rho * std::sin(phi));
            }
            return s * (kTwoPi / n) * rho * std::pow(rho, pow);
        };
        return integrate(ring, R, W_, 1e-8);
    }
};

// Spec'd entry points around the cached evaluator.
inline double infinite_threshold_net(const SmoothedTarget& h, double r,
                                     std::span<const double> x) {
    return FourierNet(h, r).threshold(x);
}

inline double infinite_relu_net(const SmoothedTarget& h, double r, std::span<const double> x) {
    return FourierNet(h, r).relu_net(x);
}

// ---------------------------------------------------------------------------
// Transport mappings.
// ---------------------------------------------------------------------------

class TransportMap {
  public:
    enum class Kind { GenericFourier, GaussianFourier, Custom };

    Kind kind = Kind::Custom;
    int d = 1;                 // input dimension; weights live in R^{d+1}
    double B = 0.0;            // certified sup_w ||T(w)||  (runtime-asserted)
    double B_lemma = 0.0;      // analytic bound formula, stored alongside
    double B_grid = 0.0;       // grid-maximized lower estimate of the sup
    double r = 0.0;            // truncation radius (standardized units for the
                               // gaussian kind, original units otherwise)
    double c0 = 0.0;           // constant kernel term
    std::shared_ptr<const SmoothedTarget> source;
    std::shared_ptr<const FourierNet> oracle;  // E<T,Phi> quadrature evaluator

    // fourier kinds: T(wt) = (0,...,0, p(wt))
    std::function<double(std::span<const double>)> kernel;
    // custom kind: full map
    std::function<Vec(std::span<const double>)> map;

    // Only the bias-slot coordinate is nonzero for the Fourier kinds.
    double kernel_value(std::span<const double> wtilde) const {
        const double p = kernel(wtilde);
        if (std::abs(p) > B * (1.0 + 1e-9))
            throw std::runtime_error("TransportMap: ||T(w)|| exceeded certified bound B");
        return p;
    }

    Vec eval(std::span<const double> wtilde) const {
        if (static_cast<int>(wtilde.size()) != d + 1)
            throw std::invalid_argument("TransportMap: weight must have dimension d+1");
        if (kind == Kind::Custom) {
            Vec v = map(wtilde);
            if (norm(v) > B * (1.0 + 1e-9))
                throw std::runtime_error("TransportMap: ||T(w)|| exceeded certified bound B");
            return v;
        }
        Vec v(d + 1, 0.0);
        v[d] = kernel_value(wtilde);
        return v;
    }

    // <T(wt), Phi(x; wt)> without materializing vectors.
    double feature_product(std::span<const double> wtilde, std::span<const double> x) const {
        const double act = step(dot_aug(wtilde, x));
        if (act == 0.0) return 0.0;
        if (kind == Kind::Custom) {
            Vec v = eval(wtilde);
            return dot_aug(v, x) * act;  // dot with (x,1)
        }
        return kernel_value(wtilde) * act;  // last coordinate of (x,1) is 1
    }

    // Quadrature value of E_w <T(w), Phi(x; w)>.
    double expectation(std::span<const double> x) const {
        if (!oracle) throw std::logic_error("TransportMap: no quadrature oracle attached");
        return oracle->threshold(x);
    }
};

namespace detail {

// max over the truncation region { ||w|| <= r, |b| <= ||w|| } of |p|, on a
// 101x101 (radius, bias-fraction) grid with golden-section refinement along
// the radius at the best bias fraction.
template <class P>
double grid_max_kernel(const P& p, int d, double r, int n = 101) {
    if (d > 2) throw std::invalid_argument("grid_max_kernel: d <= 2 only");
    const int n_angle = (d == 2) ? 48 : 1;
    double best = 0.0, best_rho = 0.0, best_lam = 0.0, best_ang = 0.0;
    for (int ia = 0; ia < n_angle; ++ia) {
        const double ang = kTwoPi * ia / n_angle;
        for (int i = 0; i < n; ++i) {
            const double rho = r * i / (n - 1);
            for (int j = 0; j < n; ++j) {
                const double lam = -1.0 + 2.0 * j / (n - 1);
                const double v = std::abs(p(rho, lam * rho, ang));
                if (v > best) {
                    best = v;
                    best_rho = rho;
                    best_lam = lam;
                    best_ang = ang;
                }
            }
        }
    }
    // refine along the radius
    auto g = [&](double rho) { return std::abs(p(rho, best_lam * rho, best_ang)); };
    double lo = std::max(0.0, best_rho - r / (n - 1)), hi = std::min(r, best_rho + r / (n - 1));
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    for (int it = 0; it < 60; ++it) {
        if (g(x1) < g(x2)) {
            lo = x1;
            x1 = x2;
            x2 = lo + gr * (hi - lo);
        } else {
            hi = x2;
            x2 = x1;
            x1 = hi - gr * (hi - lo);
        }
    }
    return std::max(best, g(0.5 * (lo + hi)));
}

}  // namespace detail

// Brute-force transport: p_r(wt) = c0 - 2 pi (|h^(w)|/G(wt)) sin(2pi(theta(w)-b))
// on { |b| <= ||w|| <= r }, truncating in the original frequency units.
inline TransportMap build_generic_transport(const SmoothedTarget& h, double r) {
    if (!(r < std::numeric_limits<double>::infinity()))
        throw std::invalid_argument("build_generic_transport: needs finite r");
    auto hs = std::make_shared<const SmoothedTarget>(h);
    auto net = std::make_shared<const FourierNet>(h, r);
    const int d = h.d;
    const double c0 = 2.0 * net->c0_constant();

    auto kern = [hs, c0, r, d](std::span<const double> wt) {
        std::span<const double> w = wt.first(d);
        const double b = wt[d];
        const double nw = norm(w);
        if (std::abs(b) > nw || nw > r) return c0;
        const double dens = std::exp(-0.5 * (sqnorm(w) + b * b)) *
                            std::pow(kTwoPi, -0.5 * (d + 1));
        return c0 - kTwoPi * (hs->fmod(w) / dens) *
                        std::sin(kTwoPi * (hs->fphase(w) - b));
    };

    auto ratio = [&](double rho, double b, double ang) {
        Vec w(d, 0.0);
        if (d == 1)
            w[0] = rho;
        else {
            w[0] = rho * std::cos(ang);
            w[1] = rho * std::sin(ang);
        }
        const double dens =
            std::exp(-0.5 * (rho * rho + b * b)) * std::pow(kTwoPi, -0.5 * (d + 1));
        return h.fmod(w) / dens;
    };
    const double sup_ratio = detail::grid_max_kernel(ratio, d, r);

    // |h(0)| and int |h^| for the lemma's bound
    Vec zero(d, 0.0);
    const double h0 = std::abs(h.eval(zero));
    const double W = fourier_support_radius(h);
    double l1hat = 0.0;
    if (d == 1) {
        auto f = [&](double w) {
            Vec wv{w};
            return h.fmod(wv);
        };
        l1hat = integrate(f, -W, W, 1e-10);
    } else {
        auto f2 = [&](double w0, double w1) {
            Vec wv{w0, w1};
            return h.fmod(wv);
        };
        l1hat = integrate_disk(f2, W, 256, 1e-8);
    }
    TransportMap T;
    T.kind = TransportMap::Kind::GenericFourier;
    T.d = d;
    T.r = r;
    T.c0 = c0;
    T.source = hs;
    T.oracle = net;
    T.kernel = kern;
    T.B_lemma = 2.0 * h0 + 2.0 * l1hat + kTwoPi * sup_ratio;
    T.B_grid = detail::grid_max_kernel(
        [&](double rho, double b, double ang) {
            Vec wt(d + 1, 0.0);
            if (d == 1)
                wt[0] = rho;
            else {
                wt[0] = rho * std::cos(ang);
                wt[1] = rho * std::sin(ang);
            }
            wt[d] = b;
            return kern(wt);
        },
        d, r);
    T.B = std::abs(c0) + kTwoPi * sup_ratio * 1.02 + 1e-12;
    return T;
}

// Scale-matched transport for h = f_{|delta} * G_alpha:
//   p_r(wt) = c0 - 2 pi (2 pi phi^2)^{(d+1)/2} |f^(phi w)| e^{b^2/2}
//             sin(2 pi (theta(phi w) - phi b))  on { |b| <= ||w|| <= r },
// with phi = (2 pi alpha)^{-1}; truncation in standardized units.
inline TransportMap build_gaussian_transport(const SmoothedTarget& h, double r) {
    const int d = h.d;
    const double sd = std::sqrt(static_cast<double>(d));
    if (!(r >= sd) || !(r < std::numeric_limits<double>::infinity()))
        throw std::invalid_argument("build_gaussian_transport: needs sqrt(d) <= r < inf");
    auto hs = std::make_shared<const SmoothedTarget>(h);
    const double phi = h.phi;
    // quadrature oracle: truncation at phi*r in original units
    auto net = std::make_shared<const FourierNet>(h, phi * r);
    const double c0 = 2.0 * net->c0_constant();
    const double K = kTwoPi * std::pow(kTwoPi * phi * phi, 0.5 * (d + 1));

    auto kern = [hs, c0, r, d, phi, K](std::span<const double> wt) {
        std::span<const double> w = wt.first(d);
        const double b = wt[d];
        const double nw = norm(w);
        if (std::abs(b) > nw || nw > r) return c0;
        Vec wphi(d);
        for (int i = 0; i < d; ++i) wphi[i] = phi * w[i];
        return c0 - K * hs->base_fmod(wphi) * std::exp(0.5 * b * b) *
                        std::sin(kTwoPi * (hs->base_fphase(wphi) - phi * b));
    };

    TransportMap T;
    T.kind = TransportMap::Kind::GaussianFourier;
    T.d = d;
    T.r = r;
    T.c0 = c0;
    T.source = hs;
    T.oracle = net;
    T.kernel = kern;
    const double M = h.M, Mf = h.Mf;
    T.B_lemma = 2.0 * (M + std::pow(kTwoPi * phi * phi, 0.5 * d) * Mf *
                               (1.0 + std::sqrt(2.0 * std::pow(kPi, 3) * phi * phi) *
                                          std::exp(0.5 * r * r)));
    T.B = std::abs(c0) + K * Mf * std::exp(0.5 * r * r) + 1e-12;
    T.B_grid = detail::grid_max_kernel(
        [&](double rho, double b, double ang) {
            Vec wt(d + 1, 0.0);
            if (d == 1)
                wt[0] = rho;
            else {
                wt[0] = rho * std::cos(ang);
                wt[1] = rho * std::sin(ang);
            }
            wt[d] = b;
            return kern(wt);
        },
        d, r);
    if (T.B_grid > T.B_lemma)
        throw std::logic_error("gaussian transport: grid max exceeded the lemma bound");
    return T;
}

inline TransportMap make_custom_transport(int d, double B,
                                          std::function<Vec(std::span<const double>)> map) {
    TransportMap T;
    T.kind = TransportMap::Kind::Custom;
    T.d = d;
    T.B = B;
    T.B_lemma = B;
    T.r = std::numeric_limits<double>::infinity();
    T.map = std::move(map);
    return T;
}

// ---------------------------------------------------------------------------
// Pipeline constants for approximating a continuous target to accuracy
// omega_f(delta):
//   alpha = delta / (sqrt(d) + sqrt(2 ln(2M/omega)))
//   r     = sqrt(d) + 2 sqrt(ln( 4 pi Mf (sqrt(d)+3) (2 pi phi^2)^{(d+1)/2} / omega ))
// ---------------------------------------------------------------------------

struct TransportParams {
    double alpha = 0.0;
    double phi = 0.0;
    double r = 0.0;
    double B = 0.0;   // lemma bound at (phi, r)
    double Mf = 0.0;
    double c0 = 0.0;
    double omega = 0.0;
    double M = 0.0;
};

inline TransportParams pipeline_params(const Target& f, double delta, double eps,
                                       bool with_c0 = true) {
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::invalid_argument("pipeline_params: delta must be in (0,1]");
    ContinuityProfile prof = ContinuityProfile::make(f, delta);
    if (eps < prof.omega)
        throw std::invalid_argument("pipeline_params: requires eps >= omega_f(delta)");
    SmoothedTarget h = smooth(f, prof);
    TransportParams p;
    p.alpha = prof.alpha;
    p.phi = h.phi;
    p.omega = prof.omega;
    p.M = prof.M;
    p.Mf = h.Mf;
    const int d = f.d;
    const double sd = std::sqrt(static_cast<double>(d));
    const double arg = 4.0 * kPi * p.Mf * (sd + 3.0) *
                       std::pow(kTwoPi * p.phi * p.phi, 0.5 * (d + 1)) / prof.omega;
    p.r = sd + (arg > 1.0 ? 2.0 * std::sqrt(std::log(arg)) : 0.0);
    p.B = 2.0 * (p.M + std::pow(kTwoPi * p.phi * p.phi, 0.5 * d) * p.Mf *
                         (1.0 + std::sqrt(2.0 * std::pow(kPi, 3) * p.phi * p.phi) *
                                    std::exp(0.5 * p.r * p.r)));
    if (with_c0 && d <= 2) p.c0 = 2.0 * FourierNet(h, p.phi * p.r).c0_constant();
    return p;
}

// Uniform approximation error bound of the truncated gaussian transport:
// 4 pi (2 pi phi^2)^{(d+1)/2} Mf (sqrt(d)+3) exp(-(r-sqrt(d))^2/4).
inline double gaussian_transport_tail(const SmoothedTarget& h, double r) {
    const double sd = std::sqrt(static_cast<double>(h.d));
    const double g = r - sd;
    return 4.0 * kPi * std::pow(kTwoPi * h.phi * h.phi, 0.5 * (h.d + 1)) * h.Mf *
           (sd + 3.0) * std::exp(-0.25 * g * g);
}

// ---------------------------------------------------------------------------
// RKHS truncation checks (common-random-number Monte Carlo).
// ---------------------------------------------------------------------------

struct RkhsCheck {
    BoundReport output_trunc;   // proof-form bound sqrt(2) ||T||_H^2 / B_cut
    BoundReport input_trunc;    // sqrt(2) ||T||_H exp(-(r_cut - sqrt(d))^2 / 4)
    double hnorm2 = 0.0;        // MC estimate of ||T||_H^2
    double stmt_bound_output = 0.0;  // statement-form bound with B_cut^2
};

inline RkhsCheck rkhs_truncations(const TransportMap& T, double B_cut, double r_cut,
                                  std::span<const Vec> x_grid, int n_mc, RngStream rng) {
    const int d = T.d;
    std::vector<Vec> ws(n_mc);
    for (auto& w : ws) w = rng.gaussian_vec(d + 1);
    double h2 = 0.0;
    std::vector<Vec> tvals(n_mc);
    for (int i = 0; i < n_mc; ++i) {
        tvals[i] = T.eval(ws[i]);
        h2 += sqnorm(tvals[i]);
    }
    h2 /= n_mc;

    double worst_out = 0.0, worst_in = 0.0, max_se_out = 0.0, max_se_in = 0.0;
    for (const auto& x : x_grid) {
        double s_out = 0.0, s2_out = 0.0, s_in = 0.0, s2_in = 0.0;
        for (int i = 0; i < n_mc; ++i) {
            const double act = step(dot_aug(ws[i], x));
            if (act == 0.0) continue;
            const double base = dot_aug(tvals[i], x);
            const double keep_out = (norm(tvals[i]) <= B_cut) ? 0.0 : base;
            const double keep_in = (norm(ws[i]) <= r_cut) ? 0.0 : base;
            s_out += keep_out;
            s2_out += keep_out * keep_out;
            s_in += keep_in;
            s2_in += keep_in * keep_in;
        }
        const double m_out = s_out / n_mc, m_in = s_in / n_mc;
        const double se_out =
            std::sqrt(std::max(0.0, s2_out / n_mc - m_out * m_out) / n_mc);
        const double se_in = std::sqrt(std::max(0.0, s2_in / n_mc - m_in * m_in) / n_mc);
        if (std::abs(m_out) > worst_out) {
            worst_out = std::abs(m_out);
            max_se_out = se_out;
        }
        if (std::abs(m_in) > worst_in) {
            worst_in = std::abs(m_in);
            max_se_in = se_in;
        }
    }
    const double sd = std::sqrt(static_cast<double>(d));
    RkhsCheck out;
    out.hnorm2 = h2;
    out.stmt_bound_output = std::sqrt(2.0) * h2 / (B_cut * B_cut);
    out.output_trunc = make_report("rkhs_output_trunc", std::sqrt(2.0) * h2 / B_cut, worst_out,
                                   max_se_out, 3.0);
    const double g = std::max(0.0, r_cut - sd);
    out.input_trunc = make_report("rkhs_input_trunc",
                                  std::sqrt(2.0 * h2) * std::exp(-0.25 * g * g), worst_in,
                                  max_se_in, 3.0);
    return out;
}

}  // namespace ntk
