#include <gtest/gtest.h>

#include <cmath>

#include "ntk/metrics.hpp"
#include "ntk/quadrature.hpp"
#include "ntk/targets.hpp"

using namespace ntk;

namespace {

// Inversion oracle: recover f(x) from (|f^|, theta) by composite quadrature
// over |w| <= W (d = 1).
double invert_fourier(const Target& f, double L, double x, double W, double panel = 0.25) {
    GaussLegendre gl(12);
    double s = 0.0;
    const int n = static_cast<int>(std::ceil(2.0 * W / panel));
    for (int i = 0; i < n; ++i) {
        const double a = -W + 2.0 * W * i / n;
        const double b = -W + 2.0 * W * (i + 1) / n;
        s += gl.apply(
            [&](double w) {
                Vec wv{w};
                const double m = f.fourier_modulus(wv, L);
                const double th = f.fourier_phase(wv, L);
                return m * std::cos(kTwoPi * (w * x + th));
            },
            a, b);
    }
    return s;
}

Target linear_target() {
    Target t;
    t.kind = TargetKind::Custom;
    t.id = "linear";
    t.d = 1;
    t.custom_eval = [](std::span<const double> x) { return x[0]; };
    t.custom_omega = [](double delta) { return delta; };
    return t;
}

}  // namespace

TEST(GaussianFourier, BasicValuesAndIdentity) {
    Vec zero{0.0};
    EXPECT_DOUBLE_EQ(gaussian_fourier(0.3, zero), 1.0);
    Vec one{1.0};
    EXPECT_NEAR(gaussian_fourier(1.0 / kTwoPi, one), std::exp(-0.5), 1e-12);
    EXPECT_THROW(gaussian_fourier(0.0, one), std::invalid_argument);

    // (2 pi phi^2)^{d/2} G_phi(w) equals exp(-2 pi^2 alpha^2 ||w||^2) for random w.
    RngStream rng(5);
    for (int d = 1; d <= 3; ++d) {
        for (int t = 0; t < 20; ++t) {
            const double alpha = 0.05 + rng.uniform();
            const double phi = 1.0 / (kTwoPi * alpha);
            Vec w = rng.gaussian_vec(d);
            const double lhs = std::pow(kTwoPi * phi * phi, 0.5 * d) *
                               gauss_density_radial(norm(w), phi, d);
            EXPECT_NEAR(lhs, gaussian_fourier(alpha, w), 1e-12 * std::max(1.0, lhs));
        }
    }
}

TEST(Registry, ParseAndEvaluate) {
    Target g = make_target("gauss:0.5", 1);
    Vec x{0.0};
    EXPECT_NEAR(g.eval(x), gauss_density_radial(0.0, 0.5, 1), 1e-15);

    Target m = make_target("mix2:0.6,0.8,0.5", 2);
    Vec y{0.25, 0.0};  // at the first center
    EXPECT_GT(m.eval(y), 0.0);

    Target c = make_target("cosridge:1.5", 1);
    Vec z{0.5};
    EXPECT_NEAR(c.eval(z), std::cos(kTwoPi * 1.5 * 0.5), 1e-15);

    EXPECT_THROW(make_target("nope", 1), std::invalid_argument);
    EXPECT_THROW(make_target("gauss:-1", 1), std::invalid_argument);
}

TEST(Modulus, LinearTargetBruteForce) {
    Target f = linear_target();
    // closed form is delta; brute-force pair grid agrees
    const double om = modulus_of_continuity(f, 0.1);
    EXPECT_NEAR(om, 0.1, 1e-12);
    double brute = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double x = -1.1 + 2.2 * i / 2000.0;
        const double x2 = std::min(1.1, x + 0.1);
        brute = std::max(brute, std::abs(x - x2));
    }
    EXPECT_NEAR(brute, om, 1e-3);
}

TEST(Modulus, ConstantTargetFloored) {
    Target f;
    f.kind = TargetKind::Custom;
    f.id = "const";
    f.d = 1;
    f.custom_eval = [](std::span<const double>) { return 3.0; };
    EXPECT_DOUBLE_EQ(modulus_of_continuity(f, 0.2), 1e-6);
}

TEST(Modulus, GaussBumpProbeBelowDerivativeBound) {
    Target f = make_target("gauss:0.5", 1);
    const double delta = 0.1;
    const double om = modulus_of_continuity(f, delta);
    // Lipschitz bound delta * sup|f'|; sup|f'| = G(0) * (1/beta) * e^{-1/2}
    const double sup_deriv =
        gauss_density_radial(0.0, 0.5, 1) * (1.0 / 0.5) * std::exp(-0.5);
    EXPECT_LE(om, delta * sup_deriv * (1.0 + 1e-6));
    const double probe = modulus_of_continuity_probe(f, delta, 3000, RngStream(9));
    EXPECT_LE(probe, om * (1.0 + 1e-6));
    EXPECT_GE(probe, 0.9 * om);  // the probe should come close from below
    EXPECT_THROW(modulus_of_continuity_probe(f, delta, 50, RngStream(1)),
                 std::invalid_argument);
}

TEST(Profile, AlphaSatisfiesFarPointsInequality) {
    for (const char* id : {"gauss:0.5", "cosridge:1.5"}) {
        for (double delta : {0.05, 0.1, 0.2}) {
            Target f = make_target(id, 1);
            auto prof = ContinuityProfile::make(f, delta);
            const double lhs =
                2.0 * prof.M *
                std::exp(-0.5 * std::pow(delta / prof.alpha - std::sqrt(1.0), 2));
            EXPECT_LE(lhs, prof.omega * (1.0 + 1e-9)) << id << " delta=" << delta;
        }
    }
}

TEST(Smooth, DiracGivesGaussianExactly) {
    SmoothedTarget h = SmoothedTarget::make_dirac(1, 0.2);
    for (double x : {0.0, 0.3, -0.7}) {
        Vec xv{x};
        EXPECT_NEAR(h.eval(xv), gauss_density_radial(std::abs(x), 0.2, 1), 1e-15);
    }
    EXPECT_DOUBLE_EQ(h.M, std::pow(kTwoPi * 0.04, -0.5));
}

TEST(Smooth, GaussClosedFormMatchesQuadratureConvolution) {
    Target f = make_target("gauss:0.5", 1);
    auto prof = ContinuityProfile::make(f, 0.1);
    SmoothedTarget h = smooth(f, prof);
    const double L = 1.1;
    for (double x : {0.0, 0.5, 1.0}) {
        auto conv = [&](double t) {
            if (std::abs(t) > L) return 0.0;
            Vec tv{t};
            return f.eval(tv) * gauss_density_radial(x - t, prof.alpha, 1);
        };
        const double honest = integrate(conv, -L, L, 1e-11);
        Vec xv{x};
        // closed form drops the restriction; discrepancy must stay tiny
        EXPECT_NEAR(h.eval(xv), honest, 2e-4);
    }
}

TEST(Smooth, CosRidgeQuadratureEvaluator) {
    Target f = make_target("cosridge:1.5", 1);
    auto prof = ContinuityProfile::make(f, 0.2);
    SmoothedTarget h = smooth(f, prof);
    const double L = 1.2;
    for (double x : {0.0, 0.4, -0.9}) {
        auto conv = [&](double t) {
            if (std::abs(t) > L) return 0.0;
            Vec tv{t};
            return f.eval(tv) * gauss_density_radial(x - t, prof.alpha, 1);
        };
        const double honest = integrate(conv, -L - 0.1, L + 0.1, 1e-11);
        Vec xv{x};
        EXPECT_NEAR(h.eval(xv), honest, 1e-9);
    }
}

TEST(Smooth, FourierModulusDominatedByL1Envelope) {
    // |h^(w)| <= Mf * Ghat_alpha(w) pointwise, Mf the mass of the function
    // whose transform is stored.
    for (const char* id : {"gauss:0.5", "mix2:0.6,0.8,0.5", "cosridge:1.5"}) {
        Target f = make_target(id, 1);
        auto prof = ContinuityProfile::make(f, 0.1);
        SmoothedTarget h = smooth(f, prof);
        RngStream rng(77);
        for (int t = 0; t < 300; ++t) {
            Vec w{20.0 * (rng.uniform() - 0.5)};
            EXPECT_LE(h.fmod(w), h.Mf * gaussian_fourier(prof.alpha, w) * (1.0 + 1e-9)) << id;
        }
    }
}

TEST(Smooth, ConvolutionErrorCheckPasses) {
    ProbeMeasure grid1 = ProbeMeasure::grid(1);
    for (const char* id : {"gauss:0.5", "mix2:0.6,0.8,0.5", "cosridge:1.5"}) {
        Target f = make_target(id, 1);
        for (double delta : {0.05, 0.1, 0.2}) {
            auto prof = ContinuityProfile::make(f, delta);
            auto rep = convolution_error_check(f, prof, grid1.points);
            EXPECT_TRUE(rep.pass) << id << " delta=" << delta << " emp=" << rep.empirical
                                  << " bound=" << rep.theoretical;
        }
    }
    Target dirac = make_target("dirac", 1);
    ContinuityProfile dummy;
    dummy.delta = 0.1;
    EXPECT_THROW(convolution_error_check(dirac, dummy, grid1.points), std::invalid_argument);
}

TEST(Smooth, ConvolutionErrorCheck2D) {
    ProbeMeasure grid2 = ProbeMeasure::grid(2);
    for (const char* id : {"gauss:0.5", "cosridge:1.5"}) {
        Target f = make_target(id, 2);
        auto prof = ContinuityProfile::make(f, 0.1);
        auto rep = convolution_error_check(f, prof, grid2.points);
        EXPECT_TRUE(rep.pass) << id << " emp=" << rep.empirical
                              << " bound=" << rep.theoretical;
    }
}

TEST(Fourier, InversionSanity) {
    // Smooth spectra invert over |w| <= 40 to 1e-4.
    for (const char* id : {"gauss:0.5", "mix2:0.6,0.8,0.5"}) {
        Target f = make_target(id, 1);
        for (double x : {-1.0, -0.3, 0.0, 0.6, 1.0}) {
            Vec xv{x};
            EXPECT_NEAR(invert_fourier(f, 1.1, x, 40.0), f.eval(xv), 1e-4) << id;
        }
    }
    // The restricted cosine has a 1/|w| spectrum: the same accuracy needs a
    // far larger window (Gibbs tail ~ 1/(W * dist-to-jump)).
    Target c = make_target("cosridge:1.5", 1);
    for (double x : {-0.8, 0.0, 0.5, 1.0}) {
        Vec xv{x};
        EXPECT_NEAR(invert_fourier(c, 1.2, x, 4000.0, 0.1), c.eval(xv), 1e-4);
    }
}

TEST(Fourier, RestrictedCosineTransformAgainstQuadrature) {
    // |f^_{|delta}| closed form (shifted Dirichlet kernels) vs direct numeric FT.
    Target c = make_target("cosridge:1.5", 1);
    const double L = 1.2;
    for (double w : {0.0, 0.7, 1.5, 2.3, 6.0}) {
        auto re_f = [&](double x) { return std::cos(kTwoPi * 1.5 * x) * std::cos(kTwoPi * w * x); };
        const double re = integrate(re_f, -L, L, 1e-11);
        Vec wv{w};
        EXPECT_NEAR(c.fourier_modulus(wv, L), std::abs(re), 1e-8) << "w=" << w;
    }
}

TEST(Fourier, Mix2PhaseConsistency) {
    // |f^| and theta must reassemble the complex transform measured directly.
    Target m = make_target("mix2:0.6,0.8,0.5", 1);
    const double L = 1.1;
    for (double w : {0.3, 1.1, 2.4}) {
        auto re_f = [&](double x) {
            Vec xv{x};
            return m.eval(xv) * std::cos(kTwoPi * w * x);
        };
        auto im_f = [&](double x) {
            Vec xv{x};
            return -m.eval(xv) * std::sin(kTwoPi * w * x);
        };
        const double re = integrate(re_f, -8.0, 8.0, 1e-11);
        const double im = integrate(im_f, -8.0, 8.0, 1e-11);
        Vec wv{w};
        const double mod = m.fourier_modulus(wv, L);
        const double th = m.fourier_phase(wv, L);
        EXPECT_NEAR(mod * std::cos(kTwoPi * th), re, 1e-6);
        EXPECT_NEAR(mod * std::sin(kTwoPi * th), im, 1e-6);
    }
}

TEST(Restriction, L1NormsAgainstQuadrature) {
    Target g = make_target("gauss:0.5", 1);
    auto fg = [&](double x) {
        Vec xv{x};
        return std::abs(g.eval(xv));
    };
    EXPECT_NEAR(g.l1_restricted(0.1), integrate(fg, -1.1, 1.1, 1e-11), 1e-9);

    Target m = make_target("mix2:0.6,0.8,0.5", 2);
    // Monte Carlo oracle over the disk of radius 1.1
    RngStream rng(11);
    const int n = 400000;
    double s = 0.0;
    const double L = 1.1;
    for (int i = 0; i < n; ++i) {
        Vec x{L * (2.0 * rng.uniform() - 1.0), L * (2.0 * rng.uniform() - 1.0)};
        if (sqnorm(x) <= L * L) s += std::abs(m.eval(x));
    }
    const double area = 4.0 * L * L;
    const double mc = s * area / n;
    EXPECT_NEAR(m.l1_restricted(0.1), mc, 0.02);
}
