#pragma once

// Deterministic quadrature used by the oracles: adaptive Simpson in 1D,
// Gauss-Legendre panels for smooth periodic/radial factors, and a polar rule
// for integrals over disks in the plane.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace ntk {

namespace detail {

template <class F>
double simpson_step(const F&, double a, double fa, double b, double fb, double, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive_simpson_rec(const F& f, double a, double fa, double b, double fb, double m,
                            double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson_step(f, a, fa, m, fm, lm, flm);
    const double right = simpson_step(f, m, fm, b, fb, rm, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

template <class F>
double integrate(const F& f, double a, double b, double tol = 1e-10, int max_depth = 48) {
    if (!(a < b)) {
        if (a == b) return 0.0;
        throw std::invalid_argument("integrate: requires a <= b");
    }
    // Seed with a handful of panels so oscillatory integrands are not missed
    // by the first Simpson estimate.
    const int panels = 8;
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double x0 = a + i * h, x1 = x0 + h, xm = 0.5 * (x0 + x1);
        const double f0 = f(x0), f1 = f(x1), fm = f(xm);
        const double whole = detail::simpson_step(f, x0, f0, x1, f1, xm, fm);
        total += detail::adaptive_simpson_rec(f, x0, f0, x1, f1, xm, fm, whole, tol / panels,
                                              max_depth);
    }
    return total;
}

// Fixed-order Gauss-Legendre on [a,b]; cheap building block for tensor rules.
struct GaussLegendre {
    std::vector<double> nodes;    // on [-1,1]
    std::vector<double> weights;

    explicit GaussLegendre(int n) {
        nodes.resize(n);
        weights.resize(n);
        // Newton iteration on Legendre polynomials.
        for (int i = 0; i < n; ++i) {
            double x = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }

    template <class F>
    double apply(const F& f, double a, double b) const {
        const double c = 0.5 * (b - a), m = 0.5 * (a + b);
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(m + c * nodes[i]);
        return c * s;
    }
};

// Integral of f(w) over the disk ||w|| <= R in R^2, polar tensor rule:
// adaptive radial x trapezoid angular (integrands here are smooth in angle).
template <class F>
double integrate_disk(const F& f, double R, int n_angle = 128, double tol = 1e-9) {
    if (R <= 0.0) return 0.0;
    const double dphi = 2.0 * 3.14159265358979323846 / n_angle;
    auto ring = [&](double rho) {
        double s = 0.0;
        for (int i = 0; i < n_angle; ++i) {
            const double phi = i * dphi;
            s += f(rho * std::cos(phi), rho * std::sin(phi));
        }
        return s * dphi * rho;
    };
    return integrate(ring, 0.0, R, tol);
}

}  // namespace ntk
