#pragma once

#include "fhs/types.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace fhs::quad {

// Order-doubling control shared by every fixed-rule integral in the library.
struct Config {
    int order = 128;
    int max_order = 1 << 15;
    double rel_tol = 1e-11;
};

// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration on the
// three-term recurrence. Works for any floating type with the usual math overloads.
template <class Real>
void gauss_legendre(int n, std::vector<Real>& x, std::vector<Real>& w) {
    using std::abs;
    using std::cos;
    x.assign(n, Real(0));
    w.assign(n, Real(0));
    const Real pi = acos(Real(-1));
    const Real tol = std::numeric_limits<Real>::epsilon() * 8;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        Real z = cos(pi * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
        Real dp = Real(1);
        for (int it = 0; it < 100; ++it) {
            Real p0 = Real(1), p1 = z;
            for (int k = 2; k <= n; ++k) {
                Real p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = Real(n) * (z * p1 - p0) / (z * z - Real(1));
            Real dz = p1 / dp;
            z -= dz;
            if (abs(dz) <= tol) {
                break;
            }
        }
        // one more derivative evaluation at the converged node
        Real p0 = Real(1), p1 = z;
        for (int k = 2; k <= n; ++k) {
            Real p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = Real(n) * (z * p1 - p0) / (z * z - Real(1));
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = Real(2) / ((Real(1) - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
}

// Cached double-precision Gauss-Legendre rule of order n on [-1, 1].
struct Rule {
    std::vector<double> x;
    std::vector<double> w;
};
const Rule& legendre_rule(int n);

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const cplx& v) { return std::abs(v); }
template <class Derived>
double magnitude(const Eigen::MatrixBase<Derived>& v) {
    return v.cwiseAbs().maxCoeff();
}

// Repeats rule(n) with n doubled until successive values agree to cfg.rel_tol relative to
// max(|value|, scale). rule returns the pair (value, integral of |integrand|).
template <class T, class F>
T converge(F&& rule, const Config& cfg, const char* what) {
    auto [prev, scale] = rule(cfg.order);
    for (int n = 2 * cfg.order; n <= cfg.max_order; n *= 2) {
        auto [cur, s] = rule(n);
        const double ref = std::max(magnitude(cur), s);
        if (magnitude(T(cur - prev)) <= cfg.rel_tol * ref) {
            return cur;
        }
        prev = cur;
        scale = s;
    }
    throw NumericalError(std::string("quadrature did not converge: ") + what);
}

// Midpoint rule in theta on [0, pi]; after the cosine substitution this is the
// Gauss-Chebyshev rule for the weight 1/sqrt((x-lo)(hi-x)).
inline double chebyshev_angle(int i, int n) {
    return (i + 0.5) * std::numbers::pi / n;
}

// Sum approximating int_0^pi F(theta) d theta at order n. Plain midpoint rule unless an
// end has a nearby singularity at angular distance wl (at 0) or wr (at pi) below 0.2;
// then composite Gauss-Legendre on panels graded geometrically toward that end.
VecC angle_rule(const std::function<VecC(double)>& F, double wl, double wr, int n, double* mag);

// Gauss-Legendre on [lo, hi] with order doubling starting from cfg.order.
VecC gl_interval(const std::function<VecC(double)>& f, double lo, double hi, const Config& cfg);

// Adaptive Gauss-Legendre on a straight complex path p -> q for a C^m-valued integrand.
// Bisects until the 20-point and two-half estimates agree to tol (absolute, scaled).
VecC adaptive_line(const std::function<VecC(cplx)>& f, cplx p, cplx q, double tol, int max_depth = 48);

// Tanh-sinh on [a, b] for integrands with integrable endpoint singularities (log, 1/sqrt).
double tanh_sinh(const std::function<double(double)>& f, double a, double b, double tol = 1e-13);

}  // namespace fhs::quad
