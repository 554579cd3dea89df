#include "fhs/quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <map>
#include <mutex>

namespace fhs::quad {

const Rule& legendre_rule(int n) {
    static std::map<int, Rule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
        Rule r;
        gauss_legendre<double>(n, r.x, r.w);
        it = cache.emplace(n, std::move(r)).first;
    }
    return it->second;
}

namespace {

VecC gl_line(const std::function<VecC(cplx)>& f, cplx p, cplx q, const Rule& r) {
    const cplx half = 0.5 * (q - p);
    const cplx mid = 0.5 * (q + p);
    VecC acc;
    for (std::size_t i = 0; i < r.x.size(); ++i) {
        VecC v = f(mid + half * r.x[i]);
        if (i == 0) {
            acc = VecC::Zero(v.size());
        }
        acc += r.w[i] * v;
    }
    return acc * half;
}

VecC adaptive_step(const std::function<VecC(cplx)>& f, cplx p, cplx q, const VecC& whole, double tol,
                   int depth, int max_depth) {
    const Rule& r = legendre_rule(20);
    const cplx m = 0.5 * (p + q);
    VecC left = gl_line(f, p, m, r);
    VecC right = gl_line(f, m, q, r);
    VecC both = left + right;
    if ((both - whole).cwiseAbs().maxCoeff() <= tol) {
        return both;
    }
    if (depth >= max_depth) {
        throw NumericalError("adaptive line quadrature exceeded maximum depth");
    }
    return adaptive_step(f, p, m, left, 0.5 * tol, depth + 1, max_depth) +
           adaptive_step(f, m, q, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

VecC angle_rule(const std::function<VecC(double)>& F, double wl, double wr, int n, double* mag) {
    constexpr double kGrade = 0.2;
    const double pi = std::numbers::pi;
    VecC acc;
    double m = 0.0;
    auto add = [&](double th, double wt) {
        VecC v = F(th) * wt;
        if (acc.size() == 0) {
            acc = VecC::Zero(v.size());
        }
        acc += v;
        m += v.cwiseAbs().maxCoeff();
    };
    if (std::min(wl, wr) >= kGrade) {
        for (int i = 0; i < n; ++i) {
            add(chebyshev_angle(i, n), pi / n);
        }
    } else {
        std::vector<double> bp{0.0, pi};
        for (double w = std::min(wl, kGrade) / 16; w < pi / 3 && wl < kGrade; w *= 2) {
            bp.push_back(w);
        }
        for (double w = std::min(wr, kGrade) / 16; w < pi / 3 && wr < kGrade; w *= 2) {
            bp.push_back(pi - w);
        }
        std::sort(bp.begin(), bp.end());
        const Rule& r = legendre_rule(std::max(8, n / 16));
        for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
            const double h = 0.5 * (bp[k + 1] - bp[k]);
            const double c = 0.5 * (bp[k + 1] + bp[k]);
            for (std::size_t i = 0; i < r.x.size(); ++i) {
                add(c + h * r.x[i], h * r.w[i]);
            }
        }
    }
    if (mag) {
        *mag = m;
    }
    return acc;
}

VecC gl_interval(const std::function<VecC(double)>& f, double lo, double hi, const Config& cfg) {
    if (lo == hi) {
        return VecC::Zero(f(lo).size());
    }
    auto rule = [&](int n) {
        const Rule& r = legendre_rule(n);
        const double h = 0.5 * (hi - lo);
        const double m = 0.5 * (hi + lo);
        VecC acc;
        double mag = 0.0;
        for (int i = 0; i < n; ++i) {
            VecC v = f(m + h * r.x[i]) * r.w[i];
            if (i == 0) {
                acc = VecC::Zero(v.size());
            }
            acc += v;
            mag += v.cwiseAbs().maxCoeff();
        }
        return std::pair<VecC, double>{acc * h, mag * std::abs(h)};
    };
    return converge<VecC>(rule, cfg, "Gauss-Legendre interval");
}

VecC adaptive_line(const std::function<VecC(cplx)>& f, cplx p, cplx q, double tol, int max_depth) {
    if (p == q) {
        return VecC::Zero(f(p).size());
    }
    VecC whole = gl_line(f, p, q, legendre_rule(20));
    return adaptive_step(f, p, q, whole, tol, 0, max_depth);
}

double tanh_sinh(const std::function<double(double)>& f, double a, double b, double tol) {
    static thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
    return integrator.integrate(f, a, b, tol);
}

}  // namespace fhs::quad
