#include "fhs/abel.hpp"

#include <cmath>
#include <numbers>

namespace fhs {

namespace {

VecC gl_partial(const std::function<VecC(double)>& f, double lo, double hi, const quad::Config& cfg) {
    quad::Config c = cfg;
    c.order = std::max(16, cfg.order / 4);
    return quad::gl_interval(f, lo, hi, c);
}

VecC unit(int g, int k) {
    VecC e = VecC::Zero(g);
    e(k - 1) = 1.0;
    return e;
}

}  // namespace

AbelMap::AbelMap(const IntervalSystem& sys, const PeriodData& pd, const quad::Config& cfg)
    : sys_(sys), pd_(pd), cfg_(cfg) {
    const int g = pd_.genus;
    const int n = sys_.count();
    cumulative_.assign(n, VecC::Zero(g));
    for (int p = 1; p < n; ++p) {
        auto f = [&](double zeta) {
            VecC v(g);
            for (int j = 1; j <= g; ++j) {
                v(j - 1) = eval_P(pd_, j, zeta);
            }
            return v;
        };
        cumulative_[p] = cumulative_[p - 1] + integrate_segment(sys_, p, f, Shore::above, cfg_);
    }
    // u(inf) = int_{a_1}^{-inf} omega: t from t_left to 0 in the tail variable.
    const TailMap tm = tail_map(sys_);
    const double mt = 0.5 * (tm.t_left + tm.t_right);
    const double rt = 0.5 * (tm.t_right - tm.t_left);
    const double theta0 = std::acos((mt - 0.0) / rt);
    u_inf_ = (-tail_partial(0.0, theta0)).real();
    double amax = 0.0;
    for (double a : sys_.endpoints()) {
        amax = std::max(amax, std::abs(a));
    }
    far_radius_ = 2.0 * amax + 1.0;
}

VecC AbelMap::tail_partial(double theta_lo, double theta_hi) const {
    const int g = pd_.genus;
    const TailMap tm = tail_map(sys_);
    const double mt = 0.5 * (tm.t_left + tm.t_right);
    const double rt = 0.5 * (tm.t_right - tm.t_left);
    auto f = [&](double th) {
        const double t = mt - rt * std::cos(th);
        VecC v(g);
        for (int j = 0; j < g; ++j) {
            double acc = 0.0;
            for (int i = 0; i < g; ++i) {
                acc += pd_.P_coeffs(j, i) * std::pow(1.0 + tm.c * t, i) * std::pow(t, g - 1 - i);
            }
            v(j) = acc * tail_jacobian(sys_, t);
        }
        return v;
    };
    return gl_partial(f, theta_lo, theta_hi, cfg_);
}

VecR AbelMap::infinity_from_right() const {
    const TailMap tm = tail_map(sys_);
    const double mt = 0.5 * (tm.t_left + tm.t_right);
    const double rt = 0.5 * (tm.t_right - tm.t_left);
    const double theta0 = std::acos(mt / rt);
    VecR out = cumulative_.back().real() + tail_partial(theta0, std::numbers::pi).real();
    return out;
}

VecC AbelMap::segment_partial(int p, double x) const {
    const int g = pd_.genus;
    const Segment s = sys_.segment(p);
    const double m = s.mid();
    const double r = s.half();
    const double thx = std::acos(std::clamp((m - x) / r, -1.0, 1.0));
    auto f = [&](double th) {
        const double zeta = m - r * std::cos(th);
        const cplx jac = segment_jacobian(sys_, p, zeta, Shore::above);
        VecC v(g);
        for (int j = 1; j <= g; ++j) {
            v(j - 1) = eval_P(pd_, j, zeta) * jac;
        }
        return v;
    };
    return gl_partial(f, 0.0, thx, cfg_);
}

VecC AbelMap::upper(double x) const {
    const int n = sys_.count();
    const int p = sys_.locate(x);
    const TailMap tm = tail_map(sys_);
    const double mt = 0.5 * (tm.t_left + tm.t_right);
    const double rt = 0.5 * (tm.t_right - tm.t_left);
    if (p == 0) {
        const double t = 1.0 / (x - tm.c);
        return -tail_partial(0.0, std::acos(std::clamp((mt - t) / rt, -1.0, 1.0)));
    }
    if (p == n) {
        const double t = 1.0 / (x - tm.c);
        return cumulative_.back() + tail_partial(std::acos(std::clamp((mt - t) / rt, -1.0, 1.0)), std::numbers::pi);
    }
    if (x == sys_.a(p)) {
        return cumulative_[p - 1];
    }
    return cumulative_[p - 1] + segment_partial(p, x);
}

std::vector<VecC> AbelMap::upper_many(const std::vector<double>& xs) const {
    std::vector<VecC> out;
    out.reserve(xs.size());
    for (double x : xs) {
        out.push_back(upper(x));
    }
    return out;
}

bool AbelMap::far_field(cplx z) const { return std::abs(z) > far_radius_; }

VecC AbelMap::line(cplx from, cplx to) const {
    auto f = [&](cplx zeta) { return omega(sys_, pd_, zeta, Shore::above); };
    return quad::adaptive_line(f, from, to, 1e-13);
}

VecC AbelMap::from_infinity(cplx z) const {
    // -int_z^inf omega along zeta = z/s, s in (0, 1].
    const int g = pd_.genus;
    auto f = [&](double s) {
        const cplx zeta = z / s;
        VecC w = omega(sys_, pd_, zeta, Shore::above);
        return VecC(w * (z / (s * s)));
    };
    quad::Config c = cfg_;
    c.order = 32;
    VecC v = gl_partial(f, 0.0, 1.0, c);
    (void)g;
    return -v;
}

VecC AbelMap::relative_to_infinity(cplx z, Shore shore) const {
    if (z.imag() < 0.0) {
        return relative_to_infinity(std::conj(z), shore).conjugate();
    }
    if (far_field(z)) {
        return from_infinity(z);
    }
    return (*this)(z, shore) - u_inf_.cast<cplx>();
}

VecC AbelMap::operator()(cplx z, Shore shore) const {
    if (z.imag() < 0.0) {
        return (*this)(std::conj(z), shore).conjugate();
    }
    if (z.imag() == 0.0) {
        const double x = z.real();
        const bool inside = x > sys_.left_end() && x < sys_.right_end();
        bool is_branch = false;
        for (double a : sys_.endpoints()) {
            is_branch = is_branch || a == x;
        }
        if (inside && !is_branch && shore == Shore::none) {
            throw ValidationError("abel map on [a_1, a_{2g+2}] requires a shore");
        }
        VecC up = upper(x);
        return shore == Shore::below ? VecC(up.conjugate()) : up;
    }
    if (far_field(z)) {
        return u_inf_.cast<cplx>() + from_infinity(z);
    }
    // Vertical detour from the real axis; start from a segment midpoint when a branch point is close.
    double x0 = z.real();
    const int p = sys_.locate(x0);
    double dmin = 1e300;
    for (double a : sys_.endpoints()) {
        dmin = std::min(dmin, std::abs(a - x0));
    }
    if (dmin < 0.25 * z.imag()) {
        if (p == 0) {
            x0 = sys_.left_end() - 1.0 - sys_.half_span();
        } else if (p == sys_.count()) {
            x0 = sys_.right_end() + 1.0 + sys_.half_span();
        } else {
            x0 = sys_.segment(p).mid();
        }
    }
    return upper(x0) + line(cplx(x0, 0.0), z);
}

VecC AbelMap::at(const SurfacePoint& p, Shore shore) const {
    if (p.sheet != 1 && p.sheet != -1) {
        throw ValidationError("sheet must be +1 or -1");
    }
    return static_cast<double>(p.sheet) * (*this)(p.z, shore);
}

VecC AbelMap::W0() const {
    const int g = pd_.genus;
    return 0.5 * pd_.tau.col(0) - 0.5 * (unit(g, 1) + unit(g, g));
}

VecC AbelMap::tail_value(double t) const {
    const TailMap tm = tail_map(sys_);
    if (t < tm.t_left || t > tm.t_right) {
        throw ValidationError("tail parameter outside the unbounded gap");
    }
    const double mt = 0.5 * (tm.t_left + tm.t_right);
    const double rt = 0.5 * (tm.t_right - tm.t_left);
    const double th = std::acos(std::clamp((mt - t) / rt, -1.0, 1.0));
    if (t <= 0.0) {
        return -tail_partial(0.0, th);
    }
    return cumulative_.back() + tail_partial(th, std::numbers::pi);
}

std::vector<VecC> AbelMap::branch_values_closed() const {
    const int g = pd_.genus;
    std::vector<VecC> out(2 * g + 2, VecC::Zero(g));
    auto tc = [&](int k) { return VecC(pd_.tau.col(k - 1)); };
    VecC half_sum = VecC::Zero(g);
    for (int k = 1; k <= g - 1; ++k) {
        out[2 * k - 1] = half_sum - 0.5 * (tc(k) + tc(g));  // a_{2k}
        half_sum += 0.5 * unit(g, k);
        out[2 * k] = half_sum - 0.5 * (tc(k) + tc(g));  // a_{2k+1}
    }
    out[2 * g - 1] = half_sum - 0.5 * tc(g);           // a_{2g}
    out[2 * g] = 0.5 * (unit(g, g) - tc(g));           // a_{2g+1}
    out[2 * g + 1] = 0.5 * unit(g, g);                 // a_{2g+2}
    return out;
}

VecC AbelMap::riemann_constants() const {
    VecC k = VecC::Zero(pd_.genus);
    for (int j = 1; j <= pd_.genus; ++j) {
        k += cumulative_[2 * j];
    }
    return k;
}

VecC AbelMap::riemann_constants_closed_twice() const {
    const int g = pd_.genus;
    VecC v = -static_cast<double>(g) * pd_.tau.col(g - 1) + unit(g, g);
    for (int k = 1; k <= g - 1; ++k) {
        v -= pd_.tau.col(k - 1);
        v += static_cast<double>(g - k) * unit(g, k);
    }
    return v;
}

AbelData AbelMap::data() const {
    AbelData d;
    d.u_infinity = u_inf_;
    d.branch_values = cumulative_;
    d.branch_values_closed = branch_values_closed();
    d.riemann_constants = riemann_constants();
    d.riemann_constants_closed_twice = riemann_constants_closed_twice();
    d.W0 = W0();
    return d;
}

}  // namespace fhs
