#include "fhs/gfunctions.hpp"

#include <cmath>
#include <numbers>

namespace fhs {

namespace {

constexpr double kPi = std::numbers::pi;

struct SegmentGeometry {
    int p;
    double m;
    double r;
    cplx phase;  // dzeta / R_+ = phase * d(theta) / prod
};

SegmentGeometry geometry(const IntervalSystem& sys, int p) {
    const Segment s = sys.segment(p);
    SegmentGeometry sg{p, s.mid(), s.half(), {}};
    const double probe = s.mid();
    double prod = 1.0;
    for (int j = 1; j <= sys.count(); ++j) {
        if (j != p && j != p + 1) {
            prod *= std::sqrt(std::abs(probe - sys.a(j)));
        }
    }
    sg.phase = segment_jacobian(sys, p, probe, Shore::above) * prod;
    return sg;
}

double inverse_product(const IntervalSystem& sys, int p, double zeta) {
    double prod = 1.0;
    for (int j = 1; j <= sys.count(); ++j) {
        if (j != p && j != p + 1) {
            prod *= std::sqrt(std::abs(zeta - sys.a(j)));
        }
    }
    return 1.0 / prod;
}

// ln w at zeta = m - r cos(theta) on segment p, with the endpoint factors written in theta.
double log_w(const IntervalSystem& sys, const SegmentGeometry& sg, double theta) {
    const double zeta = sg.m - sg.r * std::cos(theta);
    const int last = sys.count() - 1;
    double left = sg.p == 1 ? std::log(2.0 * sg.r) + 2.0 * std::log(std::sin(0.5 * theta))
                            : std::log(zeta - sys.left_end());
    double right = sg.p == last ? std::log(2.0 * sg.r) + 2.0 * std::log(std::cos(0.5 * theta))
                                : std::log(sys.right_end() - zeta);
    return 0.5 * (left + right);
}

// Complex integral over theta in [0, pi] by tanh-sinh on real and imaginary parts. A near pole
// at theta = split is placed on a subinterval endpoint, where the tanh-sinh nodes cluster.
cplx theta_integral(const std::function<cplx(double)>& f, double split = -1.0) {
    auto part = [&](double lo, double hi) {
        const double re = quad::tanh_sinh([&](double t) { return f(t).real(); }, lo, hi, 1e-13);
        const double im = quad::tanh_sinh([&](double t) { return f(t).imag(); }, lo, hi, 1e-13);
        return cplx(re, im);
    };
    if (split > 0.0 && split < kPi) {
        return part(0.0, split) + part(split, kPi);
    }
    return part(0.0, kPi);
}

// Angle of the point of segment sg nearest to z when z is close to it, otherwise -1.
double pole_angle(const SegmentGeometry& sg, cplx z) {
    const double c = (sg.m - z.real()) / sg.r;
    if (std::abs(c) >= 1.0 || std::abs(z.imag()) > sg.r) {
        return -1.0;
    }
    return std::acos(c);
}

// Principal value over theta in [0, pi] of q(theta) / (zeta(theta) - x) for x = m - r cos(theta0).
double pv_theta(const std::function<double(double)>& q, const SegmentGeometry& sg, double x) {
    const double c0 = std::clamp((sg.m - x) / sg.r, -1.0, 1.0);
    const double th0 = std::acos(c0);
    const double q0 = q(th0);
    const double hd = 1e-4 * std::min(th0, kPi - th0);
    double slope = std::numeric_limits<double>::quiet_NaN();
    auto f = [&](double th) {
        const double dc = std::cos(th) - c0;
        if (std::abs(th - th0) < 1e-6) {
            if (std::isnan(slope)) {
                slope = (q(th0 + hd) - q(th0 - hd)) / (2.0 * hd) / (-std::sin(th0));
            }
            return slope;
        }
        return (q(th) - q0) / dc;
    };
    return -quad::tanh_sinh(f, 0.0, kPi, 1e-12) / sg.r;
}

VecC unit(int g, int k) {
    VecC e = VecC::Zero(g);
    e(k - 1) = 1.0;
    return e;
}

}  // namespace

GFunctions::GFunctions(const AbelMap& abel, const ThetaContext& theta) : abel_(abel), theta_(theta) {
    const IntervalSystem& sys = abel_.system();
    const PeriodData& pd = abel_.periods();
    const int g = pd.genus;
    log_mom_total_ = VecC::Zero(g + 1);
    for (int l = 1; l <= g + 1; ++l) {
        log_mom_total_ += log_moments(l);
    }
    gap_top_moment_.resize(g);
    for (int k = 1; k <= g; ++k) {
        auto f = [g](double zeta) {
            VecC v(1);
            v(0) = std::pow(zeta, g);
            return v;
        };
        gap_top_moment_(k - 1) = integrate_segment(sys, 2 * k, f, Shore::above, {}).real()(0);
    }
    jd_.Omega = omega_from_T();
    jd_.delta = delta_from_T();
    jd_.g_inf = 0.5 - 2.0 * abel_.infinity()(0);
    jd_.d_inf = d_infinity_moment();
    jd_.C0 = compute_C0();
}

VecC GFunctions::log_moments(int arc) const {
    const IntervalSystem& sys = abel_.system();
    const int g = abel_.genus();
    const SegmentGeometry sg = geometry(sys, 2 * arc - 1);
    VecC out(g + 1);
    for (int m = 0; m <= g; ++m) {
        auto f = [&](double th) {
            const double zeta = sg.m - sg.r * std::cos(th);
            return std::pow(zeta, m) * log_w(sys, sg, th) * inverse_product(sys, sg.p, zeta);
        };
        out(m) = sg.phase * quad::tanh_sinh(f, 0.0, kPi, 1e-14);
    }
    return out;
}

cplx GFunctions::g_function(cplx z, Shore shore) const { return 0.5 - 2.0 * abel_(z, shore)(0); }

VecR GFunctions::omega_from_T() const {
    const PeriodData& pd = abel_.periods();
    const int g = pd.genus;
    VecC v = VecC::Zero(g);
    for (int l = 2; l <= g; ++l) {
        v += pd.arc_moments.row(l - 1).transpose();
    }
    return (-4.0 * I * (pd.T.cast<cplx>().inverse() * v)).real();
}

VecR GFunctions::omega_from_arcs() const {
    const PeriodData& pd = abel_.periods();
    const int g = pd.genus;
    const VecC w1 = pd.arc_moments * pd.A_inv.col(0).cast<cplx>();
    VecR out(g);
    cplx acc{0.0, 0.0};
    for (int j = 1; j <= g; ++j) {
        acc += w1(j - 1);
        out(j - 1) = (4.0 * I * acc).real();
    }
    return out;
}

VecR GFunctions::omega_from_tau() const {
    const PeriodData& pd = abel_.periods();
    const MatR Linv = pd.L.cast<double>().inverse();
    return (-2.0 * I * (Linv.cast<cplx>() * pd.tau.col(0))).real();
}

VecR GFunctions::delta_from_T() const {
    const IntervalSystem& sys = abel_.system();
    const PeriodData& pd = abel_.periods();
    const VecR whole = pd.arc_moments.colwise().sum().real().transpose() + pd.gap_moments.colwise().sum().transpose();
    // pi, not 2 pi: the moment conditions fix this scale, see delta_from_log_moments
    const VecR rhs = kPi * (whole + 2.0 * right_tail_moments(sys));
    return pd.T.fullPivLu().solve(rhs);
}

double GFunctions::delta_residual() const {
    const IntervalSystem& sys = abel_.system();
    const PeriodData& pd = abel_.periods();
    const VecR whole = pd.arc_moments.colwise().sum().real().transpose() + pd.gap_moments.colwise().sum().transpose();
    const VecR rhs = kPi * (whole + 2.0 * right_tail_moments(sys));
    return (pd.T * jd_.delta - rhs).cwiseAbs().maxCoeff();
}

VecR GFunctions::delta_from_log_moments() const {
    const PeriodData& pd = abel_.periods();
    const int g = pd.genus;
    // (i/2) T delta = sum over arcs of int zeta^m ln w / R_+
    const VecC rhs = -2.0 * I * log_mom_total_.head(g);
    return pd.T.fullPivLu().solve(VecR(rhs.real()));
}

VecR GFunctions::delta_from_abel() const {
    const PeriodData& pd = abel_.periods();
    const int g = pd.genus;
    const MatR Linv = pd.L.cast<double>().inverse();
    return kPi * Linv * (2.0 * abel_.infinity() - 0.5 * unit(g, g).real());
}

cplx GFunctions::d_infinity_moment() const {
    const int g = abel_.genus();
    cplx cg = -log_mom_total_(g);
    for (int k = 1; k <= g; ++k) {
        cg += I * jd_.delta(k - 1) * gap_top_moment_(k - 1);
    }
    return I * cg / (2.0 * kPi);
}

cplx GFunctions::d_bracket(cplx z, bool subtract_moments) const {
    const IntervalSystem& sys = abel_.system();
    const int g = abel_.genus();
    auto kernel = [&](double zeta) {
        cplx k = 1.0 / (zeta - z);
        if (subtract_moments) {
            k *= std::pow(zeta / z, g);
        }
        return k;
    };
    cplx acc{0.0, 0.0};
    for (int l = 1; l <= g + 1; ++l) {
        const SegmentGeometry sg = geometry(sys, 2 * l - 1);
        auto f = [&](double th) {
            const double zeta = sg.m - sg.r * std::cos(th);
            return log_w(sys, sg, th) * inverse_product(sys, sg.p, zeta) * kernel(zeta);
        };
        acc -= sg.phase * theta_integral(f, pole_angle(sg, z));
    }
    for (int k = 1; k <= g; ++k) {
        const SegmentGeometry sg = geometry(sys, 2 * k);
        auto f = [&](double th) {
            const double zeta = sg.m - sg.r * std::cos(th);
            return inverse_product(sys, sg.p, zeta) * kernel(zeta);
        };
        acc += I * jd_.delta(k - 1) * sg.phase * theta_integral(f, pole_angle(sg, z));
    }
    return acc;
}

cplx GFunctions::d_boundary(double x, Shore shore) const {
    const IntervalSystem& sys = abel_.system();
    const int g = abel_.genus();
    const int p = sys.locate(x);
    for (double a : sys.endpoints()) {
        if (a == x) {
            throw ValidationError("d is not evaluated exactly at a branch point");
        }
    }
    cplx value;
    // Sum of all segment terms except the one containing x; every term is purely imaginary.
    double rest = 0.0;
    for (int l = 1; l <= g + 1; ++l) {
        if (2 * l - 1 == p) {
            continue;
        }
        const SegmentGeometry sg = geometry(sys, 2 * l - 1);
        auto f = [&](double th) {
            const double zeta = sg.m - sg.r * std::cos(th);
            return log_w(sys, sg, th) * inverse_product(sys, sg.p, zeta) / (zeta - x);
        };
        rest -= (sg.phase * quad::tanh_sinh(f, 0.0, kPi, 1e-13)).imag();
    }
    for (int k = 1; k <= g; ++k) {
        if (2 * k == p) {
            continue;
        }
        const SegmentGeometry sg = geometry(sys, 2 * k);
        auto f = [&](double th) {
            const double zeta = sg.m - sg.r * std::cos(th);
            return inverse_product(sys, sg.p, zeta) / (zeta - x);
        };
        rest += (I * jd_.delta(k - 1) * sg.phase * quad::tanh_sinh(f, 0.0, kPi, 1e-13)).imag();
    }
    const SegmentGeometry sg = geometry(sys, p);
    if (p % 2 == 1) {
        auto q = [&](double th) {
            const double zeta = sg.m - sg.r * std::cos(th);
            return log_w(sys, sg, th) * inverse_product(sys, p, zeta);
        };
        rest -= (sg.phase * pv_theta(q, sg, x)).imag();
        const double r = (radical(sys, cplx(x, 0.0), Shore::above) / I).real();
        const double lw = std::log(weight_w(sys, x).real());
        value = cplx(-0.5 * lw, r * rest / (2.0 * kPi));
    } else {
        auto q = [&](double th) {
            const double zeta = sg.m - sg.r * std::cos(th);
            return inverse_product(sys, p, zeta);
        };
        const int k = p / 2;
        rest += (I * jd_.delta(k - 1) * sg.phase * pv_theta(q, sg, x)).imag();
        const double R = radical(sys, cplx(x, 0.0), Shore::above).real();
        value = cplx(R * rest / (2.0 * kPi), 0.5 * jd_.delta(k - 1));
    }
    return shore == Shore::below ? std::conj(value) : value;
}

cplx GFunctions::d_function(cplx z, Shore shore) const {
    const IntervalSystem& sys = abel_.system();
    if (z.imag() == 0.0 && z.real() >= sys.left_end() && z.real() <= sys.right_end()) {
        if (shore == Shore::none) {
            throw ValidationError("d on [a_1, a_{2g+2}] requires a shore");
        }
        return d_boundary(z.real(), shore);
    }
    const bool far = std::abs(z - sys.center()) > 4.0 * sys.half_span();
    const cplx R = radical(sys, z, Shore::none);
    return R / (2.0 * kPi * I) * d_bracket(z, far);
}

cplx GFunctions::d_infinity_extrapolated(double y0) const {
    // Neville extrapolation to h = 1/Y = 0 from Y = y0, 10 y0, 100 y0.
    const double ys[3] = {y0, 10.0 * y0, 100.0 * y0};
    cplx p[3];
    double h[3];
    for (int i = 0; i < 3; ++i) {
        h[i] = 1.0 / ys[i];
        p[i] = d_function(cplx(0.0, ys[i]));
    }
    for (int lev = 1; lev < 3; ++lev) {
        for (int i = 2; i >= lev; --i) {
            p[i] = (h[i - lev] * p[i] - h[i] * p[i - 1]) / (h[i - lev] - h[i]);
        }
    }
    return p[2];
}

std::vector<int> GFunctions::divisor_indices(int g) {
    std::vector<int> J{1};
    for (int j = 5; j <= 2 * g - 1; j += 2) {
        J.push_back(j);
    }
    return J;
}

cplx GFunctions::h_prefactor(cplx z, Shore shore) const {
    const IntervalSystem& sys = abel_.system();
    const int g = abel_.genus();
    const std::vector<int> J = divisor_indices(g);
    if (z.imag() == 0.0 && z.real() > sys.left_end() && z.real() < sys.right_end() && shore == Shore::none) {
        bool is_branch = false;
        for (double a : sys.endpoints()) {
            is_branch = is_branch || a == z.real();
        }
        if (!is_branch) {
            throw ValidationError("h on [a_1, a_{2g+2}] requires a shore");
        }
    }
    cplx h{1.0, 0.0};
    for (int j = 1; j <= sys.count(); ++j) {
        const bool in_J = std::find(J.begin(), J.end(), j) != J.end();
        const double expo = in_J ? 0.25 : -0.25;
        const cplx d = z - sys.a(j);
        cplx f;
        if (z.imag() == 0.0 && d.real() < 0.0) {
            const double mag = std::pow(-d.real(), expo);
            const double arg = (shore == Shore::below ? -kPi : kPi) * expo;
            f = std::polar(mag, arg);
        } else if (d == cplx(0.0, 0.0)) {
            if (in_J) {
                return {0.0, 0.0};
            }
            return {std::numeric_limits<double>::infinity(), 0.0};
        } else {
            f = std::pow(d, expo);
        }
        h *= f;
    }
    return h;
}

cplx GFunctions::compute_C0() const {
    const PeriodData& pd = abel_.periods();
    const VecC grad = theta_.gradient(abel_.W0());
    const cplx c0 = (pd.A_inv.cast<cplx>() * grad)(pd.genus - 1);
    if (std::abs(c0) < 1e-12) {
        throw NumericalError("C0 vanishes");
    }
    return c0;
}

double GFunctions::fay_residual(cplx z) const {
    const VecC grad = theta_.gradient(abel_.W0());
    const VecC w = omega(abel_.system(), abel_.periods(), z);
    const cplx lhs = (w.transpose() * grad)(0, 0);
    const cplx h = h_prefactor(z);
    const cplx rhs = jd_.C0 * h * h;
    return std::abs(lhs - rhs) / std::abs(rhs);
}

}  // namespace fhs
