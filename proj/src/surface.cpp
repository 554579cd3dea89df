#include "fhs/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace fhs {

namespace {

// i^{-n}
cplx inverse_i_power(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, -1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, 1.0};
    }
}

// sqrt(z - a) with the principal branch, and explicit shore values on the cut z < a.
cplx sqrt_factor(cplx z, double a, Shore shore) {
    if (z.imag() == 0.0 && z.real() < a) {
        const double s = std::sqrt(a - z.real());
        return shore == Shore::below ? cplx(0.0, -s) : cplx(0.0, s);
    }
    return std::sqrt(z - a);
}

}  // namespace

IntervalSystem::IntervalSystem(std::vector<double> endpoints) : a_(std::move(endpoints)) {
    for (double v : a_) {
        if (!std::isfinite(v)) {
            throw ValidationError("endpoints must be finite");
        }
    }
    for (std::size_t i = 1; i < a_.size(); ++i) {
        if (!(a_[i] > a_[i - 1])) {
            throw ValidationError("endpoints must be strictly increasing");
        }
    }
    if (a_.size() % 2 != 0) {
        throw ValidationError("endpoint count must be even (2g+2)");
    }
    g_ = static_cast<int>(a_.size()) / 2 - 1;
    if (g_ < 2) {
        throw ValidationError("genus must be at least 2 (need at least 6 endpoints)");
    }
}

Segment IntervalSystem::segment(int left) const {
    if (left < 1 || left >= count()) {
        throw std::out_of_range("segment index out of range");
    }
    return Segment{left, a(left), a(left + 1), left % 2 == 1};
}

Segment IntervalSystem::arc(int j) const {
    if (j < 1 || j > g_ + 1) {
        throw std::out_of_range("arc index out of range");
    }
    return segment(2 * j - 1);
}

Segment IntervalSystem::gap(int k) const {
    if (k < 1 || k > g_) {
        throw std::out_of_range("gap index out of range");
    }
    return segment(2 * k);
}

int IntervalSystem::locate(double x) const {
    if (x < a_.front()) {
        return 0;
    }
    if (x > a_.back()) {
        return count();
    }
    auto it = std::upper_bound(a_.begin(), a_.end(), x);
    int p = static_cast<int>(it - a_.begin());
    return std::min(p, count() - 1);
}

bool IntervalSystem::inside_arc(double x) const {
    int p = locate(x);
    if (p == 0 || p == count()) {
        return false;
    }
    return p % 2 == 1 && x > a(p) && x < a(p + 1);
}

cplx radical(const IntervalSystem& sys, cplx z, Shore shore) {
    if (z.imag() == 0.0) {
        for (double aj : sys.endpoints()) {
            if (z.real() == aj) {
                return {0.0, 0.0};
            }
        }
        if (shore == Shore::none && sys.inside_arc(z.real())) {
            throw ValidationError("radical on a main arc requires a shore");
        }
    }
    cplx r{1.0, 0.0};
    for (double aj : sys.endpoints()) {
        r *= sqrt_factor(z, aj, shore);
    }
    return r;
}

cplx radical(const IntervalSystem& sys, const SurfacePoint& p, Shore shore) {
    if (p.sheet != 1 && p.sheet != -1) {
        throw ValidationError("sheet must be +1 or -1");
    }
    return static_cast<double>(p.sheet) * radical(sys, p.z, shore);
}

cplx weight_w(const IntervalSystem& sys, cplx z) {
    return std::sqrt((sys.right_end() - z) * (z - sys.left_end()));
}

cplx segment_jacobian(const IntervalSystem& sys, int p, double zeta, Shore shore) {
    const int n = sys.count();
    double prod = 1.0;
    for (int j = 1; j <= n; ++j) {
        if (j != p && j != p + 1) {
            prod *= std::sqrt(std::abs(zeta - sys.a(j)));
        }
    }
    cplx phase = inverse_i_power(n - p);
    if (shore == Shore::below) {
        phase = std::conj(phase);
    }
    return phase / prod;
}

VecC integrate_segment(const IntervalSystem& sys, int p, const std::function<VecC(double)>& f, Shore shore,
                       const quad::Config& cfg) {
    const Segment seg = sys.segment(p);
    const double m = seg.mid();
    const double r = seg.half();
    // angular width of the near-singularity from the endpoints just outside the segment
    const double dl = p > 1 ? seg.lo - sys.a(p - 1) : 2 * r;
    const double dr = p + 1 < sys.count() ? sys.a(p + 2) - seg.hi : 2 * r;
    const double wl = std::sqrt(2 * dl / r);
    const double wr = std::sqrt(2 * dr / r);
    auto integrand = [&](double th) {
        const double zeta = m - r * std::cos(th);
        return VecC(f(zeta) * segment_jacobian(sys, p, zeta, shore));
    };
    auto rule = [&](int n) {
        double mag = 0.0;
        VecC acc = quad::angle_rule(integrand, wl, wr, n, &mag);
        return std::pair<VecC, double>{acc, mag};
    };
    return quad::converge<VecC>(rule, cfg, "segment integral");
}

TailMap tail_map(const IntervalSystem& sys) {
    TailMap tm;
    tm.c = sys.center();
    tm.t_left = 1.0 / (sys.left_end() - tm.c);
    tm.t_right = 1.0 / (sys.right_end() - tm.c);
    tm.scale = std::sqrt((tm.c - sys.left_end()) * (sys.right_end() - tm.c));
    return tm;
}

double tail_jacobian(const IntervalSystem& sys, double t) {
    const TailMap tm = tail_map(sys);
    double prod = tm.scale;
    for (int j = 2; j < sys.count(); ++j) {
        prod *= std::sqrt(std::max(0.0, 1.0 + t * (tm.c - sys.a(j))));
    }
    return 1.0 / prod;
}

VecC integrate_unbounded(const IntervalSystem& sys, const std::function<VecC(double)>& h, const quad::Config& cfg) {
    const TailMap tm = tail_map(sys);
    const double m = 0.5 * (tm.t_left + tm.t_right);
    const double r = 0.5 * (tm.t_right - tm.t_left);
    const double dl = tm.t_left - 1.0 / (sys.a(2) - tm.c);
    const double dr = 1.0 / (sys.a(sys.count() - 1) - tm.c) - tm.t_right;
    const double wl = std::sqrt(2 * dl / r);
    const double wr = std::sqrt(2 * dr / r);
    auto integrand = [&](double th) {
        const double t = m - r * std::cos(th);
        return VecC(h(t) * tail_jacobian(sys, t));
    };
    auto rule = [&](int n) {
        double mag = 0.0;
        VecC acc = quad::angle_rule(integrand, wl, wr, n, &mag);
        return std::pair<VecC, double>{acc, mag};
    };
    return quad::converge<VecC>(rule, cfg, "unbounded gap integral");
}

VecR right_tail_moments(const IntervalSystem& sys, const quad::Config& cfg) {
    const int g = sys.genus();
    const TailMap tm = tail_map(sys);
    const double mt = 0.5 * (tm.t_left + tm.t_right);
    const double rt = 0.5 * (tm.t_right - tm.t_left);
    const double theta0 = std::acos(mt / rt);
    auto f = [&](double th) {
        const double t = mt - rt * std::cos(th);
        VecC v(g);
        for (int i = 0; i < g; ++i) {
            v(i) = std::pow(1.0 + tm.c * t, i) * std::pow(t, g - 1 - i) * tail_jacobian(sys, t);
        }
        return v;
    };
    quad::Config c = cfg;
    c.order = std::max(16, cfg.order / 4);
    return quad::gl_interval(f, theta0, std::numbers::pi, c).real();
}

cplx segment_integral(const IntervalSystem& sys, int k, const Segment& seg, Shore shore, const quad::Config& cfg) {
    auto f = [k](double zeta) {
        VecC v(1);
        v(0) = std::pow(zeta, k);
        return v;
    };
    return integrate_segment(sys, seg.left, f, shore == Shore::none ? Shore::above : shore, cfg)(0);
}

MatI jump_matrix_L(int g) {
    MatI L = MatI::Identity(g, g);
    for (int i = 0; i < g - 1; ++i) {
        L(i, g - 1) = -1;
    }
    return L;
}

namespace {

VecC powers(double zeta, int g) {
    VecC v(g);
    double p = 1.0;
    for (int i = 0; i < g; ++i) {
        v(i) = p;
        p *= zeta;
    }
    return v;
}

}  // namespace

PeriodData build_period_data(const IntervalSystem& sys, const quad::Config& cfg) {
    const int g = sys.genus();
    PeriodData pd;
    pd.genus = g;
    pd.endpoints = sys.endpoints();
    pd.order = cfg.order;

    auto moments = [g](double zeta) { return powers(zeta, g); };

    pd.arc_moments.resize(g + 1, g);
    for (int l = 1; l <= g + 1; ++l) {
        pd.arc_moments.row(l - 1) = integrate_segment(sys, 2 * l - 1, moments, Shore::above, cfg).transpose();
    }
    pd.gap_moments.resize(g, g);
    for (int k = 1; k <= g; ++k) {
        pd.gap_moments.row(k - 1) = integrate_segment(sys, 2 * k, moments, Shore::above, cfg).real().transpose();
    }
    const TailMap tm = tail_map(sys);
    auto tail = [g, c = tm.c](double t) {
        VecC v(g);
        for (int i = 0; i < g; ++i) {
            v(i) = std::pow(1.0 + c * t, i) * std::pow(t, g - 1 - i);
        }
        return v;
    };
    pd.tail_moments = integrate_unbounded(sys, tail, cfg).real();

    // A-periods: cycles through c_1..c_{g-1}, then the unbounded gap.
    pd.A.resize(g, g);
    for (int j = 0; j < g - 1; ++j) {
        pd.A.row(j) = 2.0 * pd.gap_moments.row(j);
    }
    pd.A.row(g - 1) = -2.0 * pd.tail_moments.transpose();
    Eigen::FullPivLU<MatR> lu(pd.A);
    if (!lu.isInvertible()) {
        throw NumericalError("A-period matrix is singular");
    }
    pd.A_inv = lu.inverse();
    pd.P_coeffs = pd.A_inv.transpose();

    // Integrals of omega_j over each main arc (upper shore).
    const MatC arc_omega = pd.arc_moments * pd.A_inv.cast<cplx>();
    pd.tau.resize(g, g);
    for (int k = 0; k < g - 1; ++k) {
        VecC row = VecC::Zero(g);
        for (int l = k + 1; l < g; ++l) {
            row += arc_omega.row(l).transpose();
        }
        pd.tau.row(k) = 2.0 * row.transpose();
    }
    pd.tau.row(g - 1) = 2.0 * arc_omega.row(g);

    Eigen::SelfAdjointEigenSolver<MatR> es(0.5 * (pd.tau.imag() + pd.tau.imag().transpose()));
    if (es.eigenvalues().minCoeff() <= 0.0) {
        if (es.eigenvalues().maxCoeff() < 0.0) {
            pd.tau = -pd.tau;
        } else {
            throw NumericalError("imaginary part of the period matrix is indefinite");
        }
    }
    pd.tau11 = pd.tau(0, 0);

    // Independent route: last A-row from the whole interval on the upper shore, B-period over I_e.
    MatR A_intro = pd.A;
    VecC whole = pd.arc_moments.colwise().sum().transpose() + pd.gap_moments.colwise().sum().transpose().cast<cplx>();
    A_intro.row(g - 1) = 2.0 * whole.real().transpose();
    const MatR A_intro_inv = A_intro.inverse();
    cplx acc{0.0, 0.0};
    for (int j = 0; j < g; ++j) {
        acc += A_intro_inv(j, 0) * (pd.arc_moments(0, j) + pd.arc_moments(g, j));
    }
    pd.tau11_intro = -2.0 * acc;

    pd.L = jump_matrix_L(g);
    pd.T.resize(g, g);
    for (int k = 0; k < g; ++k) {
        pd.T.col(k) = 2.0 * pd.gap_moments.row(k).transpose();
    }
    return pd;
}

double eval_P(const PeriodData& pd, int j, double x) {
    double acc = 0.0;
    for (int i = pd.genus - 1; i >= 0; --i) {
        acc = acc * x + pd.P_coeffs(j - 1, i);
    }
    return acc;
}

VecC omega(const IntervalSystem& sys, const PeriodData& pd, cplx z, Shore shore) {
    const int g = pd.genus;
    const cplx r = radical(sys, z, shore);
    VecC out(g);
    for (int j = 0; j < g; ++j) {
        cplx acc{0.0, 0.0};
        for (int i = g - 1; i >= 0; --i) {
            acc = acc * z + pd.P_coeffs(j, i);
        }
        out(j) = acc / r;
    }
    return out;
}

namespace {

template <class F>
double bisect(F&& f, double lo, double hi, double tol) {
    double flo = f(lo);
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) {
            return mid;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<DifferentialZero> differential_zero_locations(const IntervalSystem& sys, const PeriodData& pd) {
    const int g = pd.genus;
    std::vector<DifferentialZero> out;
    for (int j = 1; j <= g; ++j) {
        auto P = [&](double x) { return eval_P(pd, j, x); };
        for (int k = 1; k <= g - 1; ++k) {
            if (k == j) {
                continue;
            }
            const Segment s = sys.gap(k);
            if (P(s.lo) * P(s.hi) >= 0.0) {
                throw NumericalError("P_" + std::to_string(j) + " has no sign change in gap " + std::to_string(k));
            }
            out.push_back({j, k, bisect(P, s.lo, s.hi, 1e-14 * (1.0 + std::abs(s.hi)))});
        }
        if (j < g) {
            // In t = 1/(x - c) the unbounded gap becomes [t_left, t_right] through t = 0.
            const TailMap tm = tail_map(sys);
            auto Q = [&](double t) {
                double acc = 0.0;
                for (int i = 0; i < g; ++i) {
                    acc += pd.P_coeffs(j - 1, i) * std::pow(1.0 + tm.c * t, i) * std::pow(t, g - 1 - i);
                }
                return acc;
            };
            if (Q(tm.t_left) * Q(tm.t_right) >= 0.0) {
                throw NumericalError("P_" + std::to_string(j) + " has no zero in the unbounded gap");
            }
            const double t = bisect(Q, tm.t_left, tm.t_right, 1e-15);
            const double x = t == 0.0 ? std::numeric_limits<double>::infinity() : tm.c + 1.0 / t;
            out.push_back({j, 0, x});
        }
    }
    return out;
}

nlohmann::json period_data_json(const PeriodData& pd) {
    auto mat = [](const auto& m) {
        nlohmann::json rows = nlohmann::json::array();
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                row.push_back(m(i, j));
            }
            rows.push_back(row);
        }
        return rows;
    };
    nlohmann::json j;
    j["endpoints"] = pd.endpoints;
    j["genus"] = pd.genus;
    j["A"] = mat(pd.A);
    j["A_inv"] = mat(pd.A_inv);
    j["P_coeffs"] = mat(pd.P_coeffs);
    j["tau_re"] = mat(MatR(pd.tau.real()));
    j["tau_im"] = mat(MatR(pd.tau.imag()));
    j["tau11"] = {{"re", pd.tau11.real()}, {"im", pd.tau11.imag()}};
    j["tau11_intro"] = {{"re", pd.tau11_intro.real()}, {"im", pd.tau11_intro.imag()}};
    j["T"] = mat(pd.T);
    j["L"] = mat(pd.L);
    return j;
}

}  // namespace fhs
