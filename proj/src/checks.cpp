#include "fhs/checks.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

namespace fhs {

namespace {

constexpr double kPi = std::numbers::pi;

std::string sci(double v, int digits = 3) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(digits) << v;
    return os.str();
}

std::string fixed(double v, int digits = 4) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Inner arcs gamma_2..gamma_g.
std::vector<Segment> inner_arcs(const IntervalSystem& sys) {
    std::vector<Segment> out;
    for (int j = 2; j <= sys.genus(); ++j) {
        out.push_back(sys.arc(j));
    }
    return out;
}

// Uniform grid on each segment shrunk by margin * length at both ends.
std::vector<double> margin_grid(const std::vector<Segment>& segs, int per_segment, double margin) {
    std::vector<double> xs;
    for (const Segment& s : segs) {
        const double len = s.hi - s.lo;
        const double lo = s.lo + margin * len, hi = s.hi - margin * len;
        for (int i = 0; i < per_segment; ++i) {
            xs.push_back(lo + (hi - lo) * (i + 0.5) / per_segment);
        }
    }
    return xs;
}

// Chebyshev points of the first kind on each full segment.
std::vector<double> chebyshev_grid(const std::vector<Segment>& segs, int per_segment) {
    std::vector<double> xs;
    for (const Segment& s : segs) {
        for (int i = 0; i < per_segment; ++i) {
            xs.push_back(s.mid() - s.half() * std::cos(quad::chebyshev_angle(i, per_segment)));
        }
    }
    return xs;
}

int sign_changes_of(const std::vector<double>& v) {
    int count = 0;
    double prev = 0.0;
    for (double x : v) {
        if (x != 0.0 && std::isfinite(x)) {
            if (prev * x < 0.0) {
                ++count;
            }
            prev = x;
        }
    }
    return count;
}

}  // namespace

CheckSuite::CheckSuite(CheckConfig cfg) : cfg_(std::move(cfg)) {}
CheckSuite::~CheckSuite() = default;

const Model& CheckSuite::model() {
    if (!model_) {
        model_ = std::make_unique<Model>(cfg_.endpoints, cfg_.theta_eps);
    }
    return *model_;
}

const Oracle& CheckSuite::oracle() {
    if (!oracle_) {
        oracle_ = std::make_unique<Oracle>(IntervalSystem(cfg_.endpoints), cfg_.quad_order);
    }
    return *oracle_;
}

const ExactSpectrum& CheckSuite::exact() { return oracle().exact_spectrum(cfg_.n_max); }

double CheckSuite::kappa_max() { return 1.0 + (cfg_.n_max + 2) * model().spectrum.period(); }

const std::vector<double>& CheckSuite::roots() {
    if (roots_.empty()) {
        roots_ = model().spectrum.find_eigenvalues(1.0, kappa_max());
    }
    return roots_;
}

CheckResult CheckSuite::run(int id) {
    try {
        switch (id) {
            case 1: return slope_reproduction();
            case 2: return approximate_vs_exact();
            case 3: return one_root_per_bracket();
            case 4: return period_matrix();
            case 5: return theta_identities();
            case 6: return jump_relations();
            case 7: return operator_theory();
            case 8: return eigenfunction_asymptotics();
            case 9: return genus_degeneration();
            default: break;
        }
    } catch (const std::exception& e) {
        return {id, "suite " + std::to_string(id), false, std::string("exception: ") + e.what()};
    }
    throw ValidationError("no check with id " + std::to_string(id));
}

CheckResult CheckSuite::slope_reproduction() {
    CheckResult r{1, "slope reproduction", false, ""};
    const Model& m = model();
    const ExactSpectrum& ex = exact();
    std::vector<double> ns, ys;
    for (int n = 5; n <= 22 && n < static_cast<int>(ex.modes.size()); ++n) {
        ns.push_back(n);
        ys.push_back(std::log(ex.modes[n].lambda));
    }
    const LineFit fit = fit_line(ns, ys);
    const double predicted = -kPi / m.pd.tau(0, 0).imag();
    const double rel = std::abs(fit.slope - predicted) / std::abs(predicted);
    const double dual = std::abs(m.pd.tau(0, 0) - m.pd.tau11_intro);
    r.passed = ns.size() == 18 && ex.trusted >= 23 && rel < 0.02 && dual < 1e-8;
    r.detail = "fit " + fixed(fit.slope, 6) + " predicted " + fixed(predicted, 6) + " rel " + sci(rel) +
               " tau11 dual " + sci(dual) + " trusted " + std::to_string(ex.trusted);
    return r;
}

CheckResult CheckSuite::approximate_vs_exact() {
    CheckResult r{2, "approximate vs exact gap", false, ""};
    const ExactSpectrum& ex = exact();
    const std::vector<double>& ks = roots();
    std::vector<double> exact_k;
    for (const ExactMode& md : ex.modes) {
        exact_k.push_back(md.kappa);
    }
    const int s = optimal_index_shift(ks, exact_k);
    // gap at oracle label n
    std::vector<double> gaps;
    double worst = 0.0;
    bool complete = true;
    for (int n = 8; n <= 20; ++n) {
        const int a = n - s;
        if (a < 0 || a >= static_cast<int>(ks.size()) || n >= ex.trusted) {
            complete = false;
            break;
        }
        gaps.push_back(std::abs(exact_k[n] - ks[a]));
        worst = std::max(worst, gaps.back());
    }
    // medians of rolling windows of five
    std::vector<double> meds;
    for (std::size_t i = 0; i + 5 <= gaps.size(); ++i) {
        meds.push_back(median({gaps.begin() + i, gaps.begin() + i + 5}));
    }
    bool decreasing = !meds.empty();
    for (std::size_t i = 1; i < meds.size(); ++i) {
        decreasing = decreasing && meds[i] <= meds[i - 1];
    }
    r.passed = complete && worst < 0.5 && decreasing;
    r.detail = "shift " + std::to_string(s) + " max gap " + sci(worst) +
               (meds.empty() ? std::string() : " median " + sci(meds.front()) + " -> " + sci(meds.back())) +
               (decreasing ? " non-increasing" : " not monotone");
    return r;
}

CheckResult CheckSuite::one_root_per_bracket() {
    CheckResult r{3, "one root per bracket", false, ""};
    const Spectrum& sp = model().spectrum;
    const std::vector<double>& ks = roots();
    const double kmin = 1.0, kmax = kappa_max();
    const double step = sp.period() / 16;
    const int cells = static_cast<int>(std::ceil((kmax - kmin) / step));
    double max_imag = 0.0;
    auto ind = [&](double k) {
        double im = 0.0;
        const double v = sp.real_line_indicator(k, &im);
        max_imag = std::max(max_imag, std::abs(im));
        return v;
    };
    int brackets = 0, bad = 0;
    double prev = ind(kmin);
    for (int c = 0; c < cells; ++c) {
        const double lo = kmin + c * step, hi = std::min(kmax, lo + step);
        const double cur = ind(hi);
        if (prev * cur < 0.0) {
            ++brackets;
            // the subdivided bracket must show a single sign change and hold a single reported root
            int flips = 0;
            double p = prev;
            for (int i = 1; i <= 64; ++i) {
                const double v = ind(lo + (hi - lo) * i / 64);
                if (p * v < 0.0) {
                    ++flips;
                }
                p = v;
            }
            const auto inside = std::count_if(ks.begin(), ks.end(), [&](double k) { return k >= lo && k <= hi; });
            if (flips != 1 || inside != 1) {
                ++bad;
            }
        }
        prev = cur;
    }
    const int violations = Spectrum::count_bound_violations(ks, kmin, kmax, sp.period(), sp.genus(), 5);
    r.passed = bad == 0 && brackets == static_cast<int>(ks.size()) && violations == 0 && max_imag < 1e-9;
    r.detail = std::to_string(ks.size()) + " roots in " + std::to_string(brackets) + " brackets, " +
               std::to_string(bad) + " irregular, window violations " + std::to_string(violations) +
               ", imaginary residual " + sci(max_imag);
    return r;
}

CheckResult CheckSuite::period_matrix() {
    CheckResult r{4, "period matrix", false, ""};
    const Model& m = model();
    const PeriodData& pd = m.pd;
    const IntervalSystem& sys = m.sys;
    const int g = sys.genus();
    const double sym = (pd.tau - pd.tau.transpose()).cwiseAbs().maxCoeff();
    const double re = pd.tau.real().cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<MatR> es(0.5 * (pd.tau.imag() + pd.tau.imag().transpose()));
    const double lmin = es.eigenvalues().minCoeff();

    // A-normalization by quadrature independent of the library's cosine rules: x = a_e +- s^2 near
    // each branch point a_e, with the factor |x - a_e| = s^2 taken exactly
    boost::math::quadrature::tanh_sinh<double> ts;
    boost::math::quadrature::exp_sinh<double> es_rule;
    auto abs_R = [&](double x, int e, double dist) {
        double p = 1.0;
        for (int j = 1; j <= sys.count(); ++j) {
            p *= j == e ? dist : std::abs(x - sys.a(j));
        }
        return std::sqrt(p);
    };
    auto sign_R = [&](double x) { return radical(sys, cplx(x, 0.0)).real() > 0.0 ? 1.0 : -1.0; };
    // int f / R from the branch point a_e along dir, over length len (infinite when len <= 0)
    auto from_branch = [&](int k, int e, double dir, double len) {
        const double ae = sys.a(e);
        const double sg = sign_R(ae + dir * (len > 0.0 ? 0.5 * len : 1.0));
        auto f = [&](double s) {
            const double x = ae + dir * s * s;
            const double v = 2.0 * s * eval_P(pd, k, x) / abs_R(x, e, s * s);
            return std::isfinite(v) ? sg * v : 0.0;
        };
        return len > 0.0 ? ts.integrate(f, 0.0, std::sqrt(len), 1e-14) : es_rule.integrate(f, 1e-14);
    };
    double norm_err = 0.0;
    for (int k = 1; k <= g; ++k) {
        for (int j = 1; j <= g; ++j) {
            double v = 0.0;
            if (j < g) {
                const Segment c = sys.gap(j);
                const double half = 0.5 * (c.hi - c.lo);
                v = 2.0 * (from_branch(k, 2 * j, 1.0, half) + from_branch(k, 2 * j + 1, -1.0, half));
            } else {
                v = -2.0 * (from_branch(k, sys.count(), 1.0, 0.0) + from_branch(k, 1, -1.0, 0.0));
            }
            norm_err = std::max(norm_err, std::abs(v - (j == k ? 1.0 : 0.0)));
        }
    }
    const double dual = std::abs(pd.tau(0, 0) - pd.tau11_intro);
    r.passed = sym < 1e-9 && re < 1e-9 && lmin > 0.0 && norm_err < 1e-8 && dual < 1e-8;
    r.detail = "asym " + sci(sym) + " |Re| " + sci(re) + " min eig Im " + fixed(lmin, 6) + " A-norm " +
               sci(norm_err) + " tau11 dual " + sci(dual);
    return r;
}

CheckResult CheckSuite::theta_identities() {
    CheckResult r{5, "theta identities", false, ""};
    const Model& m = model();
    const ThetaContext& th = m.theta;
    const int g = th.genus();
    std::mt19937 rng(cfg_.seed);
    std::uniform_real_distribution<double> re(-1.0, 1.0), im(-2.0, 2.0);
    std::uniform_int_distribution<int> lat(-2, 2);
    double parity = 0.0, quasi = 0.0, grad = 0.0;
    for (int s = 0; s < 100; ++s) {
        VecC z(g);
        for (int i = 0; i < g; ++i) {
            z(i) = cplx(re(rng), im(rng) / std::sqrt(double(g)));
        }
        const cplx t = th.theta(z);
        parity = std::max(parity, std::abs(t - th.theta(-z)) / std::max(1.0, std::abs(t)));
        VecI mu(g), la(g);
        for (int i = 0; i < g; ++i) {
            mu(i) = lat(rng);
            la(i) = lat(rng);
        }
        const VecC lv = la.cast<cplx>();
        const VecC shifted = z + mu.cast<cplx>() + th.tau() * lv;
        const cplx expected = std::exp(-2.0 * kPi * I * (lv.transpose() * z)(0) -
                                       I * kPi * (lv.transpose() * th.tau() * lv)(0)) * t;
        const cplx got = th.theta(shifted);
        quasi = std::max(quasi, std::abs(got - expected) / std::max(1.0, std::abs(expected)));
        if (s < 20) {
            const VecC gr = th.gradient(z);
            for (int i = 0; i < g; ++i) {
                const double h = 1e-6;
                VecC zp = z, zm = z;
                zp(i) += h;
                zm(i) -= h;
                const cplx fd = (th.theta(zp) - th.theta(zm)) / (2.0 * h);
                grad = std::max(grad, std::abs(fd - gr(i)) / std::max(1.0, std::abs(gr(i))));
            }
        }
    }
    const cplx at_w0 = th.theta(m.abel.W0());
    VecI n = VecI::Zero(g), mm = VecI::Zero(g);
    n(0) = 1;
    mm(0) = -1;
    mm(g - 1) -= 1;
    const cplx odd = th.theta_char(n, mm, VecC::Zero(g));
    const double zero = std::max(std::abs(at_w0), std::abs(odd));
    r.passed = parity < 1e-10 && quasi < 1e-10 && grad < 1e-6 && zero < th.eps();
    r.detail = "parity " + sci(parity) + " quasi-periodicity " + sci(quasi) + " gradient " + sci(grad) +
               " Theta(W0) " + sci(zero);
    return r;
}

CheckResult CheckSuite::jump_relations() {
    CheckResult r{6, "jump relations", false, ""};
    const Model& m = model();
    const IntervalSystem& sys = m.sys;
    const GFunctions& gf = m.gf;
    const JumpData& jd = gf.jumps();
    const Spectrum& sp = m.spectrum;
    const int g = sys.genus();
    // boundary values as limits from off the axis, independent of the shore branch tracking
    auto limit = [](const std::function<cplx(cplx)>& f, double x, double side) {
        const double eta = 1e-3;
        return (8.0 * f(cplx(x, side * eta / 4)) - 6.0 * f(cplx(x, side * eta / 2)) + f(cplx(x, side * eta))) / 3.0;
    };
    auto gfun = [&](cplx z) { return gf.g_function(z); };
    auto dfun = [&](cplx z) { return gf.d_function(z); };
    auto hfun = [&](cplx z) { return gf.h_prefactor(z); };
    double eg = 0.0, ed = 0.0, eh = 0.0;
    for (int j = 1; j <= g + 1; ++j) {
        const double x = sys.arc(j).mid();
        const bool exterior = j == 1 || j == g + 1;
        eg = std::max(eg, std::abs(limit(gfun, x, 1) + limit(gfun, x, -1) - (exterior ? 1.0 : -1.0)));
        ed = std::max(ed, std::abs(limit(dfun, x, 1) + limit(dfun, x, -1) + std::log(weight_w(sys, x).real())));
        const cplx hp = limit(hfun, x, 1), hm = limit(hfun, x, -1);
        eh = std::max(eh, std::abs(hp - (exterior ? -I : I) * hm) / std::abs(hp));
    }
    for (int k = 1; k <= g; ++k) {
        const double x = sys.gap(k).mid();
        eg = std::max(eg, std::abs(limit(gfun, x, 1) - limit(gfun, x, -1) - I * jd.Omega(k - 1)));
        ed = std::max(ed, std::abs(limit(dfun, x, 1) - limit(dfun, x, -1) - I * jd.delta(k - 1)));
        const cplx hp = limit(hfun, x, 1), hm = limit(hfun, x, -1);
        eh = std::max(eh, std::abs(hp - (k == 1 ? 1.0 : -1.0) * hm) / std::abs(hp));
    }
    for (double x : {sys.left_end() - 1.0, sys.right_end() + 1.0}) {
        const cplx hp = limit(hfun, x, 1), hm = limit(hfun, x, -1);
        eh = std::max(eh, std::abs(hp - hm) / std::abs(hp));
    }

    // Psi at five random kappa away from the roots
    std::mt19937 rng(cfg_.seed + 6);
    std::uniform_real_distribution<double> kd(2.0, 20.0);
    double epsi = 0.0, edet = 0.0, einf = 0.0;
    const MatC s1 = (MatC(2, 2) << 0.0, I, I, 0.0).finished();
    // Psi is defined away from the roots; its 1/z coefficient scales like 1 / Theta(W - W0)
    double peak = 0.0;
    for (int i = 0; i < 256; ++i) {
        peak = std::max(peak, std::abs(sp.real_line_indicator(1.0 + sp.period() * i / 256)));
    }
    for (int t = 0; t < 5; ++t) {
        double kappa = kd(rng);
        while (std::abs(sp.real_line_indicator(kappa)) < 0.6 * peak) {
            kappa += 0.01;
        }
        auto check = [&](double x, const MatC& J) {
            const MatC P = sp.model_psi(x, kappa, Shore::above), M = sp.model_psi(x, kappa, Shore::below);
            epsi = std::max(epsi, (P - M * J).cwiseAbs().maxCoeff() / P.cwiseAbs().maxCoeff());
            edet = std::max(edet, std::abs(P.determinant() - 1.0));
        };
        for (int j = 1; j <= g + 1; ++j) {
            const double sgn = (j == 1 || j == g + 1) ? -1.0 : 1.0;
            check(sys.arc(j).mid(), sgn * s1);
        }
        for (int k = 1; k <= g; ++k) {
            const double ph = kappa * jd.Omega(k - 1) + jd.delta(k - 1);
            MatC J = MatC::Zero(2, 2);
            J(0, 0) = std::exp(I * ph);
            J(1, 1) = std::exp(-I * ph);
            check(sys.gap(k).mid(), J);
        }
        edet = std::max(edet, std::abs(sp.model_psi(cplx(5.0, 2.0), kappa).determinant() - 1.0));
        einf = std::max(einf, (sp.model_psi(cplx(0.0, 1e4), kappa) - MatC::Identity(2, 2)).cwiseAbs().maxCoeff());
    }
    r.passed = eg < 1e-6 && ed < 1e-6 && eh < 1e-6 && epsi < 1e-6 && edet < 1e-7 && einf < 1e-3;
    r.detail = "g " + sci(eg) + " d " + sci(ed) + " h " + sci(eh) + " Psi " + sci(epsi) + " det " + sci(edet) +
               " Psi(1e4 i) " + sci(einf);
    return r;
}

CheckResult CheckSuite::operator_theory() {
    CheckResult r{7, "operator theory", false, ""};
    const Oracle& orc = oracle();
    const ExactSpectrum& ex = exact();
    const IntervalSystem& sys = orc.system();
    const int upto = std::min<int>(23, ex.modes.size());
    bool positive = true;
    double min_gap = 1.0;
    for (int n = 0; n < upto; ++n) {
        positive = positive && ex.modes[n].lambda > 0.0;
        if (n + 1 < static_cast<int>(ex.modes.size())) {
            min_gap = std::min(min_gap, (ex.modes[n].lambda - ex.modes[n + 1].lambda) / ex.modes[n].lambda);
        }
    }
    int sign_ok = 0;
    for (int n = 0; n <= 10; ++n) {
        sign_ok += Oracle::sign_changes(ex.modes[n].f_hat) == n;
    }

    std::mt19937 rng(cfg_.seed + 7);
    const std::vector<Segment> arcs = inner_arcs(sys);
    double total = 0.0;
    for (const Segment& s : arcs) {
        total += s.hi - s.lo;
    }
    std::uniform_real_distribution<double> u(0.0, total);
    auto point = [&]() {
        double t = u(rng);
        for (const Segment& s : arcs) {
            if (t <= s.hi - s.lo) {
                return s.lo + t;
            }
            t -= s.hi - s.lo;
        }
        return arcs.back().hi;
    };
    auto tuple = [&](int k) {
        std::vector<double> v;
        while (static_cast<int>(v.size()) < k) {
            const double x = point();
            if (std::find(v.begin(), v.end(), x) == v.end()) {
                v.push_back(x);
            }
        }
        std::sort(v.begin(), v.end());
        return v;
    };
    int stp_pos = 0;
    double stp_min = 1.0;
    for (int t = 0; t < 50; ++t) {
        const int k = 2 + t % 3;
        const double d = orc.stp_determinant(tuple(k), tuple(k));
        stp_pos += d > 0.0;
        stp_min = std::min(stp_min, d);
    }

    const double hs = orc.hilbert_schmidt_norm();
    double trace = 0.0;
    for (const ExactMode& md : ex.modes) {
        trace += md.lambda * md.lambda;
    }
    const double hs_rel = std::abs(hs - 2.0 * trace) / hs;
    r.passed = positive && min_gap > 1e-6 && sign_ok == 11 && stp_pos == 50 && std::isfinite(hs) && hs_rel < 0.01;
    r.detail = "min rel gap " + sci(min_gap) + ", sign changes " + std::to_string(sign_ok) + "/11, sTP " +
               std::to_string(stp_pos) + "/50 (min " + sci(stp_min) + "), HS " + fixed(hs, 8) + " vs 2 trace rel " +
               sci(hs_rel);
    return r;
}

CheckResult CheckSuite::eigenfunction_asymptotics() {
    CheckResult r{8, "eigenfunction asymptotics", false, ""};
    const Model& m = model();
    const Oracle& orc = oracle();
    const ExactSpectrum& ex = exact();
    const std::vector<double>& ks = roots();
    std::vector<double> exact_k;
    for (const ExactMode& md : ex.modes) {
        exact_k.push_back(md.kappa);
    }
    const int s = optimal_index_shift(ks, exact_k);
    const std::vector<Segment> arcs = inner_arcs(m.sys);
    const std::vector<double> grid = margin_grid(arcs, 2000, 0.01);
    const std::vector<double> cheb = chebyshev_grid(arcs, 2000);
    double worst = 1.0;
    int counts_ok = 0, total = 0;
    for (int n = 8; n <= 15; ++n) {
        const int a = n - s;
        if (a < 0 || a >= static_cast<int>(ks.size())) {
            worst = 0.0;
            continue;
        }
        const auto fa = m.spectrum.asymptotic_singular_functions(ks[a], grid, 0.01);
        const std::vector<double> fo = orc.singular_f(n, grid);
        double ao = 0.0, aa = 0.0, oo = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double w = weight_w(m.sys, grid[i]).real();
            ao += fa[i].f * fo[i] / w;
            aa += fa[i].f * fa[i].f / w;
            oo += fo[i] * fo[i] / w;
        }
        worst = std::min(worst, std::abs(ao) / std::sqrt(aa * oo));
        const auto fc = m.spectrum.asymptotic_singular_functions(ks[a], cheb, 0.0);
        std::vector<double> fv;
        for (const auto& smp : fc) {
            fv.push_back(smp.f);
        }
        ++total;
        counts_ok += sign_changes_of(fv) == n && sign_changes_of(orc.singular_f(n, cheb)) == n;
    }
    r.passed = worst >= 0.95 && counts_ok == total && total == 8;
    r.detail = "min overlap " + fixed(worst, 5) + " on the 1% margin grid, sign counts " + std::to_string(counts_ok) +
               "/" + std::to_string(total) + " on full-arc Chebyshev points";
    return r;
}

double degenerate_tau11_limit(const std::vector<double>& b) {
    if (b.size() != 4) {
        throw ValidationError("genus-1 limit needs four endpoints");
    }
    // int over [lo, hi] of dx / |R0| with x = lo + s^2 on the left half and x = hi - s^2 on the right,
    // so that the square-root factor of each endpoint cancels exactly
    auto piece = [&](int p) {
        const double lo = b[p], hi = b[p + 1], half = std::sqrt(0.5 * (hi - lo));
        auto others = [&](double x, int skip) {
            double q = 1.0;
            for (int j = 0; j < 4; ++j) {
                if (j != skip) {
                    q *= std::abs(x - b[j]);
                }
            }
            return std::sqrt(q);
        };
        boost::math::quadrature::tanh_sinh<double> ts;
        const double left = ts.integrate([&](double s) { return 2.0 / others(lo + s * s, p); }, 0.0, half);
        const double right = ts.integrate([&](double s) { return 2.0 / others(hi - s * s, p + 1); }, 0.0, half);
        return left + right;
    };
    const double arc = piece(0);
    const double gap = piece(1);
    return arc / gap;
}

CheckResult CheckSuite::genus_degeneration() {
    CheckResult r{9, "genus degeneration", false, ""};
    const std::vector<double> base{-5.0, -3.3, -2.0, 0.1};
    const double a = 1.5;
    const double limit = degenerate_tau11_limit(base);
    std::vector<double> lnv, taus, errs;
    for (double eps : {1e-2, 1e-4, 1e-6}) {
        std::vector<double> ep = base;
        ep.push_back(a - eps);
        ep.push_back(a + eps);
        const PeriodData pd = build_period_data(IntervalSystem(ep));
        taus.push_back(pd.tau(0, 0).imag());
        errs.push_back(std::abs(taus.back() - limit) / limit);
        lnv.push_back(-std::log(eps));
    }
    const bool monotone = errs[1] < errs[0] && errs[2] < errs[1] &&
                          (taus[0] - limit) * (taus[1] - limit) > 0 && (taus[1] - limit) * (taus[2] - limit) > 0;
    // fit tau = T + A / (ln(1/eps) + B) through the three samples: the rate the logarithmic term predicts
    const double d1 = taus[0] - taus[1], d2 = taus[1] - taus[2];
    const double q = d1 / d2;
    const double B = (lnv[2] - q * lnv[0]) / (q - 1.0);
    const double A = d1 * (lnv[0] + B) * (lnv[1] + B) / (lnv[1] - lnv[0]);
    const double T = taus[2] - A / (lnv[2] + B);
    const double extrap = std::abs(T - limit) / limit;
    r.passed = monotone && errs[2] < 0.05;
    r.detail = "limit " + fixed(limit, 8) + " rel err " + fixed(errs[0], 4) + ", " + fixed(errs[1], 4) + ", " +
               fixed(errs[2], 4) + (monotone ? " monotone" : " not monotone") + "; 1/ln extrapolation " +
               fixed(T, 8) + " (rel " + sci(extrap) + ")";
    return r;
}

}  // namespace fhs
