#include "fhs/spectrum.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace fhs {

namespace {

constexpr double kPi = std::numbers::pi;

VecC unit(int g, int k) {
    VecC e = VecC::Zero(g);
    e(k - 1) = 1.0;
    return e;
}

double wrap_half(double x) { return x - std::round(x); }

}  // namespace

Spectrum::Spectrum(const GFunctions& gf) : gf_(gf) {
    const AbelMap& ab = gf_.abel();
    const PeriodData& pd = ab.periods();
    const int g = pd.genus;
    W0_ = ab.W0();
    K_ = ab.riemann_constants();
    tau1_ = pd.tau.col(0);
    C0_ = gf_.jumps().C0;
    // Gap jumps of Psi(z; W) are exp(i (2 pi (L^{-1} W)_j + pi s_j) sigma_3) with s = e_2 + ... + e_g.
    // Matching them with kappa Omega + delta fixes W = kappa tau_1 / (i pi) + L delta / (2 pi) + (e_1 - e_g) / 2.
    const MatR L = pd.L.cast<double>();
    offset_ = (L * gf_.jumps().delta / (2.0 * kPi)).cast<cplx>() + 0.5 * (unit(g, 1) - unit(g, g));
}

double Spectrum::period() const { return kPi / tau1_(0).imag(); }

VecC Spectrum::spectral_line(double kappa) const { return tau1_ * (kappa / (I * kPi)) + offset_; }

cplx Spectrum::theta_line(double kappa) const { return theta().theta(spectral_line(kappa) - W0_); }

double Spectrum::real_line_indicator(double kappa, double* imag_residual) const {
    const int g = genus();
    const VecC W = spectral_line(kappa);
    const VecC y = W + 0.5 * (unit(g, 1) + unit(g, g));
    const cplx phase = std::exp(I * kPi * tau1_(0) / 4.0 - I * kPi * y(0));
    const cplx v = phase * theta().theta(W - W0_);
    if (imag_residual != nullptr) {
        *imag_residual = std::abs(v.imag());
    }
    if (std::abs(v.imag()) > 1e-6) {
        throw NumericalError("real line indicator has an imaginary part; characteristic phase is wrong");
    }
    return v.real();
}

std::vector<double> Spectrum::find_eigenvalues(double kappa_min, double kappa_max) const {
    if (!(kappa_min >= 1.0)) {
        throw ValidationError("kappa_min must be at least 1");
    }
    if (!(kappa_max > kappa_min) || !std::isfinite(kappa_max)) {
        throw ValidationError("kappa_max must be finite and larger than kappa_min");
    }
    const int g = genus();
    int per_period = 16;
    for (int attempt = 0; attempt < 4; ++attempt, per_period *= 2) {
        const double target = period() / per_period;
        const int cells = static_cast<int>(std::ceil((kappa_max - kappa_min) / target));
        const double h = (kappa_max - kappa_min) / cells;
        std::vector<double> roots;
        double k0 = kappa_min;
        double f0 = real_line_indicator(k0);
        for (int i = 1; i <= cells; ++i) {
            const double k1 = kappa_min + i * h;
            const double f1 = real_line_indicator(k1);
            if (f0 == 0.0) {
                roots.push_back(k0);
            } else if (f0 * f1 < 0.0) {
                // bracketing solve to about 48 bits, independent of the scan grid
                std::uintmax_t iters = 100;
                const auto [lo, hi] = boost::math::tools::toms748_solve(
                    [this](double k) { return real_line_indicator(k); }, k0, k1, f0, f1,
                    boost::math::tools::eps_tolerance<double>(48), iters);
                roots.push_back(0.5 * (lo + hi));
            }
            k0 = k1;
            f0 = f1;
        }
        if (count_bound_violations(roots, kappa_min, kappa_max, period(), g, 5) == 0) {
            return roots;
        }
    }
    throw NumericalError("eigenvalue count violates the window bounds after grid refinement");
}

int Spectrum::count_bound_violations(const std::vector<double>& roots, double kappa_min, double kappa_max,
                                     double period, int g, int n_max) {
    int bad = 0;
    for (int N = 1; N <= n_max; ++N) {
        const double len = N * (g - 1) * period;
        for (double k0 = kappa_min; k0 + len <= kappa_max; k0 += 0.25 * period) {
            const auto lo = std::lower_bound(roots.begin(), roots.end(), k0);
            const auto hi = std::lower_bound(roots.begin(), roots.end(), k0 + len);
            const int m = static_cast<int>(hi - lo);
            if (m < (N - 1) * (g - 1) || m > (N + 1) * (g - 1)) {
                ++bad;
            }
        }
    }
    return bad;
}

DivisorPoint Spectrum::divisor_point(int l, double s) const {
    const IntervalSystem& sys = abel().system();
    const int g = genus();
    s = s - 2.0 * std::floor(0.5 * s);
    DivisorPoint dp;
    dp.cycle = l + 1;
    dp.s = s;
    dp.point.sheet = s <= 1.0 ? 1 : -1;
    if (dp.cycle < g) {
        const Segment gap = sys.gap(dp.cycle);
        dp.point.z = gap.mid() - gap.half() * std::cos(kPi * s);
    } else {
        const TailMap tm = tail_map(sys);
        const double t = 0.5 * (tm.t_left + tm.t_right) + 0.5 * (tm.t_right - tm.t_left) * std::cos(kPi * s);
        dp.point.z = t == 0.0 ? std::numeric_limits<double>::infinity() : tm.c + 1.0 / t;
    }
    return dp;
}

VecC Spectrum::divisor_image(const std::vector<double>& s) const {
    const IntervalSystem& sys = abel().system();
    const int g = genus();
    VecC acc = VecC::Zero(g);
    for (int l = 1; l <= g - 1; ++l) {
        const DivisorPoint dp = divisor_point(l, s[l - 1]);
        VecC u;
        if (dp.cycle < g) {
            u = abel().upper(dp.point.z.real());
        } else {
            const TailMap tm = tail_map(sys);
            const double t = 0.5 * (tm.t_left + tm.t_right) + 0.5 * (tm.t_right - tm.t_left) * std::cos(kPi * dp.s);
            u = abel().tail_value(t);
        }
        acc += static_cast<double>(dp.point.sheet) * u;
    }
    return acc;
}

DivisorSolution Spectrum::solve_divisor(double kappa, const DivisorSolution* seed) const {
    const int g = genus();
    const VecC target = spectral_line(kappa) - W0_;
    auto mismatch = [&](const std::vector<double>& s) {
        return theta().reduce(divisor_image(s) + K_ - target);
    };
    auto finish = [&](const std::vector<double>& s) {
        DivisorSolution sol;
        for (int l = 1; l <= g - 1; ++l) {
            sol.points.push_back(divisor_point(l, s[l - 1]));
        }
        sol.residual = mismatch(s).cwiseAbs().maxCoeff();
        sol.converged = sol.residual < 1e-7;
        return sol;
    };
    if (g == 2) {
        // One point on the unbounded cycle: bisection on the wrapped last component.
        auto G = [&](double s) { return wrap_half(mismatch({s})(1).real()); };
        const int n = 256;
        DivisorSolution best;
        best.residual = std::numeric_limits<double>::infinity();
        double s0 = 0.0, g0 = G(s0);
        for (int i = 1; i <= n; ++i) {
            const double s1 = 2.0 * i / n;
            const double g1 = G(s1);
            if (g0 * g1 <= 0.0 && std::abs(g0 - g1) < 0.5) {
                double lo = s0, hi = s1, glo = g0;
                for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const double gm = G(mid);
                    if ((gm < 0.0) == (glo < 0.0)) {
                        lo = mid;
                        glo = gm;
                    } else {
                        hi = mid;
                    }
                }
                DivisorSolution cand = finish({0.5 * (lo + hi)});
                if (cand.residual < best.residual) {
                    best = cand;
                }
            }
            s0 = s1;
            g0 = g1;
        }
        return best;
    }
    // g >= 3: damped Newton on components 2..g, seeded by continuation or a coarse scan.
    const int m = g - 1;
    std::vector<double> s(m, 0.5);
    auto eqs = [&](const std::vector<double>& x) {
        const VecC d = mismatch(x);
        VecR r(m);
        for (int k = 0; k < m; ++k) {
            r(k) = wrap_half(d(k + 1).real());
        }
        return r;
    };
    if (seed != nullptr && static_cast<int>(seed->points.size()) == m) {
        for (int l = 0; l < m; ++l) {
            s[l] = seed->points[l].s;
        }
    } else {
        const int per = 24;
        int total = 1;
        for (int l = 0; l < m; ++l) {
            total *= per;
        }
        double best = std::numeric_limits<double>::infinity();
        std::vector<double> x(m);
        for (int idx = 0; idx < total; ++idx) {
            int rem = idx;
            for (int l = 0; l < m; ++l) {
                x[l] = 2.0 * ((rem % per) + 0.5) / per;
                rem /= per;
            }
            const double v = mismatch(x).cwiseAbs().maxCoeff();
            if (v < best) {
                best = v;
                s = x;
            }
        }
    }
    for (int it = 0; it < 60; ++it) {
        const VecR r = eqs(s);
        if (r.cwiseAbs().maxCoeff() < 1e-13) {
            break;
        }
        MatR J(m, m);
        const double hd = 1e-6;
        for (int l = 0; l < m; ++l) {
            std::vector<double> sp = s, sm = s;
            sp[l] += hd;
            sm[l] -= hd;
            const VecR rp = eqs(sp), rm = eqs(sm);
            for (int k = 0; k < m; ++k) {
                J(k, l) = wrap_half(rp(k) - rm(k)) / (2.0 * hd);
            }
        }
        const VecR step = J.fullPivLu().solve(r);
        double damp = 1.0;
        const double r0 = r.norm();
        for (int k = 0; k < 20; ++k, damp *= 0.5) {
            std::vector<double> trial = s;
            for (int l = 0; l < m; ++l) {
                trial[l] -= damp * std::clamp(step(l), -0.25, 0.25);
            }
            if (eqs(trial).norm() < r0) {
                s = trial;
                break;
            }
        }
    }
    DivisorSolution sol = finish(s);
    if (sol.residual > 1e-5) {
        throw NumericalError("divisor solve stagnated");
    }
    return sol;
}

std::array<cplx, 2> Spectrum::norm_constants(double kappa) const {
    const VecC f = spectral_line(kappa) - W0_;
    const VecR uinf = abel().infinity();
    const VecC grad = theta().gradient(f);
    const cplx tg = (tau1_.transpose() * grad)(0, 0);
    std::array<cplx, 2> out;
    for (int j = 1; j <= 2; ++j) {
        const double sgn = j == 1 ? -1.0 : 1.0;
        const VecC shift = (2.0 * sgn) * uinf.cast<cplx>();
        // -W0 here matches the residue entries; with +W0 the value picks up a constant phase since 2 W0 is a period.
        out[j - 1] = theta().theta(f + shift) / theta().theta(-W0_ + shift) * C0_ / (I * tg);
    }
    return out;
}

VecC Spectrum::u_minus_inf(cplx z, Shore shore) const { return abel().relative_to_infinity(z, shore); }

std::array<cplx, 2> Spectrum::norm_constants_contour(double kappa, int nodes) const {
    // B_1 encircles the interior arcs: circle through the midpoints of gap(1) and gap(g).
    const IntervalSystem& sys = abel().system();
    const int g = genus();
    const double left = sys.gap(1).mid();
    const double right = sys.gap(g).mid();
    const double c = 0.5 * (left + right);
    const double r = 0.5 * (right - left);
    const VecC f = spectral_line(kappa) - W0_;
    const VecC grad = theta().gradient(f);
    const cplx tg = (tau1_.transpose() * grad)(0, 0);
    const cplx res = I * kPi / tg;
    const VecC uinf = abel().infinity().cast<cplx>();
    std::array<cplx, 2> acc{cplx(0.0), cplx(0.0)};
    for (int k = 0; k < nodes; ++k) {
        const double phi = 2.0 * kPi * (k + 0.5) / nodes;
        // clockwise
        const cplx z = c + r * std::exp(-I * phi);
        const cplx dz = -I * r * std::exp(-I * phi) * (2.0 * kPi / nodes);
        const VecC v = u_minus_inf(z, Shore::none);  // u - u(inf)
        const cplx h = gf_.h_prefactor(z);
        for (int j = 1; j <= 2; ++j) {
            // row j: first column uses u, second column uses -u; shift by (-1)^j u(inf) around u(inf)
            const VecC a1 = j == 1 ? VecC(v) : VecC(v + 2.0 * uinf);
            const VecC a2 = j == 1 ? VecC(-v - 2.0 * uinf) : VecC(-v);
            const double sg = j == 1 ? 1.0 : -1.0;
            const cplx e1 = sg * C0_ * res * theta().theta(a1 + f) * h / theta().theta(a1 - W0_);
            const cplx e2 = sg * C0_ * res * theta().theta(a2 + f) * h / theta().theta(a2 - W0_);
            acc[j - 1] += e1 * e2 * dz;
        }
    }
    for (auto& a : acc) {
        a *= -I / (kPi * kPi);
    }
    return acc;
}

SpectralAsymptotics Spectrum::asymptotics(double kappa_min, double kappa_max) const {
    SpectralAsymptotics out;
    out.slope = period();
    out.kappas = find_eigenvalues(kappa_min, kappa_max);
    const DivisorSolution* prev = nullptr;
    for (double k : out.kappas) {
        out.lambdas.push_back(std::exp(-k));
        DivisorSolution sol;
        try {
            sol = solve_divisor(k, prev);
        } catch (const NumericalError&) {
            sol.residual = std::numeric_limits<double>::quiet_NaN();
            sol.converged = false;
        }
        out.divisors.push_back(sol);
        prev = sol.converged ? &out.divisors.back() : nullptr;
        const auto N = norm_constants(k);
        out.norm_constants.push_back({N[0].real(), N[1].real()});
    }
    return out;
}

cplx Spectrum::upsilon_scale(int j, double kappa) const {
    const VecC f = spectral_line(kappa) - W0_;
    const auto N = norm_constants(kappa);
    const double Nj = N[j - 1].real();
    if (!(Nj > 0.0)) {
        throw NumericalError("norm constant is not positive");
    }
    // Residue constant of 1 / Theta(W(kappa) - W0) times C0 over pi: without it Upsilon is neither
    // Schwarz symmetric nor unit-normalized.
    const cplx tg = (tau1_.transpose() * theta().gradient(f))(0, 0);
    return I * C0_ / (tg * std::sqrt(Nj));
}

cplx Spectrum::upsilon_shape(int j, cplx z, double kappa, Shore shore, PsiDenominator den) const {
    const VecC f = spectral_line(kappa) - W0_;
    const VecC uinf = abel().infinity().cast<cplx>();
    const VecC v = u_minus_inf(z, shore);
    const VecC a = j == 1 ? VecC(v) : VecC(v + 2.0 * uinf);  // u + (-1)^j u(inf)
    const VecC d = den == PsiDenominator::minus_W0 ? VecC(a - W0_) : VecC(a + W0_);
    const cplx h = gf_.h_prefactor(z, shore);
    return theta().theta(a + f) * h / theta().theta(d);
}

cplx Spectrum::upsilon(int j, cplx z, double kappa, Shore shore, PsiDenominator den) const {
    return upsilon_scale(j, kappa) * upsilon_shape(j, z, kappa, shore, den);
}

std::vector<Spectrum::SingularSample> Spectrum::asymptotic_singular_functions(double kappa,
                                                                              const std::vector<double>& zs,
                                                                              double margin, int which,
                                                                              PsiDenominator den) const {
    const IntervalSystem& sys = abel().system();
    const int g = genus();
    int j = which;
    if (j == 0) {
        const auto N = norm_constants(kappa);
        j = std::abs(N[0]) >= std::abs(N[1]) ? 1 : 2;
    }
    const cplx scale = upsilon_scale(j, kappa);
    std::vector<SingularSample> out;
    out.reserve(zs.size());
    for (double x : zs) {
        const int p = sys.locate(x);
        if (p < 1 || p >= sys.count() || p % 2 == 0) {
            throw ValidationError("sample point is not inside a main arc");
        }
        const Segment arc = sys.segment(p);
        const double ex = margin * (arc.hi - arc.lo);
        if (x < arc.lo + ex || x > arc.hi - ex) {
            throw ValidationError("sample point inside the endpoint margin");
        }
        const cplx ups = scale * upsilon_shape(j, x, kappa, Shore::above, den);
        const cplx gp = gf_.g_function(x, Shore::above);
        const cplx dp = gf_.d_function(x, Shore::above);
        const cplx q = 2.0 * ups * std::exp(-I * (kappa * gp.imag() + dp.imag()));
        const double sw = std::sqrt(weight_w(sys, x).real());
        SingularSample s{x, std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
        const bool exterior = p == 1 || p == 2 * g + 1;
        if (exterior) {
            s.h = sw * q.real();
        } else {
            s.f = sw * q.imag();
        }
        out.push_back(s);
    }
    // Sign convention: first exterior sample positive.
    for (const auto& s : out) {
        if (!std::isnan(s.h) && s.h != 0.0) {
            if (s.h < 0.0) {
                for (auto& t : out) {
                    t.f = -t.f;
                    t.h = -t.h;
                }
            }
            break;
        }
    }
    return out;
}

MatC Spectrum::model_psi(cplx z, double kappa, Shore shore) const { return model_psi_W(z, spectral_line(kappa), shore); }

MatC Spectrum::model_psi_W(cplx z, const VecC& W, Shore shore) const {
    const cplx tw = theta().theta(W - W0_);
    if (std::abs(tw) < 1e-12) {
        throw ValidationError("model problem is not solvable at this kappa");
    }
    const VecC uinf = abel().infinity().cast<cplx>();
    const VecC v = u_minus_inf(z, shore);  // u - u(inf)
    const cplx h = gf_.h_prefactor(z, shore);
    auto entry = [&](const VecC& a) { return theta().theta(a - W0_ + W) * h / (tw * theta().theta(a - W0_)); };
    MatC psi(2, 2);
    psi(0, 0) = C0_ * entry(v);
    psi(0, 1) = C0_ * entry(-v - 2.0 * uinf);
    psi(1, 0) = -C0_ * entry(v + 2.0 * uinf);
    psi(1, 1) = -C0_ * entry(-v);
    return psi;
}

double Spectrum::max_excursion(int samples) const {
    const int g = genus();
    const int m = g - 1;
    const int per = std::max(8, static_cast<int>(std::ceil(std::pow(static_cast<double>(samples), 1.0 / m))));
    // Continuous first component of each term along its cycle, unwrapped sample to sample.
    std::vector<std::vector<double>> terms(m, std::vector<double>(per));
    for (int l = 1; l <= m; ++l) {
        double prev = 0.0;
        for (int i = 0; i < per; ++i) {
            const DivisorPoint dp = divisor_point(l, 2.0 * i / per);
            VecC u;
            if (dp.cycle < g) {
                u = abel().upper(dp.point.z.real());
            } else {
                const TailMap tm = tail_map(abel().system());
                const double t = 0.5 * (tm.t_left + tm.t_right) + 0.5 * (tm.t_right - tm.t_left) * std::cos(kPi * dp.s);
                u = abel().tail_value(t);
            }
            double val = dp.point.sheet * u(0).real();
            if (i > 0) {
                val -= std::round(val - prev);
            }
            terms[l - 1][i] = val;
            prev = val;
        }
    }
    double lo = 0.0, hi = 0.0;
    for (int l = 0; l < m; ++l) {
        lo += *std::min_element(terms[l].begin(), terms[l].end());
        hi += *std::max_element(terms[l].begin(), terms[l].end());
    }
    return 0.5 * (hi - lo);
}

}  // namespace fhs
