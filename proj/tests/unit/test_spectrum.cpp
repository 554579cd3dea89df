#include "fixtures.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace fhs;
using fhs::test::reference_model;

namespace {

const std::vector<double>& reference_roots() {
    static const std::vector<double> r = reference_model().spectrum.find_eigenvalues(1.0, 40.0);
    return r;
}

}  // namespace

TEST_CASE("roots of the theta-divisor condition") {
    // frozen from this implementation; the oracle comparison lives in the acceptance suite
    const std::vector<double> frozen{1.121058642523043, 2.687992314324865, 5.604005375657541, 7.182996727846113,
                                     10.08494225956466, 11.68000736484098, 14.56395162620934, 16.17894072401135,
                                     19.04113134743533, 20.67969769218097, 23.51659156805437, 25.18216679309823,
                                     27.99045142526395, 29.68622744894968, 32.46283595726636, 34.19175305156549,
                                     36.9338733518693, 38.69861369241189};
    const std::vector<double>& r = reference_roots();
    REQUIRE(r.size() == frozen.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        CHECK(r[i] == doctest::Approx(frozen[i]).epsilon(1e-13));
    }
    // roots come in pairs, one pair per two periods
    const double p = reference_model().spectrum.period();
    for (std::size_t i = 0; i + 2 < r.size(); ++i) {
        CHECK(std::abs(r[i + 2] - r[i] - 2.0 * p) < 0.05 * p);
    }
    CHECK(Spectrum::count_bound_violations(r, 1.0, 40.0, p, 2, 12) == 0);
}

TEST_CASE("real line indicator") {
    const Spectrum& sp = reference_model().spectrum;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        double im = 0.0;
        const double v = sp.real_line_indicator(1.0 + 0.04 * i, &im);
        worst = std::max(worst, std::abs(im) / std::max(1.0, std::abs(v)));
    }
    CHECK(worst < 1e-9);
    for (double k : reference_roots()) {
        CHECK(std::abs(sp.real_line_indicator(k)) < 1e-9);
        CHECK(std::abs(sp.theta_line(k)) > 0.0);
    }
}

TEST_CASE("count bound violations on synthetic root sets") {
    std::vector<double> even;
    for (int i = 0; i < 40; ++i) {
        even.push_back(0.5 + i);
    }
    CHECK(Spectrum::count_bound_violations(even, 0.0, 40.0, 1.0, 2, 10) == 0);
    std::vector<double> sparse{0.5, 10.5, 20.5, 30.5};
    CHECK(Spectrum::count_bound_violations(sparse, 0.0, 40.0, 1.0, 2, 10) > 0);
}

TEST_CASE("divisor at the roots") {
    const Spectrum& sp = reference_model().spectrum;
    const std::vector<double>& r = reference_roots();
    const DivisorSolution* prev = nullptr;
    DivisorSolution last;
    for (int i = 0; i < 10; ++i) {
        DivisorSolution d = sp.solve_divisor(r[i], prev);
        CAPTURE(i);
        CHECK(d.converged);
        CHECK(d.residual < 1e-7);
        REQUIRE(d.points.size() == 1);
        CHECK(d.points[0].s >= 0.0);
        CHECK(d.points[0].s < 2.0);
        last = d;
        prev = &last;
    }
    // the loop parameter maps back onto the divisor image
    const DivisorPoint p = sp.divisor_point(0, 0.37);
    CHECK(p.cycle == 1);
    CHECK(std::abs(p.point.z.imag()) < 1e-14);
    CHECK(sp.max_excursion(400) < 0.5);
}

TEST_CASE("norming constants") {
    const Spectrum& sp = reference_model().spectrum;
    const std::vector<double>& r = reference_roots();
    const auto n8 = sp.norm_constants(r[8]);
    CHECK(n8[0].real() == doctest::Approx(0.01911386484056556).epsilon(1e-10));
    CHECK(n8[1].real() == doctest::Approx(0.5713435306663645).epsilon(1e-10));
    for (int i : {2, 5, 8}) {
        const auto nc = sp.norm_constants(r[i]);
        const auto ct = sp.norm_constants_contour(r[i]);
        for (int j = 0; j < 2; ++j) {
            CAPTURE(i);
            CHECK(nc[j].real() > 0.0);
            CHECK(std::abs(nc[j].imag()) < 1e-9 * std::abs(nc[j]));
            CHECK(std::abs(ct[j] - nc[j]) < 1e-6 * std::abs(nc[j]));
        }
    }
}

TEST_CASE("residue entries agree up to sign") {
    const Spectrum& sp = reference_model().spectrum;
    const double k = reference_roots()[6];
    for (cplx z : {cplx(3.0, 0.5), cplx(-1.0, 0.2), cplx(-6.0, -1.0)}) {
        const cplx a = sp.upsilon(1, z, k), b = sp.upsilon(2, z, k);
        CHECK(std::min(std::abs(a - b), std::abs(a + b)) < 1e-8 * std::abs(a));
    }
}

TEST_CASE("model solution") {
    const Model& m = reference_model();
    const Spectrum& sp = m.spectrum;
    const double kappa = 4.1;
    for (cplx z : {cplx(5.0, 2.0), cplx(-1.0, 0.3), cplx(-7.0, -2.0)}) {
        CHECK(std::abs(sp.model_psi(z, kappa).determinant() - 1.0) < 1e-9);
        const MatC a = sp.model_psi(std::conj(z), kappa);
        const MatC b = sp.model_psi(z, kappa).conjugate();
        CHECK((a - b).cwiseAbs().maxCoeff() < 1e-9 * b.cwiseAbs().maxCoeff());
    }
    // Psi - I decays like 1/z
    const MatC p1 = sp.model_psi(cplx(0.0, 1e3), kappa) - MatC::Identity(2, 2);
    const MatC p2 = sp.model_psi(cplx(0.0, 2e3), kappa) - MatC::Identity(2, 2);
    CHECK(std::abs(p1.cwiseAbs().maxCoeff() / p2.cwiseAbs().maxCoeff() - 2.0) < 0.01);
    const MatC s1 = (MatC(2, 2) << 0.0, I, I, 0.0).finished();
    const double x = m.sys.arc(2).mid();
    const MatC up = sp.model_psi(x, kappa, Shore::above), dn = sp.model_psi(x, kappa, Shore::below);
    CHECK((up - dn * s1).cwiseAbs().maxCoeff() < 1e-8 * up.cwiseAbs().maxCoeff());
}

TEST_CASE("theta truncation does not move the roots") {
    const Model coarse(kReferenceEndpoints, 1e-8);
    const std::vector<double> r = coarse.spectrum.find_eigenvalues(1.0, 12.0);
    REQUIRE(r.size() == 6);
    for (std::size_t i = 0; i < r.size(); ++i) {
        CHECK(std::abs(r[i] - reference_roots()[i]) < 1e-6);
    }
}

TEST_CASE("asymptotic singular functions") {
    const Spectrum& sp = reference_model().spectrum;
    const double k = reference_roots()[4];
    const std::vector<double> zs{-4.5, -1.0, 1.5};
    const auto s = sp.asymptotic_singular_functions(k, zs);
    REQUIRE(s.size() == zs.size());
    // f lives on the inner arc, h on the outer arcs
    CHECK(std::isnan(s[0].f));
    CHECK(std::isfinite(s[0].h));
    CHECK(std::isfinite(s[1].f));
    CHECK(std::isnan(s[1].h));
    CHECK(std::isnan(s[2].f));
    CHECK(std::isfinite(s[2].h));
    CHECK_THROWS(sp.asymptotic_singular_functions(k, {-2.5}));
}
