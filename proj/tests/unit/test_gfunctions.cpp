#include "fixtures.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace fhs;
using fhs::test::reference_model;

TEST_CASE("g function") {
    const Model& m = reference_model();
    const GFunctions& gf = m.gf;
    const IntervalSystem& sys = m.sys;
    const JumpData& jd = gf.jumps();
    CHECK(std::abs(gf.g_function(cplx(sys.a(1), 0.0), Shore::above) - 0.5) < 1e-14);
    for (int j = 1; j <= 3; ++j) {
        const double x = sys.arc(j).mid();
        const cplx s = gf.g_function(x, Shore::above) + gf.g_function(x, Shore::below);
        CHECK(std::abs(s - (j == 2 ? -1.0 : 1.0)) < 1e-10);
    }
    for (int k = 1; k <= 2; ++k) {
        const double x = sys.gap(k).mid();
        const cplx jump = gf.g_function(x, Shore::above) - gf.g_function(x, Shore::below);
        CHECK(std::abs(jump - I * jd.Omega(k - 1)) < 1e-10);
    }
    CHECK(jd.g_inf == doctest::Approx(0.1964707360145739).epsilon(1e-11));
    CHECK(std::abs(gf.g_function(cplx(0.0, 1e6)) - jd.g_inf) < 1e-5);
}

TEST_CASE("Omega and delta by three routes") {
    const Model& m = reference_model();
    const GFunctions& gf = m.gf;
    const VecR om = gf.omega_from_T();
    CHECK((om - gf.omega_from_arcs()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((om - gf.omega_from_tau()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(om(0) == doctest::Approx(1.383093004096134).epsilon(1e-11));
    CHECK(om(1) == doctest::Approx(-1.416506771328831).epsilon(1e-11));
    const VecR de = gf.delta_from_T();
    CHECK((de - gf.delta_from_log_moments()).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((de - gf.delta_from_abel()).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(gf.delta_residual() < 1e-12);
    CHECK(de(0) == doctest::Approx(0.3314619607417678).epsilon(1e-10));
    CHECK(de(1) == doctest::Approx(-0.6221033451443631).epsilon(1e-10));
}

TEST_CASE("d function") {
    const Model& m = reference_model();
    const GFunctions& gf = m.gf;
    const IntervalSystem& sys = m.sys;
    const JumpData& jd = gf.jumps();
    for (int j = 1; j <= 3; ++j) {
        const double x = sys.arc(j).mid();
        const cplx s = gf.d_function(x, Shore::above) + gf.d_function(x, Shore::below);
        CHECK(std::abs(s + std::log(weight_w(sys, x).real())) < 1e-9);
    }
    for (int k = 1; k <= 2; ++k) {
        const double x = sys.gap(k).mid();
        CHECK(std::abs(gf.d_function(x, Shore::above) - gf.d_function(x, Shore::below) - I * jd.delta(k - 1)) < 1e-9);
    }
    const cplx z(0.3, 1.1);
    CHECK(std::abs(gf.d_function(std::conj(z)) - std::conj(gf.d_function(z))) < 1e-10);
    CHECK(jd.d_inf.real() == doctest::Approx(-0.2630408291686329).epsilon(1e-10));
    CHECK(std::abs(gf.d_infinity_moment() - gf.d_infinity_extrapolated()) < 1e-8);
    CHECK(std::abs(gf.d_function(cplx(0.0, 1e5)) - jd.d_inf) < 1e-4);
}

TEST_CASE("h prefactor") {
    const Model& m = reference_model();
    const GFunctions& gf = m.gf;
    const IntervalSystem& sys = m.sys;
    CHECK(GFunctions::divisor_indices(2) == std::vector<int>{1});
    CHECK(GFunctions::divisor_indices(4) == std::vector<int>{1, 5, 7});
    CHECK(std::abs(gf.h_prefactor(cplx(sys.a(1), 0.0))) == 0.0);
    // one factor in the numerator against five in the denominator: z h(z) -> 1
    const cplx big(0.0, 1e6);
    CHECK(std::abs(big * gf.h_prefactor(big) - 1.0) < 1e-5);
    for (int j = 1; j <= 3; ++j) {
        const double x = sys.arc(j).mid();
        const cplx hp = gf.h_prefactor(x, Shore::above), hm = gf.h_prefactor(x, Shore::below);
        CHECK(std::abs(hp - (j == 2 ? I : -I) * hm) < 1e-12 * std::abs(hp));
    }
    CHECK_THROWS_AS(gf.h_prefactor(cplx(-1.0, 0.0)), ValidationError);
}

TEST_CASE("Fay identity and C0") {
    const Model& m = reference_model();
    const GFunctions& gf = m.gf;
    const cplx c0 = gf.jumps().C0;
    CHECK(std::abs(c0.real()) < 1e-12);
    CHECK(c0.imag() == doctest::Approx(2.294818415231865).epsilon(1e-10));
    CHECK(std::abs(gf.compute_C0() - c0) < 1e-14);
    CHECK(gf.fay_residual(cplx(5.0, 2.0)) < 1e-9);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> re(-8.0, 6.0), im(0.05, 4.0);
    for (int s = 0; s < 10; ++s) {
        const cplx z(re(rng), im(rng));
        CAPTURE(z);
        CHECK(gf.fay_residual(z) < 1e-8);
    }
}
