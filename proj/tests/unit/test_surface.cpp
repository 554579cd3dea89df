#include "fhs/pipeline.hpp"
#include "gsl_oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace fhs;

namespace {

const IntervalSystem& reference() {
    static const IntervalSystem sys(kReferenceEndpoints);
    return sys;
}

const PeriodData& reference_periods() {
    static const PeriodData pd = build_period_data(reference());
    return pd;
}

// |R| with the two factors of the segment [a_p, a_{p+1}] left out, for the QAWS weight.
double reduced_abs_R(const IntervalSystem& sys, int p, double x) {
    double prod = 1.0;
    for (int j = 1; j <= sys.count(); ++j) {
        if (j != p && j != p + 1) {
            prod *= std::abs(x - sys.a(j));
        }
    }
    return std::sqrt(prod);
}

}  // namespace

TEST_CASE("interval system validates its endpoints") {
    CHECK_THROWS_WITH_AS(IntervalSystem({-5, -2, -3.3, 0.1, 1, 2}), "endpoints must be strictly increasing",
                         ValidationError);
    CHECK_THROWS_AS(IntervalSystem({-1, 0, 1, 2}), ValidationError);
    CHECK_THROWS_AS(IntervalSystem({-1, 0, 1, 2, 3}), ValidationError);
    const IntervalSystem& sys = reference();
    CHECK(sys.genus() == 2);
    CHECK(sys.arc(2).lo == -2.0);
    CHECK(sys.arc(2).hi == doctest::Approx(0.1));
    CHECK(sys.gap(1).lo == -3.3);
    CHECK(sys.gap(2).hi == 1.0);
    CHECK(sys.inside_arc(-1.0));
    CHECK_FALSE(sys.inside_arc(-2.5));
}

TEST_CASE("radical branch and symmetry") {
    const IntervalSystem& sys = reference();
    const cplx r3 = radical(sys, cplx(3.0, 0.0));
    CHECK(r3.real() == doctest::Approx(std::sqrt(8 * 6.3 * 5 * 2.9 * 2 * 1)).epsilon(1e-14));
    CHECK(std::abs(r3.imag()) < 1e-14);
    CHECK(std::abs(radical(sys, cplx(-5.0, 0.0))) == 0.0);
    const cplx z(0.5, 0.5);
    CHECK(std::abs(radical(sys, std::conj(z)) - std::conj(radical(sys, z))) < 1e-13);
    // purely imaginary boundary values on a main arc, opposite on the two shores
    const cplx up = radical(sys, cplx(-1.0, 0.0), Shore::above);
    const cplx dn = radical(sys, cplx(-1.0, 0.0), Shore::below);
    CHECK(std::abs(up.real()) < 1e-14);
    CHECK(std::abs(up + dn) < 1e-13);
    CHECK_THROWS_AS(radical(sys, cplx(-1.0, 0.0)), ValidationError);
    // growth like z^{g+1}
    const cplx big(1e4, 3e3);
    CHECK(std::abs(radical(sys, big) / std::pow(big, 3) - 1.0) < 1e-3);
    CHECK(std::abs(radical(sys, SurfacePoint{cplx(3.0, 0.0), -1}) + r3) < 1e-14);
}

TEST_CASE("weight w") {
    const IntervalSystem& sys = reference();
    CHECK(weight_w(sys, cplx(-1.5, 0.0)).real() == doctest::Approx(3.5).epsilon(1e-15));
    CHECK(std::abs(weight_w(sys, cplx(-5.0, 0.0))) == 0.0);
    CHECK(weight_w(sys, cplx(-2.0, 0.0)).real() == doctest::Approx(3.4641016151377544).epsilon(1e-14));
}

TEST_CASE("chebyshev rule integrates the inverse square root weight") {
    // g = 1 sanity case: int_{-1}^{1} dz / sqrt(1 - z^2) = pi
    double mag = 0.0;
    const VecC v = quad::angle_rule([](double) { return VecC::Ones(1); }, 1.0, 1.0, 64, &mag);
    CHECK(std::abs(v(0).real() - std::numbers::pi) < 1e-12);
}

TEST_CASE("gap moments agree with a QAWS oracle") {
    const IntervalSystem& sys = reference();
    const PeriodData& pd = reference_periods();
    for (int k = 1; k <= sys.genus(); ++k) {
        const Segment c = sys.gap(k);
        const double sign = radical(sys, cplx(c.mid(), 0.0)).real() > 0 ? 1.0 : -1.0;
        for (int i = 0; i < sys.genus(); ++i) {
            const double ref = oracle::qaws(
                [&](double x) { return sign * std::pow(x, i) / reduced_abs_R(sys, 2 * k, x); }, c.lo, c.hi, -0.5, -0.5);
            CHECK(std::abs(pd.gap_moments(k - 1, i) - ref) < 1e-9);
            CHECK(std::abs(segment_integral(sys, i, c).real() - ref) < 1e-9);
        }
    }
    // main arcs give purely imaginary moments
    for (int j = 1; j <= sys.genus() + 1; ++j) {
        CHECK(std::abs(segment_integral(sys, 0, sys.arc(j)).real()) < 1e-12);
    }
}

TEST_CASE("period matrix of the reference configuration") {
    const PeriodData& pd = reference_periods();
    // A-normalization: the moments contract with the P_j coefficients to the identity
    const MatR N = pd.A * pd.A_inv;
    CHECK((N - MatR::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((pd.tau - pd.tau.transpose()).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(pd.tau.real().cwiseAbs().maxCoeff() < 1e-9);
    Eigen::SelfAdjointEigenSolver<MatR> es(pd.tau.imag());
    CHECK(es.eigenvalues().minCoeff() > 0.0);
    CHECK(std::abs(pd.tau(0, 0) - pd.tau11_intro) < 1e-8);
    // frozen from this implementation, cross-checked by the QAWS moments above
    CHECK(pd.tau(0, 0).imag() == doctest::Approx(1.399799887712483).epsilon(1e-12));
    CHECK(pd.tau(0, 1).imag() == doctest::Approx(-0.708253385664416).epsilon(1e-12));
    CHECK(pd.tau(1, 1).imag() == doctest::Approx(0.9479257246196473).epsilon(1e-12));
}

TEST_CASE("periods are stable under doubling the quadrature order") {
    quad::Config fine;
    fine.order = 256;
    fine.rel_tol = 1e-13;
    const PeriodData a = reference_periods();
    const PeriodData b = build_period_data(reference(), fine);
    CHECK((a.tau - b.tau).cwiseAbs().maxCoeff() < 1e-9 * a.tau.cwiseAbs().maxCoeff());
    CHECK((a.A - b.A).cwiseAbs().maxCoeff() < 1e-9 * a.A.cwiseAbs().maxCoeff());
}

TEST_CASE("symmetric configuration") {
    const PeriodData pd = build_period_data(IntervalSystem({-3, -2, -1, 1, 2, 3}));
    CHECK(std::abs(pd.tau(0, 0) - pd.tau11_intro) < 1e-8);
    CHECK(pd.tau(0, 0).imag() == doctest::Approx(1.382350826114734).epsilon(1e-12));
    // the reflection a_j -> -a_{2g+3-j} fixes this configuration, hence every period
    const PeriodData pr = build_period_data(IntervalSystem({-3, -2, -1, 1, 2, 3}));
    CHECK((pd.tau - pr.tau).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("zeros of the differentials") {
    const IntervalSystem& sys = reference();
    const PeriodData& pd = reference_periods();
    const auto zeros = differential_zero_locations(sys, pd);
    REQUIRE(zeros.size() == 2);
    for (const DifferentialZero& z : zeros) {
        if (z.gap == 0) {
            CHECK(z.j == 1);
            CHECK((z.x > sys.right_end() || z.x < sys.left_end() || std::isinf(z.x)));
        } else {
            CHECK(z.j == 2);
            CHECK(z.gap == 1);
            CHECK(z.x > sys.gap(1).lo);
            CHECK(z.x < sys.gap(1).hi);
            CHECK(std::abs(eval_P(pd, z.j, z.x)) < 1e-10);
            // grid scan oracle
            int flips = 0;
            double root = 0.0;
            const Segment c = sys.gap(1);
            double prev = eval_P(pd, 2, c.lo);
            for (int i = 1; i <= 10000; ++i) {
                const double x = c.lo + (c.hi - c.lo) * i / 10000;
                const double v = eval_P(pd, 2, x);
                if (prev * v < 0) {
                    ++flips;
                    root = x;
                }
                prev = v;
            }
            CHECK(flips == 1);
            CHECK(std::abs(root - z.x) < (c.hi - c.lo) / 10000 + 1e-12);
        }
    }
}

TEST_CASE("sign structure of omega_1 on the arcs") {
    const IntervalSystem& sys = reference();
    const PeriodData& pd = reference_periods();
    for (int j = 1; j <= sys.genus() + 1; ++j) {
        const double im = omega(sys, pd, cplx(sys.arc(j).mid(), 0.0), Shore::above)(0).imag();
        if (j == 1 || j == sys.genus() + 1) {
            CHECK(im < 0.0);
        } else {
            CHECK(im > 0.0);
        }
    }
}

TEST_CASE("nearly touching arcs converge with the graded rule") {
    for (double eps : {1e-4, 1e-6}) {
        const PeriodData pd = build_period_data(IntervalSystem({-5, -3.3, -2, 0.1, 1.5 - eps, 1.5 + eps}));
        CHECK(std::abs(pd.tau(0, 0) - pd.tau11_intro) < 1e-8);
        CHECK(pd.tau(0, 0).imag() > 0.0);
    }
}

TEST_CASE("period data serializes with full precision") {
    const nlohmann::json j = period_data_json(reference_periods());
    CHECK(j["genus"] == 2);
    CHECK(j["tau_im"][0][0].get<double>() == reference_periods().tau(0, 0).imag());
    CHECK(j.contains("A_inv"));
    CHECK(j.contains("P_coeffs"));
}
