#include "fhs/pipeline.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace fhs;

namespace {

constexpr double kPi = std::numbers::pi;

ThetaContext identity_context() { return ThetaContext(I * MatC::Identity(2, 2).eval(), 1e-14); }

VecC vec(cplx a, cplx b) {
    VecC v(2);
    v << a, b;
    return v;
}

// One-dimensional Jacobi series sum_n q^{n^2} c^n with q = e^{-pi}.
double jacobi(double sign) {
    double s = 0.0;
    for (int n = -20; n <= 20; ++n) {
        s += std::pow(sign, std::abs(n)) * std::exp(-kPi * n * n);
    }
    return s;
}

}  // namespace

TEST_CASE("theta on the identity period matrix") {
    const ThetaContext th = identity_context();
    const double t3 = jacobi(1.0);
    CHECK(t3 == doctest::Approx(1.0864348).epsilon(1e-7));
    CHECK(std::abs(th.theta(vec(0, 0)) - t3 * t3) < 1e-14);
    // theta constants at q = e^{-pi} from a 30-digit reference
    CHECK(std::abs(th.theta(vec(0, 0)) - 1.1803405990161) < 1e-12);
    CHECK(std::abs(th.theta(vec(0.5, 0)) - t3 * jacobi(-1.0)) < 1e-14);
    CHECK(std::abs(th.theta(vec(0.5, 0)) - 0.992544178491057) < 1e-14);
    const VecC z = vec(0.3, -0.7);
    CHECK(std::abs(th.theta(z + vec(1, 0)) - th.theta(z)) < 1e-15);
}

TEST_CASE("theta gradient") {
    const ThetaContext th = identity_context();
    CHECK(th.gradient(vec(0, 0)).cwiseAbs().maxCoeff() < 1e-14);
    const VecC z = vec(0.2, 0.1);
    const double h = 1e-6;
    const cplx fd = (th.theta(z + vec(h, 0)) - th.theta(z - vec(h, 0))) / (2 * h);
    CHECK(std::abs(fd - th.gradient(z)(0)) < 1e-6 * std::max(1.0, std::abs(fd)));
    const VecC w = vec(0.3, 0.4);
    CHECK((th.gradient(-w) + th.gradient(w)).cwiseAbs().maxCoeff() < 1e-13);
    const auto [value, grad] = th.theta_and_gradient(w);
    CHECK(std::abs(value - th.theta(w)) < 1e-15);
    CHECK((grad - th.gradient(w)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("theta with characteristics") {
    const ThetaContext th = identity_context();
    VecI n(2), m(2), zero = VecI::Zero(2);
    n << 1, 0;
    m << -1, -1;
    CHECK(std::abs(th.theta_char(n, m, vec(0, 0))) < 1e-14);
    const VecC z = vec(0.15, 0.25);
    CHECK(std::abs(th.theta_char(n, m, z) + th.theta_char(n, m, -z)) < 1e-14);
    CHECK(std::abs(th.theta_char(zero, zero, z) - th.theta(z)) < 1e-15);
    // even characteristic gives an even function
    VecI me(2);
    me << 0, 1;
    CHECK(std::abs(th.theta_char(n, me, z) - th.theta_char(n, me, -z)) < 1e-13);
}

TEST_CASE("theta properties on the computed period matrix") {
    const PeriodData pd = build_period_data(IntervalSystem(kReferenceEndpoints));
    const ThetaContext th = ThetaContext::from_period_matrix(pd.tau, 1e-12);
    CHECK(th.min_eigenvalue() > 0.05);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> re(-1, 1), im(-1.4, 1.4);
    std::uniform_int_distribution<int> lat(-2, 2);
    for (int s = 0; s < 100; ++s) {
        const VecC z = vec(cplx(re(rng), im(rng)), cplx(re(rng), im(rng)));
        const cplx t = th.theta(z);
        CHECK(std::abs(t - th.theta(-z)) < 1e-12 * std::max(1.0, std::abs(t)));
        VecC lv(2), mu(2);
        lv << lat(rng), lat(rng);
        mu << lat(rng), lat(rng);
        const cplx factor = std::exp(-2.0 * kPi * I * (lv.transpose() * z)(0) - I * kPi * (lv.transpose() * th.tau() * lv)(0));
        const cplx shifted = th.theta(z + mu + th.tau() * lv);
        CHECK(std::abs(shifted - factor * t) < 1e-10 * std::max(1.0, std::abs(factor * t)));
        // real arguments give real values for purely imaginary tau
        const VecC x = vec(re(rng), re(rng));
        CHECK(std::abs(th.theta(x).imag()) < 1e-12);
    }
    for (int s = 0; s < 20; ++s) {
        const VecC z = vec(cplx(re(rng), im(rng)), cplx(re(rng), im(rng)));
        const VecC g = th.gradient(z);
        for (int i = 0; i < 2; ++i) {
            VecC e = VecC::Zero(2);
            e(i) = 1e-6;
            const cplx fd = (th.theta(z + e) - th.theta(z - e)) / 2e-6;
            CHECK(std::abs(fd - g(i)) < 1e-6 * std::max(1.0, std::abs(g(i))));
        }
    }
}

TEST_CASE("lattice reduction") {
    const PeriodData pd = build_period_data(IntervalSystem(kReferenceEndpoints));
    const ThetaContext th = ThetaContext::from_period_matrix(pd.tau);
    VecC v = vec(cplx(0.2, 0.1), cplx(-0.3, 0.05));
    VecC w = v;
    w += vec(3, -2) + th.tau() * vec(1, -2);
    CHECK(th.lattice_distance(v, w) < 1e-12);
    VecI mu, la;
    const VecC r = th.reduce(w, &mu, &la);
    CHECK(th.lattice_distance(r, v) < 1e-12);
}

TEST_CASE("theta context rejects bad input") {
    MatC bad = MatC::Zero(2, 2);
    bad(0, 0) = I;
    bad(1, 1) = -I;
    CHECK_THROWS(ThetaContext(bad));
}
