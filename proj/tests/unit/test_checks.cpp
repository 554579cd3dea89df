#include "fhs/checks.hpp"
#include "gsl_oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace fhs;

TEST_CASE("least-squares line") {
    const LineFit f = fit_line({1, 2, 3, 4}, {3, 5, 7, 9});
    CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(f.intercept == doctest::Approx(1.0).epsilon(1e-15));
    const LineFit n = fit_line({0, 1, 2}, {0, 1, 0});
    CHECK(n.slope == doctest::Approx(0.0).scale(1.0));
    CHECK(n.intercept == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("index shift") {
    const std::vector<double> exact{1, 2, 3, 4, 5, 6, 7};
    CHECK(optimal_index_shift({1, 2, 3, 4, 5}, exact) == 0);
    CHECK(optimal_index_shift({3, 4, 5, 6}, exact) == 2);
    CHECK(optimal_index_shift({0.9, 1.9, 3.1}, exact) == 0);
    // constant sequences tie at every shift; the smallest one wins
    CHECK(optimal_index_shift({1, 1, 1}, {1, 1, 1, 1}) == 0);
}

TEST_CASE("genus-one limit of tau_11") {
    const std::vector<double> a{-5.0, -3.3, -2.0, 0.1};
    // |R0| with the factors of [a_p, a_{p+1}] left out for the QAWS weight
    auto reduced = [&](int p) {
        return [&, p](double x) {
            double prod = 1.0;
            for (int j = 0; j < 4; ++j) {
                if (j != p && j != p + 1) {
                    prod *= std::abs(x - a[j]);
                }
            }
            return 1.0 / std::sqrt(prod);
        };
    };
    const double arc = oracle::qaws(reduced(0), a[0], a[1], -0.5, -0.5);
    const double gap = oracle::qaws(reduced(1), a[1], a[2], -0.5, -0.5);
    const double lim = degenerate_tau11_limit(a);
    CHECK(std::abs(lim - arc / gap) < 1e-12 * lim);
    // 30-digit reference: 0.868874272162516
    CHECK(lim == doctest::Approx(0.868874272162516).epsilon(1e-13));
    CHECK_THROWS_AS(degenerate_tau11_limit({-1.0, 0.0, 1.0}), ValidationError);
}

TEST_CASE("suite ids") {
    CHECK(CheckSuite::count() == 9);
}
