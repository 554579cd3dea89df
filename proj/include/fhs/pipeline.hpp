#pragma once

#include "fhs/spectrum.hpp"

#include <vector>

namespace fhs {

// Endpoints of the worked configuration used by the reports and the acceptance suite.
inline const std::vector<double> kReferenceEndpoints{-5.0, -3.3, -2.0, 0.1, 1.0, 2.0};

// Everything downstream of the endpoints, built once in dependency order.
struct Model {
    explicit Model(std::vector<double> endpoints, double theta_eps = 1e-12, const quad::Config& cfg = {});

    IntervalSystem sys;
    PeriodData pd;
    AbelMap abel;
    ThetaContext theta;
    GFunctions gf;
    Spectrum spectrum;
};

// Least-squares line y = slope x + intercept.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Integer s in [-max_shift, max_shift] minimizing the median of |exact[n + s] - approx[n]|
// over the indices where both exist. Ties go to the smaller |s|.
int optimal_index_shift(const std::vector<double>& approx, const std::vector<double>& exact, int max_shift = 3);

}  // namespace fhs
