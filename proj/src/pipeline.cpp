#include "fhs/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fhs {

Model::Model(std::vector<double> endpoints, double theta_eps, const quad::Config& cfg)
    : sys(std::move(endpoints)),
      pd(build_period_data(sys, cfg)),
      abel(sys, pd, cfg),
      theta(ThetaContext::from_period_matrix(pd.tau, theta_eps)),
      gf(abel, theta),
      spectrum(gf) {}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw ValidationError("line fit needs at least two paired samples");
    }
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    return f;
}

int optimal_index_shift(const std::vector<double>& approx, const std::vector<double>& exact, int max_shift) {
    int best = 0;
    double best_med = std::numeric_limits<double>::infinity();
    for (int a = 0; a <= max_shift; ++a) {
        for (int s : {a, -a}) {
            std::vector<double> d;
            for (int n = 0; n < static_cast<int>(approx.size()); ++n) {
                const int m = n + s;
                if (m >= 0 && m < static_cast<int>(exact.size()) && std::isfinite(approx[n]) &&
                    std::isfinite(exact[m])) {
                    d.push_back(std::abs(exact[m] - approx[n]));
                }
            }
            if (d.size() < 3) {
                continue;
            }
            std::nth_element(d.begin(), d.begin() + d.size() / 2, d.end());
            const double med = d[d.size() / 2];
            if (med < best_med) {
                best_med = med;
                best = s;
            }
            if (a == 0) {
                break;
            }
        }
    }
    return best;
}

}  // namespace fhs
