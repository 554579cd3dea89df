#pragma once

#include "fhs/surface.hpp"

#include <memory>
#include <vector>

namespace fhs {

// One exact singular triple. n is the sign-change label: f has n sign changes on I_i.
struct ExactMode {
    int n = 0;
    double kappa = 0.0;   // -ln lambda
    double lambda = 0.0;  // sqrt of the eigenvalue of the discretized L
    double change_on_halving = 0.0;  // relative move of lambda when the order is halved
    std::vector<double> f_hat;       // real eigenfunction of L at the interior nodes, unit discrete L2 norm
};

struct ExactSpectrum {
    int order = 0;
    std::vector<ExactMode> modes;  // descending lambda
    int trusted = 0;               // leading modes stable under order halving to 1e-8
    double symmetry_residual = 0.0;
};

// Nystrom discretization of the kernel L on I_i in extended precision.
// I_e = [a_1, a_2] U [a_{2g+1}, a_{2g+2}], I_i = the inner main arcs.
class Oracle {
public:
    Oracle(const IntervalSystem& sys, int order = 256);
    ~Oracle();
    Oracle(const Oracle&) = delete;
    Oracle& operator=(const Oracle&) = delete;

    const IntervalSystem& system() const { return sys_; }
    int order() const { return order_; }

    // L(x, y) for x, y in the closed inner arcs, in double precision.
    double kernel_L(double x, double y) const;
    // det[L(x_l, y_k)] for ascending tuples of at most 6 interior points, assembled in extended precision.
    double stp_determinant(const std::vector<double>& xs, const std::vector<double>& ys) const;

    // Interior nodes and weights (order per inner arc), ascending.
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

    // Eigen-decomposition at this order; a second solve at order / 2 fixes the trusted count.
    // Requires order >= 4 n_max. Cached after the first call.
    const ExactSpectrum& exact_spectrum(int n_max) const;

    // Singular functions normalized in L2(., 1/w): f = sqrt(w) f_hat on I_i, h = sqrt(w) h_hat on I_e.
    // f is interpolated barycentrically between the Gauss nodes of each arc.
    std::vector<double> singular_f(int n, const std::vector<double>& xs) const;
    // h_hat = (1 / (2 pi lambda sqrt w)) int_{I_i} f_hat sqrt(w) / (y - x) dy, summed in extended precision.
    std::vector<double> singular_h(int n, const std::vector<double>& xs) const;

    // (1 / 2 pi^2) int_{I_i} int_{I_e} w(x) / (w(y) (x - y)^2): twice the trace of L.
    double hilbert_schmidt_norm() const;

    // Sign changes of f_hat over the nodes.
    static int sign_changes(const std::vector<double>& v);

private:
    struct Impl;
    IntervalSystem sys_;
    int order_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::unique_ptr<Impl> impl_;
};

}  // namespace fhs
