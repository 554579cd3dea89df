#pragma once

#include "fhs/types.hpp"

namespace fhs {

// Riemann theta function for a symmetric g x g matrix tau with positive definite imaginary part.
class ThetaContext {
public:
    ThetaContext(MatC tau, double eps = 1e-12, int lattice_radius = -1);

    // Builds the context from a computed period matrix: symmetrizes and drops a real part below 1e-9.
    static ThetaContext from_period_matrix(const MatC& tau, double eps = 1e-12);

    int genus() const { return static_cast<int>(tau_.rows()); }
    const MatC& tau() const { return tau_; }
    int lattice_radius() const { return radius_; }
    double eps() const { return eps_; }
    double min_eigenvalue() const { return lambda_min_; }

    cplx theta(const VecC& z) const;
    VecC gradient(const VecC& z) const;
    // Value and gradient in one lattice pass.
    std::pair<cplx, VecC> theta_and_gradient(const VecC& z) const;

    // exp(i pi n.tau.n/4 - i pi n.z + i pi n.m/2) * Theta(z - (m + tau n)/2).
    cplx theta_char(const VecI& n, const VecI& m, const VecC& z) const;

    // Representative of v modulo Z^g + tau Z^g near the origin; integer shifts returned if requested.
    VecC reduce(const VecC& v, VecI* mu = nullptr, VecI* lambda = nullptr) const;
    // Max-norm of the reduced difference a - b.
    double lattice_distance(const VecC& a, const VecC& b) const;

private:
    // Sum over the lattice for an argument already reduced so that |Im tau^{-1} Im z| <= 1/2.
    void reduced_sum(const VecC& z, cplx& value, VecC* grad) const;

    MatC tau_;
    MatR im_inv_;
    double eps_;
    int radius_;
    double lambda_min_;
};

}  // namespace fhs
