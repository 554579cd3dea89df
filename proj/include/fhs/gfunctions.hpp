#pragma once

#include "fhs/abel.hpp"
#include "fhs/theta.hpp"

namespace fhs {

struct JumpData {
    VecR Omega;  // (Omega_1, ..., Omega_{g-1}, Omega_0)
    VecR delta;  // (delta_1, ..., delta_{g-1}, delta_0)
    double g_inf = 0.0;
    cplx d_inf;
    cplx C0;  // purely imaginary for the divisor J
};

// Scalar functions g(z), d(z), h(z) and their jump constants.
class GFunctions {
public:
    GFunctions(const AbelMap& abel, const ThetaContext& theta);

    const AbelMap& abel() const { return abel_; }
    const ThetaContext& theta() const { return theta_; }
    const JumpData& jumps() const { return jd_; }

    // g(z) = 1/2 - 2 int_{a_1}^{z} omega_1.
    cplx g_function(cplx z, Shore shore = Shore::none) const;

    // Omega from the T-matrix formula and the two independent cross-checks.
    VecR omega_from_T() const;
    VecR omega_from_arcs() const;      // 4i sum_{k<=j} int_{gamma_k} omega_{1,+}
    VecR omega_from_tau() const;       // -2i L^{-1} tau_1
    // delta from the linear system, from the logarithmic moments, and from the Abel form.
    VecR delta_from_T() const;
    VecR delta_from_log_moments() const;
    VecR delta_from_abel() const;      // pi L^{-1} (2 u(inf) - u(a_{2g+2}))
    // Residual of the linear system T delta = rhs.
    double delta_residual() const;

    // d(z) off the real segment [a_1, a_{2g+2}], or a boundary value with a shore.
    cplx d_function(cplx z, Shore shore = Shore::none) const;
    // d(infinity) from the leading moment, and by Richardson extrapolation along z = iY.
    cplx d_infinity_moment() const;
    cplx d_infinity_extrapolated(double y0 = 1e2) const;

    // h(z) = (prod_{J}(z - a_j) / prod_{J'}(z - a_l))^{1/4}, J = {1, 5, 7, ..., 2g-1}.
    cplx h_prefactor(cplx z, Shore shore = Shore::none) const;
    static std::vector<int> divisor_indices(int g);

    // C0 = [A^{-1} grad Theta(W0)]_g; complex in general.
    cplx compute_C0() const;
    // int_{gamma_j} zeta^m ln w / R_+ for m = 0..g.
    VecC log_moments(int arc) const;
    // omega(z) . grad Theta(W0) - C0 h(z)^2, relative.
    double fay_residual(cplx z) const;

private:
    // Bracket of the Cauchy representation of d at z, optionally with the first g moments removed.
    cplx d_bracket(cplx z, bool subtract_moments) const;
    // Boundary value of d on the real axis.
    cplx d_boundary(double x, Shore shore) const;

    AbelMap abel_;
    ThetaContext theta_;
    JumpData jd_;
    VecC log_mom_total_;  // sum over arcs of the log moments, m = 0..g
    VecR gap_top_moment_; // int_{gap(k)} zeta^g / R, k = 1..g
};

}  // namespace fhs
