#pragma once

#include "fhs/gfunctions.hpp"

#include <array>
#include <optional>
#include <vector>

namespace fhs {

// Point p_l of the divisor on cycle A_{l+1}, with its loop parameter s in [0, 2):
// s in [0, 1] runs along the cycle on sheet +1, s in [1, 2] returns on sheet -1.
struct DivisorPoint {
    int cycle = 0;
    double s = 0.0;
    SurfacePoint point;
};

struct DivisorSolution {
    std::vector<DivisorPoint> points;
    double residual = 0.0;  // lattice distance of sum u(p_l) + K from W(kappa) - W0
    bool converged = false;
};

struct SpectralAsymptotics {
    std::vector<double> kappas;
    std::vector<double> lambdas;
    std::vector<DivisorSolution> divisors;
    std::vector<std::array<double, 2>> norm_constants;
    double slope = 0.0;  // pi / Im tau_11
};

// Which theta shift sits in the denominator of the residue row entries.
enum class PsiDenominator { minus_W0, plus_W0 };

// Approximate singular values and functions from the theta-divisor condition.
class Spectrum {
public:
    explicit Spectrum(const GFunctions& gf);

    const GFunctions& gfunctions() const { return gf_; }
    const AbelMap& abel() const { return gf_.abel(); }
    const ThetaContext& theta() const { return gf_.theta(); }
    int genus() const { return gf_.abel().genus(); }

    // Spacing of the spectral line in kappa: one unit of W_1 per pi / Im tau_11.
    double period() const;
    // W(kappa) = kappa tau_1 / (i pi) + offset; the offset is fixed by matching the gap jumps of Psi.
    VecC spectral_line(double kappa) const;
    const VecC& line_offset() const { return offset_; }

    cplx theta_line(double kappa) const;
    // Theta(W - W0) times the phase of the characteristic (n = e_1, m = -(e_1 + e_g)); real on real kappa.
    double real_line_indicator(double kappa, double* imag_residual = nullptr) const;

    std::vector<double> find_eigenvalues(double kappa_min, double kappa_max) const;
    // Windows of length N (g-1) period, N = 1..n_max, that hold fewer than (N-1)(g-1)
    // or more than (N+1)(g-1) roots.
    static int count_bound_violations(const std::vector<double>& roots, double kappa_min, double kappa_max,
                                      double period, int g, int n_max);

    // Points of the divisor, each on its loop parameter.
    VecC divisor_image(const std::vector<double>& s) const;
    DivisorPoint divisor_point(int l, double s) const;
    DivisorSolution solve_divisor(double kappa, const DivisorSolution* seed = nullptr) const;

    // N_1, N_2 in closed form at f = W(kappa_n) - W0.
    std::array<cplx, 2> norm_constants(double kappa) const;
    // The same from -i/pi^2 times the B_1 contour integral of the residue entries.
    std::array<cplx, 2> norm_constants_contour(double kappa, int nodes = 512) const;

    SpectralAsymptotics asymptotics(double kappa_min, double kappa_max) const;

    // Upsilon_j(z) = i C0 Theta(u + (-1)^j u(inf) + f) h / (tau_1 . grad Theta(f) sqrt(N_j) Theta(u + (-1)^j u(inf) - W0)),
    // the residue of Psi_j1 over pi sqrt(N_j); on the upper shore (or off the axis) at the root kappa.
    cplx upsilon(int j, cplx z, double kappa, Shore shore = Shore::above,
                 PsiDenominator den = PsiDenominator::minus_W0) const;
    // f_n on I_i and h_n on I_e at interior real points; the other entry is NaN.
    struct SingularSample {
        double z = 0.0;
        double f = 0.0;
        double h = 0.0;
    };
    std::vector<SingularSample> asymptotic_singular_functions(double kappa, const std::vector<double>& zs,
                                                              double margin = 0.01, int which = 0,
                                                              PsiDenominator den = PsiDenominator::minus_W0) const;

    // Model solution Psi(z; W(kappa)); on the real segment a shore is required.
    MatC model_psi(cplx z, double kappa, Shore shore = Shore::none) const;
    MatC model_psi_W(cplx z, const VecC& W, Shore shore = Shore::none) const;

    // Largest distance of X_1 on the divisor surface from the nearest integer, by a sweep.
    double max_excursion(int samples) const;

private:
    VecC u_minus_inf(cplx z, Shore shore) const;  // u(z) - u(infinity)
    cplx upsilon_scale(int j, double kappa) const;
    cplx upsilon_shape(int j, cplx z, double kappa, Shore shore, PsiDenominator den) const;

    GFunctions gf_;
    VecC W0_;
    VecC K_;
    VecC offset_;
    VecC tau1_;
    cplx C0_;
};

}  // namespace fhs
