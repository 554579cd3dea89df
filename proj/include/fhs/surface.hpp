#pragma once

#include "fhs/quadrature.hpp"
#include "fhs/types.hpp"

#include <json.hpp>

#include <functional>
#include <vector>

namespace fhs {

// Closed real segment [a_left, a_left+1] between two consecutive branch points (1-based index).
struct Segment {
    int left = 1;
    double lo = 0.0;
    double hi = 0.0;
    bool is_arc = true;
    double mid() const { return 0.5 * (lo + hi); }
    double half() const { return 0.5 * (hi - lo); }
};

// The 2g+2 ordered endpoints and the arc/gap decomposition they induce.
// Main arcs gamma_j = [a_{2j-1}, a_{2j}], j = 1..g+1. Finite gaps are indexed k = 1..g with
// gap(k) = [a_{2k}, a_{2k+1}]; gap(g) is the one the jump vectors list last (label c_0).
class IntervalSystem {
public:
    explicit IntervalSystem(std::vector<double> endpoints);

    int genus() const { return g_; }
    int count() const { return static_cast<int>(a_.size()); }
    double a(int j) const { return a_[j - 1]; }
    const std::vector<double>& endpoints() const { return a_; }

    Segment arc(int j) const;
    Segment gap(int k) const;
    Segment segment(int left) const;

    double left_end() const { return a_.front(); }
    double right_end() const { return a_.back(); }
    double center() const { return 0.5 * (a_.front() + a_.back()); }
    double half_span() const { return 0.5 * (a_.back() - a_.front()); }

    // Index p of the segment [a_p, a_{p+1}] containing x; 0 left of a_1, 2g+2 right of a_{2g+2}.
    int locate(double x) const;
    // True when x lies in the open interior of a main arc.
    bool inside_arc(double x) const;

private:
    std::vector<double> a_;
    int g_ = 0;
};

// R(z) = prod_j (z - a_j)^{1/2}, analytic off the main arcs and ~ z^{g+1} at infinity.
// On the interior of a main arc the shore must be given.
cplx radical(const IntervalSystem& sys, cplx z, Shore shore = Shore::none);
cplx radical(const IntervalSystem& sys, const SurfacePoint& p, Shore shore = Shore::none);

// w(z) = sqrt((a_{2g+2} - z)(z - a_1)), cut on the real line outside [a_1, a_{2g+2}].
cplx weight_w(const IntervalSystem& sys, cplx z);

// Weight turning dzeta / R(zeta) into d(theta) under zeta = m - r cos(theta) on [a_p, a_{p+1}].
cplx segment_jacobian(const IntervalSystem& sys, int p, double zeta, Shore shore = Shore::above);

// Integral over the segment [a_p, a_{p+1}] of f(zeta) dzeta / R(zeta) with the cosine substitution
// and order doubling. The shore matters only on main arcs.
VecC integrate_segment(const IntervalSystem& sys, int p, const std::function<VecC(double)>& f,
                       Shore shore, const quad::Config& cfg);

// Integral along a_{2g+2} -> +inf, -inf -> a_1 of F(zeta) dzeta / R(zeta) written in t = 1/(zeta - c),
// c the centre of [a_1, a_{2g+2}]. The caller supplies h(t) = F(c + 1/t) t^{g-1}.
VecC integrate_unbounded(const IntervalSystem& sys, const std::function<VecC(double)>& h, const quad::Config& cfg);

// Map between zeta and t for the unbounded gap; t_left = 1/(a_1 - c) < 0 < t_right = 1/(a_{2g+2} - c).
struct TailMap {
    double c = 0.0;
    double t_left = 0.0;
    double t_right = 0.0;
    double scale = 1.0;  // sqrt((c - a_1)(a_{2g+2} - c))
};
TailMap tail_map(const IntervalSystem& sys);
// dt / Rtilde(t) expressed as d(theta) under t = m_t - r_t cos(theta).
double tail_jacobian(const IntervalSystem& sys, double t);

// int_{a_{2g+2}}^{+inf} zeta^m / R for m = 0..g-1.
VecR right_tail_moments(const IntervalSystem& sys, const quad::Config& cfg = {});

// Spec-level moment integral: int zeta^k / R_+ over a main arc or finite gap.
cplx segment_integral(const IntervalSystem& sys, int k, const Segment& seg, Shore shore = Shore::above,
                      const quad::Config& cfg = {});

struct PeriodData {
    int genus = 0;
    std::vector<double> endpoints;
    MatR A;         // A(j, i) = oint_{A_j} zeta^i / R, rows are cycles
    MatR A_inv;
    MatR P_coeffs;  // row j: coefficients of P_j in increasing powers
    MatC tau;
    cplx tau11;        // from the B-cycle construction
    cplx tau11_intro;  // from the independent interval formula
    MatR T;            // rows: powers, columns: gaps c_1..c_{g-1}, c_0
    MatI L;
    MatC arc_moments;  // (g+1) x g: int_{gamma_l} zeta^i / R_+
    MatR gap_moments;  // g x g: int_{gap(k)} zeta^i / R
    VecR tail_moments; // int over the unbounded gap (a_{2g+2} -> inf -> a_1) of zeta^i / R
    int order = 0;
};

PeriodData build_period_data(const IntervalSystem& sys, const quad::Config& cfg = {});

// P_j(x) for j = 1..g.
double eval_P(const PeriodData& pd, int j, double x);
// A-normalized differentials omega_j = P_j / R at z, as a g-vector.
VecC omega(const IntervalSystem& sys, const PeriodData& pd, cplx z, Shore shore = Shore::none);

// Zero of P_j inside gap(k) (k = 1..g-1), or in the unbounded gap (gap = 0, x may be infinite).
struct DifferentialZero {
    int j = 0;
    int gap = 0;
    double x = 0.0;
};
std::vector<DifferentialZero> differential_zero_locations(const IntervalSystem& sys, const PeriodData& pd);

// JSON document {endpoints, genus, A, A_inv, P_coeffs, tau_re, tau_im, tau11, ...}.
nlohmann::json period_data_json(const PeriodData& pd);

// Matrix L with ones on the diagonal and -1 above the diagonal in the last column.
MatI jump_matrix_L(int g);

}  // namespace fhs
