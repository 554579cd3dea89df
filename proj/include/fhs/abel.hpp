#pragma once

#include "fhs/surface.hpp"
#include "fhs/theta.hpp"

#include <vector>

namespace fhs {

struct AbelData {
    VecR u_infinity;
    std::vector<VecC> branch_values;         // u(a_j), j = 1..2g+2, upper shore
    std::vector<VecC> branch_values_closed;  // closed forms in terms of tau
    VecC riemann_constants;                  // sum_{j=1}^{g} u(a_{2j+1})
    VecC riemann_constants_closed_twice;     // closed form of 2K
    VecC W0;
};

// Abel map u(z) = int_{a_1}^{z} omega on the slit plane, base point a_1, first sheet.
class AbelMap {
public:
    AbelMap(const IntervalSystem& sys, const PeriodData& pd, const quad::Config& cfg = {});

    const IntervalSystem& system() const { return sys_; }
    const PeriodData& periods() const { return pd_; }
    int genus() const { return pd_.genus; }

    // u(z); on [a_1, a_{2g+2}] a shore must be given. Lower half plane by Schwarz symmetry.
    VecC operator()(cplx z, Shore shore = Shore::none) const;
    // u on either sheet: sheet -1 negates.
    VecC at(const SurfacePoint& p, Shore shore = Shore::none) const;
    // u(z) - u(infinity), computed without cancellation for large |z|.
    VecC relative_to_infinity(cplx z, Shore shore = Shore::none) const;

    // Boundary value from above at real x.
    VecC upper(double x) const;
    // Boundary values at many ascending real points (shares partial sums).
    std::vector<VecC> upper_many(const std::vector<double>& xs) const;

    const VecR& infinity() const { return u_inf_; }
    // Check value: e_g/2 plus the integral from a_{2g+2} to +infinity.
    VecR infinity_from_right() const;

    AbelData data() const;
    VecC W0() const;
    // u on the unbounded gap at x = c + 1/t, upper shore; t = 0 gives u(infinity).
    VecC tail_value(double t) const;
    // Riemann constants from branch values, and 2K from the closed form.
    VecC riemann_constants() const;
    VecC riemann_constants_closed_twice() const;
    std::vector<VecC> branch_values_closed() const;

private:
    VecC segment_partial(int p, double x) const;
    VecC tail_partial(double theta_lo, double theta_hi) const;
    VecC line(cplx from, cplx to) const;
    VecC from_infinity(cplx z) const;
    bool far_field(cplx z) const;

    IntervalSystem sys_;
    PeriodData pd_;
    quad::Config cfg_;
    std::vector<VecC> cumulative_;  // u_+(a_p), p = 1..2g+2
    VecR u_inf_;
    double far_radius_;
};

}  // namespace fhs
