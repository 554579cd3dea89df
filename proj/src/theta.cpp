#include "fhs/theta.hpp"

#include <cmath>
#include <numbers>

namespace fhs {

namespace {

constexpr double kPi = std::numbers::pi;

// Calls f(n) for every n in Z^g with max-norm exactly s.
template <class F>
void for_each_shell(int g, int s, F&& f) {
    VecI n = VecI::Constant(g, -s);
    while (true) {
        if (n.cwiseAbs().maxCoeff() == s) {
            f(n);
        }
        int k = 0;
        while (k < g && n(k) == s) {
            n(k) = -s;
            ++k;
        }
        if (k == g) {
            break;
        }
        ++n(k);
    }
}

}  // namespace

ThetaContext::ThetaContext(MatC tau, double eps, int lattice_radius) : tau_(std::move(tau)), eps_(eps) {
    if (tau_.rows() != tau_.cols() || tau_.rows() < 1) {
        throw ValidationError("tau must be a non-empty square matrix");
    }
    if ((tau_ - tau_.transpose()).cwiseAbs().maxCoeff() > 1e-8 * (1.0 + tau_.cwiseAbs().maxCoeff())) {
        throw ValidationError("tau must be symmetric");
    }
    const MatR im = 0.5 * (tau_.imag() + tau_.imag().transpose());
    Eigen::SelfAdjointEigenSolver<MatR> es(im);
    lambda_min_ = es.eigenvalues().minCoeff();
    if (lambda_min_ <= 0.0) {
        throw ValidationError("imaginary part of tau must be positive definite");
    }
    im_inv_ = im.inverse();
    if (lattice_radius > 0) {
        radius_ = lattice_radius;
    } else {
        // exp(-pi lambda_min (N - rho)^2) < eps with rho the offset left after reduction.
        const double rho = 0.5 * std::sqrt(static_cast<double>(genus()));
        const double need = rho + std::sqrt(-std::log(eps_) / (kPi * lambda_min_));
        radius_ = std::max(2, static_cast<int>(std::ceil(need)) + 1);
    }
}

ThetaContext ThetaContext::from_period_matrix(const MatC& tau, double eps) {
    MatC t = 0.5 * (tau + tau.transpose());
    if (t.real().cwiseAbs().maxCoeff() < 1e-9) {
        t = I * MatC(t.imag().cast<cplx>());
    }
    return ThetaContext(t, eps);
}

void ThetaContext::reduced_sum(const VecC& z, cplx& value, VecC* grad) const {
    const int g = genus();
    value = 0.0;
    if (grad) {
        *grad = VecC::Zero(g);
    }
    for (int s = 0; s <= radius_; ++s) {
        double shell_max = 0.0;
        for_each_shell(g, s, [&](const VecI& n) {
            const VecC nc = n.cast<cplx>();
            const cplx expo = I * kPi * (nc.transpose() * tau_ * nc)(0, 0) + 2.0 * kPi * I * (nc.transpose() * z)(0, 0);
            const cplx term = std::exp(expo);
            value += term;
            if (grad) {
                *grad += (2.0 * kPi * I) * term * nc;
            }
            shell_max = std::max(shell_max, std::abs(term) * (1.0 + (grad ? 2.0 * kPi * s : 0.0)));
        });
        if (s >= 1 && shell_max < 0.1 * eps_) {
            break;
        }
    }
}

std::pair<cplx, VecC> ThetaContext::theta_and_gradient(const VecC& z) const {
    const VecR shift = im_inv_ * z.imag();
    VecI n0(genus());
    for (int k = 0; k < genus(); ++k) {
        n0(k) = static_cast<int>(std::floor(shift(k) + 0.5));
    }
    const VecC n0c = n0.cast<cplx>();
    const VecC zr = z - tau_ * n0c;
    cplx val;
    VecC grad;
    reduced_sum(zr, val, &grad);
    // Theta(zr + tau n0) = exp(-2 pi i n0.zr - i pi n0.tau.n0) Theta(zr)
    const cplx factor = std::exp(-2.0 * kPi * I * (n0c.transpose() * zr)(0, 0) - I * kPi * (n0c.transpose() * tau_ * n0c)(0, 0));
    return {factor * val, factor * (grad - 2.0 * kPi * I * val * n0c)};
}

cplx ThetaContext::theta(const VecC& z) const {
    const VecR shift = im_inv_ * z.imag();
    VecI n0(genus());
    for (int k = 0; k < genus(); ++k) {
        n0(k) = static_cast<int>(std::floor(shift(k) + 0.5));
    }
    const VecC n0c = n0.cast<cplx>();
    const VecC zr = z - tau_ * n0c;
    cplx val;
    reduced_sum(zr, val, nullptr);
    const cplx factor = std::exp(-2.0 * kPi * I * (n0c.transpose() * zr)(0, 0) - I * kPi * (n0c.transpose() * tau_ * n0c)(0, 0));
    if (!std::isfinite(val.real()) || !std::isfinite(val.imag())) {
        throw NumericalError("theta series produced a non-finite value");
    }
    return factor * val;
}

VecC ThetaContext::gradient(const VecC& z) const { return theta_and_gradient(z).second; }

cplx ThetaContext::theta_char(const VecI& n, const VecI& m, const VecC& z) const {
    const VecC nc = n.cast<cplx>();
    const VecC mc = m.cast<cplx>();
    const cplx pre = I * kPi * (nc.transpose() * tau_ * nc)(0, 0) / 4.0 - I * kPi * (nc.transpose() * z)(0, 0) +
                     I * kPi * static_cast<double>(n.dot(m)) / 2.0;
    return std::exp(pre) * theta(z - 0.5 * (mc + tau_ * nc));
}

VecC ThetaContext::reduce(const VecC& v, VecI* mu, VecI* lambda) const {
    const int g = genus();
    const VecR shift = im_inv_ * v.imag();
    VecI lam(g), m(g);
    for (int k = 0; k < g; ++k) {
        lam(k) = static_cast<int>(std::lround(shift(k)));
    }
    VecC r = v - tau_ * lam.cast<cplx>();
    for (int k = 0; k < g; ++k) {
        m(k) = static_cast<int>(std::lround(r(k).real()));
    }
    r -= m.cast<cplx>();
    if (mu) *mu = m;
    if (lambda) *lambda = lam;
    return r;
}

double ThetaContext::lattice_distance(const VecC& a, const VecC& b) const {
    return reduce(a - b).cwiseAbs().maxCoeff();
}

}  // namespace fhs
