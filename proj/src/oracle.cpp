#include "mp_real.hpp"

#include "fhs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fhs {

namespace {

using mp::Real;
using MatM = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using VecM = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

// Nodes and weights of a rule, in any precision.
template <class T>
struct Rule {
    std::vector<T> x;
    std::vector<T> w;
};

template <class T>
T weight_w(const std::vector<T>& a, const T& x) {
    return sqrt((a.back() - x) * (x - a.front()));
}

// Gauss-Legendre on each inner arc [a_{2j-1}, a_{2j}], j = 2..g.
template <class T>
Rule<T> interior_rule(const std::vector<T>& a, int order) {
    std::vector<T> t, tw;
    quad::gauss_legendre<T>(order, t, tw);
    Rule<T> r;
    const int g = static_cast<int>(a.size()) / 2 - 1;
    for (int j = 2; j <= g; ++j) {
        const T lo = a[2 * j - 2], hi = a[2 * j - 1];
        const T m = (lo + hi) / 2, h = (hi - lo) / 2;
        for (int i = 0; i < order; ++i) {
            r.x.push_back(m + h * t[i]);
            r.w.push_back(h * tw[i]);
        }
    }
    return r;
}

// Rule for int_{I_e} F(z) dz / w(z). Near a_1 and a_{2g+2} put z - a_1 = (a_2 - a_1) s^2 and
// a_{2g+2} - z = (a_{2g+2} - a_{2g+1}) s^2 (the half-angle form of the cosine map), which removes
// the inverse square root; weights absorb dz / w.
template <class T>
Rule<T> exterior_rule(const std::vector<T>& a, int order) {
    std::vector<T> t, tw;
    quad::gauss_legendre<T>(order, t, tw);
    Rule<T> r;
    const T a1 = a.front(), a2 = a[1], b1 = a[a.size() - 2], b2 = a.back();
    for (int i = 0; i < order; ++i) {
        const T s = (t[i] + 1) / 2, ws = tw[i] / 2;
        const T z = a1 + (a2 - a1) * s * s;
        r.x.push_back(z);
        r.w.push_back(ws * 2 * sqrt(a2 - a1) / sqrt(b2 - z));
    }
    for (int i = order - 1; i >= 0; --i) {
        const T s = (t[i] + 1) / 2, ws = tw[i] / 2;
        const T z = b2 - (b2 - b1) * s * s;
        r.x.push_back(z);
        r.w.push_back(ws * 2 * sqrt(b2 - b1) / sqrt(z - a1));
    }
    return r;
}

template <class T>
std::vector<T> convert(const std::vector<double>& v) {
    return std::vector<T>(v.begin(), v.end());
}

template <class T>
T kernel(const std::vector<T>& a, const Rule<T>& ext, const T& x, const T& y) {
    const T pi = acos(T(-1));
    T acc = 0;
    for (std::size_t k = 0; k < ext.x.size(); ++k) {
        acc += ext.w[k] / ((ext.x[k] - x) * (ext.x[k] - y));
    }
    return sqrt(weight_w(a, x) * weight_w(a, y)) * acc / (4 * pi * pi);
}

struct Solve {
    VecM values;   // descending eigenvalues of M
    MatM vectors;  // matching columns
    double symmetry = 0.0;
};

Solve solve_at(const std::vector<Real>& a, int order) {
    const Rule<Real> in = interior_rule(a, order);
    const Rule<Real> ex = exterior_rule(a, order);
    const Real pi = acos(Real(-1));
    const int n = static_cast<int>(in.x.size());
    const int m = static_cast<int>(ex.x.size());
    // M = G G^T with G_ik = sqrt(wq_i w(x_i)) sqrt(c_k) / (2 pi (z_k - x_i)); symmetric and semidefinite by construction.
    MatM G(n, m);
    for (int i = 0; i < n; ++i) {
        const Real row = sqrt(in.w[i] * weight_w(a, in.x[i])) / (2 * pi);
        for (int k = 0; k < m; ++k) {
            G(i, k) = row * sqrt(ex.w[k]) / (ex.x[k] - in.x[i]);
        }
    }
    const MatM M = G * G.transpose();
    Solve s;
    s.symmetry = static_cast<double>((M - M.transpose()).cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<MatM> es(M);
    if (es.info() != Eigen::Success) {
        throw NumericalError("oracle eigensolver failed");
    }
    s.values = es.eigenvalues().reverse();
    s.vectors = es.eigenvectors().rowwise().reverse();
    return s;
}

// Barycentric weights for Gauss-Legendre nodes.
std::vector<double> barycentric_weights(const std::vector<double>& t, const std::vector<double>& tw) {
    std::vector<double> b(t.size());
    for (std::size_t j = 0; j < t.size(); ++j) {
        b[j] = ((j % 2 == 0) ? 1.0 : -1.0) * std::sqrt((1.0 - t[j] * t[j]) * tw[j]);
    }
    return b;
}

}  // namespace

struct Oracle::Impl {
    std::vector<Real> a;
    Rule<Real> in;
    std::vector<double> bary;
    mutable ExactSpectrum spectrum;
    mutable int cached_n_max = -1;
    mutable MatM vectors;  // extended-precision eigenvectors of the cached solve
    mutable VecM values;
};

Oracle::Oracle(const IntervalSystem& sys, int order) : sys_(sys), order_(order), impl_(std::make_unique<Impl>()) {
    if (order < 8) {
        throw ValidationError("oracle order must be at least 8");
    }
    impl_->a = convert<Real>(sys.endpoints());
    impl_->in = interior_rule(impl_->a, order);
    const Rule<double> in = interior_rule(sys.endpoints(), order);
    nodes_ = in.x;
    weights_ = in.w;
    std::vector<double> t, tw;
    quad::gauss_legendre<double>(order, t, tw);
    impl_->bary = barycentric_weights(t, tw);
}

Oracle::~Oracle() = default;

double Oracle::kernel_L(double x, double y) const {
    for (double v : {x, y}) {
        const int p = sys_.locate(v);
        const bool inner = (p >= 3 && p <= 2 * sys_.genus() - 1 && p % 2 == 1) ||
                           (p >= 4 && p <= 2 * sys_.genus() && p % 2 == 0 && v == sys_.a(p));
        if (!inner) {
            throw ValidationError("kernel_L arguments must lie in the inner arcs");
        }
    }
    static thread_local std::vector<double> key;
    static thread_local Rule<double> ext;
    if (key != sys_.endpoints() || static_cast<int>(ext.x.size()) != 2 * order_) {
        key = sys_.endpoints();
        ext = exterior_rule(sys_.endpoints(), order_);
    }
    return kernel(sys_.endpoints(), ext, x, y);
}

double Oracle::stp_determinant(const std::vector<double>& xs, const std::vector<double>& ys) const {
    const std::size_t n = xs.size();
    if (n == 0 || n > 6 || ys.size() != n) {
        throw ValidationError("stp_determinant needs two tuples of equal size 1..6");
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (!(xs[i] > xs[i - 1]) || !(ys[i] > ys[i - 1])) {
            throw ValidationError("stp_determinant tuples must be strictly increasing");
        }
    }
    for (double v : xs) {
        kernel_L(v, v);  // domain check
    }
    for (double v : ys) {
        kernel_L(v, v);
    }
    const Rule<Real> ext = exterior_rule(impl_->a, order_);
    MatM K(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            K(i, k) = kernel(impl_->a, ext, Real(xs[i]), Real(ys[k]));
        }
    }
    return static_cast<double>(K.partialPivLu().determinant());
}

const ExactSpectrum& Oracle::exact_spectrum(int n_max) const {
    if (n_max < 1) {
        throw ValidationError("n_max must be at least 1");
    }
    if (order_ < 4 * n_max) {
        throw ValidationError("oracle order must be at least 4 n_max");
    }
    if (impl_->cached_n_max >= 0) {
        return impl_->spectrum;
    }
    const Solve full = solve_at(impl_->a, order_);
    const Solve half = solve_at(impl_->a, order_ / 2);
    ExactSpectrum out;
    out.order = order_;
    out.symmetry_residual = full.symmetry;
    const Real top = full.values(0);
    const int n = static_cast<int>(full.values.size());
    bool trusted = true;
    for (int k = 0; k < n; ++k) {
        const Real ev = full.values(k);
        // Below the working-precision floor the eigenvalues are noise.
        if (ev <= top * Real(1e-60)) {
            if (ev < -top * Real(1e-60)) {
                throw NumericalError("negative oracle eigenvalue above the noise floor");
            }
            break;
        }
        ExactMode mode;
        mode.n = k;
        const Real lam = sqrt(ev);
        mode.lambda = static_cast<double>(lam);
        mode.kappa = static_cast<double>(-log(lam));
        if (k < static_cast<int>(half.values.size()) && half.values(k) > 0) {
            mode.change_on_halving = static_cast<double>(abs(sqrt(half.values(k)) - lam) / lam);
        } else {
            mode.change_on_halving = 1.0;
        }
        trusted = trusted && mode.change_on_halving < 1e-8;
        if (trusted) {
            out.trusted = k + 1;
        }
        // f_hat(x_i) = v_i / sqrt(wq_i); sign: first node positive.
        const Real sgn = full.vectors(0, k) < 0 ? Real(-1) : Real(1);
        mode.f_hat.resize(nodes_.size());
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            mode.f_hat[i] = static_cast<double>(sgn * full.vectors(i, k) / sqrt(impl_->in.w[i]));
        }
        out.modes.push_back(std::move(mode));
    }
    impl_->vectors = full.vectors;
    for (int k = 0; k < static_cast<int>(out.modes.size()); ++k) {
        if (impl_->vectors(0, k) < 0) {
            impl_->vectors.col(k) *= Real(-1);
        }
    }
    impl_->values = full.values;
    impl_->spectrum = std::move(out);
    impl_->cached_n_max = n_max;
    return impl_->spectrum;
}

std::vector<double> Oracle::singular_f(int n, const std::vector<double>& xs) const {
    if (impl_->cached_n_max < 0 || n < 0 || n >= static_cast<int>(impl_->spectrum.modes.size())) {
        throw ValidationError("requested oracle mode is not available");
    }
    const std::vector<double>& fh = impl_->spectrum.modes[n].f_hat;
    const std::vector<double>& b = impl_->bary;
    const int g = sys_.genus();
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) {
        const int p = sys_.locate(x);
        if (p < 3 || p > 2 * g - 1 || p % 2 == 0) {
            throw ValidationError("singular_f points must lie inside the inner arcs");
        }
        const int arc = (p + 1) / 2;  // 2..g
        const int off = (arc - 2) * order_;
        double num = 0.0, den = 0.0, exact = std::nan("");
        for (int j = 0; j < order_; ++j) {
            const double d = x - nodes_[off + j];
            if (d == 0.0) {
                exact = fh[off + j];
                break;
            }
            const double c = b[j] / d;
            num += c * fh[off + j];
            den += c;
        }
        const double fhat = std::isnan(exact) ? num / den : exact;
        out.push_back(std::sqrt(std::sqrt((sys_.right_end() - x) * (x - sys_.left_end()))) * fhat);
    }
    return out;
}

std::vector<double> Oracle::singular_h(int n, const std::vector<double>& xs) const {
    if (impl_->cached_n_max < 0 || n < 0 || n >= static_cast<int>(impl_->spectrum.modes.size())) {
        throw ValidationError("requested oracle mode is not available");
    }
    const auto& a = impl_->a;
    const auto& in = impl_->in;
    const Real pi = acos(Real(-1));
    const Real lam = sqrt(impl_->values(n));
    const int g = sys_.genus();
    std::vector<double> out;
    out.reserve(xs.size());
    for (double xd : xs) {
        const int p = sys_.locate(xd);
        if (p != 1 && p != 2 * g + 1) {
            throw ValidationError("singular_h points must lie inside the exterior arcs");
        }
        const Real x = xd;
        Real acc = 0;
        for (std::size_t i = 0; i < in.x.size(); ++i) {
            // wq_i f_hat_i = sqrt(wq_i) v_i
            acc += sqrt(in.w[i]) * impl_->vectors(i, n) * sqrt(weight_w(a, in.x[i])) / (in.x[i] - x);
        }
        // h = sqrt(w) h_hat and h_hat carries 1 / sqrt(w): they cancel.
        out.push_back(static_cast<double>(acc / (2 * pi * lam)));
    }
    return out;
}

double Oracle::hilbert_schmidt_norm() const {
    const auto& a = sys_.endpoints();
    const Rule<double> in = interior_rule(a, order_);
    const Rule<double> ex = exterior_rule(a, order_);
    double acc = 0.0;
    for (std::size_t i = 0; i < in.x.size(); ++i) {
        const double wx = weight_w(a, in.x[i]);
        for (std::size_t k = 0; k < ex.x.size(); ++k) {
            const double d = in.x[i] - ex.x[k];
            acc += in.w[i] * ex.w[k] * wx / (d * d);
        }
    }
    const double pi = std::numbers::pi;
    return acc / (2.0 * pi * pi);
}

int Oracle::sign_changes(const std::vector<double>& v) {
    int count = 0;
    double prev = 0.0;
    for (double x : v) {
        if (x == 0.0) {
            continue;
        }
        if (prev != 0.0 && (x < 0.0) != (prev < 0.0)) {
            ++count;
        }
        prev = x;
    }
    return count;
}

}  // namespace fhs
