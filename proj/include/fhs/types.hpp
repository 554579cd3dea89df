#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace fhs {

using cplx = std::complex<double>;
using VecR = Eigen::VectorXd;
using VecC = Eigen::VectorXcd;
using VecI = Eigen::VectorXi;
using MatR = Eigen::MatrixXd;
using MatC = Eigen::MatrixXcd;
using MatI = Eigen::MatrixXi;

inline constexpr cplx I{0.0, 1.0};

// Side of a real branch cut from which a boundary value is taken.
enum class Shore { none, above, below };

// Point on the two-sheeted surface: sheet +1 carries R(z), sheet -1 carries -R(z).
struct SurfacePoint {
    cplx z;
    int sheet = 1;
};

// Bad user input (exit code 2 in the CLI).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical contract was violated (non-convergence, failed consistency check).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fhs
