#pragma once

// Extended-precision scalar for the oracle, with the Eigen traits Boost's own adapter lacks for Eigen 3.4.

#include <boost/multiprecision/mpfr.hpp>

#include <Eigen/Core>

namespace fhs::mp {
using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<70, boost::multiprecision::allocate_stack>,
    boost::multiprecision::et_off>;
}

namespace Eigen {
template <>
struct NumTraits<fhs::mp::Real> : GenericNumTraits<fhs::mp::Real> {
    using R = fhs::mp::Real;
    typedef R Real;
    typedef R NonInteger;
    typedef R Literal;
    typedef R Nested;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 4,
        MulCost = 8
    };
    static R epsilon() { return std::numeric_limits<R>::epsilon(); }
    static R dummy_precision() { return 1000 * epsilon(); }
    static R highest() { return (std::numeric_limits<R>::max)(); }
    static R lowest() { return (std::numeric_limits<R>::lowest)(); }
    static int digits10() { return std::numeric_limits<R>::digits10; }
    static R infinity() { return std::numeric_limits<R>::infinity(); }
    static R quiet_NaN() { return std::numeric_limits<R>::quiet_NaN(); }
};
}  // namespace Eigen

#include <Eigen/Dense>
