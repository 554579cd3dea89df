#pragma once

#include "fhs/pipeline.hpp"

#include <Eigen/Dense>

namespace fhs::test {

// Model of the worked configuration, built once per test binary.
inline const Model& reference_model() {
    static const Model m(kReferenceEndpoints);
    return m;
}

inline VecC vec2(cplx a, cplx b) {
    VecC v(2);
    v << a, b;
    return v;
}

inline VecC unit(int g, int k) {
    VecC e = VecC::Zero(g);
    e(k - 1) = 1.0;
    return e;
}

}  // namespace fhs::test
