#pragma once

// Independent quadrature oracles built on GSL's adaptive rules.
#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <functional>
#include <stdexcept>

namespace oracle {

inline double call(double x, void* p) { return (*static_cast<std::function<double(double)>*>(p))(x); }

// int_lo^hi f(x) (x - lo)^alpha (hi - x)^beta dx by QAWS.
inline double qaws(std::function<double(double)> f, double lo, double hi, double alpha, double beta) {
    gsl_set_error_handler_off();
    gsl_integration_workspace* ws = gsl_integration_workspace_alloc(2000);
    gsl_integration_qaws_table* t = gsl_integration_qaws_table_alloc(alpha, beta, 0, 0);
    gsl_function F{&call, &f};
    double result = 0.0, err = 0.0;
    const int status = gsl_integration_qaws(&F, lo, hi, t, 0.0, 1e-13, 2000, ws, &result, &err);
    gsl_integration_qaws_table_free(t);
    gsl_integration_workspace_free(ws);
    if (status != GSL_SUCCESS && status != GSL_EROUND) {
        throw std::runtime_error("qaws failed");
    }
    return result;
}

// int_lo^hi f(x) dx by QAGS.
inline double qags(std::function<double(double)> f, double lo, double hi) {
    gsl_set_error_handler_off();
    gsl_integration_workspace* ws = gsl_integration_workspace_alloc(2000);
    gsl_function F{&call, &f};
    double result = 0.0, err = 0.0;
    const int status = gsl_integration_qags(&F, lo, hi, 0.0, 1e-13, 2000, ws, &result, &err);
    gsl_integration_workspace_free(ws);
    if (status != GSL_SUCCESS && status != GSL_EROUND) {
        throw std::runtime_error("qags failed");
    }
    return result;
}

// int_a^inf f(x) dx by QAGIU.
inline double qagiu(std::function<double(double)> f, double a) {
    gsl_set_error_handler_off();
    gsl_integration_workspace* ws = gsl_integration_workspace_alloc(2000);
    gsl_function F{&call, &f};
    double result = 0.0, err = 0.0;
    const int status = gsl_integration_qagiu(&F, a, 0.0, 1e-12, 2000, ws, &result, &err);
    gsl_integration_workspace_free(ws);
    if (status != GSL_SUCCESS && status != GSL_EROUND) {
        throw std::runtime_error("qagiu failed");
    }
    return result;
}

}  // namespace oracle
