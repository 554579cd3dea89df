#include "fhs/checks.hpp"
#include "fhs/oracle.hpp"
#include "fhs/pipeline.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace fhs;

namespace {

py::dict periods(const std::vector<double>& endpoints) {
    const PeriodData pd = build_period_data(IntervalSystem(endpoints));
    py::dict d;
    d["genus"] = pd.genus;
    d["A"] = pd.A;
    d["P_coeffs"] = pd.P_coeffs;
    d["tau"] = pd.tau;
    d["tau11_intro"] = pd.tau11_intro;
    return d;
}

std::vector<double> approximate_kappas(const std::vector<double>& endpoints, double kappa_min, double kappa_max,
                                       double theta_eps) {
    const Model m(endpoints, theta_eps);
    return m.spectrum.find_eigenvalues(kappa_min, kappa_max);
}

py::dict exact_spectrum(const std::vector<double>& endpoints, int n_max, int order) {
    const Oracle o(IntervalSystem(endpoints), order);
    const ExactSpectrum& ex = o.exact_spectrum(n_max);
    std::vector<double> kappas, lambdas;
    for (const ExactMode& md : ex.modes) {
        kappas.push_back(md.kappa);
        lambdas.push_back(md.lambda);
    }
    py::dict d;
    d["kappa"] = kappas;
    d["lambda"] = lambdas;
    d["trusted"] = ex.trusted;
    d["hilbert_schmidt"] = o.hilbert_schmidt_norm();
    return d;
}

}  // namespace

PYBIND11_MODULE(_fhs, m) {
    m.doc() = "Interior problem for the finite Hilbert transform: theta-function asymptotics and a Nystrom oracle";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    m.attr("reference_endpoints") = kReferenceEndpoints;

    m.def("periods", &periods, py::arg("endpoints"), "A-periods, normalized differentials and period matrix");
    m.def("theta", [](const MatC& tau, const VecC& z, double eps) { return ThetaContext(tau, eps).theta(z); },
          py::arg("tau"), py::arg("z"), py::arg("eps") = 1e-12, "Riemann theta function");
    m.def("approximate_kappas", &approximate_kappas, py::arg("endpoints"), py::arg("kappa_min") = 1.0,
          py::arg("kappa_max") = 40.0, py::arg("theta_eps") = 1e-12,
          "Roots of the theta-divisor condition on the spectral line");
    m.def("exact_spectrum", &exact_spectrum, py::arg("endpoints"), py::arg("n_max") = 24, py::arg("order") = 256,
          "Singular values from the Nystrom discretization");
    m.def("degenerate_tau11_limit", &degenerate_tau11_limit, py::arg("four_endpoints"),
          "Genus-1 limit of tau_11 when the last arc shrinks to a point");
}
