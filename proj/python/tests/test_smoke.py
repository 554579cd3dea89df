import math

import numpy as np
import pytest

fhs = pytest.importorskip("fhs")

REF = fhs.reference_endpoints


def test_period_matrix_is_symmetric_and_imaginary():
    p = fhs.periods(REF)
    tau = np.asarray(p["tau"])
    assert p["genus"] == 2
    assert np.allclose(tau, tau.T, atol=1e-9)
    assert np.max(np.abs(tau.real)) < 1e-9
    assert np.all(np.linalg.eigvalsh(tau.imag) > 0)
    assert tau[0, 0].imag == pytest.approx(1.399799887712483, rel=1e-12)
    assert abs(p["tau11_intro"] - tau[0, 0]) < 1e-8


def test_theta_identity_matrix():
    from mpmath import exp, jtheta, pi

    q = exp(-pi)
    value = fhs.theta(1j * np.eye(2), np.zeros(2, dtype=complex))
    assert abs(value - float(jtheta(3, 0, q) ** 2)) < 1e-14


def test_approximate_and_exact_kappas_are_close():
    approx = fhs.approximate_kappas(REF, 1.0, 24.0)
    exact = fhs.exact_spectrum(REF, n_max=8, order=64)
    assert len(approx) == 11
    assert exact["trusted"] >= 8
    assert approx[0] == pytest.approx(1.121058642523043, rel=1e-12)
    for a, e in zip(approx[4:8], exact["kappa"][4:8]):
        assert abs(a - e) < 0.1
    assert all(math.isclose(l, math.exp(-k), rel_tol=1e-12) for k, l in zip(exact["kappa"], exact["lambda"]))


def test_degenerate_limit():
    assert fhs.degenerate_tau11_limit([-5.0, -3.3, -2.0, 0.1]) == pytest.approx(0.868874272162516, rel=1e-13)


def test_bad_endpoints_raise_value_error():
    with pytest.raises(ValueError, match="strictly increasing"):
        fhs.periods([-5.0, -2.0, -3.3, 0.1, 1.0, 2.0])
    with pytest.raises(ValueError):
        fhs.periods([-1.0, 0.0, 1.0, 2.0])
