import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slpt.basis import zeroth_modes
from slpt.greens import pt1_closed_form
from slpt.oracle import exact_eigenfunction, exact_eigenvalues
from slpt.perturbation import (
    LOGARITHM,
    XI2,
    couplings,
    matrix_element,
    pt_eigenfunction,
    pt_lambda,
    pt_lambda_eps_series,
)
from slpt.problem import canonical_benchmark
from slpt.transform import transform


def test_interface_element_closed_form():
    eps, z1 = 0.8, 0.35
    tp = transform(canonical_benchmark(eps, z1))
    modes = zeroth_modes(tp.bc_left, tp.bc_right, 0.0, 1.0, 2)
    cps = couplings(tp, LOGARITHM)
    m0 = modes[0]
    expected = (eps / 2.0) * m0.value(z1) * m0.derivative(z1)
    assert matrix_element(m0, m0, cps) == pytest.approx(expected, rel=1e-13)


def test_matrix_is_not_hermitian():
    tp = transform(canonical_benchmark(1.0, 0.5))
    m = zeroth_modes(tp.bc_left, tp.bc_right, 0.0, 1.0, 2)
    cps = couplings(tp, LOGARITHM)
    m01 = matrix_element(m[0], m[1], cps)
    m10 = matrix_element(m[1], m[0], cps)
    assert abs(m01 - m10) > 0.5  # point coupling in phi_m phi_n' is lopsided


@settings(max_examples=20, deadline=None)
@given(eps=st.floats(-1.4, 1.4), z1=st.floats(0.05, 0.95))
def test_first_order_matches_closed_form(eps, z1):
    tp = transform(canonical_benchmark(eps, z1))
    assert pt_lambda(0, 1, tp, LOGARITHM).total == pytest.approx(
        pt1_closed_form(eps, z1), abs=1e-12)


def test_eps_series_coefficients_at_center():
    lam0, c1, c2, c3 = pt_lambda_eps_series(0, 0.5, XI2)
    assert lam0 == pytest.approx(math.pi ** 2 / 4.0, rel=1e-13)
    assert c1 == pytest.approx(math.pi / 4.0, rel=1e-12)
    assert c2 == pytest.approx(1.0 / 16.0, rel=1e-7)
    assert c3 == pytest.approx(-math.pi / 384.0, rel=1e-8)


def test_eps_series_log_flips_third_order_sign():
    *_, c3_log = pt_lambda_eps_series(0, 0.5, LOGARITHM)
    *_, c3_xi2 = pt_lambda_eps_series(0, 0.5, XI2)
    assert c3_log == pytest.approx(math.pi / 384.0, rel=1e-8)
    assert c3_log == pytest.approx(-c3_xi2, rel=1e-7)


def test_partial_sums_and_total_consistent():
    tp = transform(canonical_benchmark(0.6, 0.4))
    s = pt_lambda(0, 3, tp, XI2)
    sums = s.partial_sums
    assert len(sums) == 4
    assert sums[-1] == pytest.approx(s.total, rel=1e-15)
    assert sums[0] == pytest.approx(((0.5) * math.pi) ** 2, rel=1e-13)


def test_orders_converge_toward_oracle():
    eps = 0.3
    tp = transform(canonical_benchmark(eps, 0.5))
    exact = exact_eigenvalues(tp, 1).eigenvalues[0]
    errs = [abs(s - exact) for s in pt_lambda(0, 3, tp, XI2).partial_sums]
    assert errs[0] > errs[1] > errs[2] > errs[3]


def test_single_layer_has_no_corrections():
    tp = transform(canonical_benchmark(1.0, 0.0))
    s = pt_lambda(0, 3, tp, XI2)
    assert s.corrections[1:] == (0.0, 0.0, 0.0)
    assert s.total == pytest.approx(math.pi ** 2 / 4.0, rel=1e-13)


def test_excited_state_first_order():
    eps, z1, n = 0.7, 0.3, 2
    tp = transform(canonical_benchmark(eps, z1))
    kap = (n + 0.5) * math.pi
    expected = kap ** 2 + (eps / 2.0) * 2.0 * kap * math.sin(kap * z1) * math.cos(kap * z1)
    assert pt_lambda(n, 1, tp, LOGARITHM).total == pytest.approx(expected, rel=1e-12)


def test_eigenfunction_first_order_improves_on_zeroth():
    tp = transform(canonical_benchmark(1.0, 0.5))
    lam = exact_eigenvalues(tp, 1).eigenvalues[0]
    ef = exact_eigenfunction(tp, lam)
    zs = np.linspace(0.0, 1.0, 401)
    exz = np.array([ef(z) for z in zs])
    exz /= math.sqrt(np.trapezoid(exz ** 2, zs))

    def l2_error(order):
        sol = pt_eigenfunction(0, order, tp, mode=LOGARITHM)
        v = np.array([sol.value(z) for z in zs])
        v /= math.sqrt(np.trapezoid(v ** 2, zs))
        if np.dot(v, exz) < 0:
            v = -v
        return math.sqrt(np.trapezoid((v - exz) ** 2, zs))

    assert l2_error(1) < 0.2 * l2_error(0)
