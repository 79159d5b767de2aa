import math

import numpy as np
import pytest
from scipy.integrate import quad

from slpt.cylinder import (
    BESSEL_J0_FIRST_ZERO,
    FIRST_ORDER_V,
    GF,
    HERMITIAN_U,
    _i_cos,
    _j_sin,
    cyl_lambda0_sequence,
    cyl_optimal_zmin,
    cyl_optimize_zmin,
    gf0_full_cylinder,
    vcyl_first_order,
)


def test_j_sin_against_quadrature():
    for c, d in ((math.pi, 0.01), (7.3, 0.5), (0.0, 0.2), (-2.0, 1.0)):
        ref = quad(lambda t: math.sin(c * t) / (t + d), 0.0, 1.0, limit=200)[0]
        got = float(_j_sin(np.array([c]), d)[0])
        assert got == pytest.approx(ref, abs=1e-10)


def test_i_cos_against_quadrature():
    for c, d in ((2 * math.pi, 0.05), (4.0, 0.3)):
        ref = quad(lambda t: math.cos(c * t) / (t + d) ** 2, 0.0, 1.0, limit=200)[0]
        got = float(_i_cos(np.array([c]), d)[0])
        assert got == pytest.approx(ref, abs=1e-9)


def test_gf0_full_cylinder_value():
    assert gf0_full_cylinder() == pytest.approx(
        1.0 / (1.0 / math.pi ** 2 + 0.25 - 1.0 / 6.0), rel=1e-14)
    assert math.sqrt(gf0_full_cylinder()) == pytest.approx(2.3271, abs=5e-5)


def test_sequence_zeroth_order_is_plane_mode():
    for form in (HERMITIAN_U, FIRST_ORDER_V):
        seq = cyl_lambda0_sequence(form, 0)
        assert math.sqrt(seq[0]) == pytest.approx(math.pi, abs=1e-4)


def test_sequences_approach_bessel_zero():
    ref = BESSEL_J0_FIRST_ZERO
    herm = [math.sqrt(v) for v in cyl_lambda0_sequence(HERMITIAN_U, 2)]
    first = [math.sqrt(v) for v in cyl_lambda0_sequence(FIRST_ORDER_V, 2)]
    # hermitian converges from above, the first-order form overshoots then returns
    assert abs(herm[2] - ref) < abs(herm[1] - ref) < abs(herm[0] - ref)
    assert abs(first[2] - ref) < abs(first[0] - ref)


def test_wide_hole_approaches_plane_limit():
    # r_min -> r_max leaves a thin annulus where curvature is negligible
    seq = cyl_lambda0_sequence(HERMITIAN_U, 2, r_min=0.999, r_max=1.0)
    lam_plane = (math.pi / 0.001) ** 2
    assert seq[2] == pytest.approx(lam_plane, rel=1e-5)


def test_first_order_vanishes_at_optimal_zmin():
    r, r_min, r_max = 2.0, 0.05, 1.0
    z_opt = cyl_optimal_zmin(r, r_min)
    assert z_opt == pytest.approx(math.sqrt(r) * r_min, rel=1e-14)
    at_opt = vcyl_first_order(z_opt, r, r_min, r_max)
    off = vcyl_first_order(2.0 * z_opt, r, r_min, r_max)
    assert at_opt < 1e-12
    assert off > 1e-2


def test_golden_section_finds_optimum():
    r, r_min, r_max = 2.0, 0.05, 1.0
    z_opt = cyl_optimize_zmin(r, r_min, r_max)
    assert z_opt == pytest.approx(cyl_optimal_zmin(r, r_min), rel=1e-9)
