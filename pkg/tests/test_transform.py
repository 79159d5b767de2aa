import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from slpt.errors import NotRobinEnd
from slpt.problem import (
    DIRICHLET,
    NEUMANN,
    ROBIN,
    BoundarySpec,
    LayeredCoefficient,
    SLProblem,
    SmoothFamilyCoefficient,
    canonical_benchmark,
    validate_problem,
)
from slpt.transform import (
    constant_U,
    harmonize,
    interface_log_weights,
    mean_sqrt_r,
    potential_U,
    transform,
    x_map,
    xi2,
    z_map,
)


def _family_problem(c=1.0, d1=-0.3, d2=1.5):
    co = SmoothFamilyCoefficient(c=c, d1=d1, d2=d2)
    return validate_problem(SLProblem(interval=(0.0, 1.0), coefficient=co,
                                      bc_left=BoundarySpec(DIRICHLET),
                                      bc_right=BoundarySpec(NEUMANN)))


@settings(max_examples=25, deadline=None)
@given(eps=st.floats(-1.5, 1.5), z1=st.floats(0.05, 0.95),
       t=st.floats(0.0, 1.0))
def test_z_map_monotone_and_invertible(eps, z1, t):
    p = canonical_benchmark(eps, z1)
    x = p.a + t * (p.b - p.a)
    z = z_map(p, x)
    assert 0.0 - 1e-12 <= z <= 1.0 + 1e-12
    assert x_map(p, z) == pytest.approx(x, abs=1e-12)
    h = 1e-6 * (p.b - p.a)
    if p.a + h < x < p.b - h:
        assert z_map(p, x + h) > z > z_map(p, x - h)


def test_z_map_matches_quadrature_smooth_family():
    p = _family_problem()
    co = p.coefficient
    for x in (0.2, 0.5, 0.9):
        ref = quad(lambda t: math.sqrt(co(t)), 0.0, x)[0]
        assert z_map(p, x) == pytest.approx(ref, abs=1e-12)
        assert x_map(p, z_map(p, x)) == pytest.approx(x, abs=1e-12)


def test_interface_log_weight_value():
    tp = transform(canonical_benchmark(0.8, 0.3))
    ((zj, w),) = interface_log_weights(tp)
    assert zj == pytest.approx(0.3)
    assert w == pytest.approx(0.4)  # ln sqrt(r1/r2) = eps/2


def test_transformed_boundary_weights_are_sqrt_r():
    eps = 1.0
    co = LayeredCoefficient(breakpoints=(0.0, 0.4, 1.0),
                            values=(math.exp(eps), 1.0))
    p = validate_problem(SLProblem(interval=(0.0, 1.0), coefficient=co,
                                   bc_left=BoundarySpec(ROBIN, alpha=2.0),
                                   bc_right=BoundarySpec(ROBIN, alpha=3.0)))
    tp = transform(p)
    assert tp.bc_left.weight == pytest.approx(math.exp(eps / 2))
    assert tp.bc_right.weight == pytest.approx(1.0)
    assert tp.bc_left.alpha == 2.0 and tp.bc_right.alpha == 3.0


def test_potential_constancy_on_family():
    p = _family_problem()
    tp = transform(p)
    zs = np.linspace(tp.z_a + 1e-2 * tp.length, tp.z_b - 1e-2 * tp.length, 100)
    u = np.array([potential_U(tp, z) for z in zs])
    assert u.std() < 1e-6 * abs(u.mean())
    assert u.mean() == pytest.approx(constant_U(p), rel=1e-6)


def test_constant_U_arithmetic():
    assert constant_U(_family_problem(c=1.0, d1=-1.0, d2=2.0)) == pytest.approx(9.0 / 4.0)
    assert constant_U(_family_problem(c=1.0, d1=-2.0, d2=-2.0)) == 0.0
    p = validate_problem(SLProblem(
        interval=(1.0, 2.0),
        coefficient=SmoothFamilyCoefficient(c=9.0, d1=0.0, d2=3.0),
        bc_left=BoundarySpec(DIRICHLET), bc_right=BoundarySpec(NEUMANN)))
    assert constant_U(p) == pytest.approx(0.25)


@settings(max_examples=50, deadline=None)
@given(s=st.floats(1e-8, 1e8))
def test_xi2_bounded_and_odd_under_inversion(s):
    assert abs(xi2(s)) < 2.0
    assert xi2(1.0 / s) == pytest.approx(-xi2(s), abs=1e-14)


def test_xi2_small_argument_expansion():
    # xi2(e^{t}) = t - t^3/12 + O(t^5)
    t = 1e-2
    assert xi2(math.exp(t)) == pytest.approx(t - t ** 3 / 12.0, abs=1e-12)


def test_harmonize_requires_robin_end():
    tp = transform(canonical_benchmark(1.0, 0.5))
    with pytest.raises(NotRobinEnd):
        harmonize(tp, "left")


def test_harmonize_weight_and_addendum():
    co = LayeredCoefficient(breakpoints=(0.0, 0.5, 1.0), values=(4.0, 1.0))
    p = validate_problem(SLProblem(interval=(0.0, 1.0), coefficient=co,
                                   bc_left=BoundarySpec(ROBIN, alpha=1.0),
                                   bc_right=BoundarySpec(NEUMANN)))
    tp = transform(p)
    tph, add = harmonize(tp, "left")
    msr = mean_sqrt_r(tp)
    assert tph.bc_left.weight == pytest.approx(msr)
    assert add.z_point == tph.z_a
    assert add.factor == pytest.approx(xi2(msr / 2.0))  # sqrt(r) = 2 at the left end
