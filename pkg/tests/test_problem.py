import math

import pytest

from slpt.errors import (
    DegenerateInterval,
    NonPositiveCoefficient,
    OutOfDomain,
    SingularFamilyPole,
    UnorderedBreakpoints,
)
from slpt.problem import (
    DIRICHLET,
    NEUMANN,
    BoundarySpec,
    CallableCoefficient,
    Cylindrical,
    LayeredCoefficient,
    SLProblem,
    SmoothFamilyCoefficient,
    canonical_benchmark,
    eval_coefficient,
    validate_problem,
)


def _dn(coefficient, interval=(0.0, 1.0), geometry=None):
    kwargs = {} if geometry is None else {"geometry": geometry}
    return SLProblem(interval=interval, coefficient=coefficient,
                     bc_left=BoundarySpec(DIRICHLET),
                     bc_right=BoundarySpec(NEUMANN), **kwargs)


def test_smooth_family_point_value():
    co = SmoothFamilyCoefficient(c=1.0, d1=-1.0, d2=2.0)
    assert co(0.0) == pytest.approx(0.25)


def test_layered_left_continuity_at_breakpoint():
    co = LayeredCoefficient(breakpoints=(0.0, 0.5, 1.0), values=(4.0, 1.0))
    assert co(0.5) == 4.0
    assert co(0.5 + 1e-12) == 1.0
    assert co(0.0) == 4.0 and co(1.0) == 1.0


def test_pole_inside_interval_rejected():
    co = SmoothFamilyCoefficient(c=1.0, d1=0.5, d2=2.0)
    with pytest.raises(SingularFamilyPole):
        validate_problem(_dn(co))


def test_unordered_breakpoints_rejected():
    co = LayeredCoefficient(breakpoints=(0.0, 0.7, 0.3, 1.0), values=(1.0, 2.0, 3.0))
    with pytest.raises(UnorderedBreakpoints):
        validate_problem(_dn(co))


def test_nonpositive_layer_rejected():
    co = LayeredCoefficient(breakpoints=(0.0, 0.5, 1.0), values=(1.0, -2.0))
    with pytest.raises(NonPositiveCoefficient):
        validate_problem(_dn(co))


def test_degenerate_interval_rejected():
    co = LayeredCoefficient(breakpoints=(1.0, 1.0), values=(1.0,))
    with pytest.raises(DegenerateInterval):
        validate_problem(_dn(co, interval=(1.0, 1.0)))


def test_callable_coefficient_sign_checked():
    co = CallableCoefficient(lambda x: math.cos(4.0 * x))
    with pytest.raises(NonPositiveCoefficient):
        validate_problem(_dn(co))


def test_eval_outside_domain_rejected():
    p = canonical_benchmark(1.0, 0.5)
    with pytest.raises(OutOfDomain):
        eval_coefficient(p, p.b + 0.1)


def test_cylindrical_interval_must_match_radii():
    co = LayeredCoefficient(breakpoints=(0.0, 1.0), values=(1.0,))
    with pytest.raises(DegenerateInterval):
        validate_problem(_dn(co, geometry=Cylindrical(r_min=0.5, r_max=1.0)))


def test_canonical_benchmark_unit_z_length():
    for eps, z1 in ((1.0, 0.5), (-1.2, 0.3), (0.0, 0.5), (1.0, 0.0)):
        p = canonical_benchmark(eps, z1)
        assert p.canonical_benchmark
        co = p.coefficient
        zlen = sum(math.sqrt(v) * (co.breakpoints[k + 1] - co.breakpoints[k])
                   for k, v in enumerate(co.values))
        assert zlen == pytest.approx(1.0, abs=1e-12)


def test_canonical_benchmark_layer_ratio():
    eps = 0.73
    p = canonical_benchmark(eps, 0.4)
    vals = p.coefficient.values
    assert vals[0] / vals[1] == pytest.approx(math.exp(eps), rel=1e-13)
