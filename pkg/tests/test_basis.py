import math

import numpy as np
import pytest
from scipy.integrate import quad

from slpt.basis import MEAN_SQRT_R, reduced_green, zeroth_modes
from slpt.errors import ZeroModePresent
from slpt.problem import canonical_benchmark
from slpt.transform import (
    DIRICHLET,
    NEUMANN,
    ROBIN,
    TransformedBoundary,
    transform,
)

D = TransformedBoundary(DIRICHLET, 1.0, 0.0)
N = TransformedBoundary(NEUMANN, 0.0, 1.0)


def test_dirichlet_neumann_kappas():
    modes = zeroth_modes(D, N, 0.0, 1.0, 5)
    for n, m in enumerate(modes):
        assert m.kappa == pytest.approx((n + 0.5) * math.pi, rel=1e-14)
        assert m.lambda0 == pytest.approx(((n + 0.5) * math.pi) ** 2, rel=1e-14)


def test_dirichlet_dirichlet_kappas():
    modes = zeroth_modes(D, D, 0.0, 2.0, 4)
    for n, m in enumerate(modes):
        assert m.kappa == pytest.approx((n + 1) * math.pi / 2.0, rel=1e-14)


def test_neumann_neumann_rejected():
    with pytest.raises(ZeroModePresent):
        zeroth_modes(N, N, 0.0, 1.0, 3)


def test_modes_satisfy_boundary_rows():
    rb = TransformedBoundary(ROBIN, 1.7, 1.3)
    for bl, br in ((D, N), (rb, N), (D, rb), (rb, rb)):
        for m in zeroth_modes(bl, br, 0.0, 1.0, 4):
            if bl.kind == DIRICHLET:
                assert abs(m.value(0.0)) < 1e-12
            elif bl.kind == ROBIN:
                assert abs(bl.alpha * m.value(0.0)
                           - bl.weight * m.derivative(0.0)) < 1e-10 * m.kappa
            if br.kind == NEUMANN:
                assert abs(m.derivative(1.0)) < 1e-10 * m.kappa
            elif br.kind == ROBIN:
                assert abs(br.alpha * m.value(1.0)
                           + br.weight * m.derivative(1.0)) < 1e-10 * m.kappa


def test_mode_normalization():
    rb = TransformedBoundary(ROBIN, 0.9, 1.1)
    for m in zeroth_modes(rb, N, 0.0, 1.5, 3):
        val, _ = quad(lambda z: m.value(z) ** 2, 0.0, 1.5)
        assert val == pytest.approx(1.0, abs=1e-12)


def test_weighted_normalization():
    w = 2.5
    m = zeroth_modes(D, N, 0.0, 1.0, 1, weight_mode=MEAN_SQRT_R, weight=w)[0]
    val, _ = quad(lambda z: w * m.value(z) ** 2, 0.0, 1.0)
    assert val == pytest.approx(1.0, abs=1e-12)


def test_benchmark_basis_is_sqrt2_sine():
    m0 = zeroth_modes(D, N, 0.0, 1.0, 1)[0]
    for z in (0.1, 0.37, 0.92):
        assert m0.value(z) == pytest.approx(
            math.sqrt(2.0) * math.sin(math.pi * z / 2.0), rel=1e-14)


class TestReducedGreen:
    def setup_method(self):
        tp = transform(canonical_benchmark(1.0, 0.5))
        self.bl, self.br = tp.bc_left, tp.bc_right
        self.m0 = zeroth_modes(self.bl, self.br, 0.0, 1.0, 1)[0]

    def g(self, z, zp, **kw):
        return reduced_green(self.m0, self.bl, self.br, z, zp, **kw)

    def test_closed_vs_spectral(self):
        for z, zp in ((0.2, 0.7), (0.9, 0.13), (0.55, 0.41)):
            assert self.g(z, zp) == pytest.approx(
                self.g(z, zp, method="spectral"), abs=1e-7)

    def test_symmetry(self):
        assert self.g(0.23, 0.81) == pytest.approx(self.g(0.81, 0.23), abs=1e-13)

    def test_orthogonal_to_mode(self):
        zp = 0.4
        val, _ = quad(lambda z: self.g(z, zp) * self.m0.value(z), 0.0, 1.0,
                      points=[zp], limit=200)
        assert abs(val) < 1e-9

    def test_unit_derivative_jump(self):
        zp, h = 0.6, 1e-6
        left = (self.g(zp - h, zp) - self.g(zp - 2 * h, zp)) / h
        right = (self.g(zp + 2 * h, zp) - self.g(zp + h, zp)) / h
        assert right - left == pytest.approx(1.0, abs=1e-4)

    def test_satisfies_shifted_equation(self):
        # (d2/dz2 + lambda_0) g = -phi0(z) phi0(zp) away from the source
        zp, z, h = 0.7, 0.3, 1e-4
        d2 = (self.g(z + h, zp) - 2 * self.g(z, zp) + self.g(z - h, zp)) / h ** 2
        rhs = -self.m0.value(z) * self.m0.value(zp)
        assert d2 + self.m0.lambda0 * self.g(z, zp) == pytest.approx(rhs, abs=1e-5)
