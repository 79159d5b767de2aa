"""Smoothed-step diagnostics: what diverges as the step sharpens, what stays.

The logistic profile rt(z) = r1 + (r2 - r1)/(1 + exp[(z1 - z)/dz]) makes
every derivative finite, so the singular-form objects can be integrated and
their dz-scaling observed, while the rebuilt basis chi_n = rt^{1/4} phi_n
satisfies [d2/dz2 + lambda_n - U^R] chi_n = 0 identically for every
smoothing width.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .basis import zeroth_modes
from .errors import QuadratureFailure
from .transform import TransformedProblem


@dataclass(frozen=True)
class SmoothedStep:
    r1: float
    r2: float
    z1: float
    dz: float
    z_a: float = 0.0
    z_b: float = 1.0

    def r(self, z):
        return self.r1 + (self.r2 - self.r1) * expit((np.asarray(z) - self.z1) / self.dz)

    def dr(self, z):
        s = expit((np.asarray(z) - self.z1) / self.dz)
        return (self.r2 - self.r1) * s * (1.0 - s) / self.dz

    def d2r(self, z):
        s = expit((np.asarray(z) - self.z1) / self.dz)
        return (self.r2 - self.r1) * s * (1.0 - s) * (1.0 - 2.0 * s) / self.dz ** 2

    def dlog_r(self, z):
        return self.dr(z) / self.r(z)

    def mu(self, z):
        """(ln sqrt(rt))'."""
        return 0.5 * self.dlog_r(z)

    def rho(self, z):
        return self.r(z) ** 0.25

    def drho(self, z):
        return 0.25 * self.rho(z) * self.dlog_r(z)

    def d2rho(self, z):
        sig = self.dlog_r(z)
        dsig = self.d2r(z) / self.r(z) - sig ** 2
        return self.rho(z) * (0.25 * dsig + 0.0625 * sig ** 2)

    def potential_U(self, z):
        return self.d2rho(z) / self.rho(z)

    def quad_grid(self, n_points: int = 4000) -> np.ndarray:
        """Nodes dense near the step (half the budget within 40 widths)."""
        if n_points < 16:
            raise QuadratureFailure(f"grid of {n_points} points is too coarse")
        half = n_points // 2
        coarse = np.linspace(self.z_a, self.z_b, half)
        lo = max(self.z_a, self.z1 - 40 * self.dz)
        hi = min(self.z_b, self.z1 + 40 * self.dz)
        fine = np.linspace(lo, hi, n_points - half)
        return np.unique(np.concatenate([coarse, fine]))

    def quad_weights(self, grid: np.ndarray) -> np.ndarray:
        w = np.zeros_like(grid)
        d = np.diff(grid)
        w[:-1] += 0.5 * d
        w[1:] += 0.5 * d
        return w


def _mode(n: int, step: SmoothedStep, tp: TransformedProblem):
    return zeroth_modes(tp.bc_left, tp.bc_right, step.z_a, step.z_b, n + 1)[n]


def rebuilt_basis_residual(n: int, step: SmoothedStep, tp: TransformedProblem,
                           quad_points: int = 4000) -> float:
    """Max residual of [d2/dz2 + lambda_n - U^R] (rt^{1/4} phi_n) on the grid.

    U^R = U - mu^2/2 + mu d/dz. All derivatives are analytic on the logistic
    profile; the residual checks the operator wiring, and is zero to
    round-off relative to the largest term.
    """
    m = _mode(n, step, tp)
    z = step.quad_grid(quad_points)
    phi, dphi = m.value(z), m.derivative(z)
    rho, drho, d2rho = step.rho(z), step.drho(z), step.d2rho(z)
    mu = step.mu(z)
    chi = rho * phi
    dchi = drho * phi + rho * dphi
    d2chi = d2rho * phi + 2.0 * drho * dphi - m.lambda0 * rho * phi
    U = step.potential_U(z)
    resid = d2chi + m.lambda0 * chi - (U - 0.5 * mu ** 2) * chi - mu * dchi
    return float(np.max(np.abs(resid)))


def rebuilt_matrix_element(m: int, n: int, step: SmoothedStep,
                           tp: TransformedProblem, quad_points: int = 4000) -> float:
    """int chibar_m deltaU chi_n dz with deltaU = -2 rho' d/dz (1/rho).

    Converges as dz -> 0 to phi_m(z1) phi_n'(z1) ln sqrt(r1/r2).
    """
    mm, mn = _mode(m, step, tp), _mode(n, step, tp)
    z = step.quad_grid(quad_points)
    w = step.quad_weights(z)
    # chibar deltaU chi = (phi_m/rho)(-2 rho' phi_n') = -2(rho'/rho) phi_m phi_n'
    val = -2.0 * (step.drho(z) / step.rho(z)) * mm.value(z) * mn.derivative(z)
    return float(np.sum(w * val))


def blank_bracket(n: int, step: SmoothedStep, tp: TransformedProblem,
                  which: str, quad_points: int = 4000) -> float:
    """Difference of paired integrals that cancels identically.

    ``first_order``: int phi_n [-(ln sqrt rt)' d/dz] phi_n minus
    int chibar deltaU chi — the integrands cancel pointwise.
    ``eigenvalue``: int phi_n phi_n'' dz minus int chibar (d2/dz2 - U^R) chi;
    both equal -lambda_n for the exact rebuilt pair.
    """
    m = _mode(n, step, tp)
    z = step.quad_grid(quad_points)
    w = step.quad_weights(z)
    phi, dphi = m.value(z), m.derivative(z)
    if which == "first_order":
        first = float(np.sum(w * phi * (-step.mu(z)) * dphi))
        second = rebuilt_matrix_element(n, n, step, tp, quad_points)
        return first - second
    if which == "eigenvalue":
        first = float(np.sum(w * phi * (-m.lambda0) * phi))
        rho, drho, d2rho = step.rho(z), step.drho(z), step.d2rho(z)
        mu = step.mu(z)
        chi = rho * phi
        dchi = drho * phi + rho * dphi
        d2chi = d2rho * phi + 2.0 * drho * dphi - m.lambda0 * rho * phi
        UR_chi = (step.potential_U(z) - 0.5 * mu ** 2) * chi + mu * dchi
        second = float(np.sum(w * (phi / rho) * (d2chi - UR_chi)))
        return first - second
    raise ValueError(f"unknown bracket {which!r}")


def divergence_scan(n: int, dz_list, tp: TransformedProblem,
                    quad_points: int = 4000) -> list:
    """Rows (dz, divergent_term, finite_element, c1) for the two-layer case."""
    from .perturbation import LOGARITHM, couplings, matrix_element, u_diag_smoothed

    rows = []
    bl, br = tp.bc_left, tp.bc_right
    basis = zeroth_modes(bl, br, tp.z_a, tp.z_b, max(n + 2, 2))
    mn = basis[n]
    m1 = basis[n + 1 if n + 1 < len(basis) else n - 1]
    for dz in dz_list:
        finite, divergent = u_diag_smoothed(n, dz, tp, quad_points)
        step = SmoothedStep(r1=tp.layer_values[0], r2=tp.layer_values[1],
                            z1=tp.z_breakpoints[0], dz=dz, z_a=tp.z_a, z_b=tp.z_b)
        elem = rebuilt_matrix_element(n, n, step, tp, quad_points)
        cross = rebuilt_matrix_element(m1.index, n, step, tp, quad_points)
        c1 = cross / (mn.lambda0 - m1.lambda0)
        rows.append((dz, divergent, elem, c1))
    return rows
