"""Constant-coefficient eigenbasis phi_n and the reduced Green's function.

Modes solve phi'' + kappa^2 phi = 0 with the transformed boundary rows
alpha*phi - w*phi' = 0 (left) and alpha*phi + w*phi' = 0 (right); each mode
is sin(kappa*(z - z_a) + theta) up to normalization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import RootBracketingFailure, ZeroModePresent
from .problem import DIRICHLET, NEUMANN, ROBIN
from .transform import TransformedBoundary

UNIT = "unit"
MEAN_SQRT_R = "mean_sqrt_r"


@dataclass(frozen=True)
class ZerothMode:
    index: int
    kappa: float
    phase: float
    norm: float
    z_a: float
    z_b: float
    weight_mode: str = UNIT
    weight: float = 1.0

    @property
    def lambda0(self) -> float:
        return self.kappa * self.kappa

    def value(self, z):
        return self.norm * np.sin(self.kappa * (np.asarray(z) - self.z_a) + self.phase)

    def derivative(self, z):
        return self.norm * self.kappa * np.cos(self.kappa * (np.asarray(z) - self.z_a) + self.phase)


def _phase(bc_left: TransformedBoundary, kappa: float) -> float:
    """theta making sin(kappa*zeta + theta) satisfy the left row."""
    if bc_left.kind == DIRICHLET:
        return 0.0
    if bc_left.kind == NEUMANN:
        return 0.5 * math.pi
    # alpha*sin(theta) = w*kappa*cos(theta)
    return math.atan2(bc_left.weight * kappa, bc_left.alpha)


def characteristic(bc_left: TransformedBoundary, bc_right: TransformedBoundary,
                   length: float, kappa: float) -> float:
    """Right-boundary residual of the left-satisfying solution; pole-free."""
    th = _phase(bc_left, kappa)
    s = math.sin(kappa * length + th)
    c = math.cos(kappa * length + th)
    if bc_right.kind == DIRICHLET:
        return s
    if bc_right.kind == NEUMANN:
        return c
    return bc_right.alpha * s + bc_right.weight * kappa * c


def _closed_form_kappas(bc_left, bc_right, length, count):
    pair = (bc_left.kind, bc_right.kind)
    if pair == (DIRICHLET, NEUMANN) or pair == (NEUMANN, DIRICHLET):
        return [(n + 0.5) * math.pi / length for n in range(count)]
    if pair == (DIRICHLET, DIRICHLET):
        return [(n + 1.0) * math.pi / length for n in range(count)]
    if pair == (NEUMANN, NEUMANN):
        raise ZeroModePresent("Neumann-Neumann problem has a zero eigenvalue")
    return None


def _scan_kappas(bc_left, bc_right, length, count):
    from scipy.optimize import brentq

    f = lambda k: characteristic(bc_left, bc_right, length, k)
    step = math.pi / (4.0 * length)
    kappas = []
    k_lo = 1e-9
    f_lo = f(k_lo)
    k = k_lo
    max_k = (count + 10) * 4.0 * math.pi / length
    while len(kappas) < count:
        k_hi = k + step
        if k_hi > max_k:
            raise RootBracketingFailure(
                f"found {len(kappas)}/{count} roots scanning kappa up to {max_k}")
        f_hi = f(k_hi)
        if f_lo == 0.0:
            kappas.append(k)
        elif f_lo * f_hi < 0.0:
            kappas.append(brentq(f, k, k_hi, xtol=1e-14, rtol=8.9e-16))
        k, f_lo = k_hi, f_hi
    return kappas[:count]


def zeroth_modes(bc_left: TransformedBoundary, bc_right: TransformedBoundary,
                 z_a: float, z_b: float, count: int,
                 weight_mode: str = UNIT, weight: float = 1.0) -> list:
    """First ``count`` modes, ascending in kappa, normalized to unit w-norm."""
    length = z_b - z_a
    kappas = _closed_form_kappas(bc_left, bc_right, length, count)
    if kappas is None:
        kappas = _scan_kappas(bc_left, bc_right, length, count)
    w = weight if weight_mode == MEAN_SQRT_R else 1.0
    modes = []
    for n, kap in enumerate(kappas):
        th = _phase(bc_left, kap)
        # int_0^L sin^2(k z + th) dz in closed form
        i2 = 0.5 * length - (math.sin(2 * (kap * length + th)) - math.sin(2 * th)) / (4 * kap)
        modes.append(ZerothMode(index=n, kappa=kap, phase=th,
                                norm=1.0 / math.sqrt(w * i2),
                                z_a=z_a, z_b=z_b,
                                weight_mode=weight_mode, weight=w))
    return modes


def reduced_green(mode: ZerothMode, bc_left: TransformedBoundary,
                  bc_right: TransformedBoundary, z: float, zp: float,
                  method: str = "closed", modes_cap: int = 4000) -> float:
    """Green's function of d2/dz2 + lambda_n with phi_n projected out.

    Closed form: piecewise combination of the homogeneous pair plus the
    resonant particular solution, pinned by both boundary rows, continuity,
    the unit derivative jump, and orthogonality to phi_n (5 conditions, 4
    coefficients; consistent by the Fredholm alternative, solved in least
    squares). Spectral form: truncated mode sum with pairwise tail
    averaging, used as a cross-check oracle.
    """
    if method == "spectral":
        return _reduced_green_spectral(mode, bc_left, bc_right, z, zp, modes_cap)
    if zp < z:
        z, zp = zp, z
    za, zb, kap, th = mode.z_a, mode.z_b, mode.kappa, mode.phase
    L = zb - za
    zeta = z - za
    zetap = zp - za

    u = lambda t: math.sin(kap * t + th)
    du = lambda t: kap * math.cos(kap * t + th)
    v = lambda t: math.cos(kap * t + th)
    dv = lambda t: -kap * math.sin(kap * t + th)
    D = mode.norm * mode.value(zp) / (2.0 * kap)  # resonant amplitude
    yp = lambda t: D * t * math.cos(kap * t + th)
    dyp = lambda t: D * (math.cos(kap * t + th) - kap * t * math.sin(kap * t + th))

    def bc_coeffs(bc, deriv_sign):
        """(alpha, deriv_sign * w) for the row alpha*G -(+) w*G' = 0."""
        if bc.kind == DIRICHLET:
            return 1.0, 0.0
        if bc.kind == NEUMANN:
            return 0.0, deriv_sign
        return bc.alpha, deriv_sign * bc.weight

    # unknowns: A1, B1 (left of zp), A2, B2 (right of zp)
    rows, rhs = [], []
    aL, wL = bc_coeffs(bc_left, -1.0)
    rows.append([aL * u(0) + wL * du(0), aL * v(0) + wL * dv(0), 0.0, 0.0])
    rhs.append(-(aL * yp(0) + wL * dyp(0)))
    aR, wR = bc_coeffs(bc_right, +1.0)
    rows.append([0.0, 0.0, aR * u(L) + wR * du(L), aR * v(L) + wR * dv(L)])
    rhs.append(-(aR * yp(L) + wR * dyp(L)))
    # continuity at zetap
    rows.append([u(zetap), v(zetap), -u(zetap), -v(zetap)])
    rhs.append(0.0)
    # derivative jump G'(zp+) - G'(zp-) = 1
    rows.append([-du(zetap), -dv(zetap), du(zetap), dv(zetap)])
    rhs.append(1.0)
    # orthogonality int phi_n G = 0
    phi = lambda t: mode.norm * math.sin(kap * t + th)
    iu1 = quad(lambda t: phi(t) * u(t), 0, zetap, limit=200, epsabs=1e-12, epsrel=1e-12)[0]
    iv1 = quad(lambda t: phi(t) * v(t), 0, zetap, limit=200, epsabs=1e-12, epsrel=1e-12)[0]
    iu2 = quad(lambda t: phi(t) * u(t), zetap, L, limit=200, epsabs=1e-12, epsrel=1e-12)[0]
    iv2 = quad(lambda t: phi(t) * v(t), zetap, L, limit=200, epsabs=1e-12, epsrel=1e-12)[0]
    iyp = quad(lambda t: phi(t) * yp(t), 0, L, limit=200, epsabs=1e-12, epsrel=1e-12)[0]
    rows.append([iu1, iv1, iu2, iv2])
    rhs.append(-iyp)

    coef, *_ = np.linalg.lstsq(np.asarray(rows), np.asarray(rhs), rcond=None)
    A1, B1, A2, B2 = coef
    if zeta <= zetap:
        return A1 * u(zeta) + B1 * v(zeta) + yp(zeta)
    return A2 * u(zeta) + B2 * v(zeta) + yp(zeta)


def _reduced_green_spectral(mode, bc_left, bc_right, z, zp, modes_cap):
    modes = zeroth_modes(bc_left, bc_right, mode.z_a, mode.z_b, modes_cap,
                         weight_mode=mode.weight_mode, weight=mode.weight)
    terms = np.array([m.value(z) * m.value(zp) / (mode.lambda0 - m.lambda0)
                      for m in modes if m.index != mode.index])
    partial = np.cumsum(terms)
    # pairwise average of the last two partial sums damps the oscillatory tail
    return 0.5 * (partial[-1] + partial[-2])
