"""Cylindrical radial problems: (1/R)(R psi')' + lam r psi = 0.

Two perturbative readings of the uniform hollow cylinder on [R_min, R_max]
with Dirichlet ends, z = R - R_min, Dirichlet-Dirichlet sine basis:

* ``hermitian_U``: Phi = sqrt(R) psi obeys Phi'' + lam Phi = U Phi with
  U(z) = -0.25/(z + R_min)^2;
* ``first_order_V``: psi itself obeys psi'' + lam psi = V psi with
  V = -(1/(z + R_min)) d/dz (non-Hermitian, faster-converging).

Matrix elements reduce to sine/cosine integrals over 1/(t + delta)^k, done
in closed form with Si/Ci, so the full-cylinder limit R_min -> 0 is cheap.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import trapezoid
from scipy.special import sici

# first zero of the Bessel function of order zero: the exact full-cylinder
# sqrt(lambda0) * R_max; stored, not recomputed
BESSEL_J0_FIRST_ZERO = 2.404825557695773

HERMITIAN_U = "hermitian_U"
FIRST_ORDER_V = "first_order_V"
GF = "gf"


def cyl_optimal_zmin(r: float, r_min: float) -> float:
    """Z_min making the transformed-radius operator vanish identically."""
    return math.sqrt(r) * r_min


def vcyl_coefficient(z, z_min: float, r: float, r_min: float):
    """(R(Z) - Z/sqrt(r)) / (R Z) with R(Z) = R_min + (Z - Z_min)/sqrt(r)."""
    zz = np.asarray(z, dtype=float)
    s = math.sqrt(r)
    R = r_min + (zz - z_min) / s
    return (R - zz / s) / (R * zz)


def _j_sin(c, delta):
    """int_0^1 sin(c t)/(t + delta) dt; odd in c."""
    c = np.asarray(c, dtype=float)
    ac = np.where(c == 0.0, 1.0, np.abs(c))  # dummy 1.0 masked out below
    si_hi, ci_hi = sici(ac * (1.0 + delta))
    si_lo, ci_lo = sici(ac * delta)
    val = (np.cos(ac * delta) * (si_hi - si_lo)
           - np.sin(ac * delta) * (ci_hi - ci_lo))
    return np.where(c == 0.0, 0.0, np.sign(c) * val)


def _i_cos(c, delta):
    """int_0^1 cos(c t)/(t + delta)^2 dt (by parts onto _j_sin)."""
    c = np.asarray(c, dtype=float)
    return 1.0 / delta - np.cos(c) / (1.0 + delta) - c * _j_sin(c, delta)


def _u_row(n: int, m_arr: np.ndarray, delta: float, length: float) -> np.ndarray:
    """U_{n m} = int phi_n U phi_m dz (symmetric)."""
    a = (n + 1) * math.pi
    b = (m_arr + 1) * math.pi
    return -(0.25 / length ** 2) * (_i_cos(np.abs(a - b), delta) - _i_cos(a + b, delta))


def _v_element(m_arr: np.ndarray, n: int, delta: float, length: float) -> np.ndarray:
    """V[m][n] = int phi_m (-(1/(z+R_min)) phi_n') dz."""
    a = (m_arr + 1) * math.pi
    b = (n + 1) * math.pi
    return -(b / length ** 2) * (_j_sin(a + b, delta) + _j_sin(a - b, delta))


def gf0_full_cylinder() -> float:
    """GF order-0 lowest eigenvalue (times R_max^2), exact R_min -> 0 limit.

    int G0 R dR = int_0^1 ln(1/R) R dR = 1/4 (the regular inner solution is
    constant in the limit), int Gamma0 dz = int z(1-z) dz = 1/6, and
    1/lambda0^(0) = 1/pi^2.
    """
    return 1.0 / (1.0 / math.pi ** 2 + 0.25 - 1.0 / 6.0)


def cyl_lambda0_sequence(formulation: str, orders: int = 2,
                         r_min: float = 1e-6, r_max: float = 1.0,
                         modes_cap: int = 4000) -> list:
    """Partial sums lambda0^PT(0..orders), scaled by R_max^2.

    The full-cylinder limit is the default surrogate r_min = 1e-6 * r_max;
    the GF formulation exposes only its order-0 value (taken analytically at
    r_min = 0, since the finite-hole value converges only logarithmically).
    """
    if formulation == GF:
        return [gf0_full_cylinder() * r_max ** 2]
    length = r_max - r_min
    delta = r_min / length
    lam0 = (math.pi / length) ** 2
    out = [lam0 * r_max ** 2]
    if orders >= 1:
        if formulation == HERMITIAN_U:
            first = float(_u_row(0, np.array([0]), delta, length)[0])
        elif formulation == FIRST_ORDER_V:
            first = float(_v_element(np.array([0]), 0, delta, length)[0])
        else:
            raise ValueError(f"unknown formulation {formulation!r}")
        out.append(out[-1] + first * r_max ** 2)
    if orders >= 2:
        m = np.arange(1, modes_cap)
        lam_m = ((m + 1) * math.pi / length) ** 2
        if formulation == HERMITIAN_U:
            u0m = _u_row(0, m, delta, length)
            second = float(np.sum(u0m * u0m / (lam0 - lam_m)))
        else:
            a0 = math.pi
            b_m = (m + 1) * math.pi
            # non-Hermitian product V[0][m] * V[m][0]
            v_0m = -(b_m / length ** 2) * (_j_sin(a0 + b_m, delta) + _j_sin(a0 - b_m, delta))
            v_m0 = -(a0 / length ** 2) * (_j_sin(b_m + a0, delta) + _j_sin(b_m - a0, delta))
            second = float(np.sum(v_0m * v_m0 / (lam0 - lam_m)))
        out.append(out[-1] + second * r_max ** 2)
    return out


def vcyl_first_order(z_min: float, r: float, r_min: float, r_max: float,
                     n: int = 0, quad_points: int = 20000) -> float:
    """|first-order element| of the transformed-radius operator V_cyl.

    V_cyl = coefficient(Z) d/dZ on the Dirichlet-Dirichlet sine basis over
    [Z_min, Z_max]; vanishes identically at the optimal Z_min.
    """
    s = math.sqrt(r)
    z_max = z_min + s * (r_max - r_min)
    z = np.linspace(z_min, z_max, quad_points + 1)[1:-1]
    L = z_max - z_min
    kap = (n + 1) * math.pi / L
    phi = math.sqrt(2.0 / L) * np.sin(kap * (z - z_min))
    dphi = math.sqrt(2.0 / L) * kap * np.cos(kap * (z - z_min))
    val = phi * vcyl_coefficient(z, z_min, r, r_min) * dphi
    return abs(float(trapezoid(val, z)))


def cyl_optimize_zmin(r: float, r_min: float, r_max: float,
                      lo: float = None, hi: float = None) -> float:
    """Golden-section minimization of the first-order V_cyl magnitude."""
    gr = (math.sqrt(5.0) - 1.0) / 2.0
    if lo is None:
        lo = 0.1 * math.sqrt(r) * r_min
    if hi is None:
        hi = 10.0 * math.sqrt(r) * r_min
    f = lambda zm: vcyl_first_order(zm, r, r_min, r_max)
    c = hi - gr * (hi - lo)
    d = lo + gr * (hi - lo)
    fc, fd = f(c), f(d)
    for _ in range(60):
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - gr * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + gr * (hi - lo)
            fd = f(d)
    return 0.5 * (lo + hi)
