"""Rayleigh-Schrodinger series for the interface coupling operator.

The first-order-form perturbation acts only at layer joints: its matrix
elements are M[m][n] = sum_j w_j phi_m(z_j) phi_n'(z_j), with w_j either the
log weight ln sqrt(r_j/r_{j+1}) or its "averaged one-sided derivative"
replacement xi2(sqrt(r_j/r_{j+1})). The operator is non-Hermitian, so both
index orders matter; the convention is pinned by requiring lambda^(1) =
M[n][n].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import UNIT, ZerothMode, reduced_green, zeroth_modes
from .errors import TailEstimateExceeded
from .transform import (
    HarmonizationAddendum,
    TransformedProblem,
    interface_log_weights,
    xi2,
)

LOGARITHM = "logarithm"
XI2 = "xi2"


@dataclass(frozen=True)
class InterfaceCoupling:
    z_j: float
    weight: float
    mode: str


def couplings(tp: TransformedProblem, mode: str,
              addenda: tuple = ()) -> tuple:
    """Point couplings of the transformed problem, plus harmonization terms.

    Harmonization addenda always act with their own xi2-type factor
    regardless of the series mode.
    """
    out = []
    for zj, wlog in interface_log_weights(tp):
        if mode == LOGARITHM:
            w = wlog
        elif mode == XI2:
            w = xi2(math.exp(wlog))  # exp(wlog) = sqrt(r_left/r_right)
        else:
            raise ValueError(f"unknown parameter mode {mode!r}")
        out.append(InterfaceCoupling(z_j=zj, weight=w, mode=mode))
    for add in addenda:
        out.append(InterfaceCoupling(z_j=add.z_point, weight=add.factor, mode=mode))
    return tuple(out)


def matrix_element(m: ZerothMode, n: ZerothMode, cps: tuple) -> float:
    """M[m][n] = sum_j w_j phi_m(z_j) phi_n'(z_j)."""
    return float(sum(c.weight * m.value(c.z_j) * n.derivative(c.z_j) for c in cps))


@dataclass(frozen=True)
class PTSeries:
    n: int
    mode: str
    corrections: tuple
    tail_estimate: float

    @property
    def partial_sums(self) -> tuple:
        return tuple(np.cumsum(self.corrections))

    @property
    def total(self) -> float:
        return float(sum(self.corrections))


def _s_sum(mode: ZerothMode, tp: TransformedProblem, zj: float) -> float:
    """S = sum_{m != n} phi_m(zj) phi_m'(zj) / (lambda_n - lambda_m).

    Conditionally convergent; evaluated as half the slope of the diagonal of
    the reduced Green's function (closed form), which resums the series.
    """
    h = 1e-5 * (mode.z_b - mode.z_a)
    g = lambda t: reduced_green(mode, _bcs(tp)[0], _bcs(tp)[1], t, t)
    return (g(zj + h) - g(zj - h)) / (4.0 * h)


def _t_sum(mode: ZerothMode, tp: TransformedProblem, zj: float,
           modes_cap: int = 4000) -> tuple:
    """T = sum phi_m(zj) phi_m'(zj) / (lambda_n - lambda_m)^2, with tail bound.

    Terms fall off like 1/kappa^3, so plain truncation converges.
    """
    bl, br = _bcs(tp)
    modes = zeroth_modes(bl, br, mode.z_a, mode.z_b, modes_cap,
                         weight_mode=mode.weight_mode, weight=mode.weight)
    tot = 0.0
    for m in modes:
        if m.index == mode.index:
            continue
        tot += m.value(zj) * m.derivative(zj) / (mode.lambda0 - m.lambda0) ** 2
    kap_last = modes[-1].kappa
    tail = mode.norm ** 2 / kap_last ** 2  # |phi phi'| ~ norm^2 kappa, denom ~ kappa^4
    return tot, tail


def _bcs(tp: TransformedProblem):
    return tp.bc_left, tp.bc_right


def pt_lambda(n: int, order: int, tp: TransformedProblem, mode: str = XI2,
              addenda: tuple = (), modes_cap: int = 4000) -> PTSeries:
    """Eigenvalue corrections lambda^(0..order), order <= 3.

    For a single coupling point the second and third orders are separable:
    lambda^(2) = w^2 P S and lambda^(3) = w^3 (P S^2 - P^2 T) with
    P = phi_n(z_j) phi_n'(z_j); S comes from the closed-form reduced Green's
    function and T from an absolutely convergent spectral sum.
    """
    if not 0 <= order <= 3:
        raise ValueError("order must be 0..3")
    bl, br = _bcs(tp)
    basis = zeroth_modes(bl, br, tp.z_a, tp.z_b, n + 1)
    mn = basis[n]
    cps = couplings(tp, mode, addenda)
    corr = [mn.lambda0]
    tail = 0.0
    if not cps:
        return PTSeries(n=n, mode=mode,
                        corrections=tuple([mn.lambda0] + [0.0] * order),
                        tail_estimate=0.0)
    if order >= 1:
        corr.append(matrix_element(mn, mn, cps))
    if order >= 2:
        if len(cps) == 1:
            c = cps[0]
            P = float(mn.value(c.z_j) * mn.derivative(c.z_j))
            S = _s_sum(mn, tp, c.z_j)
            if order >= 2:
                corr.append(c.weight ** 2 * P * S)
            if order >= 3:
                T, t_tail = _t_sum(mn, tp, c.z_j, modes_cap)
                tail = abs(c.weight) ** 3 * P * P * t_tail
                corr.append(c.weight ** 3 * (P * S * S - P * P * T))
        else:
            c2, c3, tail = _generic_orders(mn, tp, cps, order, modes_cap)
            corr.append(c2)
            if order >= 3:
                corr.append(c3)
            if tail > 1e-9 * mn.lambda0:
                raise TailEstimateExceeded(
                    f"spectral tail {tail:.3e} exceeds 1e-9*lambda0")
    return PTSeries(n=n, mode=mode, corrections=tuple(corr[:order + 1]),
                    tail_estimate=tail)


def _generic_orders(mn: ZerothMode, tp: TransformedProblem, cps: tuple,
                    order: int, modes_cap: int):
    """Truncated spectral sums with pairwise tail averaging (multi-point)."""
    bl, br = _bcs(tp)
    modes = zeroth_modes(bl, br, tp.z_a, tp.z_b, modes_cap)
    n = mn.index
    V_nm = np.array([matrix_element(mn, m, cps) for m in modes])
    V_mn = np.array([matrix_element(m, mn, cps) for m in modes])
    lam = np.array([m.lambda0 for m in modes])
    mask = np.arange(len(modes)) != n
    den = mn.lambda0 - lam[mask]
    terms2 = V_nm[mask] * V_mn[mask] / den
    ps = np.cumsum(terms2)
    c2 = 0.5 * (ps[-1] + ps[-2])
    tail = abs(ps[-1] - ps[-2])
    c3 = 0.0
    if order >= 3:
        # double sum over m, k != n with the non-Hermitian product ordering
        zs = np.array([c.z_j for c in cps])
        ws = np.array([c.weight for c in cps])
        phi = np.array([[m.value(z) for z in zs] for m in modes])   # [m, j]
        dphi = np.array([[m.derivative(z) for z in zs] for m in modes])
        # V[m][k] = sum_j w_j phi_m(z_j) phi_k'(z_j)
        Vmk = (phi * ws) @ dphi.T
        a = V_nm[mask] / den          # over m
        b = V_mn[mask] / den          # over k
        c3_main = float(a @ Vmk[np.ix_(mask, mask)] @ b)
        c3_sub = matrix_element(mn, mn, cps) * float(np.sum(V_nm[mask] * V_mn[mask] / den ** 2))
        c3 = c3_main - c3_sub
    return float(c2), float(c3), float(tail)


def pt_lambda_eps_series(n: int, z1: float, mode: str = XI2,
                         modes_cap: int = 4000):
    """Benchmark eigenvalue as a cubic in eps: lambda0 + c1 e + c2 e^2 + c3 e^3.

    The coupling-power coefficients A_k (lambda = A1 w + A2 w^2 + A3 w^3)
    depend only on z1; re-expanding w(eps) gives c1 = A1/2, c2 = A2/4 and
    c3 = A3/8 - A1/96 in xi2 mode (w = 2 tanh(eps/4)), or A3/8 in log mode
    (w = eps/2 exactly).
    """
    from .problem import canonical_benchmark
    from .transform import transform

    tp = transform(canonical_benchmark(0.5, z1))  # eps only sets the weight
    bl, br = _bcs(tp)
    mn = zeroth_modes(bl, br, tp.z_a, tp.z_b, n + 1)[n]
    P = float(mn.value(z1) * mn.derivative(z1))
    S = _s_sum(mn, tp, z1)
    T, _ = _t_sum(mn, tp, z1, modes_cap)
    A1, A2, A3 = P, P * S, P * S * S - P * P * T
    c1, c2 = A1 / 2.0, A2 / 4.0
    c3 = A3 / 8.0 - (A1 / 96.0 if mode == XI2 else 0.0)
    return mn.lambda0, c1, c2, c3


@dataclass(frozen=True)
class SpectralSolution:
    mode: ZerothMode
    coefficients: np.ndarray  # c_m for every basis index, c_n = 0
    basis: tuple
    tail_estimate: float

    def value(self, z):
        out = self.mode.value(z)
        for c, m in zip(self.coefficients, self.basis):
            if c != 0.0:
                out = out + c * m.value(z)
        return out

    def derivative(self, z):
        out = self.mode.derivative(z)
        for c, m in zip(self.coefficients, self.basis):
            if c != 0.0:
                out = out + c * m.derivative(z)
        return out

    @property
    def norm_squared(self) -> float:
        return 1.0 + float(np.sum(self.coefficients ** 2))


def pt_eigenfunction(n: int, order: int, tp: TransformedProblem,
                     mode: str = XI2, modes_cap: int = 200) -> SpectralSolution:
    """phi_n^PT = phi_n + sum_{m != n} (M[m][n] / (lambda_n - lambda_m)) phi_m."""
    if not 0 <= order <= 1:
        raise ValueError("order must be 0 or 1")
    bl, br = _bcs(tp)
    basis = zeroth_modes(bl, br, tp.z_a, tp.z_b, max(modes_cap, n + 1))
    mn = basis[n]
    coeff = np.zeros(len(basis))
    if order >= 1:
        cps = couplings(tp, mode)
        for m in basis:
            if m.index == n:
                continue
            coeff[m.index] = matrix_element(m, mn, cps) / (mn.lambda0 - m.lambda0)
    tail = abs(coeff[-1]) if order >= 1 else 0.0
    return SpectralSolution(mode=mn, coefficients=coeff, basis=tuple(basis),
                            tail_estimate=tail)


def u_diag_smoothed(n: int, dz: float, tp: TransformedProblem,
                    quad_points: int = 4000):
    """Both pieces of the singular-form diagonal element on a smoothed step.

    finite_term -> phi_n(z1) phi_n'(z1) ln sqrt(r1/r2) as dz -> 0;
    divergent_term = -(1/16) int [(ln rt)']^2 phi_n^2 dz grows like 1/dz.
    """
    from .divergence import SmoothedStep

    if len(tp.layer_values) != 2:
        raise ValueError("smoothed diagonal element needs a two-layer problem")
    r1, r2 = tp.layer_values
    z1 = tp.z_breakpoints[0]
    step = SmoothedStep(r1=r1, r2=r2, z1=z1, dz=dz,
                        z_a=tp.z_a, z_b=tp.z_b)
    bl, br = _bcs(tp)
    mn = zeroth_modes(bl, br, tp.z_a, tp.z_b, n + 1)[n]
    z = step.quad_grid(quad_points)
    w = step.quad_weights(z)
    sig = step.dlog_r(z)
    phi, dphi = mn.value(z), mn.derivative(z)
    # first term via parts: int phi^2 sigma'/4 = -int phi phi' sigma / 2
    finite = float(np.sum(w * (-0.5) * phi * dphi * sig))
    divergent = float(np.sum(w * (-1.0 / 16.0) * sig ** 2 * phi ** 2))
    return finite, divergent
