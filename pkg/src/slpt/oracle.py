"""Exact eigenvalues of layered problems via transfer matrices.

Inside a constant-r layer the z-space solution is trigonometric with
wavenumber sqrt(lam); across interfaces phi and the x-derivative
u = sqrt(r)*phi' are both continuous, so propagating the state (phi, u)
through the layers and applying the right boundary row gives a
characteristic determinant D(lam) that is entire in lam (no tangent poles).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import MissedRootSuspected, RootBracketingFailure
from .problem import DIRICHLET, NEUMANN
from .transform import TransformedProblem


def _layers(tp: TransformedProblem):
    edges = (tp.z_a,) + tp.z_breakpoints + (tp.z_b,)
    widths = [edges[k + 1] - edges[k] for k in range(len(edges) - 1)]
    return edges, widths, tp.layer_values


def _initial_state(tp: TransformedProblem):
    bc = tp.bc_left
    if bc.kind == DIRICHLET:
        return 0.0, 1.0
    if bc.kind == NEUMANN:
        return 1.0, 0.0
    # alpha*phi - w*phi' = 0 with u = w*phi': take phi = w-normalized unit
    return 1.0, bc.alpha


def _propagate(tp: TransformedProblem, lam: float):
    """State (phi, u) at every layer edge, left to right."""
    _, widths, vals = _layers(tp)
    k = math.sqrt(lam)
    phi, u = _initial_state(tp)
    states = [(phi, u)]
    for d, r in zip(widths, vals):
        s = math.sqrt(r)
        c, sn = math.cos(k * d), math.sin(k * d)
        phi, u = c * phi + sn / (k * s) * u, -s * k * sn * phi + c * u
        states.append((phi, u))
    return states


def determinant(tp: TransformedProblem, lam: float) -> float:
    """Continuous characteristic function whose zeros are the eigenvalues."""
    phi, u = _propagate(tp, lam)[-1]
    bc = tp.bc_right
    if bc.kind == DIRICHLET:
        return phi
    if bc.kind == NEUMANN:
        return u
    return bc.alpha * phi + u


@dataclass(frozen=True)
class OracleResult:
    eigenvalues: tuple
    residuals: tuple
    bracket_count: int


def _bisect(f, lo, hi, rel=1e-13):
    f_lo = f(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if (hi - lo) <= rel * mid:
            return mid
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if f_lo * f_mid < 0.0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)


def exact_eigenvalues(tp: TransformedProblem, count: int) -> OracleResult:
    """First ``count`` roots of the determinant, polished by bisection.

    Neumann-Neumann problems carry a zero eigenvalue incompatible with the
    positive-spectrum scans and sum rules; they are rejected up front.
    """
    if tp.bc_left.kind == NEUMANN and tp.bc_right.kind == NEUMANN:
        raise MissedRootSuspected("Neumann-Neumann problem has lambda = 0 in its spectrum")
    if not tp.layer_values:
        raise RootBracketingFailure("oracle requires a layered coefficient")
    L = tp.length
    f = lambda s: determinant(tp, s * s)

    def scan(step):
        roots, scale = [], 0.0
        s = step * 1e-6
        f_lo = f(s)
        while len(roots) < count:
            s_hi = s + step
            f_hi = f(s_hi)
            scale = max(scale, abs(f_hi))
            if f_lo * f_hi < 0.0 or f_hi == 0.0:
                roots.append(_bisect(f, s, s_hi, rel=5e-14))
            s, f_lo = s_hi, f_hi
            if s > (count + 20) * 8 * math.pi / L:
                raise RootBracketingFailure(
                    f"found {len(roots)}/{count} roots scanning sqrt(lambda) to {s}")
        return roots, scale

    step = math.pi / (8.0 * L)
    roots, scale = scan(step)
    # uniform-medium count estimate: roots below s grow like s*L/pi +- O(1)
    expected = roots[-1] * L / math.pi
    if abs(len(roots) - expected) > 2.5:
        roots, scale = scan(step / 4.0)
        expected = roots[-1] * L / math.pi
        if abs(len(roots) - expected) > 2.5:
            raise MissedRootSuspected(
                f"root count {len(roots)} vs uniform estimate {expected:.2f}")
    lams = tuple(s * s for s in roots)
    res = tuple(abs(determinant(tp, lam)) for lam in lams)
    return OracleResult(eigenvalues=lams, residuals=res,
                        bracket_count=int(roots[-1] / step) + 1)


def closed_form_half(eps: float) -> float:
    """Ground eigenvalue of the equal-z-layer benchmark: [2 arctan(e^{eps/4})]^2."""
    return (2.0 * math.atan(math.exp(eps / 4.0))) ** 2


def exact_eigenfunction(tp: TransformedProblem, lam: float):
    """Callable phi(z) for the eigenvalue lam, unit sqrt(r)-weighted norm.

    The weight sqrt(rt) dz = r dx is the natural orthogonality measure of
    the original problem.
    """
    from scipy.integrate import quad

    edges, widths, vals = _layers(tp)
    states = _propagate(tp, lam)
    k = math.sqrt(lam)

    def raw(z):
        zz = np.atleast_1d(np.asarray(z, dtype=float))
        out = np.empty_like(zz)
        for i, zi in enumerate(zz):
            j = int(np.searchsorted(edges, zi, side="right")) - 1
            j = min(max(j, 0), len(vals) - 1)
            phi0, u0 = states[j]
            dz = zi - edges[j]
            s = math.sqrt(vals[j])
            out[i] = phi0 * math.cos(k * dz) + u0 / (k * s) * math.sin(k * dz)
        return out if np.ndim(z) else float(out[0])

    nrm2 = 0.0
    for j in range(len(vals)):
        nrm2 += math.sqrt(vals[j]) * quad(lambda t: raw(t) ** 2,
                                          edges[j], edges[j + 1], limit=200)[0]
    c = 1.0 / math.sqrt(nrm2)
    return lambda z: c * raw(z)
