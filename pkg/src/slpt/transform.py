"""Change of variable z(x) = z_a + int_a^x sqrt(r) and the two reduced forms.

In z the equation becomes phi'' + lam phi = V phi with either

* ``schrodinger`` form: V = U(z) phi, U = (rt^{1/4})'' / rt^{1/4}, where
  rt(z) = r(x(z)); the unknown is Phi = rt^{1/4} psi, and the Robin slopes
  pick up a derivative term of the weight, or
* ``first_order`` form: V = -(ln sqrt(rt))' d/dz acting on phi = psi
  unchanged; boundary slopes rescale by sqrt(rt) at the ends.

For layered coefficients both potentials are pure interface objects: delta
(and delta') distributions at the layer joints with log-ratio weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonSmoothCoefficient, OutOfDomain
from .problem import (
    DIRICHLET,
    NEUMANN,
    ROBIN,
    BoundarySpec,
    CallableCoefficient,
    LayeredCoefficient,
    SmoothFamilyCoefficient,
    ValidatedProblem,
)

SCHRODINGER = "schrodinger"
FIRST_ORDER = "first_order"


@dataclass(frozen=True)
class TransformedBoundary:
    """Boundary row in z: alpha*phi - (+) w*phi' = 0 at the left (right) end.

    ``w`` absorbs the sqrt(r) rescaling of the slope; Dirichlet rows keep
    w = 0, Neumann rows keep alpha = 0, w = 1 after normalisation.
    """

    kind: str
    alpha: float
    weight: float


@dataclass(frozen=True)
class TransformedProblem:
    z_a: float
    z_b: float
    z_breakpoints: tuple  # interior interface positions in z (may be empty)
    layer_values: tuple  # r on each z-layer (layered case), else ()
    form: str
    bc_left: TransformedBoundary
    bc_right: TransformedBoundary
    source: ValidatedProblem

    @property
    def length(self) -> float:
        return self.z_b - self.z_a

    def r_of_z(self, z: float) -> float:
        if not (self.z_a <= z <= self.z_b):
            raise OutOfDomain(f"z={z} outside [{self.z_a}, {self.z_b}]")
        if self.layer_values:
            edges = (self.z_a,) + self.z_breakpoints + (self.z_b,)
            k = int(np.searchsorted(edges, z, side="left")) - 1
            k = min(max(k, 0), len(self.layer_values) - 1)
            return self.layer_values[k]
        return self.source.r(self.x_of_z(z))

    def x_of_z(self, z: float) -> float:
        return x_map(self.source, z, z_a=self.z_a)


def _family_F(coeff: SmoothFamilyCoefficient, x: float) -> float:
    """Antiderivative of sqrt(c)/((x-d1)(x-d2)) up to sign and constant."""
    return (math.sqrt(coeff.c) / (coeff.d1 - coeff.d2)
            * math.log(abs((x - coeff.d1) / (x - coeff.d2))))


def z_map(p: ValidatedProblem, x: float, z_a: float = 0.0) -> float:
    """z(x) = z_a + int_a^x sqrt(r)."""
    coeff = p.coefficient
    if isinstance(coeff, SmoothFamilyCoefficient):
        sgn = 1.0 if _family_F(coeff, p.b) > _family_F(coeff, p.a) else -1.0
        return z_a + sgn * (_family_F(coeff, x) - _family_F(coeff, p.a))
    if isinstance(coeff, LayeredCoefficient):
        bp = np.asarray(coeff.breakpoints)
        vals = np.asarray(coeff.values)
        z = z_a
        for k in range(len(vals)):
            lo, hi = bp[k], bp[k + 1]
            if x <= lo:
                break
            z += math.sqrt(vals[k]) * (min(x, hi) - lo)
        return float(z)
    from scipy.integrate import quad

    val, _ = quad(lambda t: math.sqrt(coeff(t)), p.a, x, limit=200)
    return z_a + val


def x_map(p: ValidatedProblem, z: float, z_a: float = 0.0) -> float:
    """Inverse of z_map (monotone since r > 0)."""
    coeff = p.coefficient
    if isinstance(coeff, LayeredCoefficient):
        bp = np.asarray(coeff.breakpoints)
        vals = np.asarray(coeff.values)
        acc = z_a
        for k in range(len(vals)):
            s = math.sqrt(vals[k])
            dz = s * (bp[k + 1] - bp[k])
            if z <= acc + dz or k == len(vals) - 1:
                return float(bp[k] + (z - acc) / s)
            acc += dz
        return float(bp[-1])
    if isinstance(coeff, SmoothFamilyCoefficient):
        sgn = 1.0 if _family_F(coeff, p.b) > _family_F(coeff, p.a) else -1.0
        v = (_family_F(coeff, p.a) + sgn * (z - z_a)) * (coeff.d1 - coeff.d2) / math.sqrt(coeff.c)
        g = 1.0 if (p.a - coeff.d1) / (p.a - coeff.d2) > 0 else -1.0
        t = g * math.exp(v)
        return float((coeff.d1 - t * coeff.d2) / (1.0 - t))
    from scipy.optimize import brentq

    return float(brentq(lambda x: z_map(p, x, z_a) - z, p.a, p.b, xtol=1e-14))


def _transform_bc(bc: BoundarySpec, sqrt_r_end: float, side: str) -> TransformedBoundary:
    """Robin/Neumann slopes rescale: psi' = sqrt(r) dphi/dz at the ends."""
    if bc.kind == DIRICHLET:
        return TransformedBoundary(DIRICHLET, 1.0, 0.0)
    if bc.kind == NEUMANN:
        return TransformedBoundary(NEUMANN, 0.0, 1.0)
    return TransformedBoundary(ROBIN, bc.alpha, sqrt_r_end)


def transform(p: ValidatedProblem, form: str = FIRST_ORDER, z_a: float = 0.0) -> TransformedProblem:
    """Map a validated problem to its unit-speed z-image."""
    if form not in (SCHRODINGER, FIRST_ORDER):
        raise ValueError(f"unknown form {form!r}")
    coeff = p.coefficient
    z_b = z_map(p, p.b, z_a)
    if isinstance(coeff, LayeredCoefficient):
        zbp = tuple(z_map(p, x, z_a) for x in coeff.breakpoints[1:-1])
        layer_values = coeff.values
        s_left = math.sqrt(coeff.values[0])
        s_right = math.sqrt(coeff.values[-1])
    else:
        zbp = ()
        layer_values = ()
        s_left = math.sqrt(coeff(p.a))
        s_right = math.sqrt(coeff(p.b))
    return TransformedProblem(
        z_a=z_a,
        z_b=z_b,
        z_breakpoints=zbp,
        layer_values=layer_values,
        form=form,
        bc_left=_transform_bc(p.bc_left, s_left, "left"),
        bc_right=_transform_bc(p.bc_right, s_right, "right"),
        source=p,
    )


def interface_log_weights(tp: TransformedProblem) -> tuple:
    """(z_j, ln sqrt(r_left/r_right)) for each interior interface."""
    vals = tp.layer_values
    if not vals:
        raise NonSmoothCoefficient("interface weights require a layered coefficient")
    out = []
    for j, zj in enumerate(tp.z_breakpoints):
        out.append((zj, 0.5 * math.log(vals[j] / vals[j + 1])))
    return tuple(out)


def potential_U(tp: TransformedProblem, z: float, h: float = 1e-4) -> float:
    """U(z) = (rt^{1/4})'' / rt^{1/4} for a smooth coefficient (5-point FD)."""
    if tp.layer_values:
        raise NonSmoothCoefficient("U(z) is distributional for layered coefficients")
    if not (tp.z_a + 2 * h <= z <= tp.z_b - 2 * h):
        raise OutOfDomain(f"z={z} too close to the ends for step h={h}")

    def rho(zz: float) -> float:
        return tp.r_of_z(zz) ** 0.25

    d2 = (-rho(z + 2 * h) + 16 * rho(z + h) - 30 * rho(z)
          + 16 * rho(z - h) - rho(z - 2 * h)) / (12 * h * h)
    return d2 / rho(z)


def constant_U(p: ValidatedProblem) -> float:
    """Closed-form U for the smooth family r = c/((x-d1)^2 (x-d2)^2).

    For this family rt^{1/4} satisfies (rt^{1/4})'' = U0 rt^{1/4} with the
    constant U0 = (d1 - d2)^2 / (4 c).
    """
    coeff = p.coefficient
    if not isinstance(coeff, SmoothFamilyCoefficient):
        raise NonSmoothCoefficient("constant U holds only for the smooth family")
    return (coeff.d1 - coeff.d2) ** 2 / (4.0 * coeff.c)


def xi2(s: float) -> float:
    """xi2(s) = 2(s-1)/(s+1); odd under s -> 1/s and |xi2| < 2 for s > 0."""
    return 2.0 * (s - 1.0) / (s + 1.0)


@dataclass(frozen=True)
class HarmonizationAddendum:
    """Extra interface-style coupling created by averaging a boundary weight.

    Contributes factor * phi_m(z_point) * phi_n'(z_point) to matrix elements,
    exactly like an interface term.
    """

    z_point: float
    factor: float
    side: str


def harmonize(tp: TransformedProblem, side: str):
    """Replace one Robin end's derivative weight by <sqrt(r)>.

    Returns the modified problem and the compensating matrix-element
    addendum. Only Robin ends carry a weight to average.
    """
    from .errors import NotRobinEnd

    bc = tp.bc_left if side == "left" else tp.bc_right
    if bc.kind != ROBIN:
        raise NotRobinEnd(f"{side} end is {bc.kind}, not robin")
    avg = mean_sqrt_r(tp)
    new_bc = TransformedBoundary(ROBIN, bc.alpha, avg)
    if side == "left":
        s_end = math.sqrt(tp.r_of_z(tp.z_a) if not tp.layer_values else tp.layer_values[0])
        factor = xi2(avg / s_end)
        z_point = tp.z_a
        new_tp = TransformedProblem(tp.z_a, tp.z_b, tp.z_breakpoints, tp.layer_values,
                                    tp.form, new_bc, tp.bc_right, tp.source)
    else:
        s_end = math.sqrt(tp.layer_values[-1] if tp.layer_values else tp.r_of_z(tp.z_b))
        factor = xi2(s_end / avg)
        z_point = tp.z_b
        new_tp = TransformedProblem(tp.z_a, tp.z_b, tp.z_breakpoints, tp.layer_values,
                                    tp.form, tp.bc_left, new_bc, tp.source)
    return new_tp, HarmonizationAddendum(z_point=z_point, factor=factor, side=side)


def mean_sqrt_r(tp: TransformedProblem) -> float:
    """<sqrt(r)> = (1/L) int sqrt(rt(z)) dz over the z-interval."""
    if tp.layer_values:
        edges = np.asarray((tp.z_a,) + tp.z_breakpoints + (tp.z_b,))
        widths = np.diff(edges)
        return float(np.sum(np.sqrt(tp.layer_values) * widths) / tp.length)
    from scipy.integrate import quad

    val, _ = quad(lambda z: math.sqrt(tp.r_of_z(z)), tp.z_a, tp.z_b, limit=200)
    return val / tp.length
