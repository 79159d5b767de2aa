"""Problem data model: interval, coefficient, boundary conditions, geometry.

The equation solved throughout the package is

    psi'' + lam * r(x) * psi = 0  on [a, b]

with Robin-type boundary rows ``alpha_a psi(a) - psi'(a) = 0`` and
``alpha_b psi(b) + psi'(b) = 0`` (Dirichlet and Neumann are explicit kinds,
not alpha limits).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .errors import (
    DegenerateInterval,
    NonPositiveCoefficient,
    OutOfDomain,
    SingularFamilyPole,
    UnorderedBreakpoints,
)

DIRICHLET = "dirichlet"
NEUMANN = "neumann"
ROBIN = "robin"


@dataclass(frozen=True)
class LayeredCoefficient:
    """Piecewise-constant coefficient: values[k] on [breakpoints[k], breakpoints[k+1]].

    The value at an interior breakpoint is the left layer's (left-continuous
    convention; only one-sided limits matter for the matrix elements).
    """

    breakpoints: tuple
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "breakpoints", tuple(float(x) for x in self.breakpoints))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    @property
    def n_layers(self) -> int:
        return len(self.values)

    def layer_index(self, x: float) -> int:
        bp = self.breakpoints
        # left-continuous: x == bp[k] belongs to layer k-1
        k = int(np.searchsorted(bp, x, side="left")) - 1
        return min(max(k, 0), self.n_layers - 1)

    def __call__(self, x: float) -> float:
        return self.values[self.layer_index(x)]


@dataclass(frozen=True)
class SmoothFamilyCoefficient:
    """Three-parameter family r(x) = c / ((x - d1)^2 (x - d2)^2).

    Both poles d1, d2 must lie outside the problem interval; then r is smooth
    and strictly positive on it.
    """

    c: float
    d1: float
    d2: float

    def __call__(self, x: float) -> float:
        return self.c / ((x - self.d1) ** 2 * (x - self.d2) ** 2)


@dataclass(frozen=True)
class CallableCoefficient:
    """Wraps an arbitrary smooth positive function of x."""

    func: Callable[[float], float]

    def __call__(self, x: float) -> float:
        return float(self.func(x))


Coefficient = Union[LayeredCoefficient, SmoothFamilyCoefficient, CallableCoefficient]


@dataclass(frozen=True)
class BoundarySpec:
    """One boundary row. ``alpha`` is used only for Robin.

    Sign convention: left Robin is alpha*psi(a) - psi'(a) = 0, right Robin is
    alpha*psi(b) + psi'(b) = 0.
    """

    kind: str
    alpha: float = 0.0
    side: str = ""

    def __post_init__(self):
        if self.kind not in (DIRICHLET, NEUMANN, ROBIN):
            raise ValueError(f"unknown boundary kind {self.kind!r}")


@dataclass(frozen=True)
class Plane:
    pass


@dataclass(frozen=True)
class Cylindrical:
    r_min: float
    r_max: float


@dataclass(frozen=True)
class SLProblem:
    interval: tuple
    coefficient: Coefficient
    bc_left: BoundarySpec
    bc_right: BoundarySpec
    geometry: object = field(default_factory=Plane)


@dataclass(frozen=True)
class ValidatedProblem:
    """An SLProblem with all invariants checked.

    ``canonical_benchmark`` is set when the z-image of the problem is the
    two-layer unit-interval Dirichlet/Neumann setup used for precision
    sweeps.
    """

    problem: SLProblem
    canonical_benchmark: bool

    @property
    def a(self) -> float:
        return self.problem.interval[0]

    @property
    def b(self) -> float:
        return self.problem.interval[1]

    @property
    def coefficient(self) -> Coefficient:
        return self.problem.coefficient

    @property
    def bc_left(self) -> BoundarySpec:
        return self.problem.bc_left

    @property
    def bc_right(self) -> BoundarySpec:
        return self.problem.bc_right

    def r(self, x: float) -> float:
        return eval_coefficient(self, x)


def _z_length(coeff: Coefficient, a: float, b: float) -> float:
    if isinstance(coeff, LayeredCoefficient):
        bp = np.asarray(coeff.breakpoints)
        return float(np.sum(np.sqrt(coeff.values) * np.diff(bp)))
    from scipy.integrate import quad

    val, _ = quad(lambda x: math.sqrt(coeff(x)), a, b, limit=200)
    return val


def validate_problem(p: SLProblem) -> ValidatedProblem:
    """Check every structural invariant and tag the canonical benchmark."""
    a, b = p.interval
    if not (a < b):
        raise DegenerateInterval(f"interval [{a}, {b}] is degenerate")

    coeff = p.coefficient
    if isinstance(coeff, LayeredCoefficient):
        bp = np.asarray(coeff.breakpoints)
        if len(bp) != coeff.n_layers + 1 or coeff.n_layers < 1:
            raise UnorderedBreakpoints("need K >= 1 layers with K+1 breakpoints")
        if np.any(np.diff(bp) <= 0):
            raise UnorderedBreakpoints(f"breakpoints not strictly increasing: {bp}")
        if not math.isclose(bp[0], a) or not math.isclose(bp[-1], b):
            raise UnorderedBreakpoints("breakpoints must span the interval")
        if any(v <= 0 for v in coeff.values):
            raise NonPositiveCoefficient(f"layer values must be positive: {coeff.values}")
    elif isinstance(coeff, SmoothFamilyCoefficient):
        if coeff.c <= 0:
            raise NonPositiveCoefficient(f"family scale c={coeff.c} must be positive")
        for d in (coeff.d1, coeff.d2):
            if a <= d <= b:
                raise SingularFamilyPole(f"pole at {d} lies inside [{a}, {b}]")
    elif isinstance(coeff, CallableCoefficient):
        for x in np.linspace(a, b, 101):
            v = coeff(float(x))
            if not (v > 0 and math.isfinite(v)):
                raise NonPositiveCoefficient(f"coefficient is {v} at x={x}")
    else:
        raise TypeError(f"unsupported coefficient type {type(coeff)!r}")

    if isinstance(p.geometry, Cylindrical):
        g = p.geometry
        if not (0 < g.r_min < g.r_max):
            raise DegenerateInterval(f"need 0 < R_min < R_max, got {g}")
        if not (math.isclose(a, g.r_min) and math.isclose(b, g.r_max)):
            raise DegenerateInterval("cylindrical interval must be [R_min, R_max]")

    canonical = (
        isinstance(p.geometry, Plane)
        and isinstance(coeff, LayeredCoefficient)
        and coeff.n_layers in (1, 2)
        and p.bc_left.kind == DIRICHLET
        and p.bc_right.kind == NEUMANN
        and math.isclose(_z_length(coeff, a, b), 1.0, rel_tol=1e-12, abs_tol=1e-12)
    )
    return ValidatedProblem(problem=p, canonical_benchmark=canonical)


def eval_coefficient(p: ValidatedProblem, x: float) -> float:
    """r(x); at a layer breakpoint returns the left-layer value."""
    if not (p.a <= x <= p.b):
        raise OutOfDomain(f"x={x} outside [{p.a}, {p.b}]")
    return float(p.coefficient(x))


def canonical_benchmark(eps: float, z1: float) -> ValidatedProblem:
    """Two-layer x-space problem whose z-image is the unit benchmark.

    Layers r1 = e^eps on z in [0, z1] and r2 = 1 on [z1, 1], boundary
    conditions psi(a) = 0, psi'(b) = 0. Degenerate thicknesses (z1 = 0 or 1)
    collapse to a single layer.
    """
    if not (0.0 <= z1 <= 1.0):
        raise OutOfDomain(f"z1={z1} outside [0, 1]")
    r1 = math.exp(eps)
    x1 = z1 * math.exp(-eps / 2.0)  # layer-1 x-thickness giving z-thickness z1
    b = x1 + (1.0 - z1)
    if z1 <= 0.0:
        coeff = LayeredCoefficient((0.0, 1.0), (1.0,))
        b = 1.0
    elif z1 >= 1.0:
        b = math.exp(-eps / 2.0)
        coeff = LayeredCoefficient((0.0, b), (r1,))
    else:
        coeff = LayeredCoefficient((0.0, x1, b), (r1, 1.0))
    prob = SLProblem(
        interval=(0.0, b),
        coefficient=coeff,
        bc_left=BoundarySpec(DIRICHLET, side="left"),
        bc_right=BoundarySpec(NEUMANN, side="right"),
    )
    return validate_problem(prob)
