"""Pick functions with Pick logarithmic derivative: the exponential class.

A member is ``phi = exp(f)`` where f is a Pick primitive whose representing
function stays in [0, 1].  This module evaluates f and phi, computes their
boundary values, detects the one-growing-point exceptional family (powers of
``1/(a-z)``), and runs the four-criterion grid test that corroborates or
refutes membership.  The grid test is a falsifier: "member" means no
violation was found at the sampled resolution.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .measure import NuFunction, cdf, support_count_at_least_two, total_mass
from .pick import (
    PrimitivePick,
    _kernel_antiderivative,
    boundary_U,
    eval_primitive,
)

_VIOLATION_TOL = 1e-9


@dataclass(frozen=True)
class LogPickPrimitive:
    """Pick primitive with representing function ranged in [0, 1]."""

    beta: float
    nu: NuFunction

    def __post_init__(self):
        top = self.nu.baseline + total_mass(self.nu.measure)
        if self.nu.baseline < -1e-12 or top > 1.0 + 1e-9:
            raise ValueError("representing function must stay within [0, 1]")

    def as_primitive(self) -> PrimitivePick:
        return PrimitivePick(0.0, self.beta, self.nu)


@dataclass(frozen=True)
class PLogFunction:
    """Exponential of a log-Pick primitive."""

    log_part: LogPickPrimitive


@dataclass(frozen=True)
class ExceptionalParams:
    """Parameters of the one-growing-point family.

    The function is ``beta + i pi theta1 (1 - theta) + theta *
    log(sqrt(1+a^2)/(a-z))``; for theta = 0 the location is undefined and
    reported as None, for theta = 1 the free theta1 is reported as 0.
    """

    theta: float
    theta1: float
    a: float = None
    beta: float = 0.0


def eval_f(L: LogPickPrimitive, z: complex, form: str = "log") -> complex:
    """Evaluate the log-part on the upper half-plane."""
    return eval_primitive(L.as_primitive(), z, form=form)


def eval_phi(P: PLogFunction, z: complex) -> complex:
    return cmath.exp(eval_f(P.log_part, z))


def boundary_phi(P: PLogFunction, x: float) -> complex:
    """Non-tangential boundary value at a non-atom point.

    Modulus comes from the boundary real part of the log, phase from pi times
    the representing function.
    """
    L = P.log_part
    u = boundary_U(L.as_primitive(), x)
    return cmath.exp(complex(u, math.pi * cdf(L.nu, x)))


def detect_exceptional(n: NuFunction, beta: float = 0.0):
    """Parameters of the one-support-point family, or None.

    Returns None exactly when the support holds at least two points.
    """
    if support_count_at_least_two(n.measure):
        return None
    if n.measure.atoms:
        a, theta = n.measure.atoms[0]
        theta1 = 0.0 if theta >= 1.0 else n.baseline / (1.0 - theta)
        return ExceptionalParams(theta=theta, theta1=theta1, a=a, beta=beta)
    return ExceptionalParams(theta=0.0, theta1=n.baseline, a=None, beta=beta)


def exceptional_phi(params: ExceptionalParams):
    """Closed-form exponential of a one-growing-point log-part."""
    const = cmath.exp(
        complex(params.beta, math.pi * params.theta1 * (1.0 - params.theta))
    )
    if params.theta == 0.0 or params.a is None:
        return lambda z: const
    a, theta = params.a, params.theta
    scale = (1.0 + a * a) ** (0.5 * theta)

    def phi(z):
        return const * scale * cmath.exp(-theta * cmath.log(a - z))

    return phi


def v_from_nu(n: NuFunction, beta: float, x: float) -> float:
    """Boundary imaginary part induced by a representing function.

    Requires at least two growing points and a non-atom location.
    """
    if not support_count_at_least_two(n.measure):
        raise ValueError("exceptional class, boundary-density formula inapplicable")
    if n.measure.atom_mass_at(x) > 0:
        raise ValueError("boundary singularity at atom")

    def kernel(t):
        return 0.5 * math.log1p(t * t) - math.log(abs(t - x))

    u = beta + n.measure.integrate(kernel, singular=(x,))
    return math.sin(math.pi * cdf(n, x)) * math.exp(u)


# ---------------------------------------------------------------------------
# crafted boundary-phase functions


@dataclass(frozen=True)
class StepPhaseLogPick:
    """Log-Pick function whose boundary phase density is piecewise constant.

    ``steps`` lists (a, b, rho) with 0 <= rho <= 1; everything is in closed
    form, which makes these handy for crafting members and non-members (a
    non-monotone rho leaves the primitive class while staying log-Pick).
    """

    beta: float
    steps: tuple

    def __post_init__(self):
        for a, b, rho in self.steps:
            if not (a < b and -1e-12 <= rho <= 1.0 + 1e-12):
                raise ValueError("steps need a < b and rho within [0, 1]")

    def f(self, z: complex) -> complex:
        if not z.imag > 0:
            raise ValueError("evaluation requires Im z > 0")
        total = complex(self.beta, 0.0)
        for a, b, rho in self.steps:
            total += rho * (_kernel_antiderivative(b, z) - _kernel_antiderivative(a, z))
        return total

    def phi(self, z: complex) -> complex:
        return cmath.exp(self.f(z))

    def rho(self, x: float) -> float:
        for a, b, rho in self.steps:
            if a < x < b:
                return rho
        return 0.0

    def boundary_u(self, x: float) -> float:
        def anti(t):
            return math.log(abs(t - x)) - 0.5 * math.log1p(t * t)

        total = self.beta
        for a, b, rho in self.steps:
            total += rho * (anti(b) - anti(a))
        return total

    def boundary_v(self, x: float) -> float:
        return math.sin(math.pi * self.rho(x)) * math.exp(self.boundary_u(x))


# ---------------------------------------------------------------------------
# membership grid test


@dataclass(frozen=True)
class GridSpec:
    xs: tuple
    ys: tuple

    def __post_init__(self):
        object.__setattr__(self, "xs", tuple(sorted(float(x) for x in self.xs)))
        object.__setattr__(self, "ys", tuple(sorted(float(y) for y in self.ys)))
        if len(self.xs) < 2 or len(self.ys) < 2:
            raise ValueError("grid needs at least two x and two y values")


def default_grid(support=()):
    """Log-spaced columns on [-10, 10] plus support-adjacent columns.

    Phase-monotonicity violations concentrate near the support, hence the
    extra columns around each hinted point.
    """
    base = np.logspace(math.log10(0.05), 1.0, 8)
    xs = set(np.concatenate([-base, base]).tolist())
    for s in support:
        for off in (0.05, 0.5):
            xs.add(s - off)
            xs.add(s + off)
    return GridSpec(xs=tuple(xs), ys=(0.05, 0.1, 0.5, 1.0, 5.0))


@dataclass(frozen=True)
class CriterionVerdict:
    passed: bool
    worst_violation: float
    location: tuple = None


@dataclass(frozen=True)
class MembershipReport:
    criteria: dict
    overall: str
    detail: str = ""

    def passed(self, k: int) -> bool:
        return self.criteria[k].passed


def membership_test(phi, grid: GridSpec = None, tol: float = _VIOLATION_TOL):
    """Four-way grid test for membership of the exponential class.

    (1) modulus strictly decreasing in y along columns;
    (2) continuous argument strictly increasing in x along rows;
    (3) positive two-point determinant of (Re, Im) pairs along rows;
    (4) Re * d(Re)/dy + Im * d(Im)/dy negative, by central differences.

    Violations smaller than ``tol`` are ignored.  A point where evaluation
    fails makes the report inconclusive.
    """
    if grid is None:
        grid = default_grid()
    xs, ys = grid.xs, grid.ys

    vals = {}
    try:
        for y in ys:
            for x in xs:
                w = phi(complex(x, y))
                if not (math.isfinite(w.real) and math.isfinite(w.imag)):
                    raise ArithmeticError("non-finite value")
                vals[(x, y)] = w
    except Exception:
        empty = CriterionVerdict(False, math.inf, (x, y))
        return MembershipReport(
            criteria={k: empty for k in (1, 2, 3, 4)},
            overall="inconclusive",
            detail=f"evaluation failed at x={x}, y={y}",
        )

    worst = {k: (0.0, None) for k in (1, 2, 3, 4)}

    def record(k, violation, where):
        if violation > worst[k][0]:
            worst[k] = (violation, where)

    # (1) modulus decreasing in y
    for x in xs:
        for y1, y2 in zip(ys, ys[1:]):
            v = abs(vals[(x, y2)]) - abs(vals[(x, y1)])
            record(1, v, (x, y1, y2))

    # (2) unwrapped argument increasing in x; starting at the leftmost
    # column, where the boundary phase has not accumulated yet
    for y in ys:
        row = np.array([vals[(x, y)] for x in xs])
        args = np.unwrap(np.angle(row))
        for i in range(len(xs) - 1):
            record(2, args[i] - args[i + 1], (xs[i], xs[i + 1], y))

    # (3) pairwise determinants along rows
    for y in ys:
        for i in range(len(xs)):
            wi = vals[(xs[i], y)]
            for j in range(i + 1, len(xs)):
                wj = vals[(xs[j], y)]
                det = wi.real * wj.imag - wj.real * wi.imag
                record(3, -det, (xs[i], xs[j], y))

    # (4) radial derivative of the squared modulus
    for y in ys:
        h = 1e-4 * y
        for x in xs:
            up = phi(complex(x, y + h))
            dn = phi(complex(x, y - h))
            w = vals[(x, y)]
            uy = (up.real - dn.real) / (2 * h)
            vy = (up.imag - dn.imag) / (2 * h)
            record(4, w.real * uy + w.imag * vy, (x, y))

    criteria = {
        k: CriterionVerdict(worst[k][0] <= tol, worst[k][0], worst[k][1])
        for k in (1, 2, 3, 4)
    }
    overall = "member" if all(c.passed for c in criteria.values()) else "non-member"
    return MembershipReport(criteria=criteria, overall=overall)
