"""Canonical representations of Pick functions and their primitives.

Two interchangeable forms are implemented for the primitive class.  The
linear form integrates the shifted Cauchy kernel against the representing
function as a density,

    alpha z + beta + int (1/(t-z) - t/(1+t^2)) nu(t) dt,

and the logarithmic form integrates a principal-branch log kernel against
the induced jump measure,

    alpha z + beta + i pi nu(-inf) + int log( sqrt(1+t^2) / (t-z) ) d nu(t).

The two agree on the upper half-plane; keeping both routes independent makes
the agreement a meaningful numerical cross-check.  The branch of each log
factor is taken per factor and the factors are summed, never re-branched
through a product.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .measure import NuFunction, StieltjesMeasure, cdf
from .quadrature import exp_sinh, quad_complex, quad_real


def cauchy_kernel(t, z):
    return 1.0 / (t - z) - t / (1.0 + t * t)


def log_factor(t, z):
    """Principal log of sqrt(1+t^2)/(t-z); imaginary part in (0, pi) on H."""
    return 0.5 * math.log1p(t * t) - cmath.log(t - z)


def _kernel_antiderivative(t, z):
    # log((t-z)/sqrt(1+t^2)); tends to 0 at +inf and to -i pi at -inf
    return cmath.log(t - z) - 0.5 * math.log1p(t * t)


@dataclass(frozen=True)
class PickCanonical:
    """Pick function given by slope, offset, and a spectral measure."""

    alpha: float
    beta: float
    sigma: StieltjesMeasure

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError("slope must be non-negative")


def eval_pick(p: PickCanonical, z: complex) -> complex:
    """Evaluate off the real axis; the lower half-plane goes by reflection."""
    if z.imag == 0:
        raise ValueError("evaluation requires Im z != 0")
    if z.imag < 0:
        return eval_pick(p, z.conjugate()).conjugate()
    integral = p.sigma.integrate(lambda t: cauchy_kernel(t, z), complex_valued=True)
    return p.alpha * z + p.beta + integral


@dataclass(frozen=True)
class PrimitivePick:
    """Pick function that is also a primitive of a Pick function."""

    alpha: float
    beta: float
    nu: NuFunction

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError("slope must be non-negative")


def _require_upper(z: complex):
    if not z.imag > 0:
        raise ValueError("evaluation requires Im z > 0")


def _linear_form_integral(nu: NuFunction, z: complex) -> complex:
    """Kernel-against-density route: int (1/(t-z) - t/(1+t^2)) nu(t) dt."""
    m = nu.measure
    pts = list(m.breakpoints())

    def F(t):
        return _kernel_antiderivative(t, z)

    if not pts:
        return nu.baseline * (1j * math.pi)

    total = nu.baseline * (F(pts[0]) + 1j * math.pi)
    for a, b in zip(pts, pts[1:]):
        if _has_density_inside(m, a, b):
            total += quad_complex(
                lambda t: cauchy_kernel(t, z) * cdf(nu, t), a, b
            )
        else:
            c = cdf(nu, 0.5 * (a + b))
            total += c * (F(b) - F(a))

    nu_inf = nu.baseline + m.total_mass()
    last = pts[-1]
    total += nu_inf * (-F(last))
    if m.has_unbounded_support():
        # subtract the decaying remainder nu_inf - nu(t) beyond the last
        # structural point; substitute s = 1/t when that point is positive
        def rem(t):
            return m.mass_beyond(t)

        if last > 0:
            total -= quad_complex(
                lambda s: cauchy_kernel(1.0 / s, z) * rem(1.0 / s) / (s * s),
                0.0,
                1.0 / last,
            )
        else:
            total -= exp_sinh(lambda t: cauchy_kernel(t, z) * rem(t), last)
    return total


def _has_density_inside(m: StieltjesMeasure, a, b):
    mid_lo, mid_hi = a + 1e-12, b - 1e-12
    for p in m.pieces:
        if p.a < mid_hi and p.b > mid_lo:
            return True
    if m.exp_tail is not None and m.exp_tail.start < mid_hi:
        return True
    return False


def eval_primitive(p: PrimitivePick, z: complex, form: str = "log") -> complex:
    """Evaluate on the upper half-plane by either representation route."""
    _require_upper(z)
    if form == "log":
        integral = p.nu.measure.integrate(
            lambda t: log_factor(t, z), complex_valued=True
        )
        return p.alpha * z + p.beta + 1j * math.pi * p.nu.baseline + integral
    if form == "linear":
        return p.alpha * z + p.beta + _linear_form_integral(p.nu, z)
    raise ValueError(f"unknown form {form!r}")


def derivative(p: PrimitivePick, z: complex) -> complex:
    """Slope plus the Cauchy transform of the jump measure."""
    _require_upper(z)
    integral = p.nu.measure.integrate(lambda t: 1.0 / (t - z), complex_valued=True)
    return p.alpha + integral


def harmonic_parts(p: PrimitivePick, x: float, y: float):
    """Real and imaginary parts as separate real integrals, y > 0."""
    if not y > 0:
        raise ValueError("requires y > 0")
    m = p.nu.measure

    def u_kernel(t):
        return 0.5 * (math.log1p(t * t) - math.log(y * y + (t - x) * (t - x)))

    def v_kernel(t):
        return 0.5 * math.pi - math.atan((t - x) / y)

    U = p.alpha * x + p.beta + m.integrate(u_kernel)
    V = p.alpha * y + math.pi * p.nu.baseline + m.integrate(v_kernel)
    return U, V


def boundary_U(p: PrimitivePick, x: float) -> float:
    """Non-tangential boundary value of the real part at a non-atom point."""
    if p.nu.measure.atom_mass_at(x) > 0:
        raise ValueError("boundary singularity at atom")

    def kernel(t):
        return 0.5 * math.log1p(t * t) - math.log(abs(t - x))

    return p.alpha * x + p.beta + p.nu.measure.integrate(kernel, singular=(x,))


def boundary_V(p: PrimitivePick, x: float) -> float:
    """Boundary value of the imaginary part: pi times the representing function."""
    return math.pi * cdf(p.nu, x)
