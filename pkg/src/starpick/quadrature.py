"""Scalar quadrature backends shared by the representation and transform code.

Three regimes cover everything this package integrates:

* bounded intervals with smooth (or declared-singular) integrands:
  adaptive Gauss-Kronrod (QUADPACK) with explicit breakpoints;
* semi-infinite integrals against exponentially decaying weights:
  a double-exponential exp-sinh rule, ``t = a + exp((pi/2) sinh u)``,
  trapezoid sums with level doubling;
* whole-line integrals with only algebraic decay: a core interval plus
  doubling shells, stopping when increments settle or declaring sustained
  growth.

All routines are pure; each call owns its own workspace.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

from scipy import integrate

ABS_TOL = 1e-12
REL_TOL = 1e-10

_RADIUS_CAP_DEFAULT = float(2**20)


def radius_cap() -> float:
    """Truncation-radius cap, overridable through ``HS_MAX_RADIUS``."""
    return float(os.environ.get("HS_MAX_RADIUS", _RADIUS_CAP_DEFAULT))


class NonConvergenceError(ArithmeticError):
    """An integral failed to settle; carries the residual and last iterates."""

    def __init__(self, message, residual=None, iterates=()):
        super().__init__(message)
        self.residual = residual
        self.iterates = tuple(iterates)


def quad_real(f, a, b, *, points=None, abs_tol=ABS_TOL, rel_tol=REL_TOL, limit=400):
    """Adaptive Gauss-Kronrod on [a, b] for a real integrand.

    ``points`` lists known interior singular or kink locations; values
    outside (a, b) are dropped.  Raises :class:`NonConvergenceError` when the
    QUADPACK residual stays large relative to the result.
    """
    interior = None
    if points is not None and math.isfinite(a) and math.isfinite(b):
        interior = sorted(p for p in points if a < p < b)
        if not interior:
            interior = None
    out = integrate.quad(
        f, a, b, points=interior, epsabs=abs_tol, epsrel=rel_tol,
        limit=limit, full_output=1,
    )
    val, err = out[0], out[1]
    if err > 1e-5 * max(1.0, abs(val)):
        raise NonConvergenceError(
            f"quadrature residual {err:.3e} on [{a}, {b}]", residual=err,
            iterates=(val,),
        )
    return val


def quad_complex(f, a, b, **kwargs):
    """Adaptive quadrature of a complex integrand (real and imaginary parts)."""
    re = quad_real(lambda t: f(t).real, a, b, **kwargs)
    im = quad_real(lambda t: f(t).imag, a, b, **kwargs)
    return complex(re, im)


def exp_sinh(f, a, *, tol=1e-12, max_level=10):
    """Double-exponential rule for ``int_a^inf f(t) dt``.

    Substitutes ``t = a + exp((pi/2) sinh u)`` and applies the trapezoid rule
    in u with step halving.  Suited to integrands that decay at least
    exponentially; terms past the overflow horizon are treated as zero, so do
    not use this for algebraic tails (those are handled by the reciprocal
    substitution in the measure layer).  Works for complex-valued f.
    """
    half_pi = 0.5 * math.pi

    def term(u):
        g = half_pi * math.sinh(u)
        if g > 690.0:
            return 0.0
        w = math.exp(g)
        return f(a + w) * (w * half_pi * math.cosh(u))

    def level_sum(h):
        total = term(0.0)
        for direction in (1, -1):
            k = 1
            quiet = 0
            while quiet < 3:
                v = term(direction * k * h)
                total += v
                if abs(v) < tol * (1.0 + abs(total)):
                    quiet += 1
                else:
                    quiet = 0
                k += 1
                if k > 400:
                    break
        return total * h

    h = 1.0
    prev = level_sum(h)
    for _ in range(max_level):
        h *= 0.5
        cur = level_sum(h)
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return cur
        prev = cur
    raise NonConvergenceError(
        "exp-sinh rule did not settle", residual=abs(cur - prev),
        iterates=(prev, cur),
    )


@dataclass(frozen=True)
class LineIntegral:
    """Outcome of a doubling-shell integral over the real line."""

    value: float
    converged: bool
    radius: float
    increments: tuple

    @property
    def diverged(self) -> bool:
        return not self.converged


def doubling_line_integral(
    f,
    *,
    points=(),
    r0=16.0,
    tol_abs=1e-10,
    tol_rel=1e-9,
    max_radius=None,
    growth_run=6,
    quad_abs=ABS_TOL,
    quad_rel=REL_TOL,
):
    """Integrate f over the real line by a core interval plus doubling shells.

    Stops when two consecutive shell increments fall below tolerance
    (converged) or after ``growth_run`` consecutive increments that each
    exceed tolerance without shrinking (sustained growth, reported as
    non-converged).  The radius never exceeds ``max_radius`` (default: the
    ``HS_MAX_RADIUS`` cap).
    """
    cap = radius_cap() if max_radius is None else float(max_radius)
    r = max(float(r0), 1.0)
    r = min(r, cap)
    total = quad_real(f, -r, r, points=points, abs_tol=quad_abs, rel_tol=quad_rel)
    increments = []
    settled = 0
    growing = 0
    converged = False
    while r < cap:
        shell = quad_real(f, r, 2 * r, abs_tol=quad_abs, rel_tol=quad_rel)
        shell += quad_real(f, -2 * r, -r, abs_tol=quad_abs, rel_tol=quad_rel)
        total += shell
        increments.append(shell)
        r *= 2
        scale = max(1.0, abs(total))
        if abs(shell) < max(tol_abs, tol_rel * scale):
            settled += 1
            growing = 0
            if settled >= 2:
                converged = True
                break
        else:
            settled = 0
            if len(increments) >= 2 and abs(shell) >= 0.5 * abs(increments[-2]):
                growing += 1
            else:
                growing = 0
            if growing >= growth_run:
                break
    return LineIntegral(total, converged, r, tuple(increments))
