"""Finite descriptions of Lebesgue-Stieltjes measures on the line.

A measure is a list of atoms plus piecewise densities.  Bounded pieces carry
polynomial densities of degree at most 3; unbounded pieces use the reciprocal
basis ``q(1/t)/t^2`` (the image of a polynomial density under ``t -> 1/t``),
which keeps masses and cumulatives in closed form.  An optional exponential
tail ``scale * exp(-psi(t))`` on ``[start, inf)`` covers convex-weight
constructions.

A non-decreasing representing function is such a measure together with a
baseline value at -infinity; its evaluation uses the midpoint convention at
atoms (a jump contributes half its mass at the jump location).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .quadrature import exp_sinh, quad_complex, quad_real

_MASS_TOL = 1e-12


def _poly_eval(coeffs, x):
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_antider(coeffs):
    return (0.0,) + tuple(c / (k + 1) for k, c in enumerate(coeffs))


@dataclass(frozen=True)
class DensityPiece:
    """One density piece: polynomial on [a, b], or its reciprocal image.

    ``basis="poly"``  : density(t) = sum c_k t^k on a bounded [a, b].
    ``basis="recip"`` : density(t) = (sum c_k (1/t)^k) / t^2 on [a, b],
                        0 < a, b may be inf.
    """

    a: float
    b: float
    coeffs: tuple
    basis: str = "poly"

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coeffs)
        if len(coeffs) > 4:
            raise ValueError("density degree at most 3")
        coeffs = coeffs + (0.0,) * (4 - len(coeffs))
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        if self.basis not in ("poly", "recip"):
            raise ValueError(f"unknown density basis {self.basis!r}")
        if not self.a < self.b:
            raise ValueError("piece interval must satisfy a < b")
        if self.basis == "poly" and not math.isfinite(self.b):
            raise ValueError("polynomial pieces must be bounded")
        if self.basis == "recip" and self.a <= 0.0:
            raise ValueError("reciprocal pieces live on the positive axis")
        if self._min_density() < -1e-12:
            raise ValueError("density must be non-negative on its interval")

    def _s_range(self):
        # reciprocal pieces in the substituted variable s = 1/t
        s_lo = 0.0 if math.isinf(self.b) else 1.0 / self.b
        return s_lo, 1.0 / self.a

    def _min_density(self):
        if self.basis == "poly":
            ts = np.linspace(self.a, self.b, 257)
            return min(_poly_eval(self.coeffs, t) for t in ts)
        s_lo, s_hi = self._s_range()
        ss = np.linspace(s_lo, s_hi, 257)
        return min(_poly_eval(self.coeffs, s) for s in ss)

    def density(self, t):
        if t < self.a or t > self.b:
            return 0.0
        if self.basis == "poly":
            return _poly_eval(self.coeffs, t)
        return _poly_eval(self.coeffs, 1.0 / t) / (t * t)

    def mass(self):
        return self.cumulative(self.b if math.isfinite(self.b) else math.inf)

    def cumulative(self, x):
        """Mass of the piece on (-inf, x)."""
        if x <= self.a:
            return 0.0
        hi = min(x, self.b)
        anti = _poly_antider(self.coeffs)
        if self.basis == "poly":
            return _poly_eval(anti, hi) - _poly_eval(anti, self.a)
        # int_a^hi q(1/t)/t^2 dt = int_{1/hi}^{1/a} q(s) ds
        s_hi = 1.0 / self.a
        s_lo = 0.0 if math.isinf(hi) else 1.0 / hi
        return _poly_eval(anti, s_hi) - _poly_eval(anti, s_lo)

    def mass_beyond(self, x):
        return self.mass() - self.cumulative(x)

    def integrate(self, g, *, complex_valued=False, singular=(), window=None):
        """Integral of g against this piece's density, optionally clipped."""
        lo, hi = self.a, self.b
        if window is not None:
            lo, hi = max(lo, window[0]), min(hi, window[1])
            if lo >= hi:
                return 0j if complex_valued else 0.0
        quad = quad_complex if complex_valued else quad_real
        if self.basis == "poly":
            return quad(
                lambda t: g(t) * _poly_eval(self.coeffs, t), lo, hi,
                points=singular,
            )
        s_hi = 1.0 / lo
        s_lo = 0.0 if math.isinf(hi) else 1.0 / hi
        s_pts = tuple(1.0 / p for p in singular if p > 0)
        return quad(
            lambda s: g(1.0 / s) * _poly_eval(self.coeffs, s), s_lo, s_hi,
            points=s_pts,
        )


@dataclass(frozen=True)
class ExpTail:
    """Density ``scale * exp(-psi(t))`` on [start, inf).

    ``psi`` must make the density integrable; constructors that build these
    tails verify convexity of psi and integrability of exp(-gamma psi) for a
    declared gamma > 1 before instantiation.
    """

    start: float
    psi: object
    scale: float = 1.0
    psi_coeffs: tuple = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "start", float(self.start))
        object.__setattr__(self, "scale", float(self.scale))
        if self.scale < 0:
            raise ValueError("tail scale must be non-negative")
        if self.psi_coeffs is not None:
            object.__setattr__(
                self, "psi_coeffs", tuple(float(c) for c in self.psi_coeffs)
            )

    def density(self, t):
        if t < self.start:
            return 0.0
        with np.errstate(over="ignore"):
            return self.scale * math.exp(-min(self.psi(t), 745.0))

    def mass(self):
        if "mass" not in self._cache:
            self._cache["mass"] = exp_sinh(self.density, self.start)
        return self._cache["mass"]

    def cumulative(self, x):
        if x <= self.start:
            return 0.0
        if math.isinf(x):
            return self.mass()
        return quad_real(self.density, self.start, x)

    def mass_beyond(self, x):
        if x <= self.start:
            return self.mass()
        return exp_sinh(self.density, x)

    def integrate(self, g, *, complex_valued=False, singular=(), window=None):
        def weighted(t):
            d = self.density(t)
            # skip g where the weight has underflowed; g may overflow there
            return 0.0 if d == 0.0 else g(t) * d

        lo = self.start
        if window is not None:
            lo = max(lo, window[0])
            if not math.isinf(window[1]):
                quad = quad_complex if complex_valued else quad_real
                if lo >= window[1]:
                    return 0j if complex_valued else 0.0
                return quad(weighted, lo, window[1], points=singular)
        return exp_sinh(weighted, lo)


def exp_tail_from_coeffs(start, psi_coeffs, scale=1.0):
    """Exponential tail whose psi is the polynomial with given coefficients."""
    coeffs = tuple(float(c) for c in psi_coeffs)

    def psi(t):
        return _poly_eval(coeffs, t)

    return ExpTail(start=start, psi=psi, scale=scale, psi_coeffs=coeffs)


@dataclass(frozen=True)
class StieltjesMeasure:
    """Atoms plus piecewise densities; immutable after construction."""

    atoms: tuple = ()
    pieces: tuple = ()
    exp_tail: ExpTail = None

    def __post_init__(self):
        atoms = tuple((float(t), float(m)) for t, m in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        locs = [t for t, _ in atoms]
        if any(m <= 0 for _, m in atoms):
            raise ValueError("atom masses must be strictly positive")
        if any(b <= a for a, b in zip(locs, locs[1:])):
            raise ValueError("atom locations must be strictly increasing")
        pieces = tuple(sorted(self.pieces, key=lambda p: p.a))
        object.__setattr__(self, "pieces", pieces)
        for p, q in zip(pieces, pieces[1:]):
            if p.b > q.a + 1e-15:
                raise ValueError("density pieces must not overlap")
        if not math.isfinite(self.total_mass()):
            raise ValueError("total mass must be finite")

    # -- structure -------------------------------------------------------

    def atom_mass_at(self, x, tol=0.0):
        for t, m in self.atoms:
            if abs(t - x) <= tol or t == x:
                return m
        return 0.0

    def breakpoints(self):
        """Sorted finite structural points (atoms, piece edges, tail start)."""
        pts = {t for t, _ in self.atoms}
        for p in self.pieces:
            pts.add(p.a)
            if math.isfinite(p.b):
                pts.add(p.b)
        if self.exp_tail is not None:
            pts.add(self.exp_tail.start)
        return tuple(sorted(pts))

    def has_unbounded_support(self):
        if self.exp_tail is not None:
            return True
        return any(math.isinf(p.b) for p in self.pieces)

    def support_min(self):
        vals = [t for t, _ in self.atoms] + [p.a for p in self.pieces if p.mass() > 0]
        if self.exp_tail is not None:
            vals.append(self.exp_tail.start)
        return min(vals) if vals else math.inf

    def support_max(self):
        if self.has_unbounded_support():
            return math.inf
        vals = [t for t, _ in self.atoms] + [p.b for p in self.pieces if p.mass() > 0]
        return max(vals) if vals else -math.inf

    # -- measure of sets -------------------------------------------------

    def total_mass(self):
        total = sum(m for _, m in self.atoms)
        total += sum(p.mass() for p in self.pieces)
        if self.exp_tail is not None:
            total += self.exp_tail.mass()
        return total

    def mass_below(self, x):
        """Mass of (-inf, x), atoms at x excluded."""
        total = sum(m for t, m in self.atoms if t < x)
        total += sum(p.cumulative(x) for p in self.pieces)
        if self.exp_tail is not None:
            total += self.exp_tail.cumulative(x)
        return total

    def mass_beyond(self, x):
        """Mass of (x, inf) contributed by density components only."""
        total = sum(p.mass_beyond(x) for p in self.pieces)
        if self.exp_tail is not None:
            total += self.exp_tail.mass_beyond(x)
        return total + sum(m for t, m in self.atoms if t > x)

    # -- integration -----------------------------------------------------

    def integrate(self, g, *, complex_valued=False, singular=(), window=None):
        """``int g dm`` with atoms summed exactly and densities by quadrature.

        ``window=(lo, hi)`` restricts the integral to [lo, hi] (atom at lo or
        hi included).
        """
        total = 0j if complex_valued else 0.0
        for t, m in self.atoms:
            if window is None or window[0] <= t <= window[1]:
                total += m * g(t)
        for p in self.pieces:
            total += p.integrate(
                g, complex_valued=complex_valued, singular=singular, window=window
            )
        if self.exp_tail is not None:
            total += self.exp_tail.integrate(
                g, complex_valued=complex_valued, singular=singular, window=window
            )
        return total

    # -- serialization ---------------------------------------------------

    def to_json(self):
        out = {"atoms": [[t, m] for t, m in self.atoms]}
        pieces = []
        for p in self.pieces:
            entry = {
                "interval": [p.a, None if math.isinf(p.b) else p.b],
                "coeffs": list(p.coeffs),
            }
            if p.basis != "poly":
                entry["basis"] = p.basis
            pieces.append(entry)
        if pieces:
            out["pieces"] = pieces
        if self.exp_tail is not None:
            if self.exp_tail.psi_coeffs is None:
                raise ValueError("only polynomial-psi tails are serializable")
            out["tail"] = {
                "from": self.exp_tail.start,
                "kind": "exp_convex",
                "params": {
                    "psi_coeffs": list(self.exp_tail.psi_coeffs),
                    "scale": self.exp_tail.scale,
                },
            }
        return out

    @staticmethod
    def from_json(data):
        atoms = tuple((t, m) for t, m in data.get("atoms", ()))
        pieces = []
        for entry in data.get("pieces", ()):
            a, b = entry["interval"]
            b = math.inf if b is None else b
            pieces.append(
                DensityPiece(a, b, tuple(entry["coeffs"]),
                             basis=entry.get("basis", "poly"))
            )
        tail = None
        if "tail" in data:
            spec = data["tail"]
            if spec.get("kind") != "exp_convex":
                raise ValueError(f"unknown tail kind {spec.get('kind')!r}")
            params = spec.get("params", {})
            tail = exp_tail_from_coeffs(
                spec["from"], params["psi_coeffs"], params.get("scale", 1.0)
            )
        return StieltjesMeasure(atoms=atoms, pieces=tuple(pieces), exp_tail=tail)


@dataclass(frozen=True)
class NuFunction:
    """Non-decreasing representing function: baseline value plus a measure."""

    baseline: float
    measure: StieltjesMeasure

    def __post_init__(self):
        object.__setattr__(self, "baseline", float(self.baseline))
        if self.baseline < 0:
            raise ValueError("baseline must be non-negative")

    def __call__(self, x):
        return cdf(self, x)

    def to_json(self):
        out = {"baseline": self.baseline}
        out.update(self.measure.to_json())
        return out

    @staticmethod
    def from_json(data):
        return NuFunction(
            baseline=data.get("baseline", 0.0),
            measure=StieltjesMeasure.from_json(data),
        )


@dataclass(frozen=True)
class TailReport:
    integral_nu_over_t2: float
    integral_dnu_over_t: float
    nu_over_t_limit_estimate: float


# ---------------------------------------------------------------------------
# operations


def total_mass(m: StieltjesMeasure) -> float:
    return m.total_mass()


def sup_atom(m: StieltjesMeasure) -> float:
    return max((mass for _, mass in m.atoms), default=0.0)


def cdf(n: NuFunction, x: float) -> float:
    """Value at x with the midpoint convention at atoms."""
    return n.baseline + n.measure.mass_below(x) + 0.5 * n.measure.atom_mass_at(x)


def support_count_at_least_two(m: StieltjesMeasure) -> bool:
    """True when the support holds at least two points.

    Any density component of positive mass has uncountable support, so it
    settles the question by itself.
    """
    density_mass = sum(p.mass() for p in m.pieces)
    if m.exp_tail is not None:
        density_mass += m.exp_tail.mass()
    if density_mass > 0:
        return True
    return len(m.atoms) >= 2


def tail_conditions(n: NuFunction) -> TailReport:
    """Numerical tail integrals controlling the representation formulas."""
    m = n.measure
    pts = [p for p in m.breakpoints() if p > 1.0]

    # int_1^inf nu(t)/t^2 dt; within [1, R] by quadrature with structural
    # breakpoints, beyond R exactly nu_inf/R once all mass sits below R.
    r = max(16.0, *(2.0 * abs(p) for p in pts)) if pts else 16.0
    nu_inf = n.baseline + m.total_mass()
    core = quad_real(lambda t: cdf(n, t) / (t * t), 1.0, r, points=pts)
    while m.mass_beyond(r) > 1e-14 and r < 2**30:
        core += quad_real(lambda t: cdf(n, t) / (t * t), r, 2 * r)
        r *= 2
    over_t2 = core + nu_inf / r

    over_t = m.integrate(lambda t: 1.0 / t, window=(1.0, math.inf))

    big_t = max(float(2**20), 4.0 * r)
    limit_est = cdf(n, big_t) / big_t
    return TailReport(over_t2, over_t, limit_est)


def nu_from_mu_unit(mu: StieltjesMeasure) -> NuFunction:
    """Representing function on [1, inf) induced by a unit measure on [0, 1].

    The value at t >= 1 equals one minus the input's mass below 1/t; an atom
    of the input at s > 0 becomes an atom at 1/s with the same mass, a
    density transforms by the reciprocal change of variable, and mass exactly
    at 0 drops out.
    """
    if abs(mu.total_mass() - 1.0) > _MASS_TOL:
        raise ValueError("input measure must have unit total mass")
    lo, hi = mu.support_min(), mu.support_max()
    if lo < -_MASS_TOL or hi > 1.0 + _MASS_TOL:
        raise ValueError("input measure must be supported in [0, 1]")
    if mu.exp_tail is not None:
        raise ValueError("a measure on [0, 1] cannot carry an exponential tail")

    atoms = tuple(
        sorted((1.0 / t, mass) for t, mass in mu.atoms if t > _MASS_TOL)
    )
    pieces = []
    for p in mu.pieces:
        if p.basis != "poly":
            raise ValueError("input pieces must be polynomial")
        a = max(p.a, 0.0)
        b = p.b
        if b <= _MASS_TOL:
            continue
        new_a = 1.0 / b
        new_b = math.inf if a <= _MASS_TOL else 1.0 / a
        pieces.append(DensityPiece(new_a, new_b, p.coeffs, basis="recip"))
    return NuFunction(
        baseline=0.0,
        measure=StieltjesMeasure(atoms=atoms, pieces=tuple(pieces)),
    )
