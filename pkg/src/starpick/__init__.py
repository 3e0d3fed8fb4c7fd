"""Pick-function representations on the half-plane.

Finite measure descriptions, canonical and exponential integral
representations with their boundary values, principal-value and Poisson
transforms, Hardy p-norm scans, and certification of universal starlikeness.
"""

from .measure import (
    DensityPiece,
    ExpTail,
    NuFunction,
    StieltjesMeasure,
    TailReport,
    cdf,
    exp_tail_from_coeffs,
    nu_from_mu_unit,
    sup_atom,
    support_count_at_least_two,
    tail_conditions,
    total_mass,
)
from .pick import (
    PickCanonical,
    PrimitivePick,
    boundary_U,
    boundary_V,
    derivative,
    eval_pick,
    eval_primitive,
    harmonic_parts,
)
from .quadrature import NonConvergenceError

__version__ = "0.1.0"
