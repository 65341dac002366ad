"""Named polynomial families: Tchebychev, folding, Pecker, conic pairs and surfaces."""
from .chebyshev import (
    DegenerateTchebychev,
    degenerate_tchebychev,
    degenerate_tchebychev_certified,
    degenerate_tchebychev_onesided,
    degenerate_tchebychev_onesided_certified,
    tchebychev,
)
from .curves import (
    DoublePointParam,
    a2km1_curve,
    conic_pair_points,
    conic_pair_quartic,
    conjugate_lines_conic,
    expected_a2km1_curve_count,
    pecker_curve,
    pecker_double_points,
)
from .folding import folding, folding_offset, real_folding
from .surfaces import SurfaceSpec, chmutov, separable_surface

__all__ = [
    "DegenerateTchebychev", "degenerate_tchebychev", "degenerate_tchebychev_certified",
    "degenerate_tchebychev_onesided", "degenerate_tchebychev_onesided_certified", "tchebychev",
    "DoublePointParam", "a2km1_curve", "conic_pair_points", "conic_pair_quartic",
    "conjugate_lines_conic", "expected_a2km1_curve_count", "pecker_curve", "pecker_double_points",
    "folding", "folding_offset", "real_folding", "SurfaceSpec", "chmutov", "separable_surface",
]
