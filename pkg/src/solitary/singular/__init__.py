"""Critical points, real singular points, classification and smoothing."""
from .census import (
    CurveCensus,
    MatchAmbiguity,
    NonIsolatedSingularity,
    SingularityCensus,
    curve_singular_points,
    curve_solitary_census,
    pair_critical_values,
    separable_oracle,
    singular_at_infinity,
    singular_points,
    surface_census,
)
from .classify import A1_MINUS, A1_SOLITARY, A2KM1_SOLITARY, OTHER, NotSingular, SingularPoint, classify
from .critical import CriticalPoint, CriticalReport, critical_points_1d, critical_points_2d
from .elimination import real_critical_points, real_solutions
from .smoothing import ForbiddenBasePoint, default_eps, smooth_solitary, verify_smoothing

__all__ = [
    "CurveCensus", "MatchAmbiguity", "NonIsolatedSingularity", "SingularityCensus",
    "curve_singular_points", "curve_solitary_census", "pair_critical_values", "separable_oracle",
    "singular_at_infinity", "singular_points", "surface_census", "A1_MINUS", "A1_SOLITARY",
    "A2KM1_SOLITARY", "OTHER", "NotSingular", "SingularPoint", "classify", "CriticalPoint",
    "CriticalReport", "critical_points_1d", "critical_points_2d", "real_critical_points",
    "real_solutions", "ForbiddenBasePoint", "default_eps", "smooth_solitary", "verify_smoothing",
]
