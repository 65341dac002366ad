"""Real algebraic curves and surfaces with many solitary points.

Constructs Chebyshev, folding, Pecker and Chmutov-type polynomials, locates
and classifies their real singular points, equalizes the critical values of
plane-curve deformations, and evaluates the closed-form bounds on solitary
point counts.
"""

__version__ = "0.1.0"
