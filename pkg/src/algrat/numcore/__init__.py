"""Scalars, polynomials, rational functions, roots and elimination."""

from .elim import discriminant, resultant, sylvester_matrix
from .poly import ZERO_DEGREE, Poly, poly_gcd, poly_lcm, squarefree_decomposition
from .ratfun import RatFun
from .roots import DEFAULT_ROOT_CONFIG, RootConfig, aberth, poly_roots
from .scalar import I, ONE, ZERO, GaussianRational, exact, is_exact

__all__ = [
    "GaussianRational", "I", "ONE", "ZERO", "exact", "is_exact",
    "Poly", "ZERO_DEGREE", "poly_gcd", "poly_lcm", "squarefree_decomposition",
    "RatFun", "RootConfig", "DEFAULT_ROOT_CONFIG", "aberth", "poly_roots",
    "resultant", "discriminant", "sylvester_matrix",
]
