"""Ratio asymptotics of sequences generated by algebraic functions.

A defining polynomial ``P(y, z) = sum_i P_i(z) y^i`` and an initial tuple give
a sequence of rational functions ``q_n`` through a linear recursion with
polynomial coefficients.  The package computes the sequence exactly, the
ratios ``r_n = q_n / q_{n-1}``, the loci governing their asymptotics
(equimodular curves, branching points, pole locus, slow-growth points), and
the poles of ``r_n`` sorted by the locus they approach.
"""

from __future__ import annotations

from .algfun import (DefiningPolynomial, InitialTuple, parse_defining, parse_initial,
                     parse_rational, standard_initial)
from .errors import AlgratError
from .loci import LocusSet, compute_loci, delta_T, pole_locus, slow_growth_set, trace_equimodular
from .numcore import GaussianRational, Poly, RatFun, poly_roots, resultant
from .poles import (PoleClass, PoleReport, cauchy_reconstruct, classify_poles,
                    poles_and_residues, spurious_count)
from .recursion import eval_ratio, generate_exact, ratio_function
from .spectrum import DominanceClass, eigen_uv, fitted_rate, limit_g, spectral_numbers

__version__ = "0.1.0"

__all__ = [
    "AlgratError", "DefiningPolynomial", "InitialTuple", "parse_defining", "parse_initial",
    "parse_rational", "standard_initial", "GaussianRational", "Poly", "RatFun", "poly_roots",
    "resultant", "generate_exact", "ratio_function", "eval_ratio", "DominanceClass",
    "spectral_numbers", "eigen_uv", "limit_g", "fitted_rate", "LocusSet", "compute_loci",
    "delta_T", "pole_locus", "slow_growth_set", "trace_equimodular", "PoleClass", "PoleReport",
    "poles_and_residues", "classify_poles", "spurious_count", "cauchy_reconstruct",
]
