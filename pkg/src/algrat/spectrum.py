"""Pointwise spectral data of the symbol equation.

At a fixed ``z`` the recursion has constant coefficients and its
characteristic polynomial is ``P(t, z)`` (up to the factor ``P_k(z)``).  This
module finds its roots, decides whether one of them dominates, and builds the
left/right eigenvectors of the companion matrix together with the limit
``g(z) = lim q_n(z) / lambda(z)^n``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .algfun import DefiningPolynomial, InitialTuple
from .errors import NotDominantPoint, PoleLocusPoint, PoleOfCoefficients
from .numcore import Poly, exact, poly_roots
from .recursion import in_pole_locus

DEFAULT_TOL = 1e-9


class DominanceClass(enum.Enum):
    DOMINANT = "Dominant"
    SUBDOMINANT_CAPABLE = "Subdominant-capable"
    NONDOMINANT = "Nondominant"


@dataclass(frozen=True)
class SpectrumReport:
    """Roots of the symbol polynomial at ``z`` and their dominance class.

    Attributes
    ----------
    taus : tuple of (complex, int)
        Distinct roots with multiplicities, by decreasing modulus.
    kind : DominanceClass
    y_dom : complex or None
        The dominant root; for subdominant-capable points the tied root of
        largest multiplicity.
    theoretical_rate : float or None
        ``|tau_(2)| / |tau_(1)|`` at dominant points (0 when ``k = 1``).
    gap : float
        Relative modulus gap ``(|tau_(1)| - |tau_(2)|) / |tau_(1)|`` counting
        multiplicity, so a multiple top root has gap 0.
    """

    z: complex
    taus: tuple
    kind: DominanceClass
    y_dom: complex | None
    theoretical_rate: float | None
    gap: float

    @property
    def is_dominant(self) -> bool:
        return self.kind is DominanceClass.DOMINANT


@dataclass(frozen=True)
class EigenPair:
    """Right (``u``) and left (``v``) eigenvectors for the dominant root.

    ``v`` is scaled so that ``v . u = 1``; ``raw_dot`` is the product before
    scaling, which equals ``lam * chi'(lam)``.
    """

    lam: complex
    u: np.ndarray
    v: np.ndarray
    raw_dot: complex
    raw_v: np.ndarray


def _check_pole(defn: DefiningPolynomial, z):
    if not defn.lead(exact(z)):
        raise PoleOfCoefficients(f"P_k vanishes at z={z}")


def symbol_values(defn: DefiningPolynomial, z) -> np.ndarray:
    """``R_{k-1}(z), ..., R_0(z)`` (the companion first row)."""
    _check_pole(defn, z)
    vals = defn.eval_coeffs(complex(z))
    return -vals[-2::-1] / vals[-1]


def companion(defn: DefiningPolynomial, z) -> np.ndarray:
    """Companion matrix with first row ``(R_{k-1}, ..., R_0)``.

    Examples
    --------
    >>> from algrat.algfun import parse_defining
    >>> companion(parse_defining("y^2 - y - z"), 6).real.tolist()
    [[1.0, 6.0], [1.0, 0.0]]
    """
    row = symbol_values(defn, z)
    k = defn.k
    t = np.zeros((k, k), dtype=complex)
    t[0, :] = row
    if k > 1:
        t[np.arange(1, k), np.arange(k - 1)] = 1
    return t


def symbol_poly(defn: DefiningPolynomial, z) -> Poly:
    """``P(t, z)`` as an exact polynomial in ``t`` (``z`` taken exactly)."""
    ze = exact(z)
    return Poly([c(ze) for c in defn.coeffs])


def classify_roots(taus, z=0j, tol: float = DEFAULT_TOL) -> SpectrumReport:
    """Dominance classification of a root list ``[(value, mult), ...]``."""
    taus = sorted(((complex(t), int(m)) for t, m in taus), key=lambda tm: (-abs(tm[0]), tm[0].real, tm[0].imag))
    top = abs(taus[0][0])
    tied = [tm for tm in taus if top - abs(tm[0]) <= tol * top]
    others = [abs(t) for t, _ in taus[len(tied):]]
    if tied[0][1] > 1 or len(tied) > 1:
        gap = 0.0
    else:
        second = max(others) if others else 0.0
        gap = (top - second) / top if top > 0 else 0.0
    if len(tied) == 1 and tied[0][1] == 1:
        rate = (max(others) / top if others else 0.0) if top > 0 else 0.0
        return SpectrumReport(complex(z), tuple(taus), DominanceClass.DOMINANT, tied[0][0], rate, gap)
    if len(tied) > 1:
        mults = sorted((m for _, m in tied), reverse=True)
        if mults[0] > mults[1]:
            best = max(tied, key=lambda tm: tm[1])
            return SpectrumReport(complex(z), tuple(taus), DominanceClass.SUBDOMINANT_CAPABLE,
                                  best[0], None, gap)
    return SpectrumReport(complex(z), tuple(taus), DominanceClass.NONDOMINANT, None, None, gap)


def spectral_numbers(defn: DefiningPolynomial, z, tol: float = DEFAULT_TOL) -> SpectrumReport:
    """Spectral numbers at ``z`` with dominance classification.

    Two moduli tie when they differ by at most ``tol`` times the larger one.
    Multiplicities are exact: ``z`` is converted to a Gaussian rational and
    the symbol polynomial is split into square-free parts.

    Examples
    --------
    >>> from algrat.algfun import parse_defining
    >>> rep = spectral_numbers(parse_defining("y^2 - y - z"), 6)
    >>> rep.kind.value, rep.y_dom, round(rep.theoretical_rate, 12)
    ('Dominant', (3+0j), 0.666666666667)
    """
    _check_pole(defn, z)
    p = symbol_poly(defn, z)
    if defn.k == 1:
        taus = [(complex(-p[0] / p[1]), 1)]
    else:
        taus = poly_roots(p)
    return classify_roots(taus, complex(z), tol)


def dominant_root(defn: DefiningPolynomial, z, tol: float = DEFAULT_TOL) -> complex:
    """The dominant spectral number; raises :class:`NotDominantPoint` otherwise."""
    rep = spectral_numbers(defn, z, tol)
    if not rep.is_dominant:
        raise NotDominantPoint(rep)
    return rep.y_dom


def eigen_from_root(defn: DefiningPolynomial, z, lam: complex) -> EigenPair:
    """Eigenvectors of the companion matrix for a given simple root ``lam``."""
    k = defn.k
    r = symbol_values(defn, z)[::-1]  # R_0, ..., R_{k-1}
    lam = complex(lam)
    u = np.array([lam ** (k - i) for i in range(1, k + 1)], dtype=complex)
    v = np.zeros(k, dtype=complex)
    for i in range(1, k + 1):
        v[i - 1] = sum(r[k - j] * lam ** (i - j) for j in range(i, k + 1))
    raw = complex(np.dot(v, u))
    return EigenPair(lam, u, v / raw, raw, v)


def eigen_uv(defn: DefiningPolynomial, z, tol: float = DEFAULT_TOL) -> EigenPair:
    """Eigen-data at a dominant point.

    ``u_i = lambda^(k-i)`` and ``v_i = sum_{j>=i} R_{k-j} lambda^(i-j)``;
    ``v`` is rescaled so that ``v . u = 1``.

    Examples
    --------
    >>> from algrat.algfun import parse_defining
    >>> ep = eigen_uv(parse_defining("y^2 - y - z"), 6)
    >>> ep.u.real.tolist(), ep.raw_v.real.tolist(), ep.raw_dot.real
    ([3.0, 1.0], [3.0, 6.0], 15.0)
    """
    lam = dominant_root(defn, z, tol)
    return eigen_from_root(defn, z, lam)


def lam_chi_prime(defn: DefiningPolynomial, z, lam: complex) -> complex:
    """``lam * chi'(lam)`` with ``chi(t) = t^k - sum_m R_m t^m``."""
    k = defn.k
    r = symbol_values(defn, z)[::-1]
    d = k * lam ** (k - 1) - sum(m * r[m] * lam ** (m - 1) for m in range(1, k))
    return lam * d


def slow_growth_value(defn: DefiningPolynomial, init: InitialTuple, z, lam: complex) -> complex:
    """``sum_i v_i q_{k-i}`` with the unnormalized left eigenvector.

    Vanishes exactly on the slow-growth set.
    """
    ep = eigen_from_root(defn, z, lam)
    q = np.array([complex(e(complex(z))) for e in init], dtype=complex)[::-1]
    return complex(np.dot(ep.raw_v, q))


def limit_g(defn: DefiningPolynomial, init: InitialTuple, z, tol: float = DEFAULT_TOL) -> complex:
    """``g(z) = lim q_n(z) / lambda(z)^n`` at a dominant point.

    Equals ``lambda^(1-k) u_1 (v . q_{k-1})`` with ``v . u = 1``, where
    ``q_{k-1} = (q_{k-1}, ..., q_0)``.

    Examples
    --------
    >>> from algrat.algfun import parse_defining, parse_initial
    >>> g = limit_g(parse_defining("y^2 - y - z"), parse_initial("1, 1"), 6)
    >>> round(g.real, 12)
    0.6
    """
    if in_pole_locus(defn, init, z):
        raise PoleLocusPoint(f"z={z} lies on the pole locus")
    ep = eigen_uv(defn, z, tol)
    k = defn.k
    q = np.array([complex(e(complex(z))) for e in init], dtype=complex)[::-1]
    return complex(ep.lam ** (1 - k) * ep.u[0] * np.dot(ep.v, q))


@dataclass(frozen=True)
class RateFit:
    """Least-squares fit ``|r_n - lambda| ~ M rate^n`` over ``ns``."""

    rate: float
    prefactor: float
    theoretical_rate: float
    ns: tuple
    errors: tuple

    @property
    def bound_constant(self) -> float:
        """Smallest ``M`` with ``|r_n - lambda| <= M theoretical_rate^n`` on ``ns``."""
        return max(e / self.theoretical_rate ** n for n, e in zip(self.ns, self.errors))


def fitted_rate(defn: DefiningPolynomial, init: InitialTuple, z, n_lo: int = 10, n_hi: int = 40,
                tol: float = DEFAULT_TOL) -> RateFit:
    """Observed geometric convergence rate of ``r_n(z)`` to the dominant root.

    Examples
    --------
    >>> from algrat.algfun import parse_defining, parse_initial
    >>> fit = fitted_rate(parse_defining("y^2 - y - z"), parse_initial("1, 1"), 6)
    >>> abs(fit.rate - 2 / 3) < 0.01
    True
    """
    from .recursion import eval_sequence_log

    rep = spectral_numbers(defn, z, tol)
    if not rep.is_dominant:
        raise NotDominantPoint(rep)
    vals, logs = eval_sequence_log(defn, init, z, n_hi)
    ns, errs = [], []
    for n in range(max(n_lo, 1), n_hi + 1):
        if vals[n - 1] == 0:
            continue
        r = vals[n] / vals[n - 1] * np.exp(logs[n] - logs[n - 1])
        e = abs(r - rep.y_dom)
        # errors at rounding level carry no rate information
        if e > 1e-12 * abs(rep.y_dom):
            ns.append(n)
            errs.append(float(e))
    if len(ns) < 2:
        raise ValueError("too few errors above rounding level to fit a rate")
    slope, icpt = np.polyfit(ns, np.log(errs), 1)
    return RateFit(float(np.exp(slope)), float(np.exp(icpt)), rep.theoretical_rate,
                   tuple(ns), tuple(errs))


__all__ = [
    "RateFit", "fitted_rate",
    "DominanceClass", "SpectrumReport", "EigenPair", "DEFAULT_TOL",
    "companion", "symbol_values", "symbol_poly", "classify_roots",
    "spectral_numbers", "dominant_root", "eigen_uv", "eigen_from_root",
    "lam_chi_prime", "slow_growth_value", "limit_g",
]
