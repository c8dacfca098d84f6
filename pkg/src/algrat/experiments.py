"""The four-term family ``p_n = z p_{n-1} - C p_{n-2} - p_{n-3}`` and figure runs.

The family has symbol ``t^3 - z t^2 + C t + 1``.  Its zeros are real for
``C >= 3``; for ``C < 3`` two branching points leave the real axis and the
zeros of ``p_n`` follow them.  This module computes the branching data, the
degenerate parameters, real-zero and interlacing checks, and packages the
end-to-end figure reproductions.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq

from .algfun import DefiningPolynomial, InitialTuple, parse_defining, parse_initial
from .errors import InsufficientProjection
from .loci import XiTrace, compute_loci, distance_to_polyline, trace_equimodular
from .numcore import GaussianRational, Poly, discriminant, exact, poly_roots
from .poles import classify_poles, poles_and_residues, spurious_count
from .recursion import generate_exact, ratio_function

FIG1_EQUATION = "(z+1)*y^3 = (z^2+1)*y^2 + (z-5*I)*y + (z^3-1-I)"
FIG1_TRIPLES = {
    "standard": "0, 0, 1",
    "paper": "z^5+I*z^2-5, z^3-z+I, 1",
}
FIG3_EQUATION = "y^3 = (z+1-I)*y^2 + (z+1)*(z-I)*y + (z^3+10)"
FIG3_INIT = "z^6-z^4+I, z-I+2, (2+I)*z^2-8"
FIG2_C_VALUES = (4, 3, 1, -1, -2)
REAL_TOL = 1e-7


def _exact_C(C):
    if isinstance(C, float):
        C = Fraction(C).limit_denominator(10 ** 12) if C == round(C, 12) else Fraction(C)
    return exact(C)


def three_term_defn(C) -> DefiningPolynomial:
    """``y^3 = z y^2 - C y - 1`` as a defining polynomial."""
    c = _exact_C(C)
    return DefiningPolynomial((Poly([1]), Poly([c]), Poly([0, -1]), Poly([1])))


def three_term_init() -> InitialTuple:
    return parse_initial("0, 0, 1")


def three_term_sequence(C, n_max: int):
    """``[p_0, ..., p_{n_max}]`` with ``p_{-2} = p_{-1} = 0`` and ``p_0 = 1``.

    Examples
    --------
    >>> [p.to_text() for p in three_term_sequence(2, 3)]
    ['1', 'z', '(-2) + z^2', '(-1) + (-4)*z + z^3']
    """
    seq = generate_exact(three_term_defn(C), three_term_init(), n_max + 2)
    return seq.numerators[2:n_max + 3]


def branching_cubic(C) -> Poly:
    """``4z^3 + C^2 z^2 - 18 C z - 27 - 4 C^3``."""
    c = _exact_C(C)
    return Poly([-27 - 4 * c ** 3, -18 * c, c * c, 4])


def branching_points(C):
    """The three roots (with multiplicity) of the branching cubic."""
    out = []
    for z, m in poly_roots(branching_cubic(C)):
        if abs(z.imag) <= 1e-14 * (1 + abs(z)):
            z = complex(z.real, 0.0)
        out.extend([z] * m)
    return sorted(out, key=lambda z: (z.real, z.imag))


def discriminant_formula(C):
    """``64 (C-3)^3 (C^2+3C+9)^3`` (exact for exact ``C``)."""
    c = _exact_C(C)
    return 64 * (c - 3) ** 3 * (c * c + 3 * c + 9) ** 3


def branching_discriminant_identity():
    """Compare ``Disc_z`` of the branching cubic with the closed form.

    Both are polynomials in ``C``.  Returns ``(holds, constant)`` where the
    computed discriminant equals ``constant`` times the closed form.
    """
    C = Poly.x()
    cubic = [Poly([-27]) - Poly([4]) * C ** 3, Poly([0, -18]), C * C, Poly([4])]
    disc = discriminant(cubic)
    target = Poly([64]) * (C - Poly([3])) ** 3 * (C * C + Poly([0, 3]) + Poly([9])) ** 3
    q, r = divmod(disc, target)
    holds = r.is_zero() and q.degree == 0
    return holds, (q[0] if holds else None)


@dataclass(frozen=True)
class DegeneratePoint:
    C: float
    z: complex
    tau: complex
    theta: float
    k: int


def _C_of_phi(phi):
    return cmath.exp(-2j * phi) + 2 * cmath.exp(1j * phi)


def _snap(z: complex, tol: float = 1e-13) -> complex:
    re, im = z.real, z.imag
    re = round(re) if abs(re - round(re)) <= tol else re
    im = round(im) if abs(im - round(im)) <= tol else im
    return complex(re + 0.0, im + 0.0)


def degenerate_points(samples: int = 720):
    """Real parameters where a double root ties in modulus with the simple one.

    Solves ``t^3 - z t^2 + C t + 1 = (t - tau)^2 (t - tau e^{i theta})`` for
    real ``C``: with ``phi = (theta + 4 k pi) / 3`` one has
    ``C = e^{-2 i phi} + 2 e^{i phi}``, whose imaginary part is scanned for
    sign changes and refined by Brent's method.
    """
    found = []
    for k in range(3):
        f = lambda th: _C_of_phi((th + 4 * k * math.pi) / 3).imag
        grid = np.linspace(0.0, 2 * math.pi, samples + 1)
        vals = [f(t) for t in grid]
        roots = []
        for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
            if fa == 0:
                roots.append(a)
            elif fa * fb < 0:
                roots.append(brentq(f, a, b, xtol=1e-15))
        if vals[-1] == 0:
            roots.append(grid[-1])
        for th in roots:
            phi = (th + 4 * k * math.pi) / 3
            C = _C_of_phi(phi).real
            tau = -cmath.exp(1j * (-th + 2 * k * math.pi) / 3)
            z = tau * (2 + cmath.exp(1j * th))
            tau, z = _snap(tau), _snap(z)
            if not any(abs(C - d.C) < 1e-9 and abs(z - d.z) < 1e-9 for d in found):
                found.append(DegeneratePoint(C, z, tau, float(th) % (2 * math.pi), k))
    return sorted(found, key=lambda d: d.C)


def degenerate_C_values():
    """``[-1, 3]``: the real ``C`` at which the equimodular set changes shape.

    Examples
    --------
    >>> degenerate_C_values()
    [-1.0, 3.0]
    """
    vals = []
    for d in degenerate_points():
        c = round(d.C, 9) + 0.0
        if c not in vals:
            vals.append(c)
    return sorted(vals)


def regime(C) -> str:
    c = _exact_C(C)
    if not c.is_real():
        return "complex"
    x = c.re
    if x > 3:
        return "C>3"
    if x == 3:
        return "C=3"
    if x > -1:
        return "-1<C<3"
    if x == -1:
        return "C=-1"
    return "C<-1"


def real_zero_check(C, n: int, tol: float = REAL_TOL):
    """Whether all zeros of ``p_n`` are real.

    Zeros are computed in extended precision; a zero counts as real when
    ``|Im| <= tol (1 + |z|)`` after a Newton step restricted to the real
    line.  Returns ``(all_real, witnesses)`` with the nonreal zeros.
    """
    p = three_term_sequence(C, n)[n]
    zeros = [z for z, m in poly_roots(p, precise=True) for _ in range(m)]
    witnesses = []
    dp = p.derivative()
    for z in zeros:
        if abs(z.imag) <= 1e-4 * (1 + abs(z)):
            x = z.real
            fx, dfx = p(x), dp(x)
            if dfx != 0:
                x = x - (complex(fx) / complex(dfx)).real
            z = complex(x, z.imag)
        if abs(z.imag) > tol * (1 + abs(z)):
            witnesses.append(z)
    return not witnesses, witnesses


def real_interlacing(C, n: int) -> bool:
    """Strict interlacing of the (real) zeros of ``p_n`` and ``p_{n+1}``."""
    ps = three_term_sequence(C, n + 1)
    a = sorted(z.real for z, m in poly_roots(ps[n], precise=True) for _ in range(m))
    b = sorted(z.real for z, m in poly_roots(ps[n + 1], precise=True) for _ in range(m))
    merged = sorted([(x, 0) for x in a] + [(x, 1) for x in b])
    return all(u[1] != v[1] and u[0] < v[0] for u, v in zip(merged, merged[1:]))


@dataclass
class InterlacingResult:
    """Outcome of :func:`interlacing_check`; ``ok`` is None when indeterminate."""

    ok: bool | None
    segments_checked: int
    projected: int
    per_segment: list = field(default_factory=list)
    label: str = "EXPERIMENTAL"


def interlacing_check(defn: DefiningPolynomial, init: InitialTuple, n: int, trace: XiTrace,
                      params=(0.15, 0.1), raise_on_insufficient: bool = False) -> InterlacingResult:
    """Alternation of the zeros of ``q_n`` and ``q_{n+1}`` along traced curves.

    Parameters
    ----------
    params : (projection_radius, singular_exclusion_radius)
        Zeros farther than ``projection_radius`` from every polyline are
        ignored; zeros within ``singular_exclusion_radius`` of a junction or an
        endpoint are dropped.
    """
    proj_r, excl_r = params
    seq = generate_exact(defn, init, n + 1)
    singular = list(trace.junctions) + list(trace.endpoints)
    buckets = {i: [] for i in range(len(trace.segments))}
    projected = 0
    for label, idx in ((0, n), (1, n + 1)):
        num = seq.numerators[idx]
        if num.degree < 1:
            continue
        for z, m in poly_roots(num, precise=True):
            if any(abs(z - s) <= excl_r for s in singular):
                continue
            best = None
            for si, seg in enumerate(trace.segments):
                d, s = distance_to_polyline(z, seg)
                if d <= proj_r and (best is None or d < best[0]):
                    best = (d, si, s)
            if best is not None:
                projected += m
                buckets[best[1]].extend([(best[2], label)] * m)
    per_segment = []
    for si, items in buckets.items():
        if len(items) < 4:
            continue
        items.sort()
        alt = all(a[1] != b[1] for a, b in zip(items, items[1:]))
        per_segment.append({"segment": si, "zeros": len(items), "alternating": alt})
    if not per_segment:
        if raise_on_insufficient:
            raise InsufficientProjection("fewer than 4 zeros project onto every traced segment")
        return InterlacingResult(None, 0, projected, [])
    ok = all(s["alternating"] for s in per_segment)
    return InterlacingResult(ok, len(per_segment), projected, per_segment)


@dataclass
class ThreeConjReport:
    C: float
    branch_points: list
    discriminant_value: GaussianRational
    regime: str
    zeros_by_n: dict
    nonreal_found: bool
    interlacing_ok: bool | None = None
    complex_input: bool = False


def three_conj_report(C, ns=(41,), interlacing: bool = False) -> ThreeConjReport:
    """Branching data and zero checks for one parameter value."""
    c = _exact_C(C)
    zeros = {}
    nonreal = False
    for n in ns:
        p = three_term_sequence(C, n)[n]
        zeros[n] = [z for z, m in poly_roots(p, precise=True) for _ in range(m)]
        nonreal |= not real_zero_check(C, n)[0]
    inter = None
    if interlacing:
        inter = all(real_interlacing(C, n - 1) for n in ns) if not nonreal else False
    return ThreeConjReport(complex(c).real, branching_points(C), discriminant_formula(C), regime(C),
                           zeros, nonreal, inter, complex_input=not c.is_real())


def three_conj_window(C, margin: float = 0.5):
    """Window covering all branching points of the family at ``C``."""
    pts = branching_points(C)
    xs = [z.real for z in pts]
    ys = [z.imag for z in pts]
    h = max(max(ys) - min(ys), max(xs) - min(xs), 1.0)
    return (min(xs) - margin * h / 2, max(xs) + margin * h / 2,
            min(min(ys), 0) - margin * h / 2 - 0.5, max(max(ys), 0) + margin * h / 2 + 0.5)


def equimodular_topology(C, grid=(256, 256)) -> dict:
    """Traced shape of the equimodular set of the family at ``C``.

    Reports segment, junction and endpoint counts; no claim is made beyond
    what the tracer resolves at this grid.
    """
    defn = three_term_defn(C)
    window = three_conj_window(C)
    tr = trace_equimodular(defn, window, grid, branch_points=branching_points(C))
    return {"C": C, "window": window, "segments": len(tr.segments),
            "junctions": tr.junctions, "endpoints": tr.endpoints,
            "isolated": len(tr.isolated), "trace": tr}


# ---------------------------------------------------------------------------
# figure runs


@dataclass
class FigureRun:
    defn: DefiningPolynomial
    init: InitialTuple
    n: int
    loci: object
    report: object
    summary: dict


def run_pole_figure(eq: str, init: str, n: int, window, grid) -> FigureRun:
    """Poles of ``r_n`` classified against the loci of ``(eq, init)``."""
    defn = parse_defining(eq)
    ini = parse_initial(init)
    loci = compute_loci(defn, ini, window, grid)
    seq = generate_exact(defn, ini, n)
    rep = classify_poles(poles_and_residues(ratio_function(seq, n), n), loci)
    counts = {}
    for p in rep.poles:
        counts[p.cls.value] = counts.get(p.cls.value, 0) + p.order
    summary = {
        "n": n,
        "sigma_cardinality": loci.sigma_cardinality,
        "spurious_count": spurious_count(rep),
        "pole_classes": dict(sorted(counts.items())),
        "xi_segments": len(loci.xi_segments),
        "branching_points": len(loci.delta_T),
        "eps": rep.eps,
    }
    return FigureRun(defn, ini, n, loci, rep, summary)


def reproduce_figure1(triple_choice: str = "paper", n: int = 31, window=(-5, 3, -4.5, 3.5),
                      grid=(256, 256)) -> FigureRun:
    """Poles of ``r_31`` for the cubic example and either initial triple."""
    if triple_choice not in FIG1_TRIPLES:
        raise ValueError(f"triple_choice must be one of {sorted(FIG1_TRIPLES)}")
    run = run_pole_figure(FIG1_EQUATION, FIG1_TRIPLES[triple_choice], n, window, grid)
    run.summary["triple"] = triple_choice
    return run


def reproduce_figure3(n: int = 40, window=(-5, 5, -5, 5), grid=(256, 256), params=(0.15, 0.1)):
    """Zeros of consecutive ``p_n`` for the second cubic example, with interlacing."""
    defn = parse_defining(FIG3_EQUATION)
    ini = parse_initial(FIG3_INIT)
    trace = trace_equimodular(defn, window, grid)
    res = interlacing_check(defn, ini, n, trace, params)
    seq = generate_exact(defn, ini, n + 1)
    zeros = {m: [z for z, k in poly_roots(seq.numerators[m], precise=True) for _ in range(k)]
             for m in (n, n + 1)}
    return defn, ini, trace, res, zeros


__all__ = [
    "FIG1_EQUATION", "FIG1_TRIPLES", "FIG3_EQUATION", "FIG3_INIT", "FIG2_C_VALUES",
    "three_term_defn", "three_term_init", "three_term_sequence", "branching_cubic",
    "branching_points", "discriminant_formula", "branching_discriminant_identity",
    "DegeneratePoint", "degenerate_points", "degenerate_C_values", "regime",
    "real_zero_check", "real_interlacing", "InterlacingResult", "interlacing_check",
    "ThreeConjReport", "three_conj_report", "three_conj_window", "equimodular_topology", "FigureRun",
    "run_pole_figure", "reproduce_figure1", "reproduce_figure3",
]
