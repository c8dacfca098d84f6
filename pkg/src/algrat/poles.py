"""Poles, Laurent principal parts and their classification.

Poles of ``r_n`` are sorted into three asymptotic families by proximity:
fixed poles near the pole locus, regular poles near the equimodular curves
and spurious poles near the slow-growth points.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import gmpy2
import numpy as np

from .errors import ProbeTooClose
from .loci import LocusSet, distance_to_polyline
from .numcore import Poly, RatFun, exact, squarefree_decomposition
from .numcore.roots import aberth_mp, mp_precision, taylor_mp

N_PROBES = 20
MAX_REPROBES = 5
_GOLDEN = math.pi * (3 - math.sqrt(5))


class PoleClass(enum.Enum):
    FIXED = "Fixed"
    REGULAR = "Regular"
    SPURIOUS = "Spurious"
    UNCLASSIFIED = "Unclassified"


@dataclass(frozen=True)
class Pole:
    """One pole with its principal part ``sum_l A_l / (z - location)^l``.

    ``laurent[l - 1]`` is ``A_l``.
    """

    location: complex
    order: int
    laurent: tuple
    cls: PoleClass = PoleClass.UNCLASSIFIED
    distance: float = math.inf

    @property
    def residue(self) -> complex:
        return self.laurent[0]


@dataclass
class PoleReport:
    n: int
    poles: list
    poly_part: Poly
    r: RatFun | None = None
    eps: float | None = None

    @property
    def total_order(self) -> int:
        return sum(p.order for p in self.poles)

    def by_class(self, cls: PoleClass):
        return [p for p in self.poles if p.cls is cls]


def _laurent_mp(rem: Poly, den: Poly, z0, order: int, prec: int):
    """``(A_1, ..., A_order)`` at a pole of exact order ``order``.

    ``den = sum_s d_s (z - z0)^s`` has ``d_s = 0`` for ``s < order``, so the
    principal part follows from dividing the Taylor series of ``rem`` by
    ``sum_t d_{t+order} (z - z0)^t``.
    """
    a = taylor_mp(rem, z0, order, prec)
    d = taylor_mp(den, z0, 2 * order, prec)
    b = d[order:]
    with gmpy2.context(gmpy2.get_context(), precision=prec):
        c = []
        for i in range(order):
            acc = a[i]
            for j in range(i):
                acc -= c[j] * b[i - j]
            c.append(acc / b[0])
    return tuple(complex(c[order - l]) for l in range(1, order + 1))


def poles_and_residues(r: RatFun, n: int = 0) -> PoleReport:
    """Poles with orders and Laurent coefficients of a reduced ``r``.

    Exact linear factors of the denominator are handled exactly.  Other
    square-free factors are solved in extended precision and their principal
    parts come from Taylor division at that precision.

    Examples
    --------
    >>> rep = poles_and_residues(RatFun(Poly([1]), Poly([-2, 1])))
    >>> [(p.location, p.order, p.laurent) for p in rep.poles]
    [((2+0j), 1, ((1+0j),))]
    """
    num, den = r.num, r.den
    poly_part, rem = divmod(num, den)
    poles = []
    if den.degree >= 1:
        factors = squarefree_decomposition(den) if den.exact else [(den, 1)]
        for f, mult in factors:
            if f.exact and f.degree == 1:
                z0 = -f[0] / f[1]
                lin = Poly([-z0, 1])
                rest = den
                for _ in range(mult):
                    rest = rest.exact_div(lin)
                a = rem.shift(z0).coeffs[:mult]
                b = rest.shift(z0).coeffs[:mult]
                a = list(a) + [0] * (mult - len(a))
                b = list(b) + [0] * (mult - len(b))
                c = []
                for i in range(mult):
                    s = exact(a[i]) - sum((c[j] * b[i - j] for j in range(i)), exact(0))
                    c.append(s / b[0])
                laur = tuple(complex(c[mult - l]) for l in range(1, mult + 1))
                poles.append(Pole(complex(z0), mult, laur))
                continue
            if not f.exact:
                raise TypeError("poles_and_residues needs an exact rational function")
            prec = mp_precision(den)
            _, roots = aberth_mp(f, prec=prec)
            for z0 in roots:
                poles.append(Pole(complex(z0), mult, _laurent_mp(rem, den, z0, mult, prec)))
    poles.sort(key=lambda p: (p.location.real, p.location.imag))
    return PoleReport(n, poles, poly_part, r)


def default_eps(loci: LocusSet) -> float:
    """Twice the finest tracer cell diagonal."""
    if loci.trace is not None:
        return 2 * loci.trace.cell_diag
    return 0.05


def classify_poles(report: PoleReport, loci: LocusSet, eps: float | None = None) -> PoleReport:
    """Tag every pole by its nearest locus within ``eps``.

    Fixed: the pole locus minus points on the equimodular set or the
    slow-growth set.  Regular: the equimodular polylines and isolated points.
    Spurious: the slow-growth set.
    """
    eps = default_eps(loci) if eps is None else eps
    xi_curves = [np.asarray(s) for s in loci.xi_segments]
    xi_pts = list(loci.xi_isolated)
    sigma = [z for z, _ in loci.sigma]

    def d_xi(z):
        d = [distance_to_polyline(z, s)[0] for s in xi_curves] + [abs(z - p) for p in xi_pts]
        return min(d, default=math.inf)

    fixed = [u for u in loci.upsilon
             if d_xi(u) > eps and all(abs(u - s) > eps for s in sigma)]
    out = []
    for p in report.poles:
        z = p.location
        cands = [
            (min((abs(z - u) for u in fixed), default=math.inf), PoleClass.FIXED),
            (d_xi(z), PoleClass.REGULAR),
            (min((abs(z - s) for s in sigma), default=math.inf), PoleClass.SPURIOUS),
        ]
        dist, cls = min(cands, key=lambda t: t[0])
        if dist > eps:
            cls = PoleClass.UNCLASSIFIED
        out.append(replace(p, cls=cls, distance=float(dist)))
    return PoleReport(report.n, out, report.poly_part, report.r, eps)


def spurious_count(report: PoleReport) -> int:
    """Total order of the poles classified as spurious."""
    return sum(p.order for p in report.poles if p.cls is PoleClass.SPURIOUS)


def spurious_onset(counts: dict, bound: int):
    """Smallest computed ``N`` with ``counts[n] <= bound`` for every ``n >= N``.

    ``counts`` maps ``n`` to ``spurious_count`` of ``r_n``.  Returns None when
    the last computed count still exceeds ``bound``.

    Examples
    --------
    >>> spurious_onset({10: 3, 20: 1, 30: 0, 31: 1}, 1)
    20
    """
    onset = None
    for n in sorted(counts, reverse=True):
        if counts[n] > bound:
            break
        onset = n
    return onset


def principal_parts(report: PoleReport, z) -> complex:
    """Sum of all principal parts at ``z``."""
    z = complex(z)
    total = 0j
    for p in report.poles:
        w = z - p.location
        for l, a in enumerate(p.laurent, start=1):
            total += a / w ** l
    return total


def reconstruct(report: PoleReport, z) -> complex:
    """Polynomial part plus principal parts at ``z``."""
    return complex(report.poly_part(complex(z))) + principal_parts(report, z)


def probe_points(report: PoleReport, count: int = N_PROBES, attempt: int = 0):
    """Deterministic spiral probes in a disk around all poles."""
    rad = 1.2 * (max((abs(p.location) for p in report.poles), default=0.0) + 1)
    rot = attempt * 0.37
    shrink = 1 - 0.05 * attempt
    i = np.arange(count)
    return rad * shrink * np.sqrt((i + 0.5) / count) * np.exp(1j * (i * _GOLDEN + rot))


def cauchy_reconstruct(report: PoleReport, r: RatFun | None = None, min_sep: float | None = None) -> float:
    """Largest relative residual ``|r - reconstruction| / (1 + |r|)`` on probes.

    Probes closer than ``min_sep`` to a pole are discarded; up to five
    rotated probe sets are tried before :class:`ProbeTooClose` is raised.

    Examples
    --------
    >>> r = RatFun(Poly([1]), Poly([-2, 1]))
    >>> cauchy_reconstruct(poles_and_residues(r), r) < 1e-14
    True
    """
    r = report.r if r is None else r
    rad = 1.2 * (max((abs(p.location) for p in report.poles), default=0.0) + 1)
    min_sep = 1e-3 * rad if min_sep is None else min_sep
    probes = []
    for attempt in range(MAX_REPROBES + 1):
        for z in probe_points(report, N_PROBES, attempt):
            if all(abs(z - p.location) > min_sep for p in report.poles):
                probes.append(complex(z))
        if len(probes) >= N_PROBES:
            break
    if not probes:
        raise ProbeTooClose("every probe point lies too close to a pole")
    probes = probes[:N_PROBES]
    worst = 0.0
    for z in probes:
        ref = complex(r(exact(z)))
        rec = reconstruct(report, z)
        worst = max(worst, abs(ref - rec) / (1 + abs(ref)))
    return worst


__all__ = [
    "PoleClass", "Pole", "PoleReport", "poles_and_residues", "classify_poles",
    "spurious_count", "spurious_onset", "principal_parts", "reconstruct", "cauchy_reconstruct",
    "probe_points", "default_eps",
]
