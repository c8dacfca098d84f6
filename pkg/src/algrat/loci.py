"""Geometric sets attached to a defining polynomial and an initial tuple.

* ``upsilon``: zeros of ``P_k`` and poles of the initial entries.
* ``delta_T``: branching points, where the symbol polynomial has a multiple
  root.
* ``Xi``: the equimodular set, the closure of the points where two spectral
  numbers of maximal modulus tie.  It is traced on an adaptive grid.
* ``S`` and ``Sigma``: candidates for slow growth (roots of a resultant) and
  the subset where the dominant eigendirection is not excited.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .algfun import DefiningPolynomial, InitialTuple
from .errors import (DegenerateResultant, DegreeTooLow, EmptyWindow, GridTooCoarse,
                     IdenticallyZeroMu)
from .numcore import Poly, discriminant, poly_gcd, poly_lcm, poly_roots, resultant
from .spectrum import (DEFAULT_TOL, DominanceClass, eigen_from_root, spectral_numbers)

CLUSTER_RTOL = 1e-7
DEFAULT_GAP_TOL = 1e-3
DEFAULT_MAX_DEPTH = 8
DEFAULT_SIGMA_TOL = 1e-6


def _dedupe(points, rtol=CLUSTER_RTOL):
    out = []
    for p in points:
        p = complex(p)
        if all(abs(p - q) > rtol * (1 + abs(q)) for q in out):
            out.append(p)
    return out


# ---------------------------------------------------------------------------
# pole locus and branching points


def pole_locus(defn: DefiningPolynomial, init: InitialTuple):
    """Zeros of ``P_k`` together with the poles of the initial entries."""
    pts = []
    if defn.lead.degree > 0:
        pts.extend(r for r, _ in poly_roots(defn.lead))
    for e in init:
        if e.den.degree > 0:
            pts.extend(r for r, _ in poly_roots(e.den))
    return _dedupe(pts)


def branching_polynomial(defn: DefiningPolynomial) -> Poly:
    """Numerator of the discriminant of the monic symbol polynomial.

    ``Disc_t(P(t, z)) = P_k^(2k-2) Disc_t(chi)``; the factor shared with
    ``P_k^(2k-2)`` is removed.
    """
    k = defn.k
    if k < 2:
        raise DegreeTooLow("branching points need k >= 2")
    disc = discriminant(list(defn.coeffs))
    if disc.is_zero():
        raise DegenerateResultant("the symbol polynomial has a multiple root for every z")
    lead_pow = defn.lead ** (2 * k - 2)
    if lead_pow.degree > 0 and disc.degree > 0:
        g = poly_gcd(disc, lead_pow)
        disc = disc.exact_div(g)
    return disc


def delta_T(defn: DefiningPolynomial, lenient: bool = False):
    """Branching points of the symbol curve.

    Examples
    --------
    >>> from algrat.algfun import parse_defining
    >>> delta_T(parse_defining("y^2 - y - z"))
    [(-0.25+0j)]
    """
    if defn.k < 2:
        if lenient:
            return []
        raise DegreeTooLow("branching points need k >= 2")
    disc = branching_polynomial(defn)
    if disc.degree < 1:
        return []
    return [r for r, _ in poly_roots(disc)]


# ---------------------------------------------------------------------------
# equimodular set


@dataclass(frozen=True)
class Window:
    xmin: float
    xmax: float
    ymin: float
    ymax: float

    def __post_init__(self):
        vals = (self.xmin, self.xmax, self.ymin, self.ymax)
        if not all(math.isfinite(v) for v in vals):
            raise EmptyWindow("window bounds must be finite")
        if not (self.xmax > self.xmin and self.ymax > self.ymin):
            raise EmptyWindow(f"empty window {vals}")

    @classmethod
    def coerce(cls, w):
        return w if isinstance(w, Window) else cls(*map(float, w))

    def contains(self, z, margin=0.0) -> bool:
        return (self.xmin - margin <= z.real <= self.xmax + margin
                and self.ymin - margin <= z.imag <= self.ymax + margin)

    def as_tuple(self):
        return (self.xmin, self.xmax, self.ymin, self.ymax)


@dataclass
class XiTrace:
    """Output of :func:`trace_equimodular`.

    ``segments`` are polylines (complex arrays); ``junctions`` and
    ``endpoints`` are the graph nodes of degree at least three and one.
    """

    segments: list
    isolated: list
    junctions: list
    endpoints: list
    mask: np.ndarray
    window: Window
    cell: tuple  # finest cell width and height
    levels: int

    @property
    def cell_diag(self) -> float:
        return math.hypot(*self.cell)


def _spectra_batch(defn: DefiningPolynomial, z: np.ndarray):
    """Spectral numbers by decreasing modulus, relative gaps and a validity mask."""
    k = defn.k
    c = defn.eval_coeffs(z)
    lead = c[-1]
    valid = (lead != 0) & np.all(np.isfinite(c), axis=0)
    m = z.size
    roots = np.full((m, k), np.nan + 0j)
    gap = np.full(m, np.inf)
    if not np.any(valid):
        return roots, gap, valid
    cv = c[:, valid]
    row = -(cv[-2::-1] / cv[-1]).T  # (m, k): R_{k-1}, ..., R_0
    if k == 1:
        r = row
    else:
        t = np.zeros((row.shape[0], k, k), dtype=complex)
        t[:, 0, :] = row
        t[:, np.arange(1, k), np.arange(k - 1)] = 1
        good = np.all(np.isfinite(row), axis=1)
        r = np.full((row.shape[0], k), np.nan + 0j)
        r[good] = np.linalg.eigvals(t[good])
    order = np.argsort(-np.abs(r), axis=1, kind="stable")
    r = np.take_along_axis(r, order, axis=1)
    roots[valid] = r
    mod = np.abs(r)
    if k == 1:
        g = np.ones(mod.shape[0])
    else:
        with np.errstate(divide="ignore", invalid="ignore"):
            g = np.where(mod[:, 0] > 0, (mod[:, 0] - mod[:, 1]) / mod[:, 0], 0.0)
    gap[valid] = g
    valid[valid] = np.isfinite(g)
    return roots, gap, valid


def _chordal(a, b):
    with np.errstate(invalid="ignore", over="ignore"):
        return np.abs(a - b) / np.sqrt((1 + np.abs(a) ** 2) * (1 + np.abs(b) ** 2))


def _crossing(ra, rb, va, vb):
    """Whether the dominant root changes identity between two samples.

    Roots at the two samples are matched by the permutation of least total
    chordal distance, which stays reliable when a root runs off to infinity
    near a zero of ``P_k``.  Large ``k`` falls back to nearest-root matching.
    """
    ok = va & vb
    k = ra.shape[1]
    if k == 1:
        return np.zeros(ra.shape[0], dtype=bool)
    if k <= 5:
        best = np.full(ra.shape[0], np.inf)
        dom = np.zeros(ra.shape[0], dtype=np.int64)
        for perm in itertools.permutations(range(k)):
            cost = sum(_chordal(ra[:, i], rb[:, perm[i]]) for i in range(k))
            cost = np.where(np.isfinite(cost), cost, np.inf)
            better = cost < best
            best = np.where(better, cost, best)
            dom = np.where(better, perm[0], dom)
        return ok & (dom != 0)
    da, db = ra[:, 0], rb[:, 0]
    nb = np.argmin(_chordal(rb, da[:, None]), axis=1)
    na = np.argmin(_chordal(ra, db[:, None]), axis=1)
    return ok & ((nb != 0) | (na != 0))


def _flag_cells(defn, window, hx, hy, cells, tol):
    """Flag cells (array of (i, j) at spacing hx, hy) whose samples detect Xi.

    Samples are the four corners and the center of every cell.
    """
    i, j = cells[:, 0], cells[:, 1]
    offs = [(0, 0), (1, 0), (1, 1), (0, 1)]
    # corners on the doubled lattice, centers at odd coordinates
    pts_x = [2 * i + 2 * a for a, _ in offs] + [2 * i + 1]
    pts_y = [2 * j + 2 * b for _, b in offs] + [2 * j + 1]
    px = np.stack(pts_x)  # (5, n)
    py = np.stack(pts_y)
    key = np.stack((px.ravel(), py.ravel()), axis=1)
    uniq, inv = np.unique(key, axis=0, return_inverse=True)
    inv = inv.reshape(px.shape)
    z = (window.xmin + uniq[:, 0] * hx / 2) + 1j * (window.ymin + uniq[:, 1] * hy / 2)
    roots, gap, valid = _spectra_batch(defn, z)
    g = np.where(valid[inv], gap[inv], np.inf)
    flag = np.min(g, axis=0) <= tol
    pairs = [(0, 4), (1, 4), (2, 4), (3, 4), (0, 1), (1, 2), (2, 3), (3, 0)]
    for a, b in pairs:
        ia, ib = inv[a], inv[b]
        flag |= _crossing(roots[ia], roots[ib], valid[ia], valid[ib])
    return flag


def _neighbors_in(cells_set, dil, nx, ny):
    out = set()
    for (i, j) in cells_set:
        for di in range(-dil, dil + 1):
            for dj in range(-dil, dil + 1):
                a, b = i + di, j + dj
                if 0 <= a < nx and 0 <= b < ny:
                    out.add((a, b))
    return out


def flag_mask(defn: DefiningPolynomial, window, grid=(256, 256), tol=DEFAULT_GAP_TOL,
              max_depth=DEFAULT_MAX_DEPTH):
    """Boolean mask ``[row=imag, col=real]`` of finest cells flagged as Xi.

    Starting from the ``grid`` cells, flagged cells (and their neighbors) are
    split in four until the cell width reaches ``window / 2**max_depth``.
    """
    window = Window.coerce(window)
    nx, ny = int(grid[0]), int(grid[1])
    if nx < 8 or ny < 8:
        raise ValueError("grid must be at least 8x8")
    levels = max(0, math.ceil(math.log2(2 ** max_depth / min(nx, ny))))
    NX, NY = nx * 2 ** levels, ny * 2 ** levels
    cells = np.array([(i, j) for j in range(ny) for i in range(nx)], dtype=np.int64)
    for level in range(levels + 1):
        sx, sy = nx * 2 ** level, ny * 2 ** level
        hx = (window.xmax - window.xmin) / sx
        hy = (window.ymax - window.ymin) / sy
        if cells.size == 0:
            break
        flag = _flag_cells(defn, window, hx, hy, cells, tol)
        flagged = cells[flag]
        if level == levels:
            cells = flagged
            break
        keep = _neighbors_in({(int(a), int(b)) for a, b in flagged}, 1, sx, sy)
        nxt = []
        for (a, b) in sorted(keep):
            nxt.extend([(2 * a, 2 * b), (2 * a + 1, 2 * b), (2 * a, 2 * b + 1), (2 * a + 1, 2 * b + 1)])
        cells = np.array(nxt, dtype=np.int64).reshape(-1, 2)
    mask = np.zeros((NY, NX), dtype=bool)
    if cells.size:
        mask[cells[:, 1], cells[:, 0]] = True
    hx = (window.xmax - window.xmin) / NX
    hy = (window.ymax - window.ymin) / NY
    return mask, (hx, hy), levels


def _skeleton_graph(skel: np.ndarray):
    """Nodes, edges and polylines (pixel lists) of a one-pixel-wide skeleton."""
    pix = {(int(r), int(c)) for r, c in zip(*np.nonzero(skel))}

    def nbrs(p):
        r, c = p
        out = []
        for dr in (-1, 0, 1):
            for dc in (-1, 0, 1):
                if (dr or dc) and (r + dr, c + dc) in pix:
                    q = (r + dr, c + dc)
                    if dr and dc and ((r, c + dc) in pix or (r + dr, c) in pix):
                        continue  # diagonal shortcut around a 4-neighbor
                    out.append(q)
        return out

    adj = {p: nbrs(p) for p in pix}
    deg = {p: len(v) for p, v in adj.items()}
    isolated = [p for p in pix if deg[p] == 0]
    # junction clusters
    node_of = {}
    nodes = []
    for p in sorted(pix):
        if deg[p] >= 3 and p not in node_of:
            comp, stack = [], [p]
            node_of[p] = len(nodes)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in adj[x]:
                    if deg[y] >= 3 and y not in node_of:
                        node_of[y] = len(nodes)
                        stack.append(y)
            nodes.append(("junction", comp))
    for p in sorted(pix):
        if deg[p] == 1:
            node_of[p] = len(nodes)
            nodes.append(("end", [p]))

    paths = []
    used = set()
    for p in sorted(node_of):
        for q in adj[p]:
            if frozenset((p, q)) in used or node_of.get(q) == node_of[p]:
                continue
            path = [p, q]
            used.add(frozenset((p, q)))
            prev, cur = p, q
            while cur not in node_of:
                nxt = [x for x in adj[cur] if x != prev and frozenset((cur, x)) not in used]
                if not nxt:
                    break
                used.add(frozenset((cur, nxt[0])))
                prev, cur = cur, nxt[0]
                path.append(cur)
            paths.append((node_of[p], node_of.get(cur), path))
    # closed loops without nodes
    seen = {x for _, _, path in paths for x in path} | set(node_of) | set(isolated)
    for p in sorted(pix):
        if p in seen:
            continue
        path, prev, cur = [p], None, p
        seen.add(p)
        while True:
            nxt = [x for x in adj[cur] if x != prev and x not in seen]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            seen.add(cur)
            path.append(cur)
        path.append(p)
        paths.append((None, None, path))
    return nodes, paths, isolated


def trace_equimodular(defn: DefiningPolynomial, window, grid=(256, 256),
                      tol: float = DEFAULT_GAP_TOL, max_depth: int = DEFAULT_MAX_DEPTH,
                      branch_points=None) -> XiTrace:
    """Trace the equimodular set inside ``window``.

    Parameters
    ----------
    defn : DefiningPolynomial
    window : (xmin, xmax, ymin, ymax)
    grid : (nx, ny)
        Base cells; both at least 8.
    tol : float
        Relative modulus gap below which a sample counts as a tie.
    max_depth : int
        The finest cell width is ``window / 2**max_depth``.
    branch_points : list of complex, optional
        Anchors for segment ends; computed when omitted.

    Returns
    -------
    XiTrace
    """
    from skimage.morphology import skeletonize

    window = Window.coerce(window)
    if branch_points is None:
        branch_points = delta_T(defn, lenient=True)
    if defn.k == 1:
        empty = np.zeros((int(grid[1]), int(grid[0])), dtype=bool)
        hx = (window.xmax - window.xmin) / grid[0]
        hy = (window.ymax - window.ymin) / grid[1]
        return XiTrace([], [], [], [], empty, window, (hx, hy), 0)
    mask, (hx, hy), levels = flag_mask(defn, window, grid, tol, max_depth)
    if not mask.any() and any(window.contains(b) for b in branch_points):
        warnings.warn("no equimodular cells found although branching points lie in the window; "
                      "increase the grid", GridTooCoarse, stacklevel=2)
    skel = skeletonize(mask) if mask.any() else mask

    def center(p):
        r, c = p
        return complex(window.xmin + (c + 0.5) * hx, window.ymin + (r + 0.5) * hy)

    nodes, paths, iso = _skeleton_graph(skel)
    node_pos = []
    for kind, comp in nodes:
        node_pos.append(complex(np.mean([center(p) for p in comp])))
    # snap nodes near branching points onto them
    snap = 3 * math.hypot(hx, hy)
    for idx, (kind, comp) in enumerate(nodes):
        best = min(branch_points, key=lambda b: abs(b - node_pos[idx]), default=None)
        if best is not None and abs(best - node_pos[idx]) <= snap:
            node_pos[idx] = complex(best)
    segments = []
    for a, b, path in paths:
        pts = [center(p) for p in path]
        if a is not None:
            pts[0] = node_pos[a]
        if b is not None:
            pts[-1] = node_pos[b]
        segments.append(np.array(pts, dtype=complex))
    isolated = [center(p) for p in sorted(iso)]
    junctions = [node_pos[i] for i, (kind, _) in enumerate(nodes) if kind == "junction"]
    endpoints = [node_pos[i] for i, (kind, _) in enumerate(nodes) if kind == "end"]
    return XiTrace(segments, isolated, junctions, endpoints, mask, window, (hx, hy), levels)


def distance_to_polyline(z: complex, poly: np.ndarray):
    """Distance from ``z`` to a polyline and the arclength of the foot point."""
    if len(poly) == 1:
        return abs(z - poly[0]), 0.0
    a, b = poly[:-1], poly[1:]
    d = b - a
    L = np.abs(d)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.clip(np.where(L > 0, ((z - a) * np.conj(d)).real / L ** 2, 0.0), 0, 1)
    foot = a + t * d
    dist = np.abs(z - foot)
    i = int(np.argmin(dist))
    s = float(np.sum(L[:i]) + t[i] * L[i])
    return float(dist[i]), s


# ---------------------------------------------------------------------------
# slow growth


def mu_cleared(defn: DefiningPolynomial, init: InitialTuple):
    """Coefficients (ascending in the spectral variable) of the cleared ``mu``.

    ``mu(t, z) = sum_i sum_{j>=i} q_{k-i} R_{k-j} t^(i-j)``; multiplying by
    ``D P_k t^(k-1)``, with ``D`` the common denominator of the initial tuple,
    leaves a polynomial of degree at most ``k - 1`` in ``t``.
    """
    k = defn.k
    D = Poly.one()
    for e in init:
        if e.den.degree > 0 or e.den.lc != 1:
            D = poly_lcm(D, e.den)
    qt = [e.num * D.exact_div(e.den) for e in init]
    out = [Poly.zero() for _ in range(k)]
    for i in range(1, k + 1):
        for j in range(i, k + 1):
            out[k - 1 + i - j] = out[k - 1 + i - j] - qt[k - i] * defn.coeffs[k - j]
    return out


def slow_growth_candidates(defn: DefiningPolynomial, init: InitialTuple):
    """The resultant ``S(z)`` and its roots with multiplicities.

    Examples
    --------
    >>> from algrat.algfun import parse_defining, parse_initial
    >>> S, roots = slow_growth_candidates(parse_defining("y^2 - y - z"), parse_initial("1, -1"))
    >>> sorted((round(r.real, 9), m) for r, m in roots)
    [(0.0, 2), (2.0, 1)]
    """
    if defn.k == 1:
        return Poly.one(), []
    mu = mu_cleared(defn, init)
    if all(c.is_zero() for c in mu):
        raise IdenticallyZeroMu("the slow-growth function vanishes identically for this initial tuple")
    S = resultant(list(defn.coeffs), mu)
    if S.is_zero():
        raise DegenerateResultant("symbol polynomial and slow-growth function share a factor for all z")
    if S.degree < 1:
        return S, []
    return S, poly_roots(S)


@dataclass
class SigmaPoint:
    z: complex
    mult: int
    value: float  # relative size of the slow-growth function at the dominant root
    on_delta: bool = False


def _sigma_filter(defn, init, candidates, upsilon, branch, tol, spec_tol):
    kept, rejected = [], []
    for z, m in candidates:
        z = complex(z)
        if any(abs(z - u) <= CLUSTER_RTOL * (1 + abs(u)) * 10 for u in upsilon):
            rejected.append((z, m, "pole locus"))
            continue
        rep = spectral_numbers(defn, z, spec_tol)
        if rep.kind is not DominanceClass.DOMINANT:
            rejected.append((z, m, rep.kind.value))
            continue
        q = np.array([complex(e(z)) for e in init], dtype=complex)[::-1]
        vals = []
        for tau, _ in rep.taus:
            if tau == 0:
                vals.append(math.inf)
                continue
            ep = eigen_from_root(defn, z, tau)
            scale = float(np.sum(np.abs(ep.raw_v) * np.abs(q))) or 1.0
            vals.append(abs(np.dot(ep.raw_v, q)) / scale)
        if vals[0] <= tol and vals[0] <= min(vals):
            on_delta = any(abs(z - b) <= 1e-6 * (1 + abs(b)) for b in branch)
            kept.append(SigmaPoint(z, m, vals[0], on_delta))
        else:
            rejected.append((z, m, "excites dominant root"))
    return kept, rejected


def slow_growth_set(defn: DefiningPolynomial, init: InitialTuple, tol: float = DEFAULT_SIGMA_TOL,
                    spec_tol: float = DEFAULT_TOL, candidates=None):
    """Points of slow growth with multiplicities.

    A candidate ``z`` is kept when it is off the pole locus, dominant, and the
    slow-growth function at the dominant root is at most ``tol`` relative to
    its scale (and no larger than at the other spectral numbers).

    Examples
    --------
    >>> from algrat.algfun import parse_defining, parse_initial
    >>> [(round(z.real, 9), m) for z, m in slow_growth_set(parse_defining("y^2 - y - z"), parse_initial("1, -1"))]
    [(2.0, 1)]
    """
    if candidates is None:
        _, candidates = slow_growth_candidates(defn, init)
    kept, _ = _sigma_filter(defn, init, candidates, pole_locus(defn, init),
                            delta_T(defn, lenient=True), tol, spec_tol)
    return [(s.z, s.mult) for s in kept]


# ---------------------------------------------------------------------------


@dataclass
class LocusSet:
    """All loci for one (defining polynomial, initial tuple) pair."""

    xi_segments: list
    xi_isolated: list
    upsilon: list
    delta_T: list
    candidates_S: list
    sigma: list
    S_poly: Poly | None = None
    sigma_details: list = field(default_factory=list)
    sigma_rejected: list = field(default_factory=list)
    trace: XiTrace | None = None
    tolerances: dict = field(default_factory=dict)

    @property
    def sigma_cardinality(self) -> int:
        return sum(m for _, m in self.sigma)


def compute_loci(defn: DefiningPolynomial, init: InitialTuple, window=(-3, 3, -3, 3),
                 grid=(256, 256), gap_tol: float = DEFAULT_GAP_TOL,
                 sigma_tol: float = DEFAULT_SIGMA_TOL, spec_tol: float = DEFAULT_TOL,
                 max_depth: int = DEFAULT_MAX_DEPTH, trace: bool = True) -> LocusSet:
    """Compute every locus; ``trace=False`` skips the grid tracing of Xi."""
    ups = pole_locus(defn, init)
    branch = delta_T(defn, lenient=True)
    S, cands = slow_growth_candidates(defn, init)
    kept, rejected = _sigma_filter(defn, init, cands, ups, branch, sigma_tol, spec_tol)
    xt = trace_equimodular(defn, window, grid, gap_tol, max_depth, branch) if trace else None
    return LocusSet(
        xi_segments=xt.segments if xt else [],
        xi_isolated=xt.isolated if xt else [],
        upsilon=ups,
        delta_T=branch,
        candidates_S=[(complex(z), m) for z, m in cands],
        sigma=[(s.z, s.mult) for s in kept],
        S_poly=S,
        sigma_details=kept,
        sigma_rejected=rejected,
        trace=xt,
        tolerances={"gap_tol": gap_tol, "sigma_tol": sigma_tol, "spectrum_tol": spec_tol,
                    "max_depth": max_depth, "cluster_rtol": CLUSTER_RTOL},
    )


__all__ = [
    "Window", "XiTrace", "LocusSet", "SigmaPoint", "pole_locus", "delta_T",
    "branching_polynomial", "trace_equimodular", "flag_mask", "distance_to_polyline",
    "mu_cleared", "slow_growth_candidates", "slow_growth_set", "compute_loci",
]
