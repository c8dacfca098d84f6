from __future__ import annotations

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algrat.algfun import parse_defining, parse_initial, standard_initial
from algrat.errors import EmptyWindow, GridTooCoarse, IdenticallyZeroMu
from algrat.experiments import branching_points, three_term_defn
from algrat.loci import (Window, compute_loci, delta_T, distance_to_polyline, flag_mask,
                         pole_locus, slow_growth_candidates, slow_growth_set, trace_equimodular)
from algrat.numcore import Poly
from algrat.spectrum import DominanceClass, limit_g, spectral_numbers


@pytest.fixture(scope="module")
def quad_trace(quad):
    return trace_equimodular(quad, (-3, 1, -1, 1), (256, 256))


@pytest.fixture(scope="module")
def fig1_generic_loci(fig1, fig1_generic_init):
    return compute_loci(fig1, fig1_generic_init, (-3, 3, -3, 3), (256, 256))


# pole locus / branching points --------------------------------------------------

def test_pole_locus_examples(quad, fig1):
    assert pole_locus(fig1, standard_initial(3)) == [pytest.approx(-1)]
    assert pole_locus(quad, parse_initial("1, 1")) == []
    assert pole_locus(quad, parse_initial("1/(z-I), 1")) == [pytest.approx(1j)]


def test_delta_T_examples(quad):
    assert delta_T(quad) == [pytest.approx(-0.25)]
    assert any(abs(z + 3) < 1e-9 for z in delta_T(three_term_defn(3)))


@given(st.floats(-20, 20, allow_nan=False))
@settings(max_examples=20)
def test_branching_cubic_agrees_with_delta_T(C):
    C = round(C, 3)
    if abs(C - 3) < 1e-2:
        return
    ref = delta_T(three_term_defn(C))
    got = branching_points(C)
    assert len(ref) == 3
    for z in got:
        assert min(abs(z - r) for r in ref) <= 1e-8 * (1 + abs(z))


# equimodular tracing -------------------------------------------------------------

def test_k2_trace_is_the_cut(quad_trace):
    tr = quad_trace
    cell = max(tr.cell)
    assert len(tr.segments) == 1 and not tr.junctions
    seg = tr.segments[0]
    # Hausdorff distance to the real interval [-3, -1/4]
    ts = np.linspace(-3, -0.25, 2000)
    d1 = max(distance_to_polyline(complex(t), seg)[0] for t in ts)
    d2 = max(abs(z.imag) + max(0.0, z.real + 0.25, -3 - z.real) for z in seg)
    assert max(d1, d2) <= 2 * cell
    assert any(abs(e + 0.25) < 1e-12 for e in tr.endpoints)


def test_k2_nothing_flagged_right_of_branch_point(quad_trace):
    tr = quad_trace
    rows, cols = np.nonzero(tr.mask)
    hx, hy = tr.cell
    xs = tr.window.xmin + (cols + 0.5) * hx
    ys = tr.window.ymin + (rows + 0.5) * hy
    assert np.all(xs <= -0.25 + 2 * hx)
    assert np.all(np.abs(ys) <= 2 * hy)


def test_k2_flagging_matches_closed_form(quad):
    mask, (hx, hy), _ = flag_mask(quad, (-3, 1, -1, 1), (64, 32), max_depth=6)
    rows, cols = np.nonzero(mask)
    for r, c in zip(rows, cols):
        x0, y0 = -3 + c * hx, -1 + r * hy
        # a flagged cell must touch {Re z <= -1/4, Im z = 0} within one cell
        assert x0 <= -0.25 + hx and y0 - hy <= 0 <= y0 + 2 * hy


def test_y_shape_at_C1():
    C = 1
    tr = trace_equimodular(three_term_defn(C), (-2.5, 3.7, -2.5, 2.5), (256, 256))
    assert len(tr.junctions) == 1
    assert len(tr.segments) == 3
    bps = branching_points(C)
    for e in tr.endpoints:
        assert min(abs(e - b) for b in bps) < 1e-9


def test_k1_trace_is_empty():
    tr = trace_equimodular(parse_defining("y - z"), (-1, 1, -1, 1), (16, 16))
    assert tr.segments == [] and tr.isolated == []


def test_empty_window(quad):
    with pytest.raises(EmptyWindow):
        trace_equimodular(quad, (1, 1, -1, 1), (16, 16))
    with pytest.raises(EmptyWindow):
        Window(0, math.inf, 0, 1)


def test_grid_too_coarse_warns():
    # the branching point 0 joins two subdominant roots, so no cell is flagged
    d = parse_defining("y^3 - 10*y^2 - z*y + 10*z")
    with pytest.warns(GridTooCoarse):
        trace_equimodular(d, (-1, 1, -1, 1), (8, 8), max_depth=3)


def _anchored(tr, points, tol):
    w = tr.window
    for e in tr.endpoints:
        near_point = any(abs(e - p) <= tol for p in points)
        near_edge = min(e.real - w.xmin, w.xmax - e.real, e.imag - w.ymin, w.ymax - e.imag) <= tol
        near_junction = any(abs(e - j) <= tol for j in tr.junctions)
        assert near_point or near_edge or near_junction, e


@pytest.mark.parametrize("C", [4, 1, -1, -2])
def test_endpoints_anchored_three_term(C):
    defn = three_term_defn(C)
    tr = trace_equimodular(defn, (-5, 5, -5, 5), (128, 128))
    _anchored(tr, delta_T(defn), 3 * tr.cell_diag)


def test_endpoints_anchored_fig1(fig1_generic_loci):
    tr = fig1_generic_loci.trace
    _anchored(tr, fig1_generic_loci.delta_T, 3 * tr.cell_diag)


# slow growth -------------------------------------------------------------------

def test_candidates_k2(quad):
    S, roots = slow_growth_candidates(quad, parse_initial("1, -1"))
    # S vanishes exactly on {0, 2}
    assert sorted(round(r.real, 10) for r, _ in roots) == [0.0, 2.0]
    assert S(0) == 0 and S(2) == 0
    assert sum(m for _, m in roots) == S.degree


def test_sigma_k2(quad):
    sig = slow_growth_set(quad, parse_initial("1, -1"))
    assert len(sig) == 1 and abs(sig[0][0] - 2) < 1e-10 and sig[0][1] == 1
    assert abs(limit_g(quad, parse_initial("1, -1"), 2)) < 1e-10
    assert slow_growth_set(quad, standard_initial(2)) == []


def test_k1_has_no_candidates():
    S, roots = slow_growth_candidates(parse_defining("y - z"), parse_initial("1"))
    assert roots == [] and S == Poly.one()


def test_identically_zero_mu():
    # P_0 = 0 and q_1 = 0 kill every coefficient of the cleared slow-growth function
    with pytest.raises(IdenticallyZeroMu):
        slow_growth_candidates(parse_defining("y^2 - z*y"), parse_initial("1, 0"))


def test_fig1_standard_init_has_empty_sigma(fig1):
    loci = compute_loci(fig1, standard_initial(3), trace=False)
    assert loci.sigma == []
    assert loci.candidates_S  # candidates exist but all are filtered out


def test_fig1_generic_sigma_subset_of_S(fig1, fig1_generic_loci):
    loci = fig1_generic_loci
    for z, _ in loci.sigma:
        assert min(abs(z - c) for c, _ in loci.candidates_S) <= 1e-12 * (1 + abs(z))
        assert spectral_numbers(fig1, z).kind is DominanceClass.DOMINANT
        assert all(abs(z - u) > 1e-6 for u in loci.upsilon)


def test_fig1_generic_sigma_off_flagged_cells(fig1_generic_loci):
    tr = fig1_generic_loci.trace
    hx, hy = tr.cell
    for z, _ in fig1_generic_loci.sigma:
        if not tr.window.contains(z):
            continue
        c = int((z.real - tr.window.xmin) / hx)
        r = int((z.imag - tr.window.ymin) / hy)
        assert not tr.mask[min(r, tr.mask.shape[0] - 1), min(c, tr.mask.shape[1] - 1)]


def test_fig1_generic_sigma_limit_vanishes(fig1, fig1_generic_init, fig1_generic_loci):
    for s in fig1_generic_loci.sigma_details:
        g = limit_g(fig1, fig1_generic_init, s.z)
        q = np.array([complex(e(s.z)) for e in fig1_generic_init])
        assert abs(g) <= 10 * 1e-6 * (1 + np.sum(np.abs(q)))


def _slow_growth_function(defn, init, zc):
    """v . q at the dominant root, in mpmath."""
    z = mpmath.mpc(zc)
    P = [mpmath.polyval([mpmath.mpc(complex(c)) for c in p.coeffs[::-1]], z) if not p.is_zero() else 0
         for p in defn.coeffs]
    k = defn.k
    roots = mpmath.polyroots(P[::-1], maxsteps=200, extraprec=200)
    lam = max(roots, key=abs)
    R = [-P[i] / P[k] for i in range(k)]
    q = [mpmath.mpc(complex(e(complex(zc)))) for e in init]
    total = 0
    for i in range(1, k + 1):
        for j in range(i, k + 1):
            total += q[k - i] * R[k - j] * lam ** (i - j)
    return total


def test_fig1_generic_sigma_independent_oracle(fig1, fig1_generic_init, fig1_generic_loci):
    # Newton on the slow-growth function from each reported point converges in place
    for z0, _ in fig1_generic_loci.sigma:
        f = lambda w: _slow_growth_function(fig1, fig1_generic_init, complex(w))
        root = mpmath.findroot(f, mpmath.mpc(z0), tol=1e-20)
        assert abs(complex(root) - z0) < 1e-8


def _h_numpy(defn, init, z):
    """Slow-growth function at the dominant root, binary64."""
    with np.errstate(all="ignore"):
        vals = defn.eval_coeffs(z)
        if not np.all(np.isfinite(vals)) or vals[-1] == 0:
            return complex("nan")
        roots = np.roots(vals[::-1])
        lam = roots[np.argmax(np.abs(roots))]
        k = defn.k
        R = -vals[:k] / vals[k]
        q = [complex(e(z)) for e in init]
        return sum(q[k - i] * R[k - j] * lam ** (i - j)
                   for i in range(1, k + 1) for j in range(i, k + 1))


def test_fig1_generic_sigma_matches_grid_newton_search(fig1, fig1_generic_init, fig1_generic_loci):
    """Newton from a dense grid of starts finds exactly the reported points."""
    found = []
    for x in np.linspace(-6, 6, 49):
        for y in np.linspace(-6, 6, 49):
            w = complex(x, y)
            for _ in range(40):
                if abs(w + 1) < 1e-6:
                    break
                h = _h_numpy(fig1, fig1_generic_init, w)
                d = (_h_numpy(fig1, fig1_generic_init, w + 1e-7) - h) / 1e-7
                if d == 0 or not np.isfinite(d):
                    break
                step = h / d
                w -= step
                if abs(step) < 1e-13 * (1 + abs(w)):
                    break
            else:
                continue
            h = abs(_h_numpy(fig1, fig1_generic_init, w))
            rep = spectral_numbers(fig1, w) if abs(w + 1) > 1e-6 else None
            if h < 1e-9 and rep is not None and rep.is_dominant and rep.gap > 1e-3:
                if all(abs(w - f) > 1e-6 for f in found):
                    found.append(w)
    sigma = [z for z, _ in fig1_generic_loci.sigma]
    assert len(found) == len(sigma)
    for w in found:
        assert min(abs(w - s) for s in sigma) < 1e-8
