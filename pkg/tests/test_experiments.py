from __future__ import annotations

import cmath

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from algrat.errors import InsufficientProjection
from algrat.experiments import (FIG2_C_VALUES, branching_cubic, branching_discriminant_identity,
                                branching_points, degenerate_C_values, degenerate_points,
                                discriminant_formula, equimodular_topology, interlacing_check,
                                real_interlacing, real_zero_check, regime, reproduce_figure1,
                                reproduce_figure3, three_conj_report, three_term_defn,
                                three_term_init, three_term_sequence)
from algrat.loci import delta_T, trace_equimodular
from algrat.numcore import GaussianRational, Poly

z = Poly.x()


# sequence ------------------------------------------------------------------------

@pytest.mark.parametrize("C", [2, -1, 0, 4])
def test_first_terms(C):
    p = three_term_sequence(C, 3)
    assert p[0] == Poly.one()
    assert p[1] == z
    assert p[2] == z * z - Poly([C])
    assert p[3] == z ** 3 - Poly([0, 2 * C]) - Poly.one()


def test_sequence_against_direct_recursion():
    C = GaussianRational(3, 1)
    p = [Poly([]), Poly([]), Poly.one()]
    for _ in range(20):
        p.append(z * p[-1] - Poly([C]) * p[-2] - p[-3])
    assert three_term_sequence(C, 20) == p[2:]


def test_defining_polynomial_layout():
    d = three_term_defn(2)
    assert d.coeffs == (Poly.one(), Poly([2]), -z, Poly.one())
    assert [e.num for e in three_term_init()] == [Poly([]), Poly([]), Poly.one()]


# branching points / discriminant ------------------------------------------------

def test_branching_point_examples():
    assert any(abs(b + 3) < 1e-6 for b in branching_points(3))
    assert any(abs(b - 1) < 1e-9 for b in branching_points(-1))
    pts = branching_points(0)
    real = [b for b in pts if b.imag == 0]
    assert len(real) == 1 and real[0].real == pytest.approx((27 / 4) ** (1 / 3))
    pair = [b for b in pts if b.imag != 0]
    assert len(pair) == 2 and pair[0] == pytest.approx(pair[1].conjugate())


def test_triple_point_at_three():
    # 4z^3 + 9z^2 - 54z - 135 = (z+3)^2 (4z - 15)
    assert branching_cubic(3) == Poly([3, 1]) ** 2 * Poly([-15, 4])


def test_discriminant_identity():
    holds, const = branching_discriminant_identity()
    assert holds
    # independent oracle: sympy's discriminant of the cubic in z
    C, Z = sp.symbols("C Z")
    disc = sp.discriminant(4 * Z ** 3 + C ** 2 * Z ** 2 - 18 * C * Z - 27 - 4 * C ** 3, Z)
    ratio = sp.cancel(disc / (64 * (C - 3) ** 3 * (C ** 2 + 3 * C + 9) ** 3))
    assert ratio.is_number and complex(const) == complex(ratio)


def test_discriminant_values():
    assert discriminant_formula(3) == 0
    assert discriminant_formula(-1) == -1404928


@pytest.mark.parametrize("C", [4, 3, 0, -1, -5])
def test_discriminant_sign_matches_regime(C):
    d = complex(discriminant_formula(C)).real
    r = regime(C)
    assert (d > 0) == (r == "C>3") and (d == 0) == (r == "C=3")


def test_regime_labels():
    assert [regime(c) for c in (4, 3, 1, -1, -2)] == ["C>3", "C=3", "-1<C<3", "C=-1", "C<-1"]
    assert regime(GaussianRational(1, 1)) == "complex"


@given(st.floats(-20, 20, allow_nan=False))
@settings(max_examples=20)
def test_branching_points_match_delta_T(C):
    C = round(C, 2)
    if abs(C - 3) < 0.05:
        return  # triple contact: the cluster is ill-conditioned
    ref = delta_T(three_term_defn(C))
    got = branching_points(C)
    assert len(got) == 3
    for b in got:
        assert min(abs(b - r) for r in ref) <= 1e-8 * (1 + abs(b))


@pytest.mark.parametrize("C", [2, 1, 0, -1, -2])
def test_conjugate_pair_below_three(C):
    pair = [b for b in branching_points(C) if abs(b.imag) > 1e-9]
    assert len(pair) == 2 and abs(pair[0] - pair[1].conjugate()) < 1e-12


# degenerate parameters ------------------------------------------------------------

def test_degenerate_values():
    assert degenerate_C_values() == [-1.0, 3.0]
    pts = {round(d.C): d for d in degenerate_points()}
    assert abs(pts[3].z + 3) < 1e-9 and abs(pts[3].tau + 1) < 1e-9
    assert abs(pts[-1].z - 1) < 1e-9 and abs(pts[-1].tau - 1) < 1e-9


def test_degenerate_points_solve_the_system():
    for d in degenerate_points():
        t = sp.Symbol("t")
        lhs = [1, -d.z, d.C, 1]
        w = d.tau * cmath.exp(1j * d.theta)
        rhs = sp.Poly(sp.expand((t - d.tau) ** 2 * (t - w)), t).all_coeffs()
        assert all(abs(complex(a) - complex(b)) < 1e-9 for a, b in zip(lhs, rhs))
        assert abs(abs(w) - abs(d.tau)) < 1e-12


@pytest.mark.parametrize("C, expected", [(3.5, "segment"), (2.5, "Y"), (-0.5, "Y"), (-1.5, "segment")])
def test_topology_changes_only_at_degenerate_values(C, expected):
    t = equimodular_topology(C, (128, 128))
    shape = "Y" if (t["segments"], len(t["junctions"])) == (3, 1) else "segment"
    assert shape == expected and t["segments"] in (1, 3)


def test_fig2_topology():
    shapes = {}
    for C in FIG2_C_VALUES:
        t = equimodular_topology(C)
        shapes[C] = (t["segments"], len(t["junctions"]))
    assert shapes == {4: (1, 0), 3: (1, 0), 1: (3, 1), -1: (3, 1), -2: (1, 0)}


# zeros -----------------------------------------------------------------------------

def test_real_zero_examples():
    assert real_zero_check(4, 41)[0] is True
    ok, wit = real_zero_check(1, 41)
    assert not ok and wit
    assert real_zero_check(2, 41)[0] is False


@pytest.mark.parametrize("C", [2, 1, 0, -1, -2])
def test_nonreal_zero_near_nonreal_branching_point(C):
    ok, wit = real_zero_check(C, 41)
    assert not ok
    pair = [b for b in branching_points(C) if abs(b.imag) > 1e-9]
    assert any(abs(w.imag) > 1e-4 and min(abs(w - b) for b in pair) < 0.5 for w in wit)


@pytest.mark.parametrize("C", [3.5, 4, 5, 10])
def test_real_zeros_above_three(C):
    for n in (5, 17, 30, 41):
        assert real_zero_check(C, n)[0], n
    assert real_interlacing(C, 40)


def test_report_fields():
    rep = three_conj_report(4, ns=(40, 41), interlacing=True)
    assert rep.regime == "C>3" and len(rep.branch_points) == 3
    assert not rep.nonreal_found and rep.interlacing_ok
    assert sorted(rep.zeros_by_n) == [40, 41] and len(rep.zeros_by_n[41]) == 41
    rep = three_conj_report(1)
    assert rep.nonreal_found and rep.interlacing_ok is None


# interlacing along traced curves --------------------------------------------------

@pytest.fixture(scope="module")
def c4_trace():
    return trace_equimodular(three_term_defn(4), (-7, 7, -2, 2), (256, 128))


def test_interlacing_c4(c4_trace):
    res = interlacing_check(three_term_defn(4), three_term_init(), 40, c4_trace)
    assert res.ok is True and res.label == "EXPERIMENTAL"
    assert res.segments_checked == 1 and res.projected >= 60  # of 81; endpoint neighbourhoods are excluded


def test_interlacing_small_n_indeterminate(c4_trace):
    res = interlacing_check(three_term_defn(4), three_term_init(), 1, c4_trace)
    assert res.ok is None
    with pytest.raises(InsufficientProjection):
        interlacing_check(three_term_defn(4), three_term_init(), 1, c4_trace,
                          raise_on_insufficient=True)


def test_figure3_interlacing():
    defn, init, trace, res, zeros = reproduce_figure3()
    assert res.ok is True and res.segments_checked >= 1
    assert len(zeros[40]) >= 40


# figure 1 -------------------------------------------------------------------------

def test_figure1_runs():
    std = reproduce_figure1("standard")
    pap = reproduce_figure1("paper")
    assert std.summary["spurious_count"] == 0
    assert pap.summary["spurious_count"] == pap.summary["sigma_cardinality"]
    assert std.summary["pole_classes"]["Fixed"] == pap.summary["pole_classes"]["Fixed"] == 1
    # same regular pattern: regular poles of one run lie near those of the other
    eps = pap.report.eps
    reg = lambda run: [p.location for p in run.report.poles if p.cls.value == "Regular"]
    a, b = reg(std), reg(pap)
    near = sum(min(abs(x - y) for y in b) < 2 * eps for x in a)
    assert near >= 0.9 * len(a)
    with pytest.raises(ValueError):
        reproduce_figure1("other")
