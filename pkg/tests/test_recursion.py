from __future__ import annotations

import cmath

import pytest
from hypothesis import given
from hypothesis import strategies as st

from algrat.algfun import parse_defining, parse_initial, standard_initial
from algrat.errors import (IndeterminateRatio, InitLengthMismatch, PoleLocusPoint,
                           ZeroDenominatorSequence)
from algrat.experiments import three_term_defn, three_term_init
from algrat.numcore import Poly, RatFun, exact
from algrat.recursion import (eval_ratio, eval_ratio_grid, eval_sequence_log, generate_exact,
                              ratio_function)

z = Poly.x()


def integer_sequence(n, a=1, b=1, x=6):
    """u_n = u_{n-1} + x u_{n-2}: the oracle for y^2 - y - z at z = x."""
    u = [a, b]
    while len(u) <= n:
        u.append(u[-1] + x * u[-2])
    return u


def test_quadratic_values_at_six(quad):
    seq = generate_exact(quad, parse_initial("1, 1"), 12)
    assert [int(complex(n(exact(6))).real) for n in seq.numerators] == integer_sequence(12)
    assert integer_sequence(6) == [1, 1, 7, 13, 55, 133, 463]


def test_k1_sequence_is_power():
    seq = generate_exact(parse_defining("y - z"), parse_initial("1"), 6)
    assert seq.numerators == [z ** n for n in range(7)]
    for n in range(1, 6):
        assert ratio_function(seq, n) == RatFun(z)


def test_three_term_family_embedding():
    seq = generate_exact(three_term_defn(2), three_term_init(), 8)
    p = seq.numerators[2:]
    C = 2
    assert p[0] == Poly([1]) and p[1] == z and p[2] == z * z - Poly([C])
    assert p[3] == z ** 3 - Poly([0, 2 * C]) - Poly([1])
    for n in range(3, len(p)):
        assert p[n] == z * p[n - 1] - Poly([C]) * p[n - 2] - p[n - 3]


def test_ratio_examples(quad):
    assert ratio_function(generate_exact(quad, parse_initial("1, 1"), 2), 2) == RatFun(z + 1)
    assert ratio_function(generate_exact(quad, parse_initial("1, -1"), 2), 2) == RatFun(Poly([1, -1]))


def test_rational_initial_entries_use_prefactor(quad):
    init = parse_initial("1/(z-2), z/(z+1)")
    seq = generate_exact(quad, init, 6)
    assert seq.prefactor.degree == 2
    q = [init[0], init[1]]
    for n in range(2, 7):
        q.append(q[-1] + RatFun(z) * q[-2])
    for n in range(7):
        assert seq.q(n) == q[n]
    for n in range(1, 7):
        assert ratio_function(seq, n) == q[n] / q[n - 1]


def test_init_length_mismatch(quad):
    with pytest.raises(InitLengthMismatch):
        generate_exact(quad, parse_initial("1"), 4)


def test_zero_denominator_sequence():
    seq = generate_exact(parse_defining("y^2 - z"), parse_initial("0, 1"), 4)
    with pytest.raises(ZeroDenominatorSequence):
        ratio_function(seq, 1)


def test_cleared_recursion_residual_is_zero(fig1, fig1_generic_init):
    seq = generate_exact(fig1, fig1_generic_init, 20)
    for n in range(fig1.k, 21):
        assert seq.residual(n).is_zero()


def test_eval_ratio_examples(quad):
    init = parse_initial("1, 1")
    assert abs(eval_ratio(quad, init, 6, 6) - 463 / 133) < 1e-13
    assert abs(eval_ratio(quad, init, 6, 40) - 3) < 1e-6
    assert eval_ratio(parse_defining("y - z"), parse_initial("1"), 0.3 + 2j, 9) == pytest.approx(0.3 + 2j)


def test_eval_ratio_errors(quad):
    d = parse_defining("(z-1)*y^2 - y - z")
    with pytest.raises(PoleLocusPoint):
        eval_ratio(d, parse_initial("1, 1"), 1, 5)
    with pytest.raises(PoleLocusPoint):
        eval_ratio(quad, parse_initial("1/(z-I), 1"), 1j, 5)
    # q_1(-1) = 0 for init {1, z+1}
    with pytest.raises(IndeterminateRatio):
        eval_ratio(quad, parse_initial("1, z+1"), -1, 2)


def test_no_overflow_at_large_n(quad):
    vals, logs = eval_sequence_log(quad, parse_initial("1, 1"), 6, 400)
    assert abs(logs[400] - 400 * cmath.log(3).real) < 5
    assert abs(eval_ratio(quad, parse_initial("1, 1"), 6, 400) - 3) < 1e-12


def test_grid_matches_pointwise(fig1, fig1_generic_init):
    pts = [0.3 + 0.2j, -2 + 1j, 1.5 - 0.7j]
    grid = eval_ratio_grid(fig1, fig1_generic_init, pts, 17)
    for p, g in zip(pts, grid):
        assert abs(g - eval_ratio(fig1, fig1_generic_init, p, 17)) <= 1e-10 * (1 + abs(g))


coords = st.floats(-2.5, 2.5, allow_nan=False)


@given(coords, coords, st.integers(3, 25))
def test_exact_numeric_agreement(fig1, fig1_generic_init, x, y, n):
    zc = complex(x, y)
    if abs(zc + 1) < 1e-3:
        return
    seq = generate_exact(fig1, fig1_generic_init, n)
    r = ratio_function(seq, n)
    den = complex(r.den(exact(zc)))
    if abs(den) < 1e-6 * (1 + abs(complex(r.num(exact(zc))))):
        return
    ref = complex(r(exact(zc)))
    assert abs(eval_ratio(fig1, fig1_generic_init, zc, n) - ref) <= 1e-9 * (1 + abs(ref))


@given(st.integers(2, 30))
def test_standard_init_degrees_grow_linearly(n):
    d = parse_defining("y^3 - z*y^2 + 2*y + 1")
    seq = generate_exact(d, standard_initial(3), n)
    assert seq.numerators[n].degree == n - 2
