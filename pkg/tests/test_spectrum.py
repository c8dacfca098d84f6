from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from algrat.algfun import parse_defining, parse_initial, standard_initial
from algrat.errors import NotDominantPoint, PoleLocusPoint, PoleOfCoefficients
from algrat.experiments import three_term_defn
from algrat.recursion import eval_ratio
from algrat.spectrum import (DominanceClass, classify_roots, companion, dominant_root,
                             eigen_uv, fitted_rate, lam_chi_prime, limit_g, slow_growth_value,
                             spectral_numbers, symbol_values)


def test_companion_examples(quad, fig1):
    assert np.allclose(companion(quad, 2.5 - 1j), [[1, 2.5 - 1j], [1, 0]])
    assert np.allclose(companion(parse_defining("y - z"), 4), [[4]])
    assert np.allclose(companion(fig1, 0)[0], [1, -5j, -1 - 1j])


def test_companion_at_pole_of_coefficients(fig1):
    with pytest.raises(PoleOfCoefficients):
        companion(fig1, -1)


def test_spectral_numbers_examples(quad):
    rep = spectral_numbers(quad, 6)
    assert rep.kind is DominanceClass.DOMINANT
    assert rep.y_dom == pytest.approx(3)
    assert rep.theoretical_rate == pytest.approx(2 / 3)
    assert sorted(t.real for t, _ in rep.taus) == pytest.approx([-2, 3])
    assert spectral_numbers(quad, -1).kind is DominanceClass.NONDOMINANT


def test_triple_root_is_nondominant():
    rep = spectral_numbers(three_term_defn(3), -3)
    assert rep.taus[0][1] == 3 and rep.taus[0][0] == pytest.approx(-1)
    assert rep.kind is DominanceClass.NONDOMINANT


def test_subdominant_capable():
    # roots 2 (double) and -2 (simple): tie in modulus, unequal multiplicities
    rep = classify_roots([(2, 2), (-2, 1)])
    assert rep.kind is DominanceClass.SUBDOMINANT_CAPABLE and rep.y_dom == 2


def test_dominant_root(quad):
    assert dominant_root(quad, 6) == pytest.approx(3)
    assert dominant_root(quad, 0) == pytest.approx(1)
    assert dominant_root(parse_defining("(z+2)*y - z^2"), 1.5) == pytest.approx(1.5 ** 2 / 3.5)
    with pytest.raises(NotDominantPoint) as err:
        dominant_root(quad, -1)
    assert err.value.report.kind is DominanceClass.NONDOMINANT


def test_eigen_examples(quad):
    ep = eigen_uv(quad, 6)
    assert np.allclose(ep.u, [3, 1]) and np.allclose(ep.raw_v, [3, 6])
    assert ep.raw_dot == pytest.approx(15) == lam_chi_prime(quad, 6, 3)
    assert np.dot(ep.v, ep.u) == pytest.approx(1)
    ep = eigen_uv(quad, 0)
    assert np.allclose(ep.raw_v, [1, 0]) and ep.raw_dot == pytest.approx(1)
    ep = eigen_uv(parse_defining("y - z"), 2)
    assert np.allclose(ep.u, [1]) and np.allclose(ep.v, [1])


def _linear_solve_limit(lam, mu, q0, q1):
    """Coefficient A of lam^n in q_n = A lam^n + B mu^n."""
    a, _ = np.linalg.solve([[1, 1], [lam, mu]], [q0, q1])
    return a


def test_limit_g_examples(quad):
    assert limit_g(quad, parse_initial("1, 1"), 6) == pytest.approx(_linear_solve_limit(3, -2, 1, 1))
    assert limit_g(quad, parse_initial("1, 1"), 6) == pytest.approx(3 / 5)
    assert abs(limit_g(quad, parse_initial("1, -1"), 2)) < 1e-12
    assert limit_g(quad, standard_initial(2), 6) == pytest.approx(1 / 5)


def test_limit_g_errors(quad):
    with pytest.raises(NotDominantPoint):
        limit_g(quad, parse_initial("1, 1"), -1)
    with pytest.raises(PoleLocusPoint):
        limit_g(quad, parse_initial("1/(z-2), 1"), 2)


def test_limit_g_matches_sequence(fig1, fig1_generic_init):
    from algrat.recursion import eval_sequence_log
    z0 = 2.5 - 1j  # rate about 0.41
    vals, logs = eval_sequence_log(fig1, fig1_generic_init, z0, 200)
    lam = dominant_root(fig1, z0)
    approx = vals[200] * np.exp(logs[200] - 200 * np.log(lam))
    g = limit_g(fig1, fig1_generic_init, z0)
    assert abs(approx - g) <= 1e-8 * abs(g)


def test_fitted_rate(quad):
    fit = fitted_rate(quad, parse_initial("1, 1"), 6)
    assert abs(fit.rate / (2 / 3) - 1) < 0.1


coords = st.floats(-3, 3, allow_nan=False)


@given(coords, coords)
def test_char_poly_matches_symbol(fig1, x, y):
    z0 = complex(x, y)
    if abs(z0 + 1) < 1e-3:
        return
    char = np.poly(companion(fig1, z0))  # descending, monic
    vals = fig1.eval_coeffs(z0)
    expected = vals[::-1] / vals[-1]
    assert np.allclose(char, expected, rtol=1e-10, atol=1e-10 * np.max(np.abs(expected)))
    assert np.allclose(symbol_values(fig1, z0), -expected[1:])


@given(coords, coords)
def test_dominance_trichotomy(fig1, x, y):
    z0 = complex(x, y)
    if abs(z0 + 1) < 1e-3:
        return
    rep = spectral_numbers(fig1, z0)
    assert sum(m for _, m in rep.taus) == fig1.k
    assert rep.kind in DominanceClass
    assert (rep.y_dom is None) == (rep.kind is DominanceClass.NONDOMINANT)
    if rep.kind is DominanceClass.DOMINANT:
        assert rep.y_dom == rep.taus[0][0]
        assert 0 <= rep.theoretical_rate < 1


@given(coords, coords)
def test_eigenvectors(fig1, x, y):
    z0 = complex(x, y)
    if abs(z0 + 1) < 1e-2 or not spectral_numbers(fig1, z0).is_dominant:
        return
    t = companion(fig1, z0)
    ep = eigen_uv(fig1, z0)
    scale = np.abs(ep.lam) * np.linalg.norm(ep.u)
    assert np.linalg.norm(t @ ep.u - ep.lam * ep.u) <= 1e-9 * scale
    assert np.linalg.norm(t.T @ ep.v - ep.lam * ep.v) <= 1e-9 * np.abs(ep.lam) * np.linalg.norm(ep.v)
    assert abs(ep.raw_dot - lam_chi_prime(fig1, z0, ep.lam)) <= 1e-9 * abs(ep.raw_dot)


@given(coords, coords)
def test_ratio_converges_where_g_nonzero(quad, x, y):
    z0 = complex(x, y)
    rep = spectral_numbers(quad, z0)
    if not rep.is_dominant or rep.theoretical_rate > 0.8 or abs(z0) < 0.2:
        return
    init = parse_initial("1, 1")
    g = limit_g(quad, init, z0)
    if abs(g) < 1e-3:
        return
    fit = fitted_rate(quad, init, z0, 10, 40)
    assert abs(fit.rate / rep.theoretical_rate - 1) < 0.1
    bound = 10 * fit.bound_constant * rep.theoretical_rate ** 40 + 1e-13 * abs(rep.y_dom)
    assert abs(eval_ratio(quad, init, z0, 40) - rep.y_dom) <= bound


@given(coords, coords)
def test_slow_growth_consistency(quad, x, y):
    z0 = complex(x, y)
    rep = spectral_numbers(quad, z0)
    if not rep.is_dominant:
        return
    init = parse_initial("1, -1")
    g = limit_g(quad, init, z0)
    s = slow_growth_value(quad, init, z0, rep.y_dom)
    ep = eigen_uv(quad, z0)
    assert g == pytest.approx(s * ep.lam ** (1 - quad.k) * ep.u[0] / ep.raw_dot, abs=1e-12)
