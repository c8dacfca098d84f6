"""Ratio convergence for y^2 - y - z.

The sequence q_n = q_{n-1} + z q_{n-2} with q_0 = q_1 = 1 is generated by the
algebraic function y^2 - y - z = 0.  Off the cut (-inf, -1/4] the ratio
q_n / q_{n-1} tends to the root of larger modulus, geometrically fast.
"""

from __future__ import annotations

from algrat import parse_defining, parse_initial
from algrat.recursion import eval_ratio
from algrat.spectrum import fitted_rate, limit_g, spectral_numbers

quad = parse_defining("y^2 - y - z")
init = parse_initial("1, 1")

for z in (6, 2 + 1j, -0.2):
    rep = spectral_numbers(quad, z)
    print(f"z = {z}: roots {[complex(t) for t, _ in rep.taus]}, class {rep.kind.value}")
    print(f"  dominant root {rep.y_dom:.12g}, |y_sub/y_dom| = {rep.theoretical_rate:.6f}")
    for n in (5, 10, 20, 40):
        r = eval_ratio(quad, init, z, n)
        print(f"  r_{n:<2} = {r:.15g}   error {abs(r - rep.y_dom):.3e}")
    fit = fitted_rate(quad, init, z)
    print(f"  fitted rate {fit.rate:.6f}, limit of q_n / y_dom^n: {limit_g(quad, init, z):.6g}")

print("\nOn the cut the two roots have equal modulus and the ratios keep oscillating:")
for n in (38, 39, 40):
    print(f"  r_{n}(-2) = {eval_ratio(quad, init, -2, n).real:.6f}")
