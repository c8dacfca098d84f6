"""The sequence ``q_n`` of a defining polynomial and its ratios ``r_n``.

With ``R_i = -P_i / P_k`` the sequence satisfies::

    q_n = R_{k-1} q_{n-1} + R_{k-2} q_{n-2} + ... + R_0 q_{n-k},   n >= k.

Exactly, ``q_n`` is stored as ``N_n / (D P_k^n)`` where ``D`` clears the
denominators of the initial tuple, which turns the recursion into one between
polynomials::

    N_n = -sum_{i=1..k} P_{k-i} P_k^(i-1) N_{n-i}.

Numerically, ``r_n(z)`` is obtained by iterating the window of the last
``k + 1`` values, rescaled to unit sup-norm at every step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algfun import DefiningPolynomial, InitialTuple
from .errors import (IndeterminateRatio, InitLengthMismatch, PoleLocusPoint,
                     ZeroDenominatorSequence)
from .numcore import Poly, RatFun, exact, is_exact, poly_lcm

DEFAULT_N_MAX = 50


@dataclass
class SequenceRep:
    """Cleared numerators ``N_0, ..., N_max_n`` of ``q_n``.

    ``q_n = N_n / (prefactor * P_k^n)``.
    """

    defn: DefiningPolynomial
    init: InitialTuple
    numerators: list
    prefactor: Poly
    _steps: list = field(default_factory=list, repr=False)

    @property
    def max_n(self) -> int:
        return len(self.numerators) - 1

    @property
    def k(self) -> int:
        return self.defn.k

    def q(self, n: int) -> RatFun:
        """``q_n`` as a reduced rational function."""
        self._check(n)
        return RatFun(self.numerators[n], self.prefactor * self.defn.lead ** n)

    def extend(self, n_max: int) -> "SequenceRep":
        """Continue the recursion in place up to ``n_max``."""
        k = self.k
        steps = self._steps or _recursion_multipliers(self.defn)
        self._steps = steps
        deg_steps = [s.degree for s in steps]
        for n in range(len(self.numerators), n_max + 1):
            acc = Poly.zero()
            bound = -math.inf
            for i in range(1, k + 1):
                prev = self.numerators[n - i]
                if steps[i - 1].is_zero() or prev.is_zero():
                    continue
                acc = acc + steps[i - 1] * prev
                bound = max(bound, prev.degree + deg_steps[i - 1])
            nn = -acc
            assert nn.degree <= bound, "degree bound of the cleared recursion violated"
            self.numerators.append(nn)
        return self

    def residual(self, n: int) -> Poly:
        """``-N_n - sum P_{k-i} P_k^(i-1) N_{n-i}``; zero for every ``n >= k``."""
        self._check(n)
        steps = self._steps or _recursion_multipliers(self.defn)
        acc = self.numerators[n]
        for i in range(1, self.k + 1):
            acc = acc + steps[i - 1] * self.numerators[n - i]
        return acc

    def _check(self, n):
        if not 0 <= n <= self.max_n:
            raise IndexError(f"n={n} outside the generated range 0..{self.max_n}")


def _recursion_multipliers(defn: DefiningPolynomial):
    """``P_{k-i} P_k^(i-1)`` for ``i = 1..k``."""
    k, lead = defn.k, defn.lead
    out, power = [], Poly.one()
    for i in range(1, k + 1):
        out.append(defn.coeffs[k - i] * power)
        power = power * lead
    return out


def _check_init(defn: DefiningPolynomial, init: InitialTuple):
    if len(init) != defn.k:
        raise InitLengthMismatch(
            f"initial tuple has {len(init)} entries but the equation has degree k={defn.k} in y")


def generate_exact(defn: DefiningPolynomial, init: InitialTuple,
                   n_max: int = DEFAULT_N_MAX) -> SequenceRep:
    """Exact cleared numerators up to ``n_max``.

    Examples
    --------
    >>> from algrat.algfun import parse_defining, parse_initial
    >>> seq = generate_exact(parse_defining("y^2 - y - z"), parse_initial("1, 1"), 4)
    >>> [n(6) for n in seq.numerators] == [1, 1, 7, 13, 55]
    True
    """
    _check_init(defn, init)
    k = defn.k
    n_max = max(n_max, k - 1)
    prefactor = Poly.one()
    for e in init:
        if e.den.degree > 0 or e.den.lc != 1:
            prefactor = poly_lcm(prefactor, e.den)
    lead = defn.lead
    nums, power = [], Poly.one()
    for i, e in enumerate(init):
        nums.append(e.num * prefactor.exact_div(e.den) * power)
        power = power * lead
    seq = SequenceRep(defn, init, nums, prefactor)
    return seq.extend(n_max)


def ratio_function(seq: SequenceRep, n: int) -> RatFun:
    """``r_n = q_n / q_{n-1} = N_n / (P_k N_{n-1})`` in reduced form.

    Examples
    --------
    >>> from algrat.algfun import parse_defining, parse_initial
    >>> seq = generate_exact(parse_defining("y^2 - y - z"), parse_initial("1, -1"), 3)
    >>> ratio_function(seq, 2).to_text()
    '1 + -z'
    """
    if n < 1:
        raise ValueError("r_n needs n >= 1")
    if n > seq.max_n:
        seq.extend(n)
    prev = seq.numerators[n - 1]
    if prev.is_zero():
        raise ZeroDenominatorSequence(f"q_{n - 1} is identically zero")
    return RatFun(seq.numerators[n], seq.defn.lead * prev)


# ---------------------------------------------------------------------------
# numeric iteration


def in_pole_locus(defn: DefiningPolynomial, init: InitialTuple, z) -> bool:
    """Whether ``z`` is a zero of ``P_k`` or a pole of an initial entry.

    Floats are tested exactly, so only genuine zeros count.
    """
    if not is_exact(z):
        z = complex(z)
        if not (np.isfinite(z.real) and np.isfinite(z.imag)):
            return True
    ze = exact(z)
    if not defn.lead(ze):
        return True
    return any(not e.den(ze) for e in init)


@dataclass
class RatioIterState:
    """Window ``(q_n, q_{n-1}, ..., q_{n-k})`` at a fixed ``z``, newest first.

    The window is kept at unit sup-norm; ``scale_log`` accumulates the
    logarithm of the factors removed, so ``q_n = window[0] * exp(scale_log)``.
    """

    z: complex
    window: np.ndarray
    scale_log: float
    n: int
    symbol: np.ndarray  # R_{k-1}(z), ..., R_0(z)

    def step(self):
        new = np.dot(self.symbol, self.window[:-1]) if len(self.window) > 1 else 0
        w = np.concatenate(([new], self.window[:-1]))
        s = np.max(np.abs(w))
        if s > 0 and np.isfinite(s):
            w = w / s
            self.scale_log += math.log(s)
        self.window = w
        self.n += 1

    def ratio(self) -> complex:
        if self.window[1] == 0:
            raise IndeterminateRatio(f"q_{self.n - 1}({self.z}) = 0")
        return complex(self.window[0] / self.window[1])


def _symbol_at(defn: DefiningPolynomial, z: complex) -> np.ndarray:
    vals = defn.eval_coeffs(z)
    lead = vals[-1]
    return -vals[-2::-1] / lead


def _init_values(init: InitialTuple, z: complex) -> list:
    return [complex(e(z)) for e in init]


def start_iteration(defn: DefiningPolynomial, init: InitialTuple, z) -> RatioIterState:
    """Iteration state holding ``q_0, ..., q_{k-1}`` at ``z``."""
    _check_init(defn, init)
    if in_pole_locus(defn, init, z):
        raise PoleLocusPoint(f"z={z} lies on the pole locus")
    z = complex(z)
    k = defn.k
    vals = _init_values(init, z)
    window = np.zeros(k + 1, dtype=complex)
    # newest first; the slot for q_{-1} is left at zero
    window[:k] = vals[::-1]
    s = np.max(np.abs(window))
    scale = 0.0
    if s > 0:
        window /= s
        scale = math.log(s)
    return RatioIterState(z, window, scale, k - 1, _symbol_at(defn, z))


def eval_ratio(defn: DefiningPolynomial, init: InitialTuple, z, n: int) -> complex:
    """``r_n(z)`` by the normalized vector iteration.

    Raises
    ------
    PoleLocusPoint
        If ``z`` is a zero of ``P_k`` or a pole of an initial entry.
    IndeterminateRatio
        If ``q_{n-1}(z) = 0``.

    Examples
    --------
    >>> from algrat.algfun import parse_defining, parse_initial
    >>> round(eval_ratio(parse_defining("y^2 - y - z"), parse_initial("1, 1"), 6, 6).real, 4)
    3.4812
    """
    if n < 1:
        raise ValueError("r_n needs n >= 1")
    state = start_iteration(defn, init, z)
    if n < defn.k:
        vals = _init_values(init, complex(z))
        if vals[n - 1] == 0:
            raise IndeterminateRatio(f"q_{n - 1}({z}) = 0")
        return vals[n] / vals[n - 1]
    while state.n < n:
        state.step()
    return state.ratio()


def eval_sequence_log(defn: DefiningPolynomial, init: InitialTuple, z, n: int):
    """``(log|q_n(z)|, phase-normalized q_n)`` pairs for ``0..n`` as arrays.

    Returns ``(values, logscale)`` with ``q_j = values[j] * exp(logscale[j])``.
    """
    state = start_iteration(defn, init, z)
    k = defn.k
    vals = np.zeros(n + 1, dtype=complex)
    logs = np.zeros(n + 1)
    init_vals = _init_values(init, complex(z))
    for j in range(min(k, n + 1)):
        vals[j] = init_vals[j]
    while state.n < n:
        state.step()
        vals[state.n] = state.window[0]
        logs[state.n] = state.scale_log
    return vals, logs


def eval_ratio_grid(defn: DefiningPolynomial, init: InitialTuple, zs, n: int) -> np.ndarray:
    """Vectorized ``r_n`` over an array of points; NaN where undefined."""
    zs = np.asarray(zs, dtype=complex)
    flat = zs.ravel()
    k = defn.k
    coeffs = defn.eval_coeffs(flat)
    lead = coeffs[-1]
    bad = lead == 0
    with np.errstate(divide="ignore", invalid="ignore"):
        sym = -coeffs[-2::-1] / lead  # shape (k, m)
        window = np.zeros((k + 1, flat.size), dtype=complex)
        for j, e in enumerate(init):
            num = np.polynomial.polynomial.polyval(flat, e.num.to_numpy())
            den = np.polynomial.polynomial.polyval(flat, e.den.to_numpy())
            bad |= den == 0
            window[k - 1 - j] = num / den
        for _ in range(k - 1, n):
            new = np.sum(sym * window[:-1], axis=0)
            window = np.concatenate((new[None, :], window[:-1]), axis=0)
            s = np.max(np.abs(window), axis=0)
            s[s == 0] = 1
            window = window / s
        out = window[0] / window[1] if n >= k else None
    if out is None:
        vals = np.array([[complex(e(z)) for e in init] for z in flat]).T
        with np.errstate(divide="ignore", invalid="ignore"):
            out = vals[n] / vals[n - 1]
    out = np.where(bad, np.nan, out)
    return out.reshape(zs.shape)


__all__ = [
    "SequenceRep", "RatioIterState", "generate_exact", "ratio_function",
    "eval_ratio", "eval_ratio_grid", "eval_sequence_log", "start_iteration",
    "in_pole_locus", "DEFAULT_N_MAX",
]
