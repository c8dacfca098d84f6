"""Polynomial roots by simultaneous (Aberth-Ehrlich) iteration.

Exact inputs are split into square-free factors first, which yields exact
multiplicities; each factor is then solved in binary64.  Float inputs get
multiplicities by clustering nearby roots.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2
import numpy as np
from gmpy2 import mpc, mpfr

from ..errors import DegreeZero, NonConvergence
from .poly import Poly, squarefree_decomposition

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class RootConfig:
    """Tunables for :func:`poly_roots`."""

    max_iter: int = 200
    tol: float = 1e-13
    cluster_rtol: float = 1e-7
    polish_steps: int = 2


DEFAULT_ROOT_CONFIG = RootConfig()


def _initial_guesses(a: np.ndarray) -> np.ndarray:
    """Starting points on circles given by the Newton polygon of ``a``.

    The upper convex hull of ``(i, log|a_i|)`` predicts the root moduli; each
    hull edge contributes as many points as its horizontal length.
    """
    n = len(a) - 1
    mags = np.abs(a)
    idx = [i for i in range(n + 1) if mags[i] > 0]
    logs = {i: np.log(mags[i]) for i in idx}
    hull: list[int] = []
    for i in idx:
        while len(hull) >= 2:
            i0, i1 = hull[-2], hull[-1]
            # drop i1 if it lies on or below the chord i0 -> i
            cross = (i1 - i0) * (logs[i] - logs[i0]) - (i - i0) * (logs[i1] - logs[i0])
            if cross >= 0:
                hull.pop()
            else:
                break
        hull.append(i)
    guesses = []
    offset = 0.4
    for i0, i1 in zip(hull[:-1], hull[1:]):
        m = i1 - i0
        r = np.exp((logs[i0] - logs[i1]) / m)
        ang = 2 * np.pi * np.arange(m) / m + offset
        guesses.append(r * np.exp(1j * ang))
        offset += 0.7
    return np.concatenate(guesses) if guesses else np.zeros(0, dtype=complex)


def _newton_ratio(a: np.ndarray, z: np.ndarray):
    """Return ``p(z)/p'(z)`` and the backward-error ratio at each ``z``.

    Points outside the unit disk are evaluated through the reversed
    polynomial to avoid overflow and loss of relative accuracy.
    """
    n = len(a) - 1
    absa = np.abs(a)
    inside = np.abs(z) <= 1
    ratio = np.empty_like(z)
    berr = np.empty(z.shape)

    zi = z[inside]
    if zi.size:
        p = np.full(zi.shape, a[n], dtype=complex)
        dp = np.zeros(zi.shape, dtype=complex)
        s = np.full(zi.shape, absa[n])
        az = np.abs(zi)
        for c, ac in zip(a[n - 1::-1], absa[n - 1::-1]):
            dp = dp * zi + p
            p = p * zi + c
            s = s * az + ac
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio[inside] = p / dp
        berr[inside] = np.abs(p) / s

    zo = z[~inside]
    if zo.size:
        y = 1 / zo
        rev = a[::-1]
        absrev = absa[::-1]
        r = np.full(y.shape, rev[n], dtype=complex)
        dr = np.zeros(y.shape, dtype=complex)
        s = np.full(y.shape, absrev[n])
        ay = np.abs(y)
        for c, ac in zip(rev[n - 1::-1], absrev[n - 1::-1]):
            dr = dr * y + r
            r = r * y + c
            s = s * ay + ac
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            # p'/p = y (n - y r'/r)
            ratio[~inside] = 1 / (y * (n - y * dr / r))
        berr[~inside] = np.abs(r) / s
    return ratio, berr


def aberth(coeffs, max_iter: int = 200, tol: float = 1e-13) -> np.ndarray:
    """All roots of the polynomial with ascending ``coeffs`` (complex128).

    Parameters
    ----------
    coeffs : array_like
        Ascending coefficients with a nonzero leading term.  Zero roots are
        split off exactly before iterating.
    max_iter : int
        Iteration cap; :class:`NonConvergence` is raised when exceeded.
    tol : float
        Relative step tolerance.  A root is also frozen once its backward
        error reaches the rounding level of the evaluation.
    """
    a = np.asarray(coeffs, dtype=complex)
    n = len(a) - 1
    if n < 1:
        raise DegreeZero("constant polynomial has no roots")
    if not np.all(np.isfinite(a)):
        raise NonConvergence("non-finite coefficients")
    nz = int(np.argmax(a != 0))
    if nz:
        zeros = np.zeros(nz, dtype=complex)
        return zeros if nz == n else np.concatenate([aberth(a[nz:], max_iter, tol), zeros])
    a = a / a[-1]
    if n == 1:
        return np.array([-a[0]])
    z = _initial_guesses(a)
    active = np.ones(n, dtype=bool)
    berr_floor = 4 * n * _EPS
    for _ in range(max_iter):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        ratio, berr = _newton_ratio(a, z[idx])
        done = berr <= berr_floor
        diff = z[idx, None] - z[None, :]
        diff[np.arange(idx.size), idx] = 1.0
        with np.errstate(divide="ignore", invalid="ignore"):
            # the self term was set to 1/1 above
            corr = np.sum(1 / diff, axis=1) - 1.0
            w = ratio / (1 - ratio * corr)
        bad = ~np.isfinite(w)
        w[bad] = 0
        step_ok = np.abs(w) <= tol * np.abs(z[idx])
        z[idx[~done]] -= w[~done]
        active[idx[done | step_ok | (bad & (berr <= 1e3 * berr_floor))]] = False
    else:
        if np.any(active):
            raise NonConvergence(f"Aberth iteration did not converge in {max_iter} iterations")
    return z


def _polish(a: np.ndarray, z: np.ndarray, steps: int) -> np.ndarray:
    for _ in range(steps):
        ratio, berr = _newton_ratio(a, z)
        cand = z - np.where(np.isfinite(ratio), ratio, 0)
        _, berr_new = _newton_ratio(a, cand)
        z = np.where(berr_new <= berr, cand, z)
    return z


def _cluster(z: np.ndarray, rtol: float):
    n = len(z)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(z[i] - z[j]) <= rtol * (1 + abs(z[i])):
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [(complex(np.mean(z[g])), len(g)) for g in groups.values()]


def _solve_float(a: np.ndarray, cfg: RootConfig):
    """Roots of ascending ``a`` with trailing zero roots split off."""
    nz = 0
    while nz < len(a) - 1 and a[nz] == 0:
        nz += 1
    a = a[nz:]
    out = np.zeros(0, dtype=complex)
    if len(a) > 1:
        out = aberth(a, cfg.max_iter, cfg.tol)
        out = _polish(a / a[-1], out, cfg.polish_steps)
    return out, nz


def _mp_context(prec):
    return gmpy2.context(gmpy2.get_context(), precision=prec)


def _to_mpc(c):
    return mpc(mpfr(c.re), mpfr(c.im))


def _mp_horner(a, z):
    p = a[-1]
    dp = mpc(0)
    for c in reversed(a[:-1]):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def mp_precision(p: Poly) -> int:
    """Working precision (bits) used for exact polynomials of this degree."""
    return max(256, 8 * max(p.degree, 1))


def aberth_mp(p: Poly, guesses=None, prec: int | None = None, max_iter: int = 400):
    """Roots of a square-free exact polynomial in extended precision.

    Aberth iteration in ``prec``-bit complex arithmetic, started from the
    binary64 roots (or ``guesses``).  Clustered roots that binary64 cannot
    separate are resolved here.  Returns binary64 values.
    """
    n = p.degree
    if n < 1:
        raise DegreeZero("constant polynomial has no roots")
    prec = prec or mp_precision(p)
    if guesses is None:
        try:
            guesses = aberth(p.to_numpy())
        except NonConvergence:
            guesses = _initial_guesses(p.to_numpy() / p.to_numpy()[-1])
    with _mp_context(prec):
        a = [_to_mpc(c) for c in p.monic().coeffs]
        z = [mpc(complex(g)) for g in guesses]
        # separate exact duplicates so the repulsion term is defined
        for i in range(n):
            for j in range(i):
                if z[i] == z[j]:
                    z[i] += mpc(complex(1e-8 * (1 + abs(complex(z[i]))), 1e-8 * (i + 1)))
        tol = mpfr(2) ** (-(prec // 2))
        done = [False] * n
        for it in range(max_iter):
            moved = False
            for i in range(n):
                if done[i]:
                    continue
                zi = z[i]
                pv, dpv = _mp_horner(a, zi)
                if pv == 0:
                    done[i] = True
                    continue
                ratio = pv / dpv if dpv != 0 else mpc(1e-3)
                s = mpc(0)
                for j in range(n):
                    if j != i:
                        s += 1 / (zi - z[j])
                w = ratio / (1 - ratio * s)
                z[i] = zi - w
                if abs(w) <= tol * (1 + abs(zi)):
                    done[i] = True
                else:
                    moved = True
            if not moved:
                break
        else:
            raise NonConvergence(f"extended-precision Aberth did not converge in {max_iter} iterations")
        # one more sweep lifts the quadratic convergence to full precision
        for i in range(n):
            pv, dpv = _mp_horner(a, z[i])
            if pv != 0 and dpv != 0:
                z[i] = z[i] - pv / dpv
        return [complex(zi) for zi in z], z


def taylor_mp(p: Poly, z0, m: int, prec: int) -> list:
    """First ``m`` Taylor coefficients of exact ``p`` at the mp point ``z0``."""
    with _mp_context(prec):
        a = [_to_mpc(c) for c in p.coeffs]
        out = []
        for _ in range(m):
            if not a:
                out.append(mpc(0))
                continue
            acc = a[-1]
            quot = [acc]
            for c in reversed(a[:-1]):
                acc = acc * z0 + c
                quot.append(acc)
            out.append(quot.pop())
            a = quot[::-1]
        return out


def poly_roots(p: Poly, config: RootConfig = DEFAULT_ROOT_CONFIG, precise: bool = False):
    """Roots of ``p`` with multiplicities.

    Parameters
    ----------
    p : Poly
        Nonzero polynomial of degree at least one.
    config : RootConfig
        Iteration and clustering tolerances.
    precise : bool
        For exact input, polish every square-free factor in extended
        precision (needed for tightly clustered roots of high degree).

    Returns
    -------
    list of (complex, int)
        Multiplicities sum to ``p.degree``.

    Examples
    --------
    >>> sorted(poly_roots(Poly([-2, -1, 1])), key=lambda r: r[0].real)
    [((-1+0j), 1), ((2+0j), 1)]
    """
    if p.is_zero() or p.degree < 1:
        raise DegreeZero("poly_roots needs a polynomial of degree >= 1")
    if p.exact:
        out = []
        for factor, mult in squarefree_decomposition(p):
            if precise and factor.degree > 1:
                nz = 0
                while not factor[nz]:
                    nz += 1
                if nz:
                    out.append((0j, mult))
                    factor = Poly(factor.coeffs[nz:])
                if factor.degree >= 1:
                    out.extend((r, mult) for r in aberth_mp(factor)[0])
                continue
            z, nz = _solve_float(factor.to_numpy(), config)
            if nz:
                out.append((0j, mult))
            out.extend((complex(r), mult) for r in z)
        return [(r + 0j, m) for r, m in out]
    z, nz = _solve_float(p.to_numpy(), config)
    out = _cluster(z, config.cluster_rtol) if len(z) else []
    if nz:
        out.append((0j, nz))
    # fold negative zeros
    return [(r + 0j, m) for r, m in out]
