"""Resultants and discriminants with polynomial coefficients.

A polynomial in the eliminated variable (call it ``t``) is given either as a
:class:`Poly` with scalar coefficients or as a sequence of coefficients in
ascending powers of ``t``, each coefficient a :class:`Poly` in the remaining
variable.  The Sylvester determinant is computed by fraction-free (Bareiss)
elimination, so every intermediate entry stays a polynomial.
"""

from __future__ import annotations

from ..errors import DegreeTooLow, EmptyInput
from .poly import Poly


def _as_coeffs(a):
    """Ascending list of Poly coefficients with trailing zeros removed."""
    scalar = isinstance(a, Poly)
    coeffs = [Poly([c]) for c in a.coeffs] if scalar else [
        c if isinstance(c, Poly) else Poly([c]) for c in a
    ]
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs, scalar


def _bareiss_det(m):
    n = len(m)
    if n == 0:
        return Poly.one()
    m = [row[:] for row in m]
    sign = 1
    prev = None  # previous pivot; None stands for 1
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Poly.zero()
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                val = row_i[j] * pivot
                if not mik.is_zero() and not row_k[j].is_zero():
                    val = val - mik * row_k[j]
                row_i[j] = val if prev is None else val.exact_div(prev)
            row_i[k] = Poly.zero()
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def sylvester_matrix(a, b):
    """Sylvester matrix of two coefficient lists (ascending in ``t``)."""
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    zero = Poly.zero()
    rows = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(a)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(b)):
            row[i + j] = c
        rows.append(row)
    return rows


def resultant(a, b):
    """Resultant of ``a`` and ``b`` with respect to their main variable.

    Parameters
    ----------
    a, b : Poly or sequence of Poly
        A :class:`Poly` is read as a univariate polynomial with scalar
        coefficients, a sequence as ascending coefficients that are
        polynomials in a second variable.

    Returns
    -------
    scalar or Poly
        A scalar when both inputs are univariate :class:`Poly`, otherwise a
        :class:`Poly` in the second variable.

    Examples
    --------
    >>> resultant(Poly([-1, 1]), Poly([-3, 1]))     # (t-1), (t-3)
    GaussianRational(-2, 0)
    """
    ca, sa = _as_coeffs(a)
    cb, sb = _as_coeffs(b)
    if not ca or not cb:
        raise EmptyInput("resultant of a zero polynomial")
    da, db = len(ca) - 1, len(cb) - 1
    if da == 0:
        res = ca[0] ** db
    elif db == 0:
        res = cb[0] ** da
    else:
        res = _bareiss_det(sylvester_matrix(ca, cb))
    if sa and sb:
        return res[0]
    return res


def discriminant(p):
    """Discriminant ``(-1)^(n(n-1)/2) Res(p, p') / lc(p)``.

    Examples
    --------
    >>> discriminant([Poly([0, -1]), Poly([-1]), Poly([1])])   # t^2 - t - z
    Poly(['1', '4'])
    """
    cp, scalar = _as_coeffs(p)
    n = len(cp) - 1
    if n < 2:
        raise DegreeTooLow("discriminant needs degree >= 2")
    dp = [c.scale(i) for i, c in enumerate(cp)][1:]
    res = resultant(cp, dp)
    if n * (n - 1) // 2 % 2:
        res = -res
    disc = res.exact_div(cp[-1])
    return disc[0] if scalar else disc
