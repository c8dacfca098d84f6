"""Exact Gaussian rationals.

Floating scalars are plain Python ``complex``; this module only supplies the
exact counterpart, an element of Q(i) stored as two ``gmpy2.mpq`` parts.
"""

from __future__ import annotations

import numbers
from fractions import Fraction

from gmpy2 import mpq

_MPQ = type(mpq(0))


def _to_mpq(x):
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(Fraction(x).numerator, Fraction(x).denominator)
    return mpq(x)


class GaussianRational:
    """Element ``re + im*i`` of Q(i) with exact rational parts.

    Floats are accepted on construction and converted *exactly* (every binary64
    value is a dyadic rational).  The reverse conversion is ``complex(x)``.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            re, im = re.re, re.im + _to_mpq(im)
        elif isinstance(re, complex):
            re, im = mpq(re.real), mpq(re.imag) + _to_mpq(im)
        object.__setattr__(self, "re", _to_mpq(re))
        object.__setattr__(self, "im", _to_mpq(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def _raw(cls, re, im):
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._raw(a * c, b)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        c, d = other.re, other.im
        if not d:
            if not c:
                raise ZeroDivisionError("division by exact zero")
            return GaussianRational._raw(self.re / c, self.im / c)
        n = c * c + d * d
        a, b = self.re, self.im
        return GaussianRational._raw((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return (ONE / self) ** (-e)
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self):
        return GaussianRational._raw(self.re, -self.im)

    def norm(self):
        """Squared modulus, exact."""
        return self.re * self.re + self.im * self.im

    # comparisons / conversion --------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return abs(complex(self))

    def is_real(self):
        return not self.im

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*I"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}*I)"


ZERO = GaussianRational._raw(mpq(0), mpq(0))
ONE = GaussianRational._raw(mpq(1), mpq(0))
I = GaussianRational._raw(mpq(0), mpq(1))


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, _MPQ, Fraction)):
        return GaussianRational._raw(_to_mpq(x), mpq(0))
    if isinstance(x, numbers.Number):
        # floats and complex are converted exactly
        return GaussianRational(complex(x))
    return NotImplemented


def exact(x) -> GaussianRational:
    """Convert ``x`` to a :class:`GaussianRational` without rounding."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, str):
        return GaussianRational(_to_mpq(x))
    c = _coerce(x)
    if c is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")
    return c


def is_exact(x) -> bool:
    return isinstance(x, (GaussianRational, int, _MPQ, Fraction))
