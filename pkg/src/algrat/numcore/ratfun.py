"""Rational functions in one variable.

Exact rational functions are kept reduced with a monic denominator, so two
equal functions have identical representations.
"""

from __future__ import annotations

import numbers

import numpy as np

from .poly import Poly, poly_gcd
from .scalar import GaussianRational, _MPQ, exact, is_exact


class RatFun:
    """Quotient ``num / den`` of two polynomials."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, reduce=True):
        num = num if isinstance(num, Poly) else Poly([num])
        den = Poly.one() if den is None else (den if isinstance(den, Poly) else Poly([den]))
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.exact != den.exact:
            num, den = num.to_float(), den.to_float()
        if num.exact and reduce:
            num, den = _reduce(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFun is immutable")

    @property
    def exact(self) -> bool:
        return self.num.exact

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def __bool__(self):
        return not self.num.is_zero()

    def _coerce(self, other):
        if isinstance(other, RatFun):
            return other
        if isinstance(other, Poly):
            return RatFun(other, reduce=False)
        if isinstance(other, (numbers.Number, GaussianRational, _MPQ)):
            return RatFun(Poly([other]), reduce=False)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.exact or not other.exact:
            return RatFun(self.num * other.num, self.den * other.den)
        # cross-cancel first to keep intermediate degrees small
        g1 = _gcd_or_one(self.num, other.den)
        g2 = _gcd_or_one(other.num, self.den)
        num = self.num.exact_div(g1) * other.num.exact_div(g2)
        den = self.den.exact_div(g2) * other.den.exact_div(g1)
        return RatFun(num, den, reduce=False)._normalized()

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return self * RatFun(other.den, other.num, reduce=False)._normalized()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return RatFun(self.den, self.num) ** (-e)
        # numerator and denominator stay coprime under powers
        return RatFun(self.num ** e, self.den ** e, reduce=False)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.exact and other.exact:
            return self.num == other.num and self.den == other.den
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def _normalized(self):
        if not self.exact:
            return self
        lc = self.den.lc
        if lc == 1:
            return self
        inv = 1 / lc
        return RatFun(self.num.scale(inv), self.den.scale(inv), reduce=False)

    def __call__(self, x):
        """Value at ``x``; exact when both sides are exact."""
        d = self.den(x)
        n = self.num(x)
        if isinstance(d, np.ndarray):
            with np.errstate(divide="ignore", invalid="ignore"):
                return n / d
        if is_exact(d):
            if not d:
                raise ZeroDivisionError("evaluation at a pole")
            return n / d
        return n / d if d != 0 else complex("nan")

    def derivative(self):
        return RatFun(self.num.derivative() * self.den - self.num * self.den.derivative(),
                      self.den * self.den)

    def to_float(self):
        return RatFun(self.num.to_float(), self.den.to_float(), reduce=False)

    def __repr__(self):
        return f"RatFun({self.num!r}, {self.den!r})"

    def to_text(self, var="z"):
        if self.den.degree == 0 and self.den.lc == 1:
            return self.num.to_text(var)
        return f"({self.num.to_text(var)})/({self.den.to_text(var)})"


def _gcd_or_one(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero() or a.degree == 0 or b.degree == 0:
        return Poly.one()
    return poly_gcd(a, b)


def _reduce(num: Poly, den: Poly):
    if num.is_zero():
        return num, Poly.one()
    g = _gcd_or_one(num, den)
    if g.degree > 0:
        num, den = num.exact_div(g), den.exact_div(g)
    lc = den.lc
    if lc != 1:
        inv = 1 / exact(lc)
        num, den = num.scale(inv), den.scale(inv)
    return num, den
