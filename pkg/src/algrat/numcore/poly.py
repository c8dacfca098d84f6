"""Univariate polynomials over Q(i) (exact) or C (binary64).

Coefficients are stored in ascending order.  The mode is implied by the
coefficient type: all :class:`GaussianRational` (exact) or all ``complex``
(float).  Mixing is resolved towards float.
"""

from __future__ import annotations

import math
import numbers
from fractions import Fraction

import numpy as np
import gmpy2
from gmpy2 import mpq

from ..errors import FloatModeUnsupported
from .scalar import ONE, ZERO, GaussianRational, _MPQ, exact, is_exact

#: Degree reported for the zero polynomial.  Compares below every integer and
#: can never be mistaken for an index.
ZERO_DEGREE = -math.inf


def _normalize(coeffs):
    coeffs = list(coeffs)
    if any(not is_exact(c) for c in coeffs):
        coeffs = [complex(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return tuple(coeffs), False
    coeffs = [exact(c) for c in coeffs]
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs), True


class Poly:
    """Immutable univariate polynomial.

    >>> p = Poly([-2, -1, 1])          # t^2 - t - 2
    >>> p.degree
    2
    >>> p(2)
    GaussianRational(0, 0)
    """

    __slots__ = ("coeffs", "_exact")

    def __init__(self, coeffs=()):
        c, ex = _normalize(coeffs)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "_exact", ex)

    @classmethod
    def _from_trimmed(cls, coeffs, ex):
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", tuple(coeffs))
        object.__setattr__(obj, "_exact", ex)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # constructors ----------------------------------------------------------
    @classmethod
    def zero(cls):
        return cls._from_trimmed((), True)

    @classmethod
    def one(cls):
        return cls._from_trimmed((ONE,), True)

    @classmethod
    def const(cls, c):
        return cls([c])

    @classmethod
    def x(cls):
        return cls._from_trimmed((ZERO, ONE), True)

    @classmethod
    def monomial(cls, n, c=1):
        return cls([0] * n + [c])

    @classmethod
    def from_roots(cls, roots):
        p = cls.one()
        for r in roots:
            p = p * cls([-exact(r) if is_exact(r) else -complex(r), 1])
        return p

    # basic properties -------------------------------------------------------
    @property
    def exact(self) -> bool:
        return self._exact

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    @property
    def lc(self):
        if not self.coeffs:
            return ZERO if self._exact else 0j
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return ZERO if self._exact else 0j

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, numbers.Number) or isinstance(other, GaussianRational):
                other = Poly([other])
            else:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    # conversion ---------------------------------------------------------
    def to_float(self) -> "Poly":
        if not self._exact:
            return self
        return Poly._from_trimmed([complex(c) for c in self.coeffs], False)

    def to_numpy(self) -> np.ndarray:
        """Ascending complex128 coefficient array."""
        return np.array([complex(c) for c in self.coeffs], dtype=complex)

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (numbers.Number, GaussianRational, _MPQ)):
            return Poly([other])
        return NotImplemented

    def _mode_pair(self, other):
        if self._exact == other._exact:
            return self, other, self._exact
        return self.to_float(), other.to_float(), False

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, ex = self._mode_pair(other)
        n = max(len(a.coeffs), len(b.coeffs))
        zero = ZERO if ex else 0j
        out = [a[i] + b[i] if i < len(a.coeffs) and i < len(b.coeffs)
               else (a.coeffs[i] if i < len(a.coeffs) else b.coeffs[i])
               for i in range(n)]
        while out and (not out[-1] if ex else out[-1] == zero):
            out.pop()
        return Poly._from_trimmed(out, ex)

    __radd__ = __add__

    def __neg__(self):
        return Poly._from_trimmed([-c for c in self.coeffs], self._exact)

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
        a, b, ex = self._mode_pair(other)
        if not a.coeffs or not b.coeffs:
            return Poly._from_trimmed((), ex)
        if ex:
            return Poly._from_trimmed(_mul_exact(a.coeffs, b.coeffs), True)
        out = np.convolve(a.to_numpy(), b.to_numpy())
        return Poly([complex(c) for c in out])

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = Poly.one() if self._exact else Poly([1.0])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c):
        """Multiply by a scalar."""
        return self * Poly([c])

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        a, b, ex = self._mode_pair(other)
        if a.degree < b.degree:
            return Poly._from_trimmed((), ex), a
        rem = list(a.coeffs)
        db = b.degree
        inv = (ONE / b.lc) if ex else 1.0 / b.lc
        bc = b.coeffs
        quot = [None] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i] * inv
            quot[i - db] = c
            if c:
                for j in range(db + 1):
                    rem[i - db + j] = rem[i - db + j] - c * bc[j]
        rem = rem[:db]
        return Poly(quot), Poly(rem) if ex else Poly([complex(r) for r in rem])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        """Quotient of an exact division; raises if a remainder is left."""
        q, r = divmod(self, other)
        if self._exact and other._exact and not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    # calculus / evaluation --------------------------------------------
    def derivative(self):
        return Poly._from_trimmed(
            [c * i for i, c in enumerate(self.coeffs)][1:], self._exact
        ) if len(self.coeffs) > 1 else Poly._from_trimmed((), self._exact)

    def __call__(self, x):
        """Evaluate by Horner's rule.

        Exact polynomial at an exact point gives an exact value; anything else
        is evaluated in binary64.
        """
        if self._exact and is_exact(x):
            x = exact(x)
            acc = ZERO
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        if isinstance(x, np.ndarray):
            return np.polynomial.polynomial.polyval(x, self.to_numpy()) if self.coeffs else np.zeros_like(x, dtype=complex)
        x = complex(x)
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * x + complex(c)
        return acc

    def eval_exact(self, x):
        """Exact value at the exact image of ``x`` (floats are taken literally)."""
        if not self._exact:
            raise FloatModeUnsupported("eval_exact needs an exact polynomial")
        return self(exact(x))

    def monic(self):
        if not self.coeffs:
            return self
        if self._exact:
            inv = ONE / self.lc
            return Poly._from_trimmed([c * inv for c in self.coeffs[:-1]] + [ONE], True)
        lc = self.lc
        return Poly._from_trimmed([c / lc for c in self.coeffs], False)

    def shift(self, center):
        """Coefficients of ``w -> p(center + w)`` (Taylor shift)."""
        if self._exact and is_exact(center):
            c = exact(center)
            a = list(self.coeffs)
        else:
            c = complex(center)
            a = [complex(v) for v in self.coeffs]
        n = len(a)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                a[j] = a[j] + c * a[j + 1]
        return Poly(a)

    def reverse(self, n=None):
        """``t^n p(1/t)`` with ``n`` defaulting to the degree."""
        n = self.degree if n is None else n
        c = list(self.coeffs) + [ZERO if self._exact else 0j] * (n + 1 - len(self.coeffs))
        return Poly(c[::-1])

    # display -----------------------------------------------------------
    def __repr__(self):
        return f"Poly({[str(c) if self._exact else c for c in self.coeffs]})"

    def to_text(self, var="z"):
        """Render in the defining-equation grammar."""
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c if self._exact else c == 0:
                continue
            coef = scalar_text(c)
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if not mono:
                terms.append(coef)
            elif coef == "1":
                terms.append(mono)
            elif coef == "(-1)":
                terms.append(f"-{mono}")
            else:
                terms.append(f"{coef}*{mono}")
        return " + ".join(terms)


def scalar_text(c) -> str:
    """Grammar-conformant text for an exact scalar (parenthesised when needed)."""
    c = exact(c)

    def q(v):
        v = Fraction(int(v.numerator), int(v.denominator))
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"

    if not c.im:
        s = q(c.re)
        return s if "/" not in s and not s.startswith("-") else f"({s})"
    if not c.re:
        return f"({q(c.im)}*I)"
    return f"({q(c.re)} + ({q(c.im)})*I)"


def _mul_exact(a, b):
    """Schoolbook product of exact coefficient tuples on raw mpq parts."""
    ar = [c.re for c in a]
    ai = [c.im for c in a]
    br = [c.re for c in b]
    bi = [c.im for c in b]
    n = len(a) + len(b) - 1
    zero = mpq(0)
    re = [zero] * n
    im = [zero] * n
    a_real = not any(ai)
    b_real = not any(bi)
    for i in range(len(a)):
        x, y = ar[i], ai[i]
        if not x and not y:
            continue
        for j in range(len(b)):
            u, v = br[j], bi[j]
            if a_real and b_real:
                re[i + j] += x * u
            else:
                re[i + j] += x * u - y * v
                im[i + j] += x * v + y * u
    out = [GaussianRational._raw(re[k], im[k]) for k in range(n)]
    while out and not out[-1]:
        out.pop()
    return out


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor of two exact polynomials.

    >>> poly_gcd(Poly([-1, 0, 1]), Poly([-1, 1]))
    Poly(['-1', '1'])
    """
    if not (a.exact and b.exact):
        raise FloatModeUnsupported("poly_gcd is defined for exact polynomials only")
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.degree < b.degree:
        a, b = b, a
    if b.degree == 0 or _coprime_mod_p(a, b):
        return Poly.one()
    g = _modular_gcd(a, b)
    if g is not None:
        return g
    a, b = a.monic(), b.monic()
    while not b.is_zero():
        a, b = b, (a % b).monic()
    return a.monic()


# Primes p = 1 (mod 4), so Z[i] maps into GF(p) with i -> sqrt(-1).
def _sqrt_minus_one(p):
    # p = 1 (mod 4): a quadratic non-residue g gives g^((p-1)/4)
    for g in range(2, 200):
        if pow(g, (p - 1) // 2, p) == p - 1:
            return pow(g, (p - 1) // 4, p)
    raise ValueError(p)


_MOD_PRIMES = (1000000000000000009, 1000000000000000177)


def _to_mod(p: Poly, prime, root):
    out = []
    for c in p.coeffs:
        re, im = c.re, c.im
        den = int(re.denominator) * int(im.denominator)
        if den % prime == 0:
            return None
        num = (int(re.numerator) * int(im.denominator) + root * int(im.numerator) * int(re.denominator)) % prime
        out.append(num * pow(den, -1, prime) % prime)
    return out


def _mod_degree_gcd(a, b, prime):
    def trim(v):
        while v and v[-1] == 0:
            v.pop()
        return v

    a, b = trim(a), trim(b)
    while b:
        inv = pow(b[-1], -1, prime)
        db = len(b) - 1
        a = a[:]
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i] * inv % prime
            if c:
                for j in range(db + 1):
                    a[i - db + j] = (a[i - db + j] - c * b[j]) % prime
        a = trim(a[:db])
        a, b = b, a
    return len(a) - 1


def _mod_gcd_poly(a, b, prime):
    """Monic gcd of two coefficient lists over GF(prime)."""
    def trim(v):
        while v and v[-1] == 0:
            v.pop()
        return v

    a, b = trim(list(a)), trim(list(b))
    while b:
        inv = pow(b[-1], -1, prime)
        db = len(b) - 1
        a = a[:]
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i] * inv % prime
            if c:
                for j in range(db + 1):
                    a[i - db + j] = (a[i - db + j] - c * b[j]) % prime
        a = trim(a[:db])
        a, b = b, a
    inv = pow(a[-1], -1, prime)
    return [c * inv % prime for c in a]


def _rational_reconstruct(u, m):
    """Fraction ``n/d`` congruent to ``u`` mod ``m`` with ``|n|, d <= sqrt(m/2)``, or None."""
    bound = math.isqrt(m // 2)
    r0, r1, t0, t1 = m, u % m, 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound or math.gcd(r1, abs(t1)) != 1:
        return None
    return mpq(r1, t1)


def _modular_gcd(a: Poly, b: Poly, max_primes: int = 60):
    """Monic gcd by images in GF(p) under both embeddings of ``i``.

    Images of minimal degree are combined by CRT and lifted by rational
    reconstruction; a candidate is accepted only after exact division of
    both inputs.  Returns None when no candidate verifies.
    """
    prime = 1 << 62
    modulus, acc, deg = 1, None, None
    used = 0
    while used < max_primes:
        prime = int(gmpy2.next_prime(prime))
        if prime % 4 != 1:
            continue
        root = _sqrt_minus_one(prime)
        imgs = []
        for r in (root, prime - root):
            am, bm = _to_mod(a, prime, r), _to_mod(b, prime, r)
            if am is None or bm is None or am[-1] == 0 or bm[-1] == 0:
                break
            imgs.append(_mod_gcd_poly(am, bm, prime))
        if len(imgs) < 2 or len(imgs[0]) != len(imgs[1]):
            continue
        used += 1
        d = len(imgs[0]) - 1
        if d == 0:
            return Poly.one()
        if deg is not None and d > deg:
            continue  # unlucky prime
        half = pow(2, -1, prime)
        inv2r = pow(2 * root, -1, prime)
        re = [(x + y) * half % prime for x, y in zip(*imgs)]
        im = [(x - y) * inv2r % prime for x, y in zip(*imgs)]
        if deg is None or d < deg:
            deg, modulus, acc = d, prime, (re, im)
        else:
            new_mod = modulus * prime
            c = pow(modulus, -1, prime)
            acc = tuple([(u + modulus * ((v - u) * c % prime)) % new_mod for u, v in zip(old, cur)]
                        for old, cur in zip(acc, (re, im)))
            modulus = new_mod
        coeffs = []
        for u, v in zip(*acc):
            x, y = _rational_reconstruct(u, modulus), _rational_reconstruct(v, modulus)
            if x is None or y is None:
                break
            coeffs.append(GaussianRational._raw(x, y))
        else:
            g = Poly(coeffs)
            if divmod(a, g)[1].is_zero() and divmod(b, g)[1].is_zero():
                return g
    return None


def _coprime_mod_p(a: Poly, b: Poly) -> bool:
    """Cheap certificate that ``gcd(a, b) = 1``.

    If the images modulo a prime with unchanged degrees are coprime then so
    are the originals.  A ``False`` answer only means "not certified".
    """
    for prime in _MOD_PRIMES:
        root = _sqrt_minus_one(prime)
        am, bm = _to_mod(a, prime, root), _to_mod(b, prime, root)
        if am is None or bm is None or am[-1] == 0 or bm[-1] == 0:
            continue
        return _mod_degree_gcd(am, bm, prime) == 0
    return False


def squarefree_decomposition(p: Poly):
    """Yun's algorithm: list of ``(factor, multiplicity)`` with monic factors.

    The product of ``factor**multiplicity`` equals ``p`` up to its leading
    coefficient; factors are pairwise coprime and square-free.
    """
    if not p.exact:
        raise FloatModeUnsupported("square-free decomposition needs exact input")
    if p.degree < 1:
        return []
    dp = p.derivative()
    a0 = poly_gcd(p, dp)
    if a0.degree == 0:
        return [(p.monic(), 1)]
    b = p.exact_div(a0)
    c = dp.exact_div(a0)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a.monic(), i))
        i += 1
    return out


def poly_lcm(a: Poly, b: Poly) -> Poly:
    g = poly_gcd(a, b)
    return (a.exact_div(g) * b).monic()
