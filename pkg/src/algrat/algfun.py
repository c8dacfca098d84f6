"""Defining equations ``P(y, z) = 0`` and their symbol coefficients.

Text input follows a small grammar::

    top    := expr ('=' expr)?
    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := base ('^' uint)?
    base   := 'y' | 'z' | 'I' | number | '(' expr ')'

``a = b`` stands for ``a - b``.  Unary minus binds looser than ``^`` so that
``-y^2`` is ``-(y^2)``.  Division is limited to nonzero constants inside a
defining equation; initial entries may be arbitrary rational functions of
``z``.  Decimal literals are read exactly (``0.5`` is ``1/2``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DegreeTooLow, EquationSyntaxError, NotBivariate, ZeroLeadingCoefficient
from .numcore import ONE, ZERO, I, Poly, RatFun, exact

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d*)?|\.\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("id", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()=":
                raise EquationSyntaxError(f"unexpected character {ch!r}", m.start(3), text)
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


# ---------------------------------------------------------------------------
# algebras the parser evaluates into


class _Bivariate:
    """Polynomials in (y, z) as ``{(ydeg, zdeg): GaussianRational}``."""

    allow_y = True

    @staticmethod
    def const(c):
        return {(0, 0): c} if c else {}

    @staticmethod
    def var(name):
        return {(1, 0): ONE} if name == "y" else {(0, 1): ONE}

    @staticmethod
    def add(a, b):
        out = dict(a)
        for key, c in b.items():
            v = out.get(key, ZERO) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return out

    @classmethod
    def neg(cls, a):
        return {key: -c for key, c in a.items()}

    @classmethod
    def sub(cls, a, b):
        return cls.add(a, cls.neg(b))

    @staticmethod
    def mul(a, b):
        out: dict = {}
        for (i1, j1), c1 in a.items():
            for (i2, j2), c2 in b.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, ZERO) + c1 * c2
        return {key: c for key, c in out.items() if c}

    @classmethod
    def div(cls, a, b, pos, text):
        if not b:
            raise EquationSyntaxError("division by zero", pos, text)
        if set(b) != {(0, 0)}:
            raise EquationSyntaxError(
                "defining equations may only be divided by constants", pos, text)
        inv = ONE / b[(0, 0)]
        return {key: c * inv for key, c in a.items()}

    @classmethod
    def pow(cls, a, n):
        out = cls.const(ONE)
        for _ in range(n):
            out = cls.mul(out, a)
        return out


class _Rational:
    """Rational functions of z."""

    allow_y = False

    @staticmethod
    def const(c):
        return RatFun(Poly([c]))

    @staticmethod
    def var(name):
        return RatFun(Poly.x())

    add = staticmethod(lambda a, b: a + b)
    sub = staticmethod(lambda a, b: a - b)
    mul = staticmethod(lambda a, b: a * b)
    neg = staticmethod(lambda a: -a)

    @staticmethod
    def div(a, b, pos, text):
        if b.is_zero():
            raise EquationSyntaxError("division by zero", pos, text)
        return a / b

    @staticmethod
    def pow(a, n):
        return a ** n


class _Parser:
    def __init__(self, text, algebra):
        self.text = text
        self.alg = algebra
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise EquationSyntaxError(msg, tok[2], self.text)

    def expect(self, value):
        tok = self.take()
        if tok[1] != value or tok[0] not in ("op",):
            self.error(f"expected {value!r}", tok)
        return tok

    def parse_top(self, allow_equals=True):
        if self.peek()[0] == "end":
            self.error("empty expression")
        lhs = self.expr()
        if allow_equals and self.peek()[1] == "=" and self.peek()[0] == "op":
            self.take()
            rhs = self.expr()
            lhs = self.alg.sub(lhs, rhs)
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return lhs

    def expr(self):
        val = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            val = self.alg.add(val, rhs) if op == "+" else self.alg.sub(val, rhs)
        return val

    def term(self):
        val = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            tok = self.take()
            rhs = self.unary()
            val = self.alg.mul(val, rhs) if tok[1] == "*" else self.alg.div(val, rhs, tok[2], self.text)
        return val

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            val = self.unary()
            return self.alg.neg(val) if tok[1] == "-" else val
        return self.power()

    def power(self):
        base = self.base()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num" or not tok[1].isdigit():
                self.error("exponent must be a non-negative integer", tok)
            base = self.alg.pow(base, int(tok[1]))
        return base

    def base(self):
        tok = self.take()
        kind, value, pos = tok
        if kind == "num":
            return self.alg.const(exact(Fraction(value)))
        if kind == "id":
            if value == "I":
                return self.alg.const(I)
            if value == "z":
                return self.alg.var("z")
            if value == "y":
                if not self.alg.allow_y:
                    raise NotBivariate(f"'y' is not allowed here (position {pos})")
                return self.alg.var("y")
            raise NotBivariate(f"unknown variable {value!r} at position {pos}; only y, z and I are allowed")
        if kind == "op" and value == "(":
            val = self.expr()
            self.expect(")")
            return val
        if kind == "end":
            self.error("unexpected end of input", tok)
        self.error(f"unexpected {value!r}", tok)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DefiningPolynomial:
    """``P(y, z) = sum_i P_i(z) y^i`` with exact coefficients.

    Attributes
    ----------
    coeffs : tuple of Poly
        ``(P_0, ..., P_k)``; ``P_k`` is nonzero.
    """

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(c if isinstance(c, Poly) else Poly([c]) for c in self.coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs = coeffs[:-1]
        if not coeffs:
            raise ZeroLeadingCoefficient("the defining polynomial is identically zero")
        if len(coeffs) < 2:
            raise DegreeTooLow("the defining polynomial must depend on y")
        if not all(c.exact for c in coeffs):
            raise TypeError("defining polynomial coefficients must be exact")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def k(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Poly:
        return self.coeffs[-1]

    def coeff_arrays(self):
        """Ascending complex coefficient arrays of each ``P_i``."""
        return [c.to_numpy() for c in self.coeffs]

    def eval_coeffs(self, z) -> np.ndarray:
        """``P_0(z), ..., P_k(z)`` in binary64; ``z`` may be an array.

        The result has shape ``(k+1,) + shape(z)``.
        """
        z = np.asarray(z, dtype=complex)
        out = np.empty((self.k + 1,) + z.shape, dtype=complex)
        for i, c in enumerate(self.coeffs):
            arr = c.to_numpy()
            out[i] = np.polynomial.polynomial.polyval(z, arr) if arr.size else 0
        return out

    def render(self) -> str:
        """Text that parses back to the same coefficients."""
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = "" if i == 0 else ("y" if i == 1 else f"y^{i}")
            body = f"({c.to_text('z')})"
            terms.append(body if not mono else f"{body}*{mono}")
        return " + ".join(terms)

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class InitialTuple:
    """Initial values ``q_0, ..., q_{k-1}`` (oldest first)."""

    entries: tuple

    def __post_init__(self):
        entries = tuple(e if isinstance(e, RatFun) else RatFun(e if isinstance(e, Poly) else Poly([e]))
                        for e in self.entries)
        if not entries:
            raise ValueError("empty initial tuple")
        if all(e.is_zero() for e in entries):
            raise ValueError("initial tuple is identically zero")
        object.__setattr__(self, "entries", entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def render(self) -> str:
        return ", ".join(e.to_text("z") for e in self.entries)


def parse_defining(text: str) -> DefiningPolynomial:
    """Parse ``P(y, z)`` (or ``lhs = rhs``) into its y-coefficients.

    Examples
    --------
    >>> d = parse_defining("y^2 - y - z")
    >>> d.k, [c.to_text() for c in d.coeffs]
    (2, ['-z', '(-1)', '1'])
    """
    terms = _Parser(text, _Bivariate).parse_top()
    if not terms:
        raise ZeroLeadingCoefficient("the defining polynomial is identically zero")
    k = max(i for i, _ in terms)
    coeffs = []
    for i in range(k + 1):
        zdeg = [j for (ii, j) in terms if ii == i]
        arr = [ZERO] * (max(zdeg) + 1 if zdeg else 0)
        for j in zdeg:
            arr[j] = terms[(i, j)]
        coeffs.append(Poly(arr))
    return DefiningPolynomial(tuple(coeffs))


def parse_rational(text: str) -> RatFun:
    """Parse a rational function of ``z`` (no ``y``, no ``=``)."""
    return _Parser(text, _Rational).parse_top(allow_equals=False)


def _split_top_level(text: str):
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return parts


def parse_initial(spec) -> InitialTuple:
    """Initial tuple from comma-separated text or a sequence of entries.

    Entries may be strings, numbers, :class:`Poly` or :class:`RatFun`.
    """
    if isinstance(spec, str):
        spec = _split_top_level(spec)
    entries = []
    for e in spec:
        if isinstance(e, str):
            entries.append(parse_rational(e))
        elif isinstance(e, RatFun):
            entries.append(e)
        elif isinstance(e, Poly):
            entries.append(RatFun(e))
        else:
            entries.append(RatFun(Poly([e])))
    return InitialTuple(tuple(entries))


def standard_initial(k: int) -> InitialTuple:
    """The tuple ``{0, ..., 0, 1}`` of length ``k``."""
    return InitialTuple(tuple([0] * (k - 1) + [1]))


def symbol_coefficients(d: DefiningPolynomial):
    """``[R_0, ..., R_{k-1}]`` with ``R_i = -P_i / P_k``, reduced.

    Examples
    --------
    >>> [r.to_text() for r in symbol_coefficients(parse_defining("y^2 - y - z"))]
    ['z', '1']
    """
    lead = d.lead
    return [RatFun(-p, lead) for p in d.coeffs[:-1]]


__all__ = [
    "DefiningPolynomial", "InitialTuple", "parse_defining", "parse_initial",
    "parse_rational", "standard_initial", "symbol_coefficients",
]
