"""Exact Gaussian rationals and the scalar helpers shared by every module.

Scalars throughout the package are either exact (``int``, ``Fraction`` or
:class:`GaussianRational`) or approximate (Python ``complex``/``float`` or
numpy complex).  Generic code relies only on ``+ - * /``, ``conjugate()`` and
the helpers below.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

import numpy as np

__all__ = [
    "GaussianRational",
    "GR",
    "is_exact",
    "all_exact",
    "is_zero",
    "conj",
    "to_complex",
    "parse_complex_literal",
    "format_rational",
    "scalar_to_json",
    "scalar_from_json",
    "gaussian_sqrt",
    "random_rational",
    "random_gaussian",
    "APPROX_TOL",
]

APPROX_TOL = 1e-9


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class GaussianRational:
    """Element ``re + im*i`` of Q(i) with arbitrary-precision rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im != 0:
                raise TypeError("imaginary part given twice")
            self.re, self.im = re.re, re.im
            return
        self.re = _frac(re)
        self.im = _frac(im)

    @staticmethod
    def coerce(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction, Rational)):
            return GaussianRational(x, 0)
        if isinstance(x, complex):
            raise TypeError("refusing to coerce a float complex into an exact scalar")
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussianRational")

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re + other, self.im)
        if isinstance(other, (complex, float, np.number)):
            return complex(self) + other
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re - other, self.im)
        if isinstance(other, (complex, float, np.number)):
            return complex(self) - other
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other - self.re, -self.im)
        if isinstance(other, (complex, float, np.number)):
            return other - complex(self)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            return GaussianRational(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        if isinstance(other, (complex, float, np.number)):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Squared modulus ``re**2 + im**2``."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, GaussianRational):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("GaussianRational division by zero")
            return GaussianRational(self.re / other, self.im / other)
        if isinstance(other, (complex, float, np.number)):
            return complex(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other) * self.inverse()
        if isinstance(other, (complex, float, np.number)):
            return other / complex(self)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    @property
    def real(self) -> Fraction:
        return self.re

    @property
    def imag(self) -> Fraction:
        return self.im

    # comparison / conversion ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GR({format_rational(self.re)!r}, {format_rational(self.im)!r})"

    def __str__(self):
        if self.im == 0:
            return format_rational(self.re)
        if self.re == 0:
            return f"{format_rational(self.im)}i"
        sign = "+" if self.im > 0 else "-"
        return f"{format_rational(self.re)}{sign}{format_rational(abs(self.im))}i"


GR = GaussianRational


def is_exact(x) -> bool:
    return isinstance(x, (GaussianRational, int, Fraction)) and not isinstance(x, bool)


def all_exact(xs) -> bool:
    return all(is_exact(x) for x in xs)


def is_zero(x, tol: float = APPROX_TOL) -> bool:
    """Exact zero test for exact scalars, ``abs(x) < tol`` otherwise."""
    if is_exact(x):
        return x == 0
    return abs(x) < tol


def conj(x):
    return x.conjugate()


def to_complex(x) -> complex:
    return complex(x)


def exact(x) -> GaussianRational:
    return GaussianRational.coerce(x)


# literals and JSON ---------------------------------------------------------

_RAT = r"[+-]?\d+(?:/\d+)?"
_LITERAL = re.compile(
    rf"^\s*(?:(?P<re>{_RAT})(?:(?P<im>[+-](?:\d+(?:/\d+)?)?)i)?|(?P<pure>{_RAT}|[+-]?)i)\s*$"
)


def parse_complex_literal(text: str) -> GaussianRational:
    """Parse ``a/b``, ``a/b+c/di``, ``c/di`` or ``i``; floats are rejected.

    >>> str(parse_complex_literal("1/2+1/3i"))
    '1/2+1/3i'
    """
    m = _LITERAL.match(text)
    if not m:
        raise ValueError(f"not an exact complex literal: {text!r}")
    if m.group("re") is not None:
        re_part = Fraction(m.group("re"))
        im_txt = m.group("im")
        if im_txt is None:
            return GaussianRational(re_part)
        if im_txt in ("+", "-"):
            im_txt += "1"
        return GaussianRational(re_part, Fraction(im_txt))
    pure = m.group("pure")
    if pure in ("", "+", "-"):
        pure += "1"
    return GaussianRational(0, Fraction(pure))


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def scalar_to_json(x):
    """``[re, im]`` with ``"num/den"`` strings (exact) or floats (approximate)."""
    if is_exact(x):
        g = exact(x)
        return [format_rational(g.re), format_rational(g.im)]
    c = complex(x)
    return [c.real, c.imag]


def scalar_from_json(v):
    re_part, im_part = v
    if isinstance(re_part, str) and isinstance(im_part, str):
        return GaussianRational(Fraction(re_part), Fraction(im_part))
    return complex(float(re_part), float(im_part))


# square roots --------------------------------------------------------------

def _rational_sqrt(q: Fraction):
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = _isqrt_exact(n), _isqrt_exact(d)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


def _isqrt_exact(n: int):
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


def gaussian_sqrt(z) -> GaussianRational | None:
    """Exact square root in Q(i), or ``None`` when ``z`` is not a square there."""
    z = exact(z)
    if z == 0:
        return GaussianRational(0)
    modulus = _rational_sqrt(z.norm())
    if modulus is None:
        return None
    x = _rational_sqrt((modulus + z.re) / 2)
    y = _rational_sqrt((modulus - z.re) / 2)
    if x is None or y is None:
        return None
    if z.im < 0:
        y = -y
    root = GaussianRational(x, y)
    return root if root * root == z else None


# sampling ------------------------------------------------------------------

def random_rational(rng: np.random.Generator, height: int) -> Fraction:
    num = int(rng.integers(-height, height + 1))
    den = int(rng.integers(1, height + 1))
    return Fraction(num, den)


def random_gaussian(rng: np.random.Generator, height: int) -> GaussianRational:
    return GaussianRational(random_rational(rng, height), random_rational(rng, height))
