"""Exact arithmetic in the Gaussian rationals Q(i).

A :class:`GaussianRational` stores ``(a + b i) / d`` with integers ``a, b``
and ``d > 0`` sharing no common factor, so the real part ``a/d`` and the
imaginary part ``b/d`` are exact.  Literals follow the grammar::

    RAT  := INT | INT '/' POSINT
    GRAT := RAT | RAT ('+'|'-') RAT 'i' | RAT 'i'

e.g. ``"3/2"``, ``"-1+2/3i"``, ``"-5i"``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from numbers import Rational

__all__ = ["GaussianRational", "ScalarParseError", "parse_scalar", "format_scalar", "as_scalar"]


class ScalarParseError(ValueError):
    """Raised for a malformed scalar literal."""


class GaussianRational:
    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        self._set(re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d)

    def _set(self, a, b, d):
        g = gcd(a, b, d)
        if g != 1:
            a //= g
            b //= g
            d //= g
        self._a = a
        self._b = b
        self._d = d

    @classmethod
    def _raw(cls, a, b, d):
        obj = cls.__new__(cls)
        obj._set(a, b, d)
        return obj

    # --- accessors ---------------------------------------------------------

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def is_real(self) -> bool:
        return self._b == 0

    def is_integer(self) -> bool:
        return self._b == 0 and self._d == 1

    def is_nonnegative_integer(self) -> bool:
        return self._b == 0 and self._d == 1 and self._a >= 0

    def conjugate(self) -> GaussianRational:
        return GaussianRational._raw(self._a, -self._b, self._d)

    def __bool__(self):
        return self._a != 0 or self._b != 0

    # --- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self._d == other._d:
            return GaussianRational._raw(self._a + other._a, self._b + other._b, self._d)
        return GaussianRational._raw(
            self._a * other._d + other._a * self._d,
            self._b * other._d + other._b * self._d,
            self._d * other._d,
        )

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self._a, -self._b, self._d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a1, b1, a2, b2 = self._a, self._b, other._a, other._b
        if b1 == 0 and b2 == 0:
            return GaussianRational._raw(a1 * a2, 0, self._d * other._d)
        return GaussianRational._raw(a1 * a2 - b1 * b2, a1 * b2 + a2 * b1, self._d * other._d)

    __rmul__ = __mul__

    def reciprocal(self) -> GaussianRational:
        if not self:
            raise ZeroDivisionError("division by zero in Q(i)")
        a, b, d = self._a, self._b, self._d
        norm = a * a + b * b
        return GaussianRational._raw(d * a, -d * b, norm)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.reciprocal()

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            raise TypeError("only integer powers are supported")
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        if self._b == 0:
            return GaussianRational._raw(self._a**exponent, 0, self._d**exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # --- comparison / hashing ----------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._a == other._a and self._b == other._b and self._d == other._d

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((Fraction(self._a, self._d), Fraction(self._b, self._d)))

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


ZERO = GaussianRational._raw(0, 0, 1)
ONE = GaussianRational._raw(1, 0, 1)


def _coerce(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, bool):
        return NotImplemented
    if isinstance(value, int):
        return GaussianRational._raw(value, 0, 1)
    if isinstance(value, Rational):
        return GaussianRational._raw(value.numerator, 0, value.denominator)
    return NotImplemented


def as_scalar(value) -> GaussianRational:
    """Coerce an int, Fraction, literal string or GaussianRational."""
    if isinstance(value, str):
        return parse_scalar(value)
    out = _coerce(value)
    if out is NotImplemented:
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")
    return out


_RAT = r"[+-]?\d+(?:/\d+)?"
_REAL_RE = re.compile(rf"^(?P<re>{_RAT})$")
_COMPLEX_RE = re.compile(rf"^(?P<re>{_RAT})(?P<op>[+-])(?P<im>{_RAT})i$")
_IMAG_RE = re.compile(rf"^(?P<im>{_RAT})i$")


def _parse_rat(text: str) -> Fraction:
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ScalarParseError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def parse_scalar(text: str) -> GaussianRational:
    """Parse a scalar literal such as ``"3/2"`` or ``"-1+2/3i"``."""
    if not isinstance(text, str):
        raise ScalarParseError(f"scalar literal must be a string, got {type(text).__name__}")
    s = text.strip().replace(" ", "")
    m = _REAL_RE.match(s)
    if m:
        return GaussianRational(_parse_rat(m["re"]))
    m = _COMPLEX_RE.match(s)
    if m:
        im = _parse_rat(m["im"])
        return GaussianRational(_parse_rat(m["re"]), im if m["op"] == "+" else -im)
    m = _IMAG_RE.match(s)
    if m:
        return GaussianRational(0, _parse_rat(m["im"]))
    raise ScalarParseError(f"malformed scalar literal {text!r}")


def format_scalar(z: GaussianRational) -> str:
    """Canonical literal: lowest terms, ``"0"`` for zero, ``"1i"`` never ``"i"``."""
    re_part, im_part = z.re, z.im
    if im_part == 0:
        return str(re_part)
    if re_part == 0:
        return f"{im_part}i"
    sign = "+" if im_part > 0 else "-"
    return f"{re_part}{sign}{abs(im_part)}i"
