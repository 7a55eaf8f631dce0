"""Exact Gaussian rationals.

Real values are carried as plain ``gmpy2.mpq`` (always in lowest terms with a
positive denominator); values with a nonzero imaginary part are ``Scalar``
instances.  Arithmetic on ``Scalar`` demotes back to ``mpq`` whenever the
imaginary part cancels, so real matrices never pay for the complex path.
"""

from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

from .errors import ParseError

ZERO = mpq(0)
ONE = mpq(1)


def _q(value):
    """Coerce a rational-like value to mpq exactly."""
    if type(value) is mpq:
        return value
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, (Fraction, Rational)):
        return mpq(int(value.numerator), int(value.denominator))
    if isinstance(value, float):
        return mpq(Fraction(value))
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, Scalar):
        if value.im:
            raise TypeError("expected a real value, got %r" % (value,))
        return value.re
    try:
        return mpq(value)
    except (TypeError, ValueError) as exc:
        raise TypeError("cannot interpret %r as a rational" % (value,)) from exc


def parse_rational(text):
    """Parse ``"p/q"``, ``"p"`` or an exact decimal string such as ``"0.5"``."""
    text = text.strip()
    try:
        return mpq(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError("not an exact rational: %r" % text) from exc


def make(re, im=ZERO):
    """Normalized entry: mpq when real, Scalar otherwise."""
    if im:
        return Scalar(re, im)
    return _q(re)


class Scalar:
    """Exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _q(re))
        object.__setattr__(self, "im", _q(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def of(cls, value):
        """Wrap any exact value (mpq, int, Fraction, Scalar, (re, im)) as a Scalar."""
        if isinstance(value, Scalar):
            return value
        if isinstance(value, tuple) and len(value) == 2:
            return cls(value[0], value[1])
        return cls(value, 0)

    def normalized(self):
        return make(self.re, self.im)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Scalar):
            return make(self.re + other.re, self.im + other.im)
        try:
            o = _q(other)
        except TypeError:
            return NotImplemented
        return make(self.re + o, self.im)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Scalar):
            return make(self.re - other.re, self.im - other.im)
        try:
            o = _q(other)
        except TypeError:
            return NotImplemented
        return make(self.re - o, self.im)

    def __rsub__(self, other):
        try:
            o = _q(other)
        except TypeError:
            return NotImplemented
        return make(o - self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return make(self.re * other.re - self.im * other.im,
                        self.re * other.im + self.im * other.re)
        try:
            o = _q(other)
        except TypeError:
            return NotImplemented
        return make(self.re * o, self.im * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Scalar):
            d = other.re * other.re + other.im * other.im
            if not d:
                raise ZeroDivisionError("division by zero")
            return make((self.re * other.re + self.im * other.im) / d,
                        (self.im * other.re - self.re * other.im) / d)
        try:
            o = _q(other)
        except TypeError:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero")
        return make(self.re / o, self.im / o)

    def __rtruediv__(self, other):
        try:
            o = _q(other)
        except TypeError:
            return NotImplemented
        d = self.re * self.re + self.im * self.im
        return make(o * self.re / d, -o * self.im / d)

    def __neg__(self):
        return make(-self.re, -self.im)

    def __pos__(self):
        return self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self):
        return make(self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        try:
            o = _q(other)
        except TypeError:
            return NotImplemented
        return not self.im and self.re == o

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return "Scalar(%s, %s)" % (self.re, self.im)

    def __str__(self):
        return to_text(self)


def conj(x):
    if type(x) is Scalar:
        return make(x.re, -x.im)
    return x


def re_part(x):
    return x.re if type(x) is Scalar else x


def im_part(x):
    return x.im if type(x) is Scalar else ZERO


def to_entry(value):
    """Normalize user input into the internal entry representation."""
    if isinstance(value, Scalar):
        return value.normalized()
    if isinstance(value, (tuple, list)) and len(value) == 2:
        return make(_q(value[0]), _q(value[1]))
    if isinstance(value, complex):
        return make(_q(value.real), _q(value.imag))
    return _q(value)


def to_text(x):
    """Canonical text: ``"p/q"`` for reals, ``"a+bi"`` style for complex."""
    if type(x) is Scalar:
        re, im = str(x.re), str(x.im)
        sign = "" if im.startswith("-") else "+"
        return "%s%s%si" % (re, sign, im)
    return str(x)


def to_pair(x):
    """Canonical ``[re, im]`` string pair used by the JSON formats."""
    return [str(re_part(x)), str(im_part(x))]


def abs2(x):
    """Squared modulus, exact."""
    if type(x) is Scalar:
        return x.re * x.re + x.im * x.im
    return x * x
