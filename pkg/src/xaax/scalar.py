"""Exact scalars: rationals (``fractions.Fraction``) and Gaussian rationals.

A scalar with zero imaginary part is always represented as a plain
``Fraction``; :class:`GaussianRational` only ever carries a nonzero
imaginary part. Every arithmetic result is put back into that canonical
form, so equality and hashing are structural.
"""

from fractions import Fraction
from numbers import Rational

from .errors import ParseError

__all__ = [
    "GaussianRational",
    "as_scalar",
    "gaussian",
    "is_scalar",
    "parse_scalar",
    "scalar_from_json",
    "scalar_key",
    "scalar_to_json",
    "format_scalar",
    "I",
    "ZERO",
    "ONE",
]

ZERO = Fraction(0)
ONE = Fraction(1)


def gaussian(re_part, im_part=0):
    """Build the canonical scalar ``re_part + im_part*i``."""
    re_part = Fraction(re_part)
    im_part = Fraction(im_part)
    if im_part == 0:
        return re_part
    return GaussianRational(re_part, im_part)


class GaussianRational:
    """An element of Q(i) with nonzero imaginary part."""

    __slots__ = ("re", "im")

    def __init__(self, re_part, im_part):
        object.__setattr__(self, "re", Fraction(re_part))
        object.__setattr__(self, "im", Fraction(im_part))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def _parts(x):
        if isinstance(x, GaussianRational):
            return x.re, x.im
        if isinstance(x, (int, Fraction)):
            return Fraction(x), ZERO
        if isinstance(x, Rational):
            return Fraction(x.numerator, x.denominator), ZERO
        return None

    def __add__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return gaussian(self.re + o[0], self.im + o[1])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return gaussian(self.re - o[0], self.im - o[1])

    def __rsub__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return gaussian(o[0] - self.re, o[1] - self.im)

    def __mul__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = o
        return gaussian(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        c, d = o
        den = c * c + d * d
        if den == 0:
            raise ZeroDivisionError("division by zero scalar")
        a, b = self.re, self.im
        return gaussian((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return gaussian(*o) * self._inverse()

    def _inverse(self):
        den = self.re * self.re + self.im * self.im
        return gaussian(self.re / den, -self.im / den)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self._inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return False  # canonical form: im != 0 here
        return NotImplemented

    def __hash__(self):
        return hash(("gaussian", self.re, self.im))

    def __bool__(self):
        return True

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        return format_scalar(self)


I = GaussianRational(0, 1)


def is_scalar(x):
    return isinstance(x, (Fraction, GaussianRational, int))


def as_scalar(x):
    """Coerce ints, Fractions, strings and Gaussian values to canonical form.

    Floats are refused: silently rounding would break exactness.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, GaussianRational):
        return gaussian(x.re, x.im)
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, dict):
        return scalar_from_json(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"cannot use {type(x).__name__} {x!r} as an exact scalar")


def re_im(x):
    """Real and imaginary parts of a scalar as Fractions."""
    if isinstance(x, GaussianRational):
        return x.re, x.im
    return Fraction(x), ZERO


def scalar_key(x):
    """Sort key: lexicographic on (re, im)."""
    return re_im(x)


def _parse_rational(text):
    if "." in text or "e" in text.lower():
        raise ParseError(f"decimal notation is not exact input: {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not an exact rational: {text!r}") from exc


def parse_scalar(text):
    """Parse ``"p/q"`` or a Gaussian literal such as ``"1/2-3i"`` or ``"-i"``."""
    text = text.replace(" ", "")
    if not text:
        raise ParseError("empty scalar")
    if not text.endswith("i"):
        return _parse_rational(text)
    body = text[:-1].rstrip("*")
    split = max(body.rfind("+"), body.rfind("-"))
    if split > 0:
        re_txt, im_txt = body[:split], body[split:]
    else:
        re_txt, im_txt = "0", body
    if im_txt in ("", "+", "-"):
        im_txt += "1"
    return gaussian(_parse_rational(re_txt), _parse_rational(im_txt))


def format_scalar(x):
    """Compact text form; rationals print as ``p/q`` (``q`` omitted when 1)."""
    x = as_scalar(x)
    if isinstance(x, Fraction):
        return str(x)
    re_txt = "" if x.re == 0 else str(x.re)
    mag = abs(x.im)
    im_txt = "i" if mag == 1 else f"{mag}i"
    if not re_txt:
        return im_txt if x.im > 0 else "-" + im_txt
    return re_txt + ("+" if x.im > 0 else "-") + im_txt


def scalar_to_json(x):
    """``"p/q"`` for rationals, ``{"re": ..., "im": ...}`` for Gaussian values."""
    x = as_scalar(x)
    if isinstance(x, Fraction):
        return str(x)
    return {"re": str(x.re), "im": str(x.im)}


def scalar_from_json(obj):
    if isinstance(obj, bool):
        raise ParseError("booleans are not scalars")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str):
        return parse_scalar(obj)
    if isinstance(obj, dict):
        if set(obj) != {"re", "im"}:
            raise ParseError(f"Gaussian scalar needs exactly 're' and 'im': {obj!r}")
        return gaussian(scalar_from_json(obj["re"]), scalar_from_json(obj["im"]))
    raise ParseError(f"not a scalar: {obj!r}")
