"""Exact arithmetic in the Gaussian rationals Q[i]."""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .errors import GraphFormatError

Number = Union[int, Fraction, "GaussianRational"]

_UNIT_STRINGS = {
    "1": (1, 0),
    "-1": (-1, 0),
    "i": (0, 1),
    "-i": (0, -1),
}


class GaussianRational:
    """A complex number ``re + im*i`` with rational parts.

    Instances are immutable and hashable.  ``Fraction`` keeps both parts in
    lowest terms with a positive denominator, so structural equality is
    numeric equality.
    """

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re: int | Fraction = 0, im: int | Fraction = 0):
        if isinstance(re, float) or isinstance(im, float):
            raise TypeError("use GaussianRational.from_float for float input")
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))
        object.__setattr__(self, "_hash", hash((self.re, self.im)))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    @classmethod
    def coerce(cls, value) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        if isinstance(value, complex):
            return cls.from_float(value.real, value.imag)
        if isinstance(value, str):
            return cls.parse(value)
        raise TypeError(f"cannot convert {value!r} to GaussianRational")

    @classmethod
    def from_float(cls, re: float, im: float = 0.0) -> GaussianRational:
        """Exact binary value of the given floats (no rounding)."""
        return cls(Fraction(re), Fraction(im))

    @classmethod
    def parse(cls, text: str) -> GaussianRational:
        """Parse the unit abbreviations ``1, -1, i, -i``."""
        try:
            return cls(*_UNIT_STRINGS[text.strip()])
        except KeyError:
            raise GraphFormatError(f"malformed weight string {text!r}") from None

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        norm = other.norm()
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * other.conjugate()
        return GaussianRational(num.re / norm, num.im / norm)

    def __rtruediv__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return other / self

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus ``re**2 + im**2``."""
        return self.re * self.re + self.im * self.im

    # comparisons ----------------------------------------------------------

    def __eq__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return self._hash

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self.re, self.im)

    def is_gaussian_integer(self) -> bool:
        return self.re.denominator == 1 and self.im.denominator == 1

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    # text -----------------------------------------------------------------

    def to_json(self, abbreviate: bool = False):
        if abbreviate:
            for text, (re, im) in _UNIT_STRINGS.items():
                if self.re == re and self.im == im:
                    return text
        return {
            "re": [self.re.numerator, self.re.denominator],
            "im": [self.im.numerator, self.im.denominator],
        }

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return _imag_str(self.im)
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{_imag_str(abs(self.im))}"

    def __repr__(self):
        return f"GaussianRational({self})"


def _imag_str(x: Fraction) -> str:
    if x == 1:
        return "i"
    if x == -1:
        return "-i"
    return f"{x}i"


def _maybe(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    return NotImplemented


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)
