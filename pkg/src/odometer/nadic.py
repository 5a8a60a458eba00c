"""Rational n-adic integers.

An :class:`NAdic` is a rational number ``a/b`` with ``gcd(b, n) == 1``, viewed
as an element of the ring of n-adic integers.  Arithmetic is exact on the
rational value; digits are computed from residues modulo powers of ``n``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Union

__all__ = [
    "NAdic",
    "NAdicError",
    "parse_rational",
    "residue",
    "delta2",
    "delta3",
    "delta3_closed",
    "DIGIT_DUMP",
]

DIGIT_DUMP = 32

Number = Union["NAdic", int, Fraction]


class NAdicError(ValueError):
    """Raised when a value is not an n-adic integer."""


class NAdic:
    """A rational n-adic integer of fixed degree ``n``."""

    __slots__ = ("n", "value")

    def __init__(self, value, n: int):
        if n < 2:
            raise NAdicError(f"degree must be at least 2, got {n}")
        if isinstance(value, NAdic):
            value = value.value
        value = Fraction(value)
        if gcd(value.denominator, n) != 1:
            raise NAdicError(f"{value} is not {n}-adic: "
                             f"denominator shares a factor with {n}")
        self.n = n
        self.value = value

    def _lift(self, other) -> "NAdic | None":
        if isinstance(other, NAdic):
            if other.n != self.n:
                raise NAdicError("degree mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return NAdic(other, self.n)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return NAdic(self.value + other.value, self.n)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return NAdic(self.value - other.value, self.n)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return NAdic(other.value - self.value, self.n)

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return NAdic(self.value * other.value, self.n)

    __rmul__ = __mul__

    def __neg__(self):
        return NAdic(-self.value, self.n)

    def __truediv__(self, other):
        """Exact division; fails unless the quotient is again n-adic."""
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if other.value == 0:
            raise NAdicError("division by zero")
        return NAdic(self.value / other.value, self.n)

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, k: int):
        if k < 0:
            return self.invert() ** (-k)
        return NAdic(self.value ** k, self.n)

    def is_unit(self) -> bool:
        return gcd(self.digit(0), self.n) == 1

    def invert(self) -> "NAdic":
        if not self.is_unit():
            raise NAdicError(f"{self} is not a unit in the {self.n}-adic integers")
        return NAdic(1 / self.value, self.n)

    def residue(self, k: int = 1) -> int:
        """The value modulo ``n**k`` as an integer in ``[0, n**k)``."""
        m = self.n ** k
        a, b = self.value.numerator, self.value.denominator
        return (a * pow(b, -1, m)) % m if m > 1 else 0

    def digit(self, i: int) -> int:
        if i < 0:
            raise IndexError("digit index must be non-negative")
        return self.residue(i + 1) // self.n ** i

    def digits(self, k: int = DIGIT_DUMP) -> list[int]:
        r = self.residue(k)
        out = []
        for _ in range(k):
            r, d = divmod(r, self.n)
            out.append(d)
        return out

    @property
    def bar(self) -> int:
        """Leading digit, the residue modulo ``n``."""
        return self.residue(1)

    def shift_down(self) -> "NAdic":
        """``(x - digit0) / n``, dropping the leading digit."""
        return NAdic((self.value - self.bar) / self.n, self.n)

    def in_one_class(self) -> bool:
        """True for values congruent to 1 modulo ``n``."""
        return self.bar == 1 % self.n

    def is_integer(self) -> bool:
        return self.value.denominator == 1

    def dump(self, k: int = DIGIT_DUMP) -> str:
        return "adic[" + " ".join(map(str, self.digits(k))) + "]"

    def __eq__(self, other) -> bool:
        if isinstance(other, NAdic):
            return self.n == other.n and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"NAdic({str(self.value)!r}, n={self.n})"


_RATIONAL_RE = re.compile(r"\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str, n: int) -> NAdic:
    """Parse ``"-3"`` or ``"1/3"`` as an n-adic integer."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise NAdicError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise NAdicError("zero denominator")
    return NAdic(Fraction(num, den), n)


def residue(x: Number, n: int) -> int:
    """Leading digit of ``x`` read as an n-adic integer."""
    if isinstance(x, NAdic):
        return x.bar
    if isinstance(x, int):
        return x % n
    return NAdic(x, n).bar


def delta2(eta: Number, kappa: Number, n: int) -> int:
    """Carry indicator: 1 when the leading digits of ``eta`` and ``kappa`` sum past ``n``."""
    if type(eta) is int and type(kappa) is int:
        return 1 if eta % n + kappa % n >= n else 0
    return 1 if residue(eta, n) + residue(kappa, n) >= n else 0


def delta3(s: int, i: int, t: int, n: int) -> int:
    """``delta2(i, t - i) - delta2(i - s, t - i)``, straight from the definition."""
    return delta2(i, t - i, n) - delta2(i - s, t - i, n)


def delta3_closed(s: int, i: int, t: int, n: int) -> int:
    """Closed form of :func:`delta3` by comparing residues against ``s``."""
    sb, ib, tb = s % n, i % n, t % n
    if tb < sb <= ib:
        return 1
    if ib < sb <= tb:
        return -1
    return 0
