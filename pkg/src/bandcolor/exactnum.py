"""Exact arithmetic foundation: big integers, rationals, dyadic rationals.

Big integers are Python ints. Rationals are ``fractions.Fraction``. Dyadics
(num / 2**exp2) get their own small class because every coordinate produced
by repeated bisection is dyadic, and comparing two dyadics is a pair of
shifts plus an integer compare instead of a GCD.
"""

from __future__ import annotations

from fractions import Fraction


class Dyadic:
    """A binary rational num / 2**exp2, kept canonical (num odd or exp2 == 0)."""

    __slots__ = ("num", "exp2")

    def __init__(self, num: int, exp2: int = 0):
        if exp2 < 0:
            num <<= -exp2
            exp2 = 0
        while num != 0 and exp2 > 0 and num & 1 == 0:
            num >>= 1
            exp2 -= 1
        if num == 0:
            exp2 = 0
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp2", exp2)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    # -- comparisons: shift to the common power of two ----------------------

    def _cmp(self, other: "Dyadic") -> int:
        a = self.num << other.exp2
        b = other.num << self.exp2
        return (a > b) - (a < b)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if not isinstance(other, Dyadic):
            return NotImplemented
        return self.num == other.num and self.exp2 == other.exp2

    def __hash__(self):
        return hash((self.num, self.exp2))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = Dyadic(other)
        e = max(self.exp2, other.exp2)
        return Dyadic((self.num << (e - self.exp2)) + (other.num << (e - other.exp2)), e)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        if isinstance(other, int):
            other = Dyadic(other)
        e = max(self.exp2, other.exp2)
        return Dyadic((self.num << (e - self.exp2)) - (other.num << (e - other.exp2)), e)

    def __mul__(self, other: int):
        if not isinstance(other, int):
            return NotImplemented
        return Dyadic(self.num * other, self.exp2)

    __rmul__ = __mul__

    def __neg__(self):
        return Dyadic(-self.num, self.exp2)

    def half(self) -> "Dyadic":
        return Dyadic(self.num, self.exp2 + 1)

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp2)

    def __bool__(self):
        return self.num != 0

    def __repr__(self):
        if self.exp2 == 0:
            return "Dyadic(%d)" % self.num
        return "Dyadic(%d, %d)" % (self.num, self.exp2)

    def __str__(self):
        if self.exp2 == 0:
            return str(self.num)
        return "%d/2^%d" % (self.num, self.exp2)

    def to_json(self) -> dict:
        return {"num": str(self.num), "exp2": self.exp2}

    @classmethod
    def from_json(cls, obj) -> "Dyadic":
        return cls(int(obj["num"]), int(obj["exp2"]))


ZERO = Dyadic(0)
ONE = Dyadic(1)
TWO = Dyadic(2)


def dyadic_mid(a: Dyadic, b: Dyadic) -> Dyadic:
    """Exact midpoint (a + b) / 2 in canonical form."""
    e = max(a.exp2, b.exp2)
    return Dyadic((a.num << (e - a.exp2)) + (b.num << (e - b.exp2)), e + 1)


def truncate_decimal(x: Fraction, places: int) -> str:
    """Decimal expansion of x >= 0 truncated toward zero at `places` digits.

    Truncation, not rounding: Table-style renderings chop the expansion and
    zero-pad, so 243/60 at 7 places is "4.0500000".
    """
    if x < 0:
        raise ValueError("truncate_decimal requires x >= 0")
    if places < 0:
        raise ValueError("places must be >= 0")
    ip, rem = divmod(x.numerator, x.denominator)
    if places == 0:
        return str(ip)
    frac = (rem * 10**places) // x.denominator
    return "%d.%s" % (ip, str(frac).rjust(places, "0"))


def render_rational(x: Fraction) -> str:
    return "%d/%d" % (x.numerator, x.denominator)


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        p, q = text.split("/", 1)
        return Fraction(int(p), int(q))
    return Fraction(int(text))
