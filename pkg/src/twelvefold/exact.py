"""Exact arithmetic in the ring of numbers (a + b*sqrt(3)) / 2**e.

Every coordinate, length and area in the tiling engine is a value of this
form with integers a, b and e >= 0.  The ring is closed under addition,
multiplication, halving, rotation by multiples of 30 degrees (coefficients
1/2 and sqrt(3)/2) and scaling by (1 + sqrt(3))**n for any integer n,
because (1 + sqrt(3))**-1 == (sqrt(3) - 1) / 2.

Values are immutable and kept in a canonical normal form: either e == 0 or
at least one of a, b is odd.  Equal values therefore always have identical
(a, b, e) triples, which makes hashing and exact dict/set keys trivial.

Python integers are arbitrary precision, so no overflow is possible; the
exactness contract holds for any generation depth.
"""

from __future__ import annotations

from math import isqrt

_SQRT3_FLOAT = 1.7320508075688772


class RingValue:
    """(a + b*sqrt(3)) / 2**e in normal form."""

    __slots__ = ("a", "b", "e")

    def __init__(self, a: int, b: int = 0, e: int = 0):
        if e < 0:
            raise ValueError("denominator exponent must be >= 0")
        while e > 0 and not (a & 1) and not (b & 1):
            a >>= 1
            b >>= 1
            e -= 1
        if a == 0 and b == 0:
            e = 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "e", e)

    def __setattr__(self, name, value):
        raise AttributeError("RingValue is immutable")

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "RingValue") -> "RingValue":
        ea, eb = self.e, other.e
        if ea == eb:
            return RingValue(self.a + other.a, self.b + other.b, ea)
        if ea > eb:
            s = 1 << (ea - eb)
            return RingValue(self.a + other.a * s, self.b + other.b * s, ea)
        s = 1 << (eb - ea)
        return RingValue(self.a * s + other.a, self.b * s + other.b, eb)

    def __sub__(self, other: "RingValue") -> "RingValue":
        ea, eb = self.e, other.e
        if ea == eb:
            return RingValue(self.a - other.a, self.b - other.b, ea)
        if ea > eb:
            s = 1 << (ea - eb)
            return RingValue(self.a - other.a * s, self.b - other.b * s, ea)
        s = 1 << (eb - ea)
        return RingValue(self.a * s - other.a, self.b * s - other.b, eb)

    def __neg__(self) -> "RingValue":
        return RingValue(-self.a, -self.b, self.e)

    def __mul__(self, other) -> "RingValue":
        if isinstance(other, RingValue):
            # (a + b*s3)(c + d*s3) = ac + 3bd + (ad + bc)*s3
            a, b, c, d = self.a, self.b, other.a, other.b
            return RingValue(a * c + 3 * b * d, a * d + b * c, self.e + other.e)
        return RingValue(self.a * other, self.b * other, self.e)

    __rmul__ = __mul__

    def half(self) -> "RingValue":
        return RingValue(self.a, self.b, self.e + 1)

    def inflate(self, n: int) -> "RingValue":
        """self * (1 + sqrt(3))**n, exactly; negative n deflates."""
        a, b, e = self.a, self.b, self.e
        if n >= 0:
            for _ in range(n):
                a, b = a + 3 * b, a + b
        else:
            # (1 + sqrt(3))**-1 == (-1 + sqrt(3)) / 2
            for _ in range(-n):
                a, b = -a + 3 * b, a - b
                e += 1
        return RingValue(a, b, e)

    # -- predicates ---------------------------------------------------

    def sign(self) -> int:
        a, b = self.a, self.b
        if a == 0 and b == 0:
            return 0
        if a >= 0 and b >= 0:
            return 1
        if a <= 0 and b <= 0:
            return -1
        # mixed signs: compare a**2 against 3*b**2 (never equal, sqrt(3)
        # being irrational), entirely in integer arithmetic
        if a > 0:
            return 1 if a * a > 3 * b * b else -1
        return -1 if a * a > 3 * b * b else 1

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingValue):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.e == other.e

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.e))

    def __lt__(self, other: "RingValue") -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: "RingValue") -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: "RingValue") -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: "RingValue") -> bool:
        return (self - other).sign() >= 0

    # -- conversion ---------------------------------------------------

    def __float__(self) -> float:
        return (self.a + self.b * _SQRT3_FLOAT) / (1 << self.e)

    def triple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.e)

    def decimal(self, digits: int) -> str:
        """Correctly rounded decimal expansion with `digits` fractional digits.

        Rounding is done with integer arithmetic only.  For irrational values
        (b != 0) a tie is impossible; exact dyadic ties round half away from
        zero, deterministically.
        """
        if digits < 1:
            raise ValueError("digits must be >= 1")
        neg = self.sign() < 0
        a, b, e = (-self.a, -self.b, self.e) if neg else (self.a, self.b, self.e)
        scale = 10 ** digits
        big_a = a * scale
        big_b = b * scale
        # floor(2 * big_b * sqrt(3)) without floating point
        if big_b >= 0:
            f = isqrt(12 * big_b * big_b)
        else:
            s = isqrt(12 * big_b * big_b)
            f = -s if s * s == 12 * big_b * big_b else -s - 1
        # round(value * scale) = floor((2A + 2B*sqrt3 + 2^e) / 2^(e+1));
        # adding floor(2B*sqrt3) before the shift is exact because the
        # fractional part cannot carry the quotient across an integer.
        total = (2 * big_a + f + (1 << e)) >> (e + 1)
        sign = "-" if neg and total != 0 else ""
        return f"{sign}{total // scale}.{total % scale:0{digits}d}"

    def __repr__(self) -> str:
        return f"RingValue({self.a}, {self.b}, {self.e})"

    def __str__(self) -> str:
        if self.b == 0:
            num = f"{self.a}"
        elif self.a == 0:
            num = f"{self.b}√3"
        else:
            num = f"{self.a}{'+' if self.b > 0 else '-'}{abs(self.b)}√3"
        return num if self.e == 0 else f"({num})/{1 << self.e}"


def normalize(a: int, b: int, e: int) -> RingValue:
    """Unique normal form of (a + b*sqrt(3)) / 2**e."""
    return RingValue(a, b, e)


def from_triple(t) -> RingValue:
    a, b, e = t
    return RingValue(a, b, e)


ZERO = RingValue(0)
ONE = RingValue(1)
TWO = RingValue(2)
HALF = RingValue(1, 0, 1)
QUARTER = RingValue(1, 0, 2)
SQRT3 = RingValue(0, 1)
HALF_SQRT3 = RingValue(0, 1, 1)
SQRT3_8 = RingValue(0, 1, 3)
