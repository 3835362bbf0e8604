"""External angles as exact elements of Q/Z."""
from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import gcd


class AngleError(ValueError):
    pass


@total_ordering
class Angle:
    """An exact angle ``num/den`` in [0, 1), always stored reduced.

    Zero is ``0/1``. Ordering is by the rational value, which is what the
    circular-interval tests in :mod:`mating_forge.laminations` rely on.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: int, den: int = 1):
        if den == 0:
            raise AngleError("invalid denominator 0")
        if den < 0:
            num, den = -num, -den
        num %= den
        g = gcd(num, den)
        object.__setattr__(self, "num", num // g)
        object.__setattr__(self, "den", den // g)

    def __setattr__(self, name, value):
        raise AttributeError("Angle is immutable")

    @classmethod
    def parse(cls, text: str) -> "Angle":
        text = text.strip()
        if "/" in text:
            n, d = text.split("/", 1)
            return cls(int(n), int(d))
        return cls(int(text), 1)

    @classmethod
    def from_fraction(cls, q: Fraction) -> "Angle":
        return cls(q.numerator, q.denominator)

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __float__(self) -> float:
        return self.num / self.den

    def __eq__(self, other):
        if isinstance(other, Angle):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, Angle):
            return self.num * other.den < other.num * self.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"Angle({self.num}/{self.den})"

    def __str__(self):
        return f"{self.num}/{self.den}"

    def __reduce__(self):
        return (Angle, (self.num, self.den))


def angle_new(num: int, den: int) -> Angle:
    return Angle(num, den)


def times_d(a: Angle, d: int = 2) -> Angle:
    return Angle(a.num * d, a.den)


def conjugate(a: Angle) -> Angle:
    return Angle(-a.num, a.den)


def orbit_type(a: Angle, d: int = 2) -> tuple[int, int]:
    """Return ``(preperiod, period)`` of ``a`` under ``x -> d*x mod 1``.

    Works on the numerator modulo the denominator, so the cost is bounded by
    the orbit length rather than by the size of the integers involved.
    """
    if d < 2:
        raise AngleError("degree must be at least 2")
    seen: dict[int, int] = {}
    n, den = a.num, a.den
    k = 0
    while n not in seen:
        seen[n] = k
        n = (n * d) % den
        k += 1
    first = seen[n]
    return first, k - first


def orbit(a: Angle, d: int = 2) -> list[Angle]:
    """Distinct points of the forward orbit, in order of appearance."""
    pre, per = orbit_type(a, d)
    out = [a]
    for _ in range(pre + per - 1):
        out.append(times_d(out[-1], d))
    return out


def is_periodic(a: Angle, d: int = 2) -> bool:
    return orbit_type(a, d)[0] == 0


def preimages(a: Angle, d: int = 2) -> list[Angle]:
    return [Angle(a.num + k * a.den, a.den * d) for k in range(d)]


def in_open_arc(x: Angle, lo: Angle, hi: Angle) -> bool:
    """True when ``x`` lies strictly inside the counterclockwise arc lo -> hi."""
    if lo == hi:
        return x != lo
    if lo < hi:
        return lo < x < hi
    return x > lo or x < hi


def in_closed_arc(x: Angle, lo: Angle, hi: Angle) -> bool:
    return x == lo or x == hi or in_open_arc(x, lo, hi)


def angles_with_denominator(den: int) -> list[Angle]:
    """All reduced angles whose denominator divides ``den``."""
    return [Angle(k, den) for k in range(den)]
