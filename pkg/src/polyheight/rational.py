"""Exact rational vectors, affine heights, and projective points.

Arbitrary-precision integers are plain Python ``int``; rationals are
``fractions.Fraction`` (always reduced, denominator positive).  A rational
vector is a tuple of Fractions.  On top of these carriers this module
provides the two height functions used everywhere else:

* affine height  -- the least natural D such that D*v is an integer vector
  (equivalently the lcm of the reduced denominators), and
* projective height -- the max absolute coordinate of the canonical
  integer representative of a projective rational point.

Everything here is exact; no floats enter at any point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

RatVec = tuple[Fraction, ...]


def rat(x: int | str | Fraction) -> Fraction:
    """Coerce ints, Fractions, and strings like "2/3" or "0.25" to Fraction."""
    return x if isinstance(x, Fraction) else Fraction(x)


def rat_vec(xs: Iterable[int | str | Fraction]) -> RatVec:
    """Build a rational vector; must be non-empty."""
    v = tuple(rat(x) for x in xs)
    if not v:
        raise ValueError("rational vector must have length >= 1")
    return v


def rat_str(x: Fraction) -> str:
    """Serialize a rational as "num/den", omitting "/den" when den == 1."""
    x = rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rat_vec(text: str) -> RatVec:
    """Parse a comma-separated rational vector, e.g. "2/3,1/2"."""
    parts = [p.strip() for p in text.split(",")]
    if not parts or any(not p for p in parts):
        raise ValueError(f"malformed rational vector: {text!r}")
    return rat_vec(parts)


def affine_height(v: Sequence[Fraction | int | str]) -> int:
    """Least natural D with v = (r_1/D, ..., r_k/D) and gcd(r_1,...,r_k,D) = 1.

    Equals the lcm of the reduced denominators; an integer vector (including
    the zero vector) has height 1.
    """
    d = 1
    for x in v:
        d = lcm(d, rat(x).denominator)
    return d


@dataclass(frozen=True, slots=True)
class ProjPoint:
    """Canonical integer coordinates of a projective rational point.

    Invariants: not all zero, gcd of coordinates is 1, and the first nonzero
    coordinate is positive (a fixed sign makes equality testable; the
    coordinates are otherwise only defined up to sign).
    """

    coords: tuple[int, ...]

    @staticmethod
    def of(coords: Iterable[int]) -> "ProjPoint":
        cs = tuple(int(c) for c in coords)
        if not cs:
            raise ValueError("projective point needs at least one coordinate")
        g = 0
        for c in cs:
            g = gcd(g, c)
        if g == 0:
            raise ValueError("projective point cannot be all zero")
        cs = tuple(c // g for c in cs)
        for c in cs:
            if c != 0:
                if c < 0:
                    cs = tuple(-x for x in cs)
                break
        return ProjPoint(cs)

    def height(self) -> int:
        return max(abs(c) for c in self.coords)

    def __str__(self) -> str:
        return ":".join(str(c) for c in self.coords)

    @staticmethod
    def parse(text: str) -> "ProjPoint":
        return ProjPoint.of(int(p) for p in text.split(":"))


def to_projective(v: Sequence[Fraction | int | str]) -> ProjPoint:
    """Canonical integer coordinates of (1 : v_1 : ... : v_k)."""
    vv = rat_vec(v)
    d = affine_height(vv)
    return ProjPoint.of((d, *(int(x * d) for x in vv)))


def projective_height(p: ProjPoint) -> int:
    """Max absolute coordinate of the canonical representative."""
    return p.height()
