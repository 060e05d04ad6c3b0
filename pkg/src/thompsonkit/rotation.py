"""Rotation numbers of elements of Thompson's group T.

The strand reduction of the order module is run with a second (blue) label.
The seam carries red 1; a leaf strand carries blue 1 when it wraps around the
circle, i.e. when its range leaf comes before its domain leaf.  Along any
cycle of the reduced picture, blue sum / red sum is the rotation number.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd

from .core import TreePair, cyclic_offset, leaf_addresses, power
from .order import Unknown, attractor_cycles, reduce_strands, to_cylinder


class NotInT(ValueError):
    """The reduced permutation is not a cyclic shift."""


@dataclass(frozen=True)
class RationalMod1:
    num: int
    den: int

    def __post_init__(self):
        if self.den <= 0:
            raise ValueError("denominator must be positive")
        a = self.num % self.den
        g = gcd(a, self.den)
        object.__setattr__(self, "num", a // g)
        object.__setattr__(self, "den", self.den // g)

    @classmethod
    def of(cls, x: Fraction) -> "RationalMod1":
        return cls(x.numerator, x.denominator)

    def __mul__(self, k: int) -> "RationalMod1":
        return RationalMod1(self.num * k, self.den)

    __rmul__ = __mul__

    def __str__(self):
        return f"{self.num}/{self.den}"


def _check_t(g: TreePair) -> int:
    c = cyclic_offset(g.perm)
    if c is None:
        raise NotInT(f"permutation {list(g.perm)} is not a cyclic shift")
    return c


def wrapping_leaves(g: TreePair) -> list[int]:
    """1-based domain leaves whose range leaf index is smaller."""
    return [i + 1 for i, x in enumerate(g.perm) if x < i + 1]


def bilabeled_cylinder(g: TreePair):
    _check_t(g)
    return to_cylinder(g, blue=wrapping_leaves(g))


def rotation_number(g: TreePair) -> RationalMod1:
    h = g.reduced
    _check_t(h)
    if h.n == 1:
        return RationalMod1(0, 1)
    G = reduce_strands(bilabeled_cylinder(h), in_place=True)
    cycles = G.circles if G.carets == 0 else attractor_cycles(G)
    red, blue = cycles[0]
    return RationalMod1(blue, red)


# independent check through the circle action

def _pieces(g: TreePair):
    """Affine pieces (a, b, slope, offset) of the canonical lift on [0, 1)."""
    dom = leaf_addresses(g.domain)
    rng = leaf_addresses(g.range)
    out = []
    for i, u in enumerate(dom):
        j = g.perm[i] - 1
        v = rng[j]
        a = Fraction(int(u, 2) if u else 0, 1 << len(u))
        c = Fraction(int(v, 2) if v else 0, 1 << len(v))
        slope = Fraction(1 << len(u), 1 << len(v))
        wrap = 1 if j < i else 0
        out.append((a, a + Fraction(1, 1 << len(u)), slope, c + wrap - slope * a))
    return out


def lift(g: TreePair, x: Fraction) -> Fraction:
    """Canonical lift of g (value at 0 in [0, 1)) evaluated at real x."""
    base = floor(x)
    t = x - base
    for a, b, s, off in _pieces(g):
        if a <= t < b:
            return s * t + off + base
    raise AssertionError("point outside pieces")


def circle_fixed_points(g: TreePair):
    """(x, j) with lift(x) = x + j for each piece that has a fixed point."""
    found = []
    for a, b, s, off in _pieces(g):
        fa = (s - 1) * a + off
        fb = (s - 1) * b + off
        if s == 1:
            if fa.denominator == 1:
                found.append((a, int(fa)))
            continue
        lo, hi = min(fa, fb), max(fa, fb)
        j = -(-lo.numerator // lo.denominator)
        while j <= hi:
            x = (j - off) / (s - 1)
            if a <= x < b:
                found.append((x, j))
            j += 1
    return found


def rotation_oracle(g: TreePair, k_max: int):
    """Smallest k with a periodic point of period k gives rot = a/k."""
    _check_t(g.reduced)
    for k in range(1, k_max + 1):
        h = power(g, k)
        fixed = circle_fixed_points(h)
        if not fixed:
            continue
        x, _ = fixed[0]
        y = x
        for _ in range(k):
            y = lift(g, y)
        a = y - x
        assert a.denominator == 1
        return RationalMod1(int(a), k)
    return Unknown(k_max)
