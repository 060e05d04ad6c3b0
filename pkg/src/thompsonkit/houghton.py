"""Landau's function and exact arithmetic in Houghton's group H2.

H2 is the group of bijections of the integers that are translations outside
a finite set.  An element is stored as ``x -> fperm(x) + shift`` with
``fperm`` finitely supported; products act on the right, ``g * h`` applies
g first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Iterable, Mapping, Sequence

from .core import parse_word
from .order import Finite, Infinite


# Landau's function

def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, int(n ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(range(p * p, n + 1, p)))
    return [p for p in range(n + 1) if sieve[p]]


def _landau_dp(n: int, primes: Iterable[int]) -> int:
    # best[j]: largest lcm of prime powers (distinct primes) with sum <= j
    best = [1] * (n + 1)
    for p in primes:
        if p > n:
            continue
        new = best[:]
        q = p
        while q <= n:
            for j in range(q, n + 1):
                cand = q * best[j - q]
                if cand > new[j]:
                    new[j] = cand
            q *= p
        best = new
    return best[n]


def landau(n: int) -> int:
    """Largest order of a permutation of n points."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return _landau_dp(n, primes_upto(n))


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def landau_restricted(n: int, primes: Iterable[int]) -> int:
    """Largest order of a permutation of n points whose order only has the given prime factors."""
    if n < 0:
        raise ValueError("n must be non-negative")
    ps = sorted(set(primes))
    bad = [p for p in ps if not _is_prime(p)]
    if bad:
        raise ValueError(f"not prime: {bad}")
    return _landau_dp(n, ps)


def partitions(n: int, largest: int | None = None):
    """Partitions of n into parts >= 2 (the 1-cycles do not change the lcm)."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 1, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest
    # everything left is fixed points
    yield ()


def landau_oracle(n: int, primes: Iterable[int] | None = None) -> int:
    """Brute-force maximum of lcm over partitions of n."""
    allowed = None if primes is None else set(primes)
    best = 1
    for part in partitions(n):
        L = lcm(*part) if part else 1
        if allowed is not None and any(p not in allowed for p in _prime_factors(L)):
            continue
        best = max(best, L)
    return best


def _prime_factors(m: int) -> set[int]:
    out, d = set(), 2
    while d * d <= m:
        while m % d == 0:
            out.add(d)
            m //= d
        d += 1
    if m > 1:
        out.add(m)
    return out


# Houghton's group H2

@dataclass(frozen=True)
class HoughtonElement:
    fperm: Mapping[int, int] = field(default_factory=dict)
    shift: int = 0

    def __post_init__(self):
        m = {int(x): int(y) for x, y in dict(self.fperm).items() if x != y}
        if sorted(m) != sorted(m.values()):
            raise ValueError("fperm is not a bijection of its support")
        object.__setattr__(self, "fperm", m)

    def __call__(self, x: int) -> int:
        return self.fperm.get(x, x) + self.shift

    def __mul__(self, other: "HoughtonElement") -> "HoughtonElement":
        return hmul(self, other)

    def __eq__(self, other):
        if not isinstance(other, HoughtonElement):
            return NotImplemented
        return self.shift == other.shift and self.fperm == other.fperm

    def __hash__(self):
        return hash((self.shift, tuple(sorted(self.fperm.items()))))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles of fperm (meaningful when shift = 0)."""
        seen, out = set(), []
        for x in sorted(self.fperm):
            if x in seen:
                continue
            cyc = [x]
            seen.add(x)
            y = self.fperm[x]
            while y != x:
                cyc.append(y)
                seen.add(y)
                y = self.fperm[y]
            out.append(tuple(cyc))
        return out

    def __str__(self):
        cyc = "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles()) or "()"
        return f"{cyc} shift {self.shift}"


def hmul(g: HoughtonElement, h: HoughtonElement) -> HoughtonElement:
    """g then h."""
    s = g.shift
    pts = set(g.fperm) | {y - s for y in h.fperm}
    m = {}
    for x in pts:
        y = h(g(x)) - s - h.shift
        if y != x:
            m[x] = y
    return HoughtonElement(m, s + h.shift)


def hinverse(g: HoughtonElement) -> HoughtonElement:
    # g(x) = f(x) + s, so g^-1(y) = f^-1(y - s)
    s = g.shift
    inv = {y: x for x, y in g.fperm.items()}
    m = {y + s: x + s for y, x in inv.items()}
    return HoughtonElement(m, -s)


def hidentity() -> HoughtonElement:
    return HoughtonElement({}, 0)


def transposition(a: int, b: int) -> HoughtonElement:
    return HoughtonElement({a: b, b: a}, 0)


def translation(k: int = 1) -> HoughtonElement:
    return HoughtonElement({}, k)


def from_cycles(cycles: Iterable[Sequence[int]], shift: int = 0) -> HoughtonElement:
    m = {}
    for c in cycles:
        for i, x in enumerate(c):
            m[x] = c[(i + 1) % len(c)]
    return HoughtonElement(m, shift)


def _finite_orbits(g: HoughtonElement) -> list[int]:
    """Lengths of the finite orbits of an element with non-zero shift."""
    s = g.shift
    lo, hi = min(g.fperm, default=0), max(g.fperm, default=0)
    out, seen = [], set()
    for x0 in sorted(g.fperm):
        if x0 in seen:
            continue
        orbit, x = [x0], g(x0)
        # outside the support the orbit drifts by s and never comes back
        while x != x0 and not (s > 0 and x > hi or s < 0 and x < lo):
            orbit.append(x)
            x = g(x)
        seen.update(orbit)
        if x == x0:
            out.append(len(orbit))
    return sorted(out)


def horder(g: HoughtonElement):
    """Finite(lcm of cycle lengths) when the shift vanishes, else Infinite."""
    if g.shift:
        return Infinite(tuple(_finite_orbits(g)))
    return Finite(lcm(*[len(c) for c in g.cycles()]) if g.fperm else 1)


GENERATORS = {
    "a": transposition(0, 1),
    "a^-1": transposition(0, 1),
    "t": translation(1),
    "t^-1": translation(-1),
}


def parse_hword(text: str) -> list[str]:
    """Letters of a word such as ``t a t^-3``; ``(ta)^k`` groups are allowed.

    A run of letters without spaces such as ``ta`` is a product, and an
    exponent after it applies to the whole run.
    """
    out = []
    for x in parse_word(text):
        if x in GENERATORS:
            out.append(x)
            continue
        inv = x.endswith("^-1")
        base = x[:-3] if inv else x
        if not base or base.strip("at"):
            raise ValueError(f"unknown Houghton generator {x!r}")
        run = list(base)
        out.extend([c + "^-1" if c == "t" else c for c in reversed(run)] if inv else run)
    return out


def evaluate_hword(word: Sequence[str] | str) -> HoughtonElement:
    if isinstance(word, str):
        word = parse_hword(word)
    acc = hidentity()
    for x in word:
        if x not in GENERATORS:
            raise ValueError(f"unknown Houghton generator {x!r}")
        acc = hmul(acc, GENERATORS[x])
    return acc


def witness_word(*parts: int) -> list[str]:
    """(ta)^(m1-1) t (ta)^(m2-1) t ... (ta)^(mk-1) t t^-(m1+...+mk).

    Every block is closed by a t, so the total shift is zero.  Acting on the
    right, block i becomes the cycle x -> x+1 on the i-th run of parts[i]
    integers counted leftwards from 0.
    """
    if not parts or any(int(m) < 1 for m in parts):
        raise ValueError("cycle lengths must be positive")
    word: list[str] = []
    for m in parts:
        word.extend(["t", "a"] * (m - 1))
        word.append("t")
    word.extend(["t^-1"] * sum(parts))
    return word


def witness_element(*parts: int) -> HoughtonElement:
    return evaluate_hword(witness_word(*parts))
