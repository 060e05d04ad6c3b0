"""Permutation statistics behind the word-length estimates for V.

Permutations are 1-based one-line tuples acting on the right, as in
:mod:`thompsonkit.core`: ``perm_mul(p, q)`` applies p first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels as K
from .core import TreePair, perm_check, perm_identity, perm_inv, perm_mul


def _array(sigma: Sequence[int]) -> np.ndarray:
    return np.asarray(perm_check(sigma), dtype=np.int64)


def lds(sigma: Sequence[int]) -> int:
    """Length of the longest decreasing subsequence."""
    if len(sigma) == 0:
        return 0
    return int(K.lds_length(_array(sigma)))


def rising_number(sigma: Sequence[int]) -> int:
    """Number of descents plus one."""
    if len(sigma) == 0:
        return 1
    return int(K.descent_count(_array(sigma))) + 1


def shuffle_norm(sigma: Sequence[int]) -> int:
    """ceil(log2 r(sigma)): fewest riffle shuffles whose product is sigma."""
    return (rising_number(sigma) - 1).bit_length()


def is_riffle(sigma: Sequence[int]) -> bool:
    return rising_number(sigma) <= 2


def product(perms: Sequence[Sequence[int]], n: int) -> tuple[int, ...]:
    """perms[0] * perms[1] * ... under the right action (perms[0] acts first)."""
    acc = perm_identity(n)
    for p in perms:
        acc = perm_mul(acc, p)
    return acc


@dataclass(frozen=True)
class RiffleFactorization:
    """Riffle shuffles listed so that the last one acts first.

    ``compose()`` multiplies them right to left, i.e. ``factors[-1]`` is
    applied first and ``factors[0]`` last.
    """
    factors: tuple[tuple[int, ...], ...]
    n: int

    def compose(self) -> tuple[int, ...]:
        return product(self.factors[::-1], self.n)

    def __len__(self):
        return len(self.factors)


def _ascending_runs(sigma: Sequence[int]) -> list[int]:
    """Run index of every position."""
    run, out = 0, []
    for i, v in enumerate(sigma):
        if i and sigma[i - 1] > v:
            run += 1
        out.append(run)
    return out


def _halve_runs(sigma: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """sigma = tau * rho with rho a riffle and tau having half the runs.

    Runs with even index form one class and odd ones the other; tau sends
    each position to the rank of its value inside its class (the odd class
    ranked after the even one), so consecutive runs pair up in tau.
    """
    runs = _ascending_runs(sigma)
    cls = [r % 2 for r in runs]
    m = cls.count(0)
    order0 = sorted((v, i) for i, v in enumerate(sigma) if cls[i] == 0)
    order1 = sorted((v, i) for i, v in enumerate(sigma) if cls[i] == 1)
    tau = [0] * len(sigma)
    for k, (_, i) in enumerate(order0):
        tau[i] = k + 1
    for k, (_, i) in enumerate(order1):
        tau[i] = m + k + 1
    tau = tuple(tau)
    rho = perm_mul(perm_inv(tau), sigma)
    return tau, rho


def riffle_factorization(sigma: Sequence[int]) -> RiffleFactorization:
    sigma = perm_check(sigma)
    n = len(sigma)
    factors = []
    cur = sigma
    while rising_number(cur) > 1:
        cur, rho = _halve_runs(cur)
        factors.append(rho)
    return RiffleFactorization(tuple(factors), n)


@dataclass(frozen=True)
class LdsDecomposition:
    """sigma = alpha^-1 * beta with both factors having few ascending runs."""
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    parts: tuple[tuple[int, ...], ...]

    def compose(self) -> tuple[int, ...]:
        return perm_mul(perm_inv(self.alpha), self.beta)


def increasing_partition(sigma: Sequence[int]) -> list[list[int]]:
    """First-fit split of positions (1-based) into increasing subsequences.

    Uses exactly lds(sigma) parts.
    """
    sigma = perm_check(sigma)
    if not sigma:
        return []
    piles = K.first_fit_piles(np.asarray(sigma, dtype=np.int64))
    parts: list[list[int]] = [[] for _ in range(int(piles.max()) + 1)]
    for i, p in enumerate(piles):
        parts[int(p)].append(i + 1)
    return parts


def lds_decomposition(sigma: Sequence[int]) -> LdsDecomposition:
    sigma = perm_check(sigma)
    parts = increasing_partition(sigma)
    # alpha lists the positions part by part, so it has one run per part
    alpha = tuple(itertools.chain.from_iterable(parts))
    beta = tuple(sigma[a - 1] for a in alpha)
    return LdsDecomposition(alpha, beta, tuple(tuple(p) for p in parts))


def length_upper_bound(g: TreePair) -> dict:
    """Leaves n, LDS L of the reduced permutation, and n * (1 + ceil(log2 L)).

    The bound holds up to a multiplicative constant that is not computed.
    """
    r = g.reduced
    n = r.n
    L = lds(r.perm)
    return {"leaves": n, "lds": L, "bound": n * (1 + (L - 1).bit_length())}


def riffles(n: int) -> list[tuple[int, ...]]:
    """Every permutation of n with at most one descent."""
    out = [perm_identity(n)]
    for mask in range(1, (1 << n) - 1):
        left = [i + 1 for i in range(n) if mask >> i & 1]
        right = [i + 1 for i in range(n) if not mask >> i & 1]
        cand = tuple(left + right)
        if rising_number(cand) == 2:
            out.append(cand)
    return sorted(set(out))


def riffle_distances(n: int) -> dict[tuple[int, ...], int]:
    """Directed distance from the identity to every sigma in Sym(n).

    Breadth-first search in the Cayley graph whose edges multiply on the
    right by a riffle shuffle.
    """
    if n < 1:
        raise ValueError("n must be positive")
    fact = K.factorials(n)
    gens = np.asarray(riffles(n), dtype=np.int64).reshape(-1, n)
    dist = K.bfs_right_distances(n, gens, fact)
    out = {}
    buf = np.empty(n, dtype=np.int64)
    for r in range(int(fact[n])):
        K.perm_unrank(r, n, fact, buf)
        out[tuple(int(x) for x in buf)] = int(dist[r])
    return out


def table_row(g: TreePair) -> dict:
    """n, r, LDS, shuffle norm and length bound for CLI reports."""
    r = g.reduced
    b = length_upper_bound(r)
    return {"leaves": b["leaves"], "rising": rising_number(r.perm), "lds": b["lds"],
            "shuffle_norm": shuffle_norm(r.perm), "bound": b["bound"]}
