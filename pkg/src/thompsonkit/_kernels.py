"""Array kernels for the permutation statistics.

Each kernel is written once in a numba-compatible subset of Python.  When
numba is importable and ``THOMPSONKIT_NO_NUMBA`` is unset (or ``0``), the
kernels are compiled with ``njit``; otherwise the same functions run as
plain Python over numpy arrays.
"""

from __future__ import annotations

import os

import numpy as np

_flag = os.environ.get("THOMPSONKIT_NO_NUMBA", "")
USE_NUMBA = _flag in ("", "0")

if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # numba missing: fall back silently
        USE_NUMBA = False

if USE_NUMBA:
    def kernel(fn):
        return njit(cache=True)(fn)
else:
    def kernel(fn):
        return fn

BACKEND = "numba" if USE_NUMBA else "numpy"


@kernel
def lds_length(values):
    # patience sorting on decreasing piles; tails[k] is the largest possible
    # last value of a decreasing run of length k + 1
    n = values.shape[0]
    tails = np.empty(n, dtype=np.int64)
    size = 0
    for i in range(n):
        v = values[i]
        lo, hi = 0, size
        while lo < hi:
            mid = (lo + hi) // 2
            if tails[mid] > v:
                lo = mid + 1
            else:
                hi = mid
        tails[lo] = v
        if lo == size:
            size += 1
    return size


@kernel
def descent_count(values):
    d = 0
    for i in range(values.shape[0] - 1):
        if values[i] > values[i + 1]:
            d += 1
    return d


@kernel
def first_fit_piles(values):
    """Pile index of each entry: first pile whose top is smaller.

    Tops are kept decreasing from left to right, so the search is binary.
    """
    n = values.shape[0]
    tops = np.empty(n, dtype=np.int64)
    pile = np.empty(n, dtype=np.int64)
    size = 0
    for i in range(n):
        v = values[i]
        lo, hi = 0, size
        while lo < hi:
            mid = (lo + hi) // 2
            if tops[mid] < v:
                hi = mid
            else:
                lo = mid + 1
        tops[lo] = v
        pile[i] = lo
        if lo == size:
            size += 1
    return pile


@kernel
def perm_rank(p, fact):
    # Lehmer code of a 1-based one-line permutation
    n = p.shape[0]
    r = 0
    for i in range(n):
        smaller = 0
        for j in range(i + 1, n):
            if p[j] < p[i]:
                smaller += 1
        r += smaller * fact[n - 1 - i]
    return r


@kernel
def perm_unrank(r, n, fact, out):
    used = np.zeros(n, dtype=np.bool_)
    for i in range(n):
        f = fact[n - 1 - i]
        k = r // f
        r = r % f
        j = 0
        while True:
            if not used[j]:
                if k == 0:
                    break
                k -= 1
            j += 1
        used[j] = True
        out[i] = j + 1


@kernel
def bfs_right_distances(n, gens, fact):
    """Directed distances from the identity, multiplying by gens on the right.

    gens is a (k, n) array of 1-based one-line permutations; entry r of the
    result is the distance to the permutation with Lehmer rank r, or -1.
    """
    total = fact[n]
    dist = np.full(total, -1, dtype=np.int64)
    queue = np.empty(total, dtype=np.int64)
    cur = np.empty(n, dtype=np.int64)
    nxt = np.empty(n, dtype=np.int64)
    dist[0] = 0
    queue[0] = 0
    head, tail = 0, 1
    while head < tail:
        r = queue[head]
        head += 1
        perm_unrank(r, n, fact, cur)
        for g in range(gens.shape[0]):
            for i in range(n):
                nxt[i] = gens[g, cur[i] - 1]
            s = perm_rank(nxt, fact)
            if dist[s] < 0:
                dist[s] = dist[r] + 1
                queue[tail] = s
                tail += 1
    return dist


def factorials(n: int) -> np.ndarray:
    out = np.ones(n + 1, dtype=np.int64)
    for i in range(2, n + 1):
        out[i] = out[i - 1] * i
    return out
