"""Explicit families of elements with known orders.

Every constructor checks the properties it promises (order, depth, leaf
count) with the strand algorithm before returning, so a wrong diagram fails
loudly instead of producing a plausible-looking element.
"""

from __future__ import annotations

from collections import deque
from math import lcm

from .core import (
    LEAF, EMPTY, GeneratorTable, TreePair, balanced_tree, classify, comb_left,
    comb_right, compose, compose_all, concat, cyclic_offset, depth, evaluate_word,
    from_pairs, inverse, leaves, make_tree_pair, shift,
)
from .order import Finite, order

FAMILIES = ("flip_g", "riffle_t", "torsion_a", "calegari_b", "order_c", "lcm_d", "ben_g")


class ValidationFailed(RuntimeError):
    """A construction did not have the properties it is supposed to have."""


def _require(cond: bool, what: str):
    if not cond:
        raise ValidationFailed(what)


def _finite_order(g: TreePair) -> int:
    o = order(g)
    _require(isinstance(o, Finite), f"expected a torsion element, got {o}")
    return o.order


def _param(name: str, value: int, least: int):
    if not isinstance(value, int) or value < least:
        raise ValueError(f"{name} needs an integer parameter >= {least}, got {value!r}")


def tree_depth(g: TreePair) -> int:
    """Largest leaf depth over both trees of the reduced diagram."""
    r = g.reduced
    return max(depth(r.domain), depth(r.range))


def sends_half_to_zero(g: TreePair) -> bool:
    """True when g maps the point 1/2 of the circle to 0."""
    for u, v in g.reduced.pairs.items():
        if u[:1] == "1" and u.strip("0") == "1":
            return v.strip("0") == ""
    return False


# flips and riffles

def flip_g(n: int) -> TreePair:
    """Right comb to left comb, reversing the leaves: 1^k 0 w -> 0^k 1 w."""
    _param("flip_g", n, 2)
    return make_tree_pair(comb_right(n), range(n, 0, -1), comb_left(n))


def riffle_perm(n: int) -> tuple[int, ...]:
    p = [0] * (2 * n)
    for i in range(1, n + 1):
        p[i - 1] = 2 * i
        p[n + i - 1] = 2 * i - 1
    return tuple(p)


def riffle_t(n: int) -> TreePair:
    """Interleave the leaves of two right combs into one right comb."""
    _param("riffle_t", n, 2)
    return make_tree_pair(concat(comb_right(n), comb_right(n)), riffle_perm(n), comb_right(2 * n))


# torsion in T with many leaves

def torsion_tilde(g: TreePair) -> TreePair:
    """Two more leaves, at least twice the order.

    Needs g in T, torsion, with g(1/2) = 0.  The new element routes the left
    half through one extra leaf before applying a copy of g, so every orbit
    of g is visited in at least two steps per step of g.
    """
    _require(sends_half_to_zero(g), "torsion_tilde needs g(1/2) = 0")
    out = {"0": "10", "100": "11"}
    for u, v in g.reduced.pairs.items():
        src = "11" + u[1:] if u[0] == "0" else "10" + u
        out[src] = "0" + v
    return from_pairs(out)


def torsion_a(n: int) -> TreePair:
    """2n leaves in T and order at least 2^n."""
    _param("torsion_a", n, 1)
    a = make_tree_pair((LEAF, LEAF), (2, 1), (LEAF, LEAF))
    prev = _finite_order(a)
    for k in range(2, n + 1):
        a = inverse(torsion_tilde(a)).reduced
        cur = _finite_order(a)
        _require(a.n == 2 * k, f"a_{k} should have {2 * k} leaves, has {a.n}")
        _require(cur >= 2 * prev, f"order of a_{k} did not double")
        _require(classify(a) == "T", f"a_{k} left T")
        _require(sends_half_to_zero(a), f"a_{k} does not send 1/2 to 0")
        prev = cur
    return a


# torsion in T with large order for its depth

def _tower_columns(s1: int, s2: int) -> tuple[int, int] | None:
    """Return times of the two halves of the base arc in depth_tilde.

    Leaves outside the base and target arcs form two runs of s1 and s2
    leaves; a uniform cyclic shift moves the base through them.  Returns
    None when the runs do not split into two clean columns.
    """
    dom = [("s1", j) for j in range(s1)] + [("x0",), ("x1",)] + [("s2", j) for j in range(s2)]
    rng = [("s2", j) for j in range(s2)] + [("z1",), ("z0",)] + [("s1", j) for j in range(s1)]
    step = dict(zip(dom, rng))
    heights = {}
    for start in (("x0",), ("x1",)):
        x, h = step[start], 1
        while x[0] in ("s1", "s2"):
            x, h = step[x], h + 1
        heights[start[0]] = (x[0], h + 1)
    if heights["x0"][0] != "z0" or heights["x1"][0] != "z1":
        return None
    if heights["x0"][1] + heights["x1"][1] - 4 != s1 + s2:
        return None
    return heights["x0"][1], heights["x1"][1]


def depth_tilde_pair(g: TreePair, s1: int, s2: int) -> TreePair:
    """Tree pair of depth_tilde for explicit run lengths (unchecked)."""
    g = g.reduced
    u0, u1 = g.domain
    # base arc 00 carries V; target arc 10 carries U with its halves swapped
    dom = (((LEAF, LEAF), balanced_tree(s2)), ((u1, u0), balanced_tree(s1)))
    rng = ((g.range, balanced_tree(s2)), ((LEAF, LEAF), balanced_tree(s1)))
    n = leaves(dom)
    c = g.n + s1
    return make_tree_pair(dom, [(i + c) % n + 1 for i in range(n)], rng)


def depth_run_lengths(m: int) -> list[tuple[int, int]]:
    """Run lengths giving two columns of heights m+1 and m-1 (m = 2^depth)."""
    if m == 2:
        return [(1, 2), (2, 1)]
    return [(m - 1, m - 3), (m - 3, m - 1)]


def depth_tilde(g: TreePair) -> TreePair:
    """Depth +2 and order multiplied by at least 2^depth(g).

    Needs g in T, torsion, with g(1/2) = 0.  The circle is cut into a base
    arc carrying V, a target arc carrying U (halves swapped) and two runs of
    balanced trees.  Points of the base climb a column of about 2^d leaves
    before g brings them back, so each step of g costs about 2^d steps.  Of
    the two mirror-image layouts, one has the taller column over the half
    that an orbit visits more often; that one is returned.
    """
    _require(sends_half_to_zero(g), "depth_tilde needs g(1/2) = 0")
    d = tree_depth(g)
    m = 1 << d
    og = _finite_order(g)
    best = None
    for s1, s2 in depth_run_lengths(m):
        cols = _tower_columns(s1, s2)
        _require(cols is not None and min(cols) >= m - 1, f"bad columns for runs {s1}, {s2}")
        h = depth_tilde_pair(g, s1, s2).reduced
        o = order(h)
        if isinstance(o, Finite) and (best is None or o.order > best[0]):
            best = (o.order, h)
    _require(best is not None, "depth_tilde produced no torsion element")
    oh, h = best
    _require(tree_depth(h) == d + 2, f"depth {tree_depth(h)} instead of {d + 2}")
    _require(oh >= m * og, f"order {oh} below {m} * {og}")
    _require(sends_half_to_zero(h), "depth_tilde lost g(1/2) = 0")
    return h


def calegari_b(k: int) -> TreePair:
    """Depth 2k+1 and order at least 2^(k^2+1)."""
    _param("calegari_b", k, 0)
    b = make_tree_pair((LEAF, LEAF), (2, 1), (LEAF, LEAF))
    for j in range(1, k + 1):
        b = depth_tilde(b)
        _require(tree_depth(b) == 2 * j + 1, f"b_{j} has depth {tree_depth(b)}")
        _require(_finite_order(b) >= 1 << (j * j + 1), f"b_{j} order too small")
    return b


# prescribed orders in V

def order_witness_perm(m: int) -> tuple[int, ...]:
    n = m.bit_length()
    bits = [(m >> i) & 1 for i in range(n - 1)]
    ones = [i for i, a in enumerate(bits) if a]
    p = [0] * (n + len(ones))
    p[0] = n
    for i, a in enumerate(bits):
        if not a:
            p[i + 1] = n - i - 1
    for j, i in enumerate(ones, 1):
        p[i + 1] = n + j
        p[n + j - 1] = n - i - 1
    return tuple(p)


def order_witness_c(m: int) -> TreePair:
    """An element of V of order exactly m, with at most 2 log2(m) leaves."""
    _param("order_c", m, 2)
    n = m.bit_length()
    d = bin(m)[3:].count("1")
    tail = comb_right(d) if d else EMPTY
    g = make_tree_pair(concat(comb_left(n), tail), order_witness_perm(m), concat(comb_right(n), tail))
    _require(order(g) == Finite(m), f"order_c({m}) has order {order(g)}")
    return g


def lcm_witness_tree(n: int):
    """Left part of the domain tree: S_1 = *, S_{2k+1} = ((*, S_{2k-1}), *)."""
    t = LEAF
    for _ in range(n):
        t = ((LEAF, t), LEAF)
    return t


def lcm_witness_perm(n: int) -> tuple[int, ...]:
    p = []
    for i in range(1, 3 * n + 3):
        if i <= n:
            p.append(2 * n - 2 * i + 2)
        elif i <= 2 * n + 1:
            p.append(i + n + 1)
        else:
            p.append(2 * i - 4 * n - 3)
    return tuple(p)


def lcm_target(n: int) -> int:
    return lcm(*[(1 << i) + 1 for i in range(n + 1)])


def lcm_witness_d(n: int) -> TreePair:
    """Order lcm(2^0+1, 2^1+1, ..., 2^n+1) with 3n+2 leaves."""
    _param("lcm_d", n, 1)
    tail = comb_right(n + 1)
    g = make_tree_pair(concat(lcm_witness_tree(n), tail), lcm_witness_perm(n),
                       concat(comb_left(2 * n + 1), tail))
    _require(order(g) == Finite(lcm_target(n)), f"lcm_d({n}) has order {order(g)}")
    return g


# the subgroup generated by x0 and y

def ben_g(n: int) -> TreePair:
    """flip_g(n) acting below the prefix 1; order 2^(n-1)."""
    _param("ben_g", n, 2)
    return shift(flip_g(n), "1")


def _x0_candidates():
    a = make_tree_pair(((LEAF, LEAF), LEAF), (1, 2, 3), (LEAF, (LEAF, LEAF)))
    return [a, inverse(a)]


def flip_word(n: int) -> str:
    return f"x0^{3 - n} y " + "x0 y " * (n - 3) + "g2"


def riffle_word(n: int) -> str:
    return "t2 x0^-1 f " + "x0^-2 f " * (n - 3) + f"x0^{2 * n - 5}"


def ben_word(n: int) -> str:
    return f"x0^{-(n - 2)} y " + "x0 y " * (n - 2)


def derive_generators(flip_upto: int = 10, riffle_upto: int = 8) -> GeneratorTable:
    """x0, y, f, g2, t2 such that the flip and riffle recursions hold.

    y and f are solved from the n = 3 cases of the recursions; each of the
    two 3-leaf generators of F is tried as x0.
    """
    g2, g3 = flip_g(2), flip_g(3)
    t2, t3 = riffle_t(2), riffle_t(3)
    y = compose(g3, inverse(g2)).reduced
    for x0 in _x0_candidates():
        f = compose_all([x0, inverse(t2), t3, inverse(x0)]).reduced
        table = GeneratorTable(x0=x0.reduced, y=y, f=f, g2=g2, t2=t2)
        if all(evaluate_word(flip_word(n), table) == flip_g(n) for n in range(4, flip_upto + 1)) \
                and all(evaluate_word(riffle_word(n), table) == riffle_t(n)
                        for n in range(4, riffle_upto + 1)):
            for plain, sub in (("x0", "x₀"), ("g2", "g₂"), ("t2", "t₂")):
                table[sub] = table[plain]
            return table
    raise ValidationFailed("neither orientation of x0 satisfies both recursions")


def digit_length(v: int) -> int:
    """Number of binary digits of v, with 0 counted as one digit."""
    return max(1, v.bit_length())


def ben_schreier_apply(gen: str, v: int, m: int) -> tuple[int, int]:
    """Action on the vertex (v, m): v-th vertex of level m."""
    if v < 0:
        raise ValueError("v must be non-negative")
    if gen in ("x0", "x₀"):
        return v, m + 1
    if gen in ("x0^-1", "x₀⁻¹", "x₀^-1"):
        return v, m - 1
    if gen == "y":
        if m < digit_length(v):
            return v, m
        return v ^ (1 << (m - 1)), m
    raise ValueError(f"unknown generator {gen!r}")


def ben_ball_size(radius: int) -> int:
    """Vertices within distance radius of (0, 0) in the Schreier graph."""
    if radius < 0:
        raise ValueError("radius must be non-negative")
    seen = {(0, 0)}
    frontier = deque([((0, 0), 0)])
    while frontier:
        (v, m), r = frontier.popleft()
        if r == radius:
            continue
        for gen in ("x0", "x0^-1", "y"):
            p = ben_schreier_apply(gen, v, m)
            if p not in seen:
                seen.add(p)
                frontier.append((p, r + 1))
    return len(seen)


def family(name: str, param: int) -> TreePair:
    builders = {"flip_g": flip_g, "riffle_t": riffle_t, "torsion_a": torsion_a,
                "calegari_b": calegari_b, "order_c": order_witness_c,
                "order_witness_c": order_witness_c, "lcm_d": lcm_witness_d,
                "lcm_witness_d": lcm_witness_d, "ben_g": ben_g}
    if name not in builders:
        raise ValueError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
    return builders[name](param)
