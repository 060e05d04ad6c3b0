"""Torsion and order of elements of V by strand-diagram reduction.

The tree pair is wrapped onto a cylinder: the domain tree becomes a tree of
splits, the range tree a tree of merges, leaf strands follow the permutation
and one extra edge (the seam) closes the range root back onto the domain
root.  The seam carries label 1, every other edge 0.  Each reduction step
cancels a merge feeding a split and adds labels along the strands it fuses.  When no
carets are left the picture is a union of labeled circles and the order is
the lcm of the labels.

Labels are tuples so the rotation module can carry a second colour through
exactly the same rewriting.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass, field
from math import gcd

from .core import TreePair, compose, identity, internal_addresses, is_identity, leaf_addresses

log = logging.getLogger(__name__)

SPLIT = "split"
MERGE = "merge"


class NoPairFound(Exception):
    """No merge feeds a split."""


@dataclass(frozen=True)
class Finite:
    order: int

    def __str__(self):
        return str(self.order)


@dataclass(frozen=True)
class Infinite:
    orbit_lengths: tuple[int, ...] = ()

    def __str__(self):
        return "infinite"


@dataclass(frozen=True)
class Unknown:
    cap: int

    def __str__(self):
        return f"unknown (no identity power up to {self.cap})"


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


@dataclass
class StrandGraph:
    """Merge/split graph with labeled edges and port-level incidence.

    ``ins[v]`` and ``outs[v]`` list edge ids by port: a split has one input
    and outputs (left, right); a merge has inputs (left, right) and one
    output.  ``src[e]``/``dst[e]`` are ``(vertex, port)``.  Closed loops with
    no vertex left on them are kept in ``circles``.
    """

    kind: dict[int, str] = field(default_factory=dict)
    ins: dict[int, list[int]] = field(default_factory=dict)
    outs: dict[int, list[int]] = field(default_factory=dict)
    src: dict[int, tuple[int, int]] = field(default_factory=dict)
    dst: dict[int, tuple[int, int]] = field(default_factory=dict)
    label: dict[int, tuple[int, ...]] = field(default_factory=dict)
    circles: list[tuple[int, ...]] = field(default_factory=list)
    width: int = 1
    steps: int = 0
    _next_edge: int = 0

    def copy(self) -> "StrandGraph":
        return StrandGraph(dict(self.kind), {v: list(e) for v, e in self.ins.items()},
                           {v: list(e) for v, e in self.outs.items()}, dict(self.src),
                           dict(self.dst), dict(self.label), list(self.circles),
                           self.width, self.steps, self._next_edge)

    def add_vertex(self, v: int, kind: str):
        self.kind[v] = kind
        nin, nout = (1, 2) if kind == SPLIT else (2, 1)
        self.ins[v] = [None] * nin
        self.outs[v] = [None] * nout

    def add_edge(self, s: tuple[int, int], d: tuple[int, int], lab) -> int:
        e = self._next_edge
        self._next_edge += 1
        self.src[e], self.dst[e], self.label[e] = s, d, tuple(lab)
        self.outs[s[0]][s[1]] = e
        self.ins[d[0]][d[1]] = e
        return e

    def _drop_edge(self, e: int):
        del self.src[e], self.dst[e], self.label[e]

    @property
    def carets(self) -> int:
        return len(self.kind)

    def check(self):
        for v, k in self.kind.items():
            assert len(self.ins[v]) == (1 if k == SPLIT else 2)
            assert len(self.outs[v]) == (2 if k == SPLIT else 1)
            for p, e in enumerate(self.ins[v]):
                assert self.dst[e] == (v, p)
            for p, e in enumerate(self.outs[v]):
                assert self.src[e] == (v, p)
        for e in self.label:
            assert min(self.label[e]) >= 0

    def merge_split_pairs(self) -> list[int]:
        """Merges whose output edge enters a split."""
        return sorted(v for v, k in self.kind.items()
                      if k == MERGE and self.kind[self.dst[self.outs[v][0]][0]] == SPLIT)

    def label_sum(self) -> tuple[int, ...]:
        tot = (0,) * self.width
        for lab in list(self.label.values()) + self.circles:
            tot = _add(tot, lab)
        return tot

    def components(self) -> int:
        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for v in self.kind:
            find(v)
        for e in self.src:
            a, b = find(self.src[e][0]), find(self.dst[e][0])
            parent[a] = b
        return len({find(v) for v in self.kind}) + len(self.circles)

    # merge-split cancellation

    def cancel(self, m: int):
        """Cancel merge m against the split it feeds, in place."""
        e = self.outs[m][0]
        s = self.dst[e][0]
        if self.kind.get(m) != MERGE or self.kind.get(s) != SPLIT:
            raise NoPairFound(m)
        y = self.label[e]
        a = self.ins[m]
        b = self.outs[s]
        touched = set(a) | set(b) | {e}
        used = set()
        new_edges = []
        for i in (0, 1):
            if self.src[a[i]][0] == s:
                continue            # this input is fed back from the split
            lab = _add(self.label[a[i]], y)
            j = i
            while True:
                out_e = b[j]
                used.add(out_e)
                lab = _add(lab, self.label[out_e])
                tgt = self.dst[out_e]
                if tgt[0] != m:
                    break
                lab = _add(lab, y)
                j = tgt[1]
            new_edges.append((self.src[a[i]], self.dst[out_e], lab))
        # outputs of the split looping straight back into the merge
        for j in (0, 1):
            if b[j] in used:
                continue
            lab = (0,) * self.width
            k = j
            while b[k] not in used:
                used.add(b[k])
                lab = _add(lab, _add(self.label[b[k]], y))
                k = self.dst[b[k]][1]
            self.circles.append(lab)
        for x in touched:
            self._drop_edge(x)
        for v in (m, s):
            del self.kind[v], self.ins[v], self.outs[v]
        for sp, dp, lab in new_edges:
            self.add_edge(sp, dp, lab)
        self.steps += 1
        return [sp[0] for sp, _, _ in new_edges]


def to_cylinder(g: TreePair, blue=None) -> StrandGraph:
    """Closed strand diagram of g with the seam labeled 1.

    ``blue`` optionally lists the domain leaf indices (1-based) whose strand
    starts with a second label 1; the graph then carries (red, blue) pairs.
    """
    width = 1 if blue is None else 2
    blue = set(blue or ())
    G = StrandGraph(width=width)
    zero = (0,) * width
    if g.n == 1:
        G.circles.append((1,) + (0,) * (width - 1))
        return G
    dom_int = internal_addresses(g.domain)
    rng_int = internal_addresses(g.range)
    sid = {a: i for i, a in enumerate(dom_int)}
    mid = {a: len(dom_int) + i for i, a in enumerate(rng_int)}
    for a in dom_int:
        G.add_vertex(sid[a], SPLIT)
    for a in rng_int:
        G.add_vertex(mid[a], MERGE)
    # split tree edges
    dom_leaves = leaf_addresses(g.domain)
    rng_leaves = leaf_addresses(g.range)
    dom_leaf_set = set(dom_leaves)
    for a in dom_int:
        for bit in (0, 1):
            c = a + str(bit)
            if c not in dom_leaf_set:
                G.add_edge((sid[a], bit), (sid[c], 0), zero)
    # merge tree edges
    rng_leaf_set = set(rng_leaves)
    for a in rng_int:
        for bit in (0, 1):
            c = a + str(bit)
            if c not in rng_leaf_set:
                G.add_edge((mid[c], 0), (mid[a], bit), zero)
    # leaf strands
    for i, u in enumerate(dom_leaves):
        v = rng_leaves[g.perm[i] - 1]
        lab = zero if width == 1 else (0, 1 if (i + 1) in blue else 0)
        G.add_edge((sid[u[:-1]], int(u[-1])), (mid[v[:-1]], int(v[-1])), lab)
    # seam
    G.add_edge((mid[""], 0), (sid[""], 0), (1,) + (0,) * (width - 1))
    return G


def rule1_step(G: StrandGraph) -> StrandGraph:
    """One cancellation on the leftmost merge-split pair."""
    pairs = G.merge_split_pairs()
    if not pairs:
        raise NoPairFound("no merge feeds a split")
    H = G.copy()
    H.cancel(pairs[0])
    return H


def reduce_strands(G: StrandGraph, in_place: bool = False) -> StrandGraph:
    H = G if in_place else G.copy()
    heap = H.merge_split_pairs()
    heapq.heapify(heap)
    while heap:
        m = heapq.heappop(heap)
        if H.kind.get(m) != MERGE:
            continue
        t = H.dst[H.outs[m][0]][0]
        if H.kind[t] != SPLIT:
            continue
        for v in H.cancel(m):
            if H.kind.get(v) == MERGE:
                heapq.heappush(heap, v)
    return H


def lcm_all(values) -> int:
    """Balanced divide-and-conquer lcm."""
    vals = [int(v) for v in values]
    if not vals:
        return 1
    while len(vals) > 1:
        nxt = []
        for i in range(0, len(vals) - 1, 2):
            a, b = vals[i], vals[i + 1]
            nxt.append(a // gcd(a, b) * b)
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
    return vals[0]


def attractor_cycles(G: StrandGraph) -> list[tuple[int, ...]]:
    """Label sums of the directed merge cycles of a fully reduced graph."""
    seen = set()
    out = []
    for v0 in sorted(G.kind):
        if G.kind[v0] != MERGE or v0 in seen:
            continue
        path, pos = [], {}
        v = v0
        while v not in seen and G.kind.get(v) == MERGE and v not in pos:
            pos[v] = len(path)
            path.append(v)
            v = G.dst[G.outs[v][0]][0]
        if v in pos:
            lab = (0,) * G.width
            for w in path[pos[v]:]:
                lab = _add(lab, G.label[G.outs[w][0]])
            out.append(lab)
        seen.update(path)
    return out


def order_from_graph(G: StrandGraph):
    if G.carets == 0:
        return Finite(lcm_all(c[0] for c in G.circles))
    lengths = [c[0] for c in G.circles] + [c[0] for c in attractor_cycles(G)]
    return Infinite(tuple(sorted(lengths)))


def order(g: TreePair):
    """Finite(order) for torsion elements, else Infinite(orbit lengths).

    The orbit lengths listed for an infinite-order element are the labels of
    periodic pieces and of attracting cycles.
    """
    if is_identity(g):
        return Finite(1)
    G = reduce_strands(to_cylinder(g.reduced), in_place=True)
    return order_from_graph(G)


def is_torsion(g: TreePair) -> bool:
    return isinstance(order(g), Finite)


def _nested(pairs) -> bool:
    for u, v in pairs.items():
        if u != v and (v.startswith(u) or u.startswith(v)):
            return True
    return False


def order_oracle(g: TreePair, cap: int, detect_nesting: bool = True):
    """Smallest k <= cap with g^k = id by repeated composition.

    With ``detect_nesting`` the search stops as soon as some power maps a
    leaf cylinder strictly into itself (or onto a strict superset): such an
    element has no identity power at all, so the answer is the same
    ``Unknown(cap)`` the full search would return, only sooner.
    """
    if cap < 1:
        return Unknown(cap)
    h = g.reduced
    cur = h
    for k in range(1, cap + 1):
        if is_identity(cur):
            return Finite(k)
        if detect_nesting and _nested(cur.pairs):
            return Unknown(cap)
        if k < cap:
            cur = compose(cur, h)
    return Unknown(cap)


# exports

def to_dict(G: StrandGraph) -> dict:
    return {
        "vertices": [{"id": v, "kind": G.kind[v]} for v in sorted(G.kind)],
        "edges": [{"id": e, "src": list(G.src[e]), "dst": list(G.dst[e]),
                   "label": list(G.label[e])} for e in sorted(G.label)],
        "circles": [list(c) for c in G.circles],
    }


def _fmt_label(lab) -> str:
    return ",".join(str(x) for x in lab)


def export_dot(G: StrandGraph) -> str:
    lines = ["digraph strands {"]
    for v in sorted(G.kind):
        shape = "triangle" if G.kind[v] == SPLIT else "invtriangle"
        lines.append(f'  v{v} [label="{G.kind[v]}", shape={shape}];')
    for e in sorted(G.label):
        s, d = G.src[e][0], G.dst[e][0]
        lines.append(f'  v{s} -> v{d} [label="{_fmt_label(G.label[e])}"];')
    for i, c in enumerate(G.circles):
        lines.append(f'  c{i} [label="", shape=point];')
        lines.append(f'  c{i} -> c{i} [label="{_fmt_label(c)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
