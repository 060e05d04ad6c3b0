"""Context-free grammars, finite automata and unary periods.

The pipeline here recovers the order of a group element from an automaton
for the co-word problem: intersect with {w}*, forget the letters, and read
off the period of the resulting unary language.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .order import Finite, Infinite

EPSILON_TOKENS = ("ε", "eps", "''")


class GrammarError(ValueError):
    pass


@dataclass(frozen=True)
class Cfg:
    variables: tuple[str, ...]
    alphabet: tuple[str, ...]
    rules: tuple[tuple[str, tuple[str, ...]], ...]
    start: str

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(dict.fromkeys(self.variables)))
        object.__setattr__(self, "alphabet", tuple(sorted(set(self.alphabet))))
        rules = tuple(dict.fromkeys((a, tuple(w)) for a, w in self.rules))
        object.__setattr__(self, "rules", rules)
        vs = set(self.variables)
        if self.start not in vs:
            raise GrammarError(f"start symbol {self.start!r} is not a variable")
        if vs & set(self.alphabet):
            raise GrammarError("variables and terminals overlap")
        for a, w in rules:
            if a not in vs:
                raise GrammarError(f"rule for unknown variable {a!r}")
            for x in w:
                if x not in vs and x not in self.alphabet:
                    raise GrammarError(f"unknown symbol {x!r} in rule for {a!r}")

    def is_variable(self, x: str) -> bool:
        return x in set(self.variables)

    def rules_for(self, a: str) -> list[tuple[str, ...]]:
        return [w for b, w in self.rules if b == a]

    def is_cnf(self) -> bool:
        """Every right side has length at most 2."""
        return all(len(w) <= 2 for _, w in self.rules)

    def to_text(self) -> str:
        lines = []
        for a in self.variables:
            alts = [" ".join(w) if w else "ε" for w in self.rules_for(a)]
            if alts:
                lines.append(f"{a} -> " + " | ".join(alts))
        return "\n".join(lines) + "\n"


def parse_grammar(text: str) -> Cfg:
    """One rule per line, ``X -> a Y b | Z``; the first left side is the start.

    Symbols that appear on some left side are variables, the rest terminals.
    ``ε`` (or ``eps``) stands for the empty word.
    """
    raw = []
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise GrammarError(f"line {n}: missing '->'")
        lhs, rhs = line.split("->", 1)
        lhs = lhs.strip()
        if not lhs or len(lhs.split()) != 1:
            raise GrammarError(f"line {n}: bad left side {lhs!r}")
        for alt in rhs.split("|"):
            toks = [t for t in alt.split() if t not in EPSILON_TOKENS]
            raw.append((lhs, tuple(toks)))
    if not raw:
        raise GrammarError("empty grammar")
    variables = list(dict.fromkeys(a for a, _ in raw))
    vs = set(variables)
    alphabet = sorted({x for _, w in raw for x in w if x not in vs})
    return Cfg(tuple(variables), tuple(alphabet), tuple(raw), variables[0])


# Chomsky normal form

def _fresh(base: str, taken: set[str]) -> str:
    name, k = base, 1
    while name in taken:
        k += 1
        name = f"{base}{k}"
    taken.add(name)
    return name


def _nullable(variables: Iterable[str], rules) -> set[str]:
    null: set[str] = set()
    changed = True
    while changed:
        changed = False
        for a, w in rules:
            if a not in null and all(x in null for x in w):
                null.add(a)
                changed = True
    return null


def to_cnf(G: Cfg) -> Cfg:
    """Equivalent grammar with rules A -> B C, A -> a, and possibly S -> ε.

    Steps in order: a fresh start symbol when the start is nullable and
    recursive, TERM (terminals inside long rules get their own variable),
    BIN (split long rules), DEL (remove ε-rules), UNIT (remove A -> B).
    """
    taken = set(G.variables) | set(G.alphabet)
    variables = list(G.variables)
    rules = list(G.rules)
    start = G.start
    alphabet = set(G.alphabet)

    if start in _nullable(variables, rules) and any(start in w for _, w in rules):
        s0 = _fresh(start + "0", taken)
        variables.insert(0, s0)
        rules.insert(0, (s0, (start,)))
        start = s0

    # TERM
    term_var: dict[str, str] = {}
    out = []
    for a, w in rules:
        if len(w) >= 2 and any(x in alphabet for x in w):
            nw = []
            for x in w:
                if x in alphabet:
                    if x not in term_var:
                        term_var[x] = _fresh("T_" + x, taken)
                        variables.append(term_var[x])
                    nw.append(term_var[x])
                else:
                    nw.append(x)
            w = tuple(nw)
        out.append((a, w))
    out.extend((v, (x,)) for x, v in term_var.items())
    rules = out

    # BIN
    out = []
    for a, w in rules:
        head = a
        while len(w) > 2:
            nxt = _fresh(f"{a}_", taken)
            variables.append(nxt)
            out.append((head, (w[0], nxt)))
            head, w = nxt, w[1:]
        out.append((head, w))
    rules = out

    # DEL
    null = _nullable(variables, rules)
    out = []
    for a, w in rules:
        spots = [i for i, x in enumerate(w) if x in null]
        for drop in itertools.product((False, True), repeat=len(spots)):
            gone = {i for i, d in zip(spots, drop) if d}
            nw = tuple(x for i, x in enumerate(w) if i not in gone)
            if nw:
                out.append((a, nw))
    if start in null:
        out.append((start, ()))
    rules = list(dict.fromkeys(out))

    # UNIT
    vs = set(variables)
    unit = {a: {a} for a in variables}
    changed = True
    while changed:
        changed = False
        for a, w in rules:
            if len(w) == 1 and w[0] in vs:
                for src in variables:
                    if a in unit[src] and w[0] not in unit[src]:
                        unit[src].add(w[0])
                        changed = True
    out = []
    for a in variables:
        for b in sorted(unit[a], key=variables.index):
            for c, w in rules:
                if c == b and not (len(w) == 1 and w[0] in vs):
                    out.append((a, w))
    rank = {v: i for i, v in enumerate(variables)}
    out.sort(key=lambda r: (rank[r[0]], r[1]))
    return Cfg(tuple(variables), tuple(sorted(alphabet)), tuple(out), start)


# finite automata

@dataclass(frozen=True)
class Nfa:
    alphabet: tuple[str, ...]
    states: tuple
    initial: object
    transitions: frozenset
    finals: frozenset

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(sorted(set(self.alphabet))))
        object.__setattr__(self, "states", tuple(dict.fromkeys(self.states)))
        object.__setattr__(self, "transitions", frozenset(tuple(t) for t in self.transitions))
        object.__setattr__(self, "finals", frozenset(self.finals))
        st = set(self.states)
        if self.initial not in st:
            raise GrammarError("initial state is not a state")
        if not self.finals <= st:
            raise GrammarError("final states must be states")
        for p, s, q in self.transitions:
            if p not in st or q not in st or s not in self.alphabet:
                raise GrammarError(f"bad transition {(p, s, q)!r}")

    def step(self, current: Iterable, letter: str) -> frozenset:
        cur = set(current)
        return frozenset(q for p, s, q in self.transitions if p in cur and s == letter)

    def reach(self, state, word: Sequence[str]) -> frozenset:
        cur = frozenset([state])
        for x in word:
            cur = self.step(cur, x)
            if not cur:
                break
        return cur

    def accepts(self, word: Sequence[str]) -> bool:
        return bool(self.reach(self.initial, word) & self.finals)


def nfa_from_json(obj: Mapping) -> Nfa:
    try:
        return Nfa(tuple(obj["alphabet"]), tuple(obj["states"]), obj["initial"],
                   frozenset(tuple(t) for t in obj["transitions"]), frozenset(obj["finals"]))
    except (KeyError, TypeError) as exc:
        raise GrammarError(f"bad automaton JSON: {exc}") from exc


def nfa_to_json(A: Nfa) -> dict:
    return {"alphabet": list(A.alphabet), "states": list(A.states), "initial": A.initial,
            "transitions": sorted([list(t) for t in A.transitions], key=str),
            "finals": sorted(A.finals, key=str)}


def load_nfa(text: str) -> Nfa:
    return nfa_from_json(json.loads(text))


def intersect_regular(G: Cfg, A: Nfa) -> Cfg:
    """Grammar for L(G) ∩ L(A) with variables S' and X_{a,b}.

    A rule X -> w0 Y1 w1 ... Yk wk becomes
    X_{a0,bk} -> w0 (Y1)_{b0,a1} w1 ... (Yk)_{b(k-1),ak} wk
    for every choice of states with a_i --w_i--> b_i in A.
    """
    vs = set(G.variables)
    states = list(A.states)

    def name(x, a, b):
        return f"{x}_{a},{b}"

    rules = []
    for x, w in G.rules:
        # split into terminal blocks around the variables
        blocks, hole = [[]], []
        for sym in w:
            if sym in vs:
                hole.append(sym)
                blocks.append([])
            else:
                blocks[-1].append(sym)
        for starts in itertools.product(states, repeat=len(blocks)):
            ends = [A.reach(a, blk) for a, blk in zip(starts, blocks)]
            if not all(ends):
                continue
            for bs in itertools.product(*[sorted(e, key=states.index) for e in ends]):
                rhs = []
                for i, blk in enumerate(blocks):
                    rhs.extend(blk)
                    if i < len(hole):
                        rhs.append(name(hole[i], bs[i], starts[i + 1]))
                rules.append((name(x, starts[0], bs[-1]), tuple(rhs)))
    taken = {name(x, a, b) for x in G.variables for a in states for b in states}
    s_new = _fresh(G.start + "'", taken | set(G.alphabet))
    for b in states:
        if b in A.finals:
            rules.append((s_new, (name(G.start, A.initial, b),)))
    variables = [s_new] + [name(x, a, b) for x in G.variables for a in states for b in states]
    return Cfg(tuple(variables), G.alphabet, tuple(rules), s_new)


def unary_project(G: Cfg, letter: str = "1") -> Cfg:
    """Replace every terminal by one letter."""
    vs = set(G.variables)
    if letter in vs:
        raise GrammarError(f"{letter!r} is already a variable")
    rules = tuple((a, tuple(x if x in vs else letter for x in w)) for a, w in G.rules)
    return Cfg(G.variables, (letter,), rules, G.start)


def derivable_lengths(G: Cfg, bound: int = 256) -> int:
    """Bit set (as an int) of the lengths <= bound of words in L(G).

    Works for any grammar whose rules have length <= 2; only lengths are
    tracked, so the letters themselves do not matter.
    """
    if not G.is_cnf():
        G = to_cnf(G)
    vs = set(G.variables)
    mask = (1 << (bound + 1)) - 1
    L = {a: 0 for a in G.variables}

    def conv(x: int, y: int) -> int:
        out, k = 0, 0
        while x:
            if x & 1:
                out |= y << k
            x >>= 1
            k += 1
        return out & mask

    changed = True
    while changed:
        changed = False
        for a, w in G.rules:
            acc = 1
            for x in w:
                acc = conv(acc, L[x] if x in vs else 2)
                if not acc:
                    break
            new = L[a] | acc
            if new != L[a]:
                L[a] = new
                changed = True
    return L[G.start]


def lengths_to_list(bits: int) -> list[int]:
    return [i for i in range(bits.bit_length()) if bits >> i & 1]


@dataclass(frozen=True)
class UnaryPeriodicity:
    preperiod: int
    period: int
    table: tuple[bool, ...]


@dataclass(frozen=True)
class Inconclusive:
    bound: int

    def __str__(self):
        return f"inconclusive up to length {self.bound}"


def minimal_eventual_period(table: Sequence[bool] | int, bound: int | None = None):
    """Preperiod p and period q of the smallest lasso automaton fitting the table.

    Among the pairs consistent with the table on [0, bound] and satisfying
    p + 2q <= bound (the periodic part is seen at least twice), the one
    with fewest states p + q wins, then the smaller q.  Counting states
    rather than taking the smallest q keeps a long constant tail from
    passing for period 1.
    """
    if isinstance(table, int):
        if bound is None:
            raise ValueError("a bit-set table needs an explicit bound")
        table = [bool(table >> i & 1) for i in range(bound + 1)]
    table = [bool(x) for x in table]
    B = len(table) - 1 if bound is None else bound
    if len(table) < B + 1:
        raise ValueError("table shorter than the bound")
    best = None
    for q in range(1, B // 2 + 1):
        # smallest p from which table[i] == table[i + q] up to B
        p = B - q + 1
        while p > 0 and table[p - 1] == table[p - 1 + q]:
            p -= 1
        if p + 2 * q <= B and (best is None or (p + q, q) < (best[0] + best[1], best[1])):
            best = (p, q)
    if best is None:
        return Inconclusive(B)
    p, q = best
    return UnaryPeriodicity(p, q, tuple(table[: p + 2 * q]))


# order from the co-word problem

def power_automaton(word: Sequence[str], alphabet: Iterable[str]) -> Nfa:
    """Automaton for {word}*: a cycle of len(word) states."""
    n = len(word)
    trans = frozenset((i, word[i], (i + 1) % n) for i in range(n))
    return Nfa(tuple(alphabet), tuple(range(n)), 0, trans, frozenset([0]))


def product_nfa(A: Nfa, B: Nfa) -> Nfa:
    alphabet = tuple(sorted(set(A.alphabet) & set(B.alphabet)))
    states = [(a, b) for a in A.states for b in B.states]
    trans = frozenset(((p, q), s, (p2, q2)) for p, s, p2 in A.transitions
                      for q, t, q2 in B.transitions if s == t)
    finals = frozenset((a, b) for a in A.finals for b in B.finals)
    return Nfa(alphabet, tuple(states), (A.initial, B.initial), trans, finals)


def unary_lasso(A: Nfa) -> tuple[list[bool], int]:
    """Acceptance of 1^k after forgetting letters: (bits, start of the cycle).

    The subset construction on a one-letter automaton is a path that ends
    in a cycle; bits has one entry per subset before the path repeats.
    """
    succ: dict = {}
    for p, _, q in A.transitions:
        succ.setdefault(p, set()).add(q)
    cur = frozenset([A.initial])
    seen: dict[frozenset, int] = {}
    bits = []
    while cur not in seen:
        seen[cur] = len(bits)
        bits.append(bool(cur & A.finals))
        cur = frozenset(q for p in cur for q in succ.get(p, ()))
    return bits, seen[cur]


def minimize_unary(bits: Sequence[bool], loop: int) -> tuple[int, int]:
    """Least (preperiod, period) of the eventually periodic sequence.

    These are the tail and cycle lengths of the minimal automaton.
    """
    cyc = list(bits[loop:])
    c = len(cyc)
    q = next(d for d in range(1, c + 1) if c % d == 0
             and all(cyc[i] == cyc[(i + d) % c] for i in range(c)))

    def at(i):
        return bits[i] if i < len(bits) else cyc[(i - loop) % c]

    p = loop
    while p > 0 and at(p - 1) == at(p - 1 + q):
        p -= 1
    return p, q


def order_from_cowp(cowp: Nfa, word: Sequence[str]):
    """Order of the element spelled by word, from an automaton for the co-word problem."""
    word = list(word)
    if not word:
        raise ValueError("the word must be non-empty")
    n = len(word)
    inter = product_nfa(cowp, power_automaton(word, cowp.alphabet))
    bits, loop = unary_lasso(inter)
    if not any(bits):
        return Finite(1)
    p, P = minimize_unary(bits, loop)
    if P == n and p == 1 and not bits[0]:
        return Infinite(())
    if P % n:
        raise ArithmeticError(f"period {P} is not a multiple of the word length {n}")
    return Finite(P // n)


def group_cowp(elements: Sequence, generators: Mapping[str, object], mul, identity) -> Nfa:
    """Cayley automaton of a finite group accepting the non-trivial words."""
    trans = frozenset((g, s, mul(g, x)) for g in elements for s, x in generators.items())
    finals = frozenset(g for g in elements if g != identity)
    return Nfa(tuple(generators), tuple(elements), identity, trans, finals)


def cyclic_cowp(n: int) -> Nfa:
    """C_n generated by a (and its inverse A)."""
    gens = {"a": 1, "A": n - 1}
    return group_cowp(list(range(n)), gens, lambda g, x: (g + x) % n, 0)


def s3_cowp() -> Nfa:
    """Sym(3) generated by s = (1 2) and t = (1 2 3) (and T = t^-1)."""
    from .core import perm_inv, perm_mul
    elems = [tuple(p) for p in itertools.permutations((1, 2, 3))]
    t = (2, 3, 1)
    gens = {"s": (2, 1, 3), "t": t, "T": perm_inv(t)}
    return group_cowp(elems, gens, perm_mul, (1, 2, 3))


def shortest_words(A: Nfa) -> dict:
    """Shortest word reaching each state of a deterministic automaton."""
    out = {A.initial: ()}
    queue = deque([A.initial])
    by_src: dict = {}
    for p, s, q in sorted(A.transitions, key=str):
        by_src.setdefault(p, []).append((s, q))
    while queue:
        p = queue.popleft()
        for s, q in sorted(by_src.get(p, []), key=str):
            if q not in out:
                out[q] = out[p] + (s,)
                queue.append(q)
    return out
