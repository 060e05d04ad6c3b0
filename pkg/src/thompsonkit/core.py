"""Tree pair diagrams for Thompson's groups F < T < V.

A tree is either ``LEAF`` (``None``) or a pair ``(left, right)``.  Leaves are
named by their address, a string over ``0``/``1``; the root is ``""``.

A :class:`TreePair` ``(U, perm, V)`` sends the i-th leaf of ``U`` to the
``perm[i]``-th leaf of ``V`` (1-indexed).  Permutations act on the right, so
the product ``g * h`` means "apply g, then h".
"""

from __future__ import annotations

import json
import re
from bisect import bisect_left
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

LEAF = None


class TreePairError(ValueError):
    """Malformed tree, permutation or word."""


class PrefixTooShort(ValueError):
    """The word does not reach a leaf of the domain tree."""


# trees

def caret(left=LEAF, right=LEAF):
    return (left, right)


def leaf_addresses(tree) -> list[str]:
    out = []
    stack = [(tree, "")]
    while stack:
        t, a = stack.pop()
        if t is LEAF:
            out.append(a)
        else:
            stack.append((t[1], a + "1"))
            stack.append((t[0], a + "0"))
    return out


def internal_addresses(tree) -> list[str]:
    out = []
    stack = [(tree, "")]
    while stack:
        t, a = stack.pop()
        if t is not LEAF:
            out.append(a)
            stack.append((t[1], a + "1"))
            stack.append((t[0], a + "0"))
    return out


def leaves(tree) -> int:
    n = 0
    stack = [tree]
    while stack:
        t = stack.pop()
        if t is LEAF:
            n += 1
        else:
            stack.extend(t)
    return n


def depth(tree) -> int:
    best = 0
    stack = [(tree, 0)]
    while stack:
        t, d = stack.pop()
        if t is LEAF:
            best = max(best, d)
        else:
            stack.append((t[0], d + 1))
            stack.append((t[1], d + 1))
    return best


def comb_right(n: int):
    """Right comb with n leaves: every caret hangs off the right."""
    if n < 1:
        raise TreePairError("a tree needs at least one leaf")
    t = LEAF
    for _ in range(n - 1):
        t = (LEAF, t)
    return t


def comb_left(n: int):
    if n < 1:
        raise TreePairError("a tree needs at least one leaf")
    t = LEAF
    for _ in range(n - 1):
        t = (t, LEAF)
    return t


def balanced_tree(n: int):
    """A tree with n leaves and depth ceil(log2 n), filled left to right."""
    if n < 1:
        raise TreePairError("a tree needs at least one leaf")
    if n == 1:
        return LEAF
    d = (n - 1).bit_length()
    half = 1 << (d - 1)
    # left subtree is as full as possible, right gets the rest
    left = min(n - 1, half)
    return (balanced_tree(left), balanced_tree(n - left))


def concat(t1, t2):
    """Join two trees under a new root caret; an empty side is dropped."""
    if t1 is EMPTY:
        return t2
    if t2 is EMPTY:
        return t1
    return (t1, t2)


class _Empty:
    def __repr__(self):
        return "EMPTY"


# the tree with zero leaves, only meaningful as an argument of concat
EMPTY = _Empty()


def tree_from_addresses(addrs: Iterable[str]):
    """Rebuild a tree from its (complete, prefix-free) leaf addresses."""
    addrs = sorted(addrs)
    if not addrs:
        raise TreePairError("empty leaf set")
    # build bottom-up with an explicit stack of (address, subtree)
    stack: list[tuple[str, object]] = []
    for a in addrs:
        node = (a, LEAF)
        while stack and node[0] and node[0][-1] == "1" and stack[-1][0] == node[0][:-1] + "0":
            left = stack.pop()
            node = (node[0][:-1], (left[1], node[1]))
        stack.append(node)
    if len(stack) != 1 or stack[0][0] != "":
        raise TreePairError("addresses do not form a complete binary tree")
    return stack[0][1]


def format_tree(tree) -> str:
    parts = []
    stack = [tree]
    while stack:
        t = stack.pop()
        if isinstance(t, str):
            parts.append(t)
        elif t is LEAF:
            parts.append("*")
        else:
            stack.append(")")
            stack.append(t[1])
            stack.append(" ")
            stack.append(t[0])
            parts.append("(")
    return "".join(parts)


def parse_tree(text: str):
    s = "".join(text.split())
    stack: list[list] = []
    result, done = LEAF, False
    for i, ch in enumerate(s):
        if done:
            raise TreePairError(f"trailing characters in tree: {text!r}")
        if ch == "(":
            stack.append([])
            continue
        if ch == "*":
            node = LEAF
        elif ch == ")":
            if not stack or len(stack[-1]) != 2:
                raise TreePairError(f"caret must have two children: {text!r}")
            node = tuple(stack.pop())
        else:
            raise TreePairError(f"bad tree character {ch!r} at {i}: {text!r}")
        if stack:
            if len(stack[-1]) == 2:
                raise TreePairError(f"caret must have two children: {text!r}")
            stack[-1].append(node)
        else:
            result, done = node, True
    if not done:
        raise TreePairError(f"unterminated tree: {text!r}")
    return result


def tree_to_json(tree):
    if tree is LEAF:
        return []
    return [tree_to_json(tree[0]), tree_to_json(tree[1])]


def tree_from_json(obj):
    if not isinstance(obj, list) or len(obj) not in (0, 2):
        raise TreePairError(f"bad JSON tree: {obj!r}")
    if not obj:
        return LEAF
    return (tree_from_json(obj[0]), tree_from_json(obj[1]))


# permutations: 1-indexed one-line tuples acting on the right

def perm_identity(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


def perm_check(p: Sequence[int]) -> tuple[int, ...]:
    p = tuple(int(x) for x in p)
    if sorted(p) != list(range(1, len(p) + 1)):
        raise TreePairError(f"not a permutation: {list(p)}")
    return p


def perm_mul(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """(x)(pq) = ((x)p)q."""
    return tuple(q[x - 1] for x in p)


def perm_inv(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, x in enumerate(p, 1):
        out[x - 1] = i
    return tuple(out)


def cyclic_offset(p: Sequence[int]) -> int | None:
    """c if p is i -> i + c mod n, else None."""
    n = len(p)
    c = (p[0] - 1) % n
    for i, x in enumerate(p):
        if (i + c) % n != x - 1:
            return None
    return c


# tree pairs

@dataclass(frozen=True, eq=False)
class TreePair:
    domain: object
    perm: tuple[int, ...]
    range: object

    def __post_init__(self):
        p = perm_check(self.perm)
        object.__setattr__(self, "perm", p)
        if leaves(self.domain) != len(p) or leaves(self.range) != len(p):
            raise TreePairError(
                f"leaf counts {leaves(self.domain)}, {leaves(self.range)} "
                f"do not match permutation of degree {len(p)}")

    @property
    def n(self) -> int:
        return len(self.perm)

    @cached_property
    def pairs(self) -> dict[str, str]:
        """domain leaf address -> range leaf address."""
        dom = leaf_addresses(self.domain)
        rng = leaf_addresses(self.range)
        return {dom[i]: rng[self.perm[i] - 1] for i in range(len(dom))}

    @cached_property
    def reduced(self) -> "TreePair":
        return _reduce(self)

    @cached_property
    def key(self) -> str:
        return to_text(self.reduced)

    def __eq__(self, other):
        if not isinstance(other, TreePair):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __mul__(self, other: "TreePair") -> "TreePair":
        return compose(self, other)

    def __repr__(self):
        return f"TreePair({to_text(self)!r})"


def make_tree_pair(domain, perm: Sequence[int], range_tree) -> TreePair:
    return TreePair(domain, tuple(perm), range_tree)


def identity() -> TreePair:
    return TreePair(LEAF, (1,), LEAF)


def from_pairs(pairs: Mapping[str, str]) -> TreePair:
    """Build a tree pair from a leaf-to-leaf address map."""
    dom = sorted(pairs)
    rng = sorted(pairs.values())
    rank = {a: i + 1 for i, a in enumerate(rng)}
    perm = tuple(rank[pairs[a]] for a in dom)
    return TreePair(tree_from_addresses(dom), perm, tree_from_addresses(rng))


def _reduce_pairs(m: dict[str, str]) -> dict[str, str]:
    m = dict(m)
    work = [a for a in m if a and a[-1] == "0"]
    while work:
        a = work.pop()
        if a not in m:
            continue
        sib = a[:-1] + "1"
        if sib not in m:
            continue
        r0, r1 = m[a], m[sib]
        if r0 and r0[-1] == "0" and r1 == r0[:-1] + "1":
            del m[a], m[sib]
            p = a[:-1]
            m[p] = r0[:-1]
            if p:
                work.append(p[:-1] + "0")
    return m


def _reduce(g: TreePair) -> TreePair:
    m = _reduce_pairs(g.pairs)
    if len(m) == g.n:
        return g
    h = from_pairs(m)
    object.__setattr__(h, "reduced", h)
    return h


def reduce(g: TreePair) -> TreePair:
    """The unique reduced diagram with the same action."""
    return g.reduced


def equals(g: TreePair, h: TreePair) -> bool:
    return g.key == h.key


def is_identity(g: TreePair) -> bool:
    return g.reduced.n == 1


def inverse(g: TreePair) -> TreePair:
    return TreePair(g.range, perm_inv(g.perm), g.domain)


def _max_len(addrs: Iterable[str]) -> int:
    return max(len(a) for a in addrs)


def compose_pairs(p: Mapping[str, str], q: Mapping[str, str]) -> dict[str, str]:
    """Address map of "apply p, then q" through the common refinement."""
    qdom = sorted(q)
    qmax = _max_len(qdom)
    out = {}
    for u, v in p.items():
        hit = None
        for k in range(min(len(v), qmax) + 1):
            if v[:k] in q:
                hit = v[:k]
                break
        if hit is not None:
            out[u] = q[hit] + v[len(hit):]
            continue
        # v is strictly above some leaves of q's domain tree
        i = bisect_left(qdom, v)
        while i < len(qdom) and qdom[i].startswith(v):
            w = qdom[i]
            out[u + w[len(v):]] = q[w]
            i += 1
    return out


def compose(g: TreePair, h: TreePair) -> TreePair:
    """Apply g, then h."""
    return from_pairs(_reduce_pairs(compose_pairs(g.pairs, h.pairs)))


def compose_all(elements: Iterable[TreePair]) -> TreePair:
    acc = identity()
    for e in elements:
        acc = compose(acc, e)
    return acc


def power(g: TreePair, k: int) -> TreePair:
    if k < 0:
        g, k = inverse(g), -k
    result = identity()
    base = g.reduced
    while k:
        if k & 1:
            result = compose(result, base)
        k >>= 1
        if k:
            base = compose(base, base)
    return result


def apply_prefix(g: TreePair, w: str) -> str:
    """Image of every infinite word starting with w, as a prefix."""
    m = g.pairs
    for k in range(len(w) + 1):
        u = w[:k]
        if u in m:
            return m[u] + w[k:]
    raise PrefixTooShort(f"{w!r} is shorter than the leaf it falls in")


def classify(g: TreePair) -> str:
    p = g.reduced.perm
    if p == perm_identity(len(p)):
        return "F"
    if cyclic_offset(p) is not None:
        return "T"
    return "V"


def shift(g: TreePair, prefix: str) -> TreePair:
    """Act as g on words starting with prefix and trivially elsewhere."""
    if prefix.strip("01"):
        raise TreePairError(f"prefix must be binary: {prefix!r}")
    m = {prefix + u: prefix + v for u, v in g.pairs.items()}
    for k in range(len(prefix)):
        other = prefix[:k] + ("1" if prefix[k] == "0" else "0")
        m[other] = other
    return from_pairs(m)


# text and JSON forms

def to_text(g: TreePair) -> str:
    perm = " ".join(str(x) for x in g.perm)
    return f"{format_tree(g.domain)} ; [{perm}] ; {format_tree(g.range)}"


def from_text(text: str) -> TreePair:
    parts = text.strip().split(";")
    if len(parts) != 3:
        raise TreePairError(f"expected 'TREE ; PERM ; TREE': {text!r}")
    ptxt = parts[1].strip()
    if not (ptxt.startswith("[") and ptxt.endswith("]")):
        raise TreePairError(f"permutation must be bracketed: {ptxt!r}")
    try:
        perm = [int(x) for x in ptxt[1:-1].replace(",", " ").split()]
    except ValueError as exc:
        raise TreePairError(f"bad permutation: {ptxt!r}") from exc
    return TreePair(parse_tree(parts[0]), tuple(perm), parse_tree(parts[2]))


def to_json(g: TreePair) -> dict:
    return {"domain_tree": tree_to_json(g.domain), "perm": list(g.perm),
            "range_tree": tree_to_json(g.range)}


def from_json(obj) -> TreePair:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        return TreePair(tree_from_json(obj["domain_tree"]), tuple(obj["perm"]),
                        tree_from_json(obj["range_tree"]))
    except (KeyError, TypeError) as exc:
        raise TreePairError(f"bad JSON element: {obj!r}") from exc


def parse_element(text: str) -> TreePair:
    """Accept either the one-line text form or the JSON form."""
    text = text.strip()
    if text.startswith("{"):
        try:
            return from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise TreePairError(str(exc)) from exc
    return from_text(text)


# words over named generators

_INV_SUFFIXES = ("^-1", "⁻¹")


def inverse_name(name: str) -> str:
    for s in _INV_SUFFIXES:
        if name.endswith(s):
            return name[: -len(s)]
    return name + "^-1"


class GeneratorTable(dict):
    """Generator names to elements; ``X^-1`` resolves to the inverse of ``X``."""

    def __missing__(self, name):
        base = inverse_name(name)
        if base != name and dict.__contains__(self, base):
            return inverse(dict.__getitem__(self, base))
        raise KeyError(name)

    def __contains__(self, name):
        return dict.__contains__(self, name) or dict.__contains__(self, inverse_name(name))


_SUPERSCRIPT = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹⁻−", "0123456789--")
_WORD_TOKEN = re.compile(
    r"\s+|(?P<name>[A-Za-z_][A-Za-z0-9_]*[₀-₉]*)|(?P<open>\()|(?P<close>\))"
    r"|\^\s*(?:[{(](?P<expr>[\d\s+\-−]+)[})]|(?P<exp>[-−]?\d+))"
    r"|(?P<sup>[⁻]?[⁰¹²³⁴⁵⁶⁷⁸⁹]+)")
_TERM = re.compile(r"\s*([+-]?)\s*(\d+)\s*")


def _exponent(text: str) -> int:
    """Value of an exponent such as ``-2`` or ``3-5``."""
    text = text.translate(_SUPERSCRIPT).strip()
    pos, total = 0, 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or (pos and not m.group(1)):
            raise TreePairError(f"bad exponent {text!r}")
        total += -int(m.group(2)) if m.group(1) == "-" else int(m.group(2))
        pos = m.end()
    return total


def _invert_letters(word: list[str]) -> list[str]:
    return [inverse_name(a) for a in reversed(word)]


def parse_word(text: str) -> list[str]:
    """Expand a word such as ``x0^-2 y (x0 y)^3`` into single letters.

    Exponents may be written ``^k``, ``^{k}``, ``^(k)`` or in superscript
    digits; ``*`` and ``·`` are accepted as separators.  Negative powers
    produce letters ending in ``^-1``.
    """
    text = text.replace("*", " ").replace("·", " ")
    stack: list[list[str]] = [[]]
    last: list[str] | None = None
    pos = 0
    while pos < len(text):
        m = _WORD_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise TreePairError(f"bad word at {pos}: {text!r}")
        pos = m.end()
        kind = m.lastgroup
        if kind is None:
            continue
        if kind == "name":
            last = [m.group("name")]
            stack[-1].extend(last)
        elif kind == "open":
            stack.append([])
            last = None
        elif kind == "close":
            if len(stack) == 1:
                raise TreePairError(f"unbalanced ')' in {text!r}")
            last = stack.pop()
            stack[-1].extend(last)
        else:
            if last is None:
                raise TreePairError(f"exponent without base in {text!r}")
            k = _exponent(m.group(kind))
            del stack[-1][len(stack[-1]) - len(last):]
            unit = last if k >= 0 else _invert_letters(last)
            stack[-1].extend(unit * abs(k))
            last = None
    if len(stack) != 1:
        raise TreePairError(f"unbalanced '(' in {text!r}")
    return stack[0]


def evaluate_word(word: Sequence[str] | str, table: Mapping[str, TreePair]) -> TreePair:
    """Left-to-right product of the letters of word."""
    if isinstance(word, str):
        word = parse_word(word)
    acc = identity()
    for name in word:
        try:
            g = table[name]
        except KeyError:
            raise TreePairError(f"unknown generator {name!r}") from None
        acc = compose(acc, g)
    return acc


def action_agrees(g: TreePair, h: TreePair, depth: int) -> bool:
    """Compare actions on every binary word of the given length."""
    need = max(depth, _max_len(g.pairs), _max_len(h.pairs))
    d = max(depth, need)
    for x in range(1 << d):
        w = format(x, f"0{d}b") if d else ""
        if apply_prefix(g, w) != apply_prefix(h, w):
            return False
    return True


# random elements

def random_tree(n: int, rng):
    """A tree with n leaves made by splitting uniformly chosen leaves."""
    if n < 1:
        raise TreePairError("a tree needs at least one leaf")
    addrs = [""]
    for _ in range(n - 1):
        a = addrs.pop(rng.randrange(len(addrs)))
        addrs += [a + "0", a + "1"]
    return tree_from_addresses(addrs)


def random_element(max_leaves: int, rng, group: str = "V") -> TreePair:
    """Random tree pair with at most max_leaves leaves in F, T or V."""
    n = rng.randint(1, max_leaves)
    if group == "F":
        perm = perm_identity(n)
    elif group == "T":
        c = rng.randrange(n)
        perm = tuple((i + c) % n + 1 for i in range(n))
    elif group == "V":
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        perm = tuple(perm)
    else:
        raise ValueError(f"group must be F, T or V, not {group!r}")
    return TreePair(random_tree(n, rng), perm, random_tree(n, rng))
