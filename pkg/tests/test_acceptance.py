"""Acceptance gate: thirteen criteria, each with its own time limit.

Run under pytest, or directly with ``python3 tests/test_acceptance.py`` to
get one PASS/FAIL line per criterion.
"""

from __future__ import annotations

import json
import math
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import (big_lcm, cyclic_order, language_upto, nfa_run, partition_lcms,  # noqa: E402
                     perm_order, random_grammar, random_nfa)
from thompsonkit import cli, core, houghton, langtools, metric  # noqa: E402
from thompsonkit import families as fam  # noqa: E402
from thompsonkit.order import Finite, Infinite, Unknown, order, order_oracle  # noqa: E402
from thompsonkit.rotation import RationalMod1, rotation_number, rotation_oracle  # noqa: E402

FIX = Path(__file__).parent / "fixtures"
RESULTS: dict[int, tuple[bool, float, str]] = {}


def _random_perm(n, rng):
    p = list(range(1, n + 1))
    rng.shuffle(p)
    return tuple(p)


def _identity_word(A):
    """x^k returning to the start state, for the first letter x."""
    x = A.alphabet[0]
    w, cur = [x], A.step({A.initial}, x)
    while A.initial not in cur:
        w.append(x)
        cur = A.step(cur, x)
    return w


def crit_1():
    bad = [n for n in range(2, 17) if order(fam.flip_g(n)) != Finite(2 ** (n - 1))]
    return not bad, f"flip orders wrong for n in {bad}" if bad else "n = 2..16 exact"


def crit_2():
    bad = []
    for m in range(2, 129):
        g = fam.order_witness_c(m)
        # the claimed order, confirmed by composition: g^m = id and g^(m/p) != id
        primes = [p for p in range(2, m + 1) if m % p == 0 and all(p % d for d in range(2, p))]
        ok = order(g) == Finite(m) and core.is_identity(core.power(g, m)) \
            and all(not core.is_identity(core.power(g, m // p)) for p in primes)
        if not ok:
            bad.append(m)
    return not bad, f"wrong for m in {bad}" if bad else "m = 2..128 exact"


def crit_3():
    bad = [n for n in range(1, 9)
           if order(fam.lcm_witness_d(n)) != Finite(big_lcm(2 ** i + 1 for i in range(n + 1)))]
    d8 = order(fam.lcm_witness_d(8)).order
    log2 = math.log2(d8)
    ok = not bad and log2 >= 32
    detail = ("exact lcm for n = 1..8" if not bad else f"lcm wrong for {bad}") + \
        f"; log2 ord(d_8) = {log2:.2f} (needs >= 32; lcm(2,3,5,...,257) = {d8})"
    return ok, detail


def crit_4():
    rng = random.Random(2024)
    disagree, resolved, infinite = 0, 0, 0
    for _ in range(500):
        g = core.random_element(8, rng, "V")
        res = order(g)
        ref = order_oracle(g, 4096)
        if isinstance(ref, Finite):
            resolved += 1
            disagree += res != ref
        if isinstance(res, Infinite):
            infinite += 1
            disagree += not isinstance(ref, Unknown)
    return disagree == 0, f"{disagree} disagreements ({resolved} finite, {infinite} infinite)"


def crit_5():
    a = fam.torsion_tilde(fam.torsion_a(1))
    worked = rotation_number(a) == RationalMod1(2, 5)
    rng = random.Random(55)
    bad_oracle = bad_double = 0
    for _ in range(200):
        g = core.random_element(8, rng, "T")
        r = rotation_number(g)
        bad_oracle += r != rotation_oracle(g, 256)
        bad_double += rotation_number(core.power(g, 2)) != 2 * r
    ok = worked and not bad_oracle and not bad_double
    return ok, f"rot = {rotation_number(a)}; {bad_oracle} oracle and {bad_double} doubling mismatches"


def crit_6():
    bad = 0
    for n in range(1, 7):
        for p, d in metric.riffle_distances(n).items():
            bad += metric.shuffle_norm(p) != d
    return bad == 0, f"{bad} mismatches over Sym(1..6)"


def crit_7():
    rng = random.Random(77)
    bad = 0
    for _ in range(1000):
        p = _random_perm(64, rng)
        f = metric.riffle_factorization(p)
        bad += f.compose() != p or len(f) > metric.shuffle_norm(p)
    for _ in range(1000):
        p = _random_perm(100, rng)
        d = metric.lds_decomposition(p)
        L = metric.lds(p)
        bad += d.compose() != p or metric.rising_number(d.alpha) > L or metric.rising_number(d.beta) > L
    return bad == 0, f"{bad} failures over 2000 permutations"


def crit_8():
    table = fam.derive_generators()
    bad = [("flip", n) for n in range(4, 11)
           if core.evaluate_word(fam.flip_word(n), table).key != fam.flip_g(n).key]
    bad += [("riffle", n) for n in range(4, 9)
            if core.evaluate_word(fam.riffle_word(n), table).key != fam.riffle_t(n).key]
    return not bad, f"mismatches {bad}" if bad else "flip 4..10 and riffle 4..8 identical"


def crit_9():
    bad = []
    for n in range(1, 11):
        a = fam.torsion_a(n)
        if not (core.classify(a) == "T" and a.n == 2 * n and order(a).order >= 2 ** n):
            bad.append(("a", n))
    for k in range(0, 5):
        b = fam.calegari_b(k)
        if not (fam.tree_depth(b) == 2 * k + 1 and order(b).order >= 2 ** (k * k + 1)):
            bad.append(("b", k))
    return not bad, f"failures {bad}" if bad else "a_1..a_10 and b_0..b_4 satisfy the bounds"


def crit_10():
    bad = [n for n in range(0, 41) if houghton.landau(n) != max(partition_lcms(n))]
    for Q in ({2}, {2, 3}):
        k = len(Q)
        for n in range(10, 61):
            g = houghton.landau_restricted(n, Q)
            lower = Fraction(n ** k, math.prod(q * k for q in Q))
            if not lower <= g <= n ** k:
                bad.append((tuple(sorted(Q)), n))
    return not bad, f"failures {bad}" if bad else "oracle match n <= 40; bounds hold n = 10..60"


def crit_11():
    rng = random.Random(11)
    bad = 0
    for _ in range(50):
        parts = [rng.randint(1, 9) for _ in range(rng.randint(1, 5))]
        w = houghton.witness_word(*parts)
        g = houghton.evaluate_hword(w)
        bad += g.shift != 0 or houghton.horder(g) != Finite(math.lcm(*parts)) or len(w) > 3 * sum(parts)
    return bad == 0, f"{bad} failures over 50 tuples"


def crit_12():
    rng = random.Random(12)
    bad = []
    for i in range(50):
        V, S, R, s = random_grammar(rng)
        st, tr, q0, F = random_nfa(rng)
        G = langtools.Cfg(tuple(V), tuple(S), tuple(R), s)
        A = langtools.Nfa(tuple(S), tuple(st), q0, frozenset(tr), frozenset(F))
        I = langtools.intersect_regular(G, A)
        want = {w for w in language_upto(V, R, s, 10) if nfa_run(tr, q0, F, w)}
        if len(I.variables) > len(V) * len(st) ** 2 + 1 or \
                language_upto(I.variables, I.rules, I.start, 10) != want:
            bad.append(("intersect", i))
    for name, degree in (("c2", 2), ("c6", 6), ("s3", None)):
        A = langtools.nfa_from_json(json.loads((FIX / f"cowp_{name}.json").read_text()))
        for state, w in langtools.shortest_words(A).items():
            if not w:
                w = _identity_word(A)
            want = cyclic_order(state, degree) if degree else perm_order(tuple(int(c) for c in state))
            if langtools.order_from_cowp(A, w) != Finite(want):
                bad.append(("cowp", name, state))
    for i in range(20):
        V, S, R, s = random_grammar(rng, max_vars=4)
        C = langtools.to_cnf(langtools.Cfg(tuple(V), tuple(S), tuple(R), s))
        if not C.is_cnf() or language_upto(C.variables, C.rules, C.start, 12) != language_upto(V, R, s, 12):
            bad.append(("cnf", i))
    return not bad, f"failures {bad}" if bad else "intersections, coWP orders and CNF all agree"


def crit_13():
    bad = [n for n in range(2, 11) if order(fam.ben_g(n)) != Finite(2 ** (n - 1))]
    rng = random.Random(13)
    inv = 0
    for _ in range(1000):
        v, m = rng.randrange(1 << 20), rng.randrange(-5, 30)
        inv += fam.ben_schreier_apply("y", *fam.ben_schreier_apply("y", v, m)) != (v, m)
    t = fam.derive_generators()
    table = core.GeneratorTable(x0=t["x0"], y=t["y"])
    rows = cli.pgrowth(table, 4)
    spheres = cli.ball(table, 4)
    consistent = all(
        m == max([1] + [order(g).order for s in spheres[: r + 1] for g in s if isinstance(order(g), Finite)])
        for r, m in rows) and [m for _, m in rows] == sorted(m for _, m in rows)
    ok = not bad and inv == 0 and consistent
    return ok, f"ben_g bad {bad}; {inv} non-involutive points; pgrowth {[m for _, m in rows]}"


CRITERIA = {
    1: (crit_1, 1), 2: (crit_2, 10), 3: (crit_3, 10), 4: (crit_4, 60), 5: (crit_5, 60),
    6: (crit_6, 120), 7: (crit_7, 30), 8: (crit_8, 5), 9: (crit_9, 30), 10: (crit_10, 30),
    11: (crit_11, 5), 12: (crit_12, 60), 13: (crit_13, 30),
}


def evaluate(k: int) -> tuple[bool, float, str]:
    fn, limit = CRITERIA[k]
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    if dt >= limit:
        ok, detail = False, f"{detail}; took {dt:.2f} s, limit {limit} s"
    RESULTS[k] = (ok, dt, detail)
    return RESULTS[k]


def line(k: int) -> str:
    ok, dt, detail = RESULTS[k]
    return f"criterion {k:2d}: {'PASS' if ok else 'FAIL'} ({dt:.2f} s) {detail}"


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    ok, _, _ = evaluate(k)
    print(line(k))
    assert ok, line(k)


if __name__ == "__main__":
    failed = 0
    for k in sorted(CRITERIA):
        evaluate(k)
        print(line(k), flush=True)
        failed += not RESULTS[k][0]
    sys.exit(1 if failed else 0)
