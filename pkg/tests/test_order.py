import random

import pytest

from thompsonkit import core
from thompsonkit.families import flip_g
from thompsonkit.order import (Finite, Infinite, NoPairFound, Unknown, export_dot, is_torsion, order,
                               order_from_graph, order_oracle, reduce_strands, rule1_step,
                               to_cylinder, to_dict)

X0 = core.from_text("((* *) *) ; [1 2 3] ; (* (* *))")


def test_small_orders():
    assert order(core.identity()) == Finite(1)
    assert order(flip_g(3)) == Finite(4)
    assert order(core.from_text("(* *) ; [2 1] ; (* *)")) == Finite(2)
    assert order(core.from_text("((* *) *) ; [2 3 1] ; ((* *) *)")) == Finite(3)


def test_x0_has_infinite_order():
    assert isinstance(order(X0), Infinite)
    assert not is_torsion(X0)
    # repeated composition never returns to the identity
    assert order_oracle(X0, 100, detect_nesting=False) == Unknown(100)


def test_order_is_conjugation_invariant():
    rng = random.Random(8)
    for _ in range(40):
        g, h = core.random_element(6, rng), core.random_element(6, rng)
        conj = core.compose_all([core.inverse(h), g, h])
        assert type(order(g)) is type(order(conj))
        if isinstance(order(g), Finite):
            assert order(g) == order(conj)


def test_finite_order_matches_plain_oracle():
    rng = random.Random(21)
    for _ in range(150):
        g = core.random_element(6, rng)
        res = order(g)
        # a short plain search is enough to catch a wrong Infinite
        ref = order_oracle(g, res.order if isinstance(res, Finite) else 48, detect_nesting=False)
        if isinstance(ref, Finite) or isinstance(res, Finite):
            assert res == ref


def test_fully_reduced_graph_has_only_circles():
    G = reduce_strands(to_cylinder(flip_g(4)))
    assert G.carets == 0
    assert order_from_graph(G) == Finite(8)


def test_exports():
    G = to_cylinder(flip_g(3))
    dot = export_dot(G)
    assert dot.startswith("digraph") and "label=" in dot
    d = to_dict(G)
    assert set(d) == {"vertices", "edges", "circles"}
    r = reduce_strands(G)
    assert to_dict(r)["circles"]


def _label_total(G):
    return sum(sum(lab) for lab in G.label.values()) + sum(sum(c) for c in G.circles)


def test_single_steps_and_label_conservation():
    rng = random.Random(17)
    for _ in range(40):
        g = core.random_element(7, rng).reduced
        G = to_cylinder(g)
        steps = 0
        while True:
            try:
                H = rule1_step(G)
            except NoPairFound:
                break
            before, after = _label_total(G), _label_total(H)
            assert before <= after <= 2 * max(before, 1)
            G, steps = H, steps + 1
        assert steps <= g.n - 1
        assert order_from_graph(G) == order_from_graph(reduce_strands(to_cylinder(g)))
    with pytest.raises(NoPairFound):
        rule1_step(reduce_strands(to_cylinder(flip_g(3))))
