import random
from math import lcm

import pytest

from thompsonkit.houghton import (HoughtonElement, evaluate_hword, from_cycles, hidentity,
                                  hinverse, hmul, horder, landau, landau_oracle,
                                  landau_restricted, parse_hword, partitions, primes_upto,
                                  translation, transposition, witness_element, witness_word)
from thompsonkit.order import Finite, Infinite

from oracles import partition_lcms


def test_landau_small_values():
    assert [landau(n) for n in range(0, 11)] == [1, 1, 2, 3, 4, 6, 6, 12, 15, 20, 30]
    for n in range(0, 25):
        assert landau(n) == max(partition_lcms(n))
    assert landau_restricted(10, [2]) == 8
    assert landau_restricted(12, [2, 3]) == 24
    assert landau_oracle(12, [2, 3]) == 24
    with pytest.raises(ValueError):
        landau_restricted(5, [4])
    with pytest.raises(ValueError):
        landau(-1)


def test_partitions_and_primes():
    assert primes_upto(20) == [2, 3, 5, 7, 11, 13, 17, 19]
    parts = list(partitions(6))
    assert (3, 3) in parts and (2, 2, 2) in parts and () in parts
    assert all(min(p, default=2) >= 2 for p in parts)


def test_element_arithmetic():
    rng = random.Random(6)

    def rand():
        pts = rng.sample(range(-6, 7), 5)
        return HoughtonElement(dict(zip(pts, rng.sample(pts, 5))), rng.randint(-2, 2))

    for _ in range(100):
        g, h, k = rand(), rand(), rand()
        assert hmul(hmul(g, h), k) == hmul(g, hmul(h, k))
        assert hmul(g, hinverse(g)) == hidentity()
        for x in range(-10, 11):
            assert (g * h)(x) == h(g(x))


def test_orders():
    assert horder(transposition(0, 1)) == Finite(2)
    assert horder(translation(1)) == Infinite(())
    assert horder(from_cycles([(0, 1), (2, 3, 4)])) == Finite(6)
    assert horder(hidentity()) == Finite(1)
    # x -> fperm(x) + 1 with fperm = (20 21) fixes 21
    assert horder(HoughtonElement(from_cycles([(20, 21)]).fperm, 1)) == Infinite((1,))


def test_parse_hword():
    assert parse_hword("(ta)^2 t") == ["t", "a", "t", "a", "t"]
    assert parse_hword("(ta)^-1") == ["a", "t^-1"]
    assert evaluate_hword("t t^-1") == hidentity()
    with pytest.raises(ValueError):
        parse_hword("t b")


def test_witness_shape():
    w = witness_word(2, 3)
    assert len(w) == 3 * 5 - 2
    g = witness_element(2, 3)
    assert g.shift == 0 and horder(g) == Finite(6)
    assert sorted(len(c) for c in g.cycles()) == [2, 3]
    assert witness_element(4, 1, 3).cycles() == [(-7, -6, -5), (-3, -2, -1, 0)]
    with pytest.raises(ValueError):
        witness_word(0)


def test_witness_realises_landau():
    # the partition reaching landau(n) gives a word of length <= 3n
    for n in range(2, 16):
        best = max((p for p in partitions(n) if p), key=lambda p: lcm(*p))
        g = witness_element(*best)
        assert horder(g) == Finite(landau(n))
        assert len(witness_word(*best)) <= 3 * n
