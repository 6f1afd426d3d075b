import random

import pytest

from labelspace import fixtures
from labelspace.graph import validate
from labelspace.oracles import (INCONCLUSIVE, MATCH, MISMATCH, Inconclusive, Naive, SuiteResult,
                                naive_cofinality, naive_disagreeable, naive_partition,
                                naive_smallest_family, naive_wlr, random_graph, rewrite_product,
                                run_suite, separation_lengths, term_generators, to_mask, to_set)


def ids(g, sets):
    return sorted(sorted(g.vertices[v] for v in s) for s in sets)


def test_mask_roundtrip():
    assert to_set(to_mask({0, 3, 5})) == frozenset({0, 3, 5})
    assert to_mask(()) == 0


def test_random_graphs_have_no_sinks():
    rng = random.Random(1)
    for _ in range(100):
        g = random_graph(rng)
        assert validate(g).ok
        assert len(g.vertices) <= 6 and len(g.labels) <= 3


def test_naive_partition_fixture_a(A):
    nv = Naive(A)
    sep = separation_lengths(nv)
    blocks = ids(A, naive_partition(nv, None, sep))
    assert ["p", "q"] in blocks
    assert ["v1"] in blocks and ["v3"] in blocks


def test_naive_family_fixture_b(B):
    nv = Naive(B)
    fam = naive_smallest_family(nv)
    named = ids(B, fam)
    assert ["v4", "v5"] in named
    assert ["v4"] not in named


def test_naive_family_cap(B):
    with pytest.raises(Inconclusive):
        naive_smallest_family(Naive(B), cap=2)


def test_naive_wlr(A):
    nv = Naive(A)
    singles = [frozenset([v]) for v in range(nv.n)]
    assert naive_wlr(nv, singles) == 1
    assert naive_wlr(nv, naive_smallest_family(nv)) is None
    with pytest.raises(Inconclusive):
        naive_wlr(nv, singles, budget=1)


def test_naive_disagreeable(B, C):
    assert naive_disagreeable(Naive(B), frozenset([0]), 1)
    assert not naive_disagreeable(Naive(C), frozenset([0]), 1)


def test_naive_cofinality(D):
    nv = Naive(D)
    singles = [frozenset([v]) for v in range(nv.n)]
    holds, _ = naive_cofinality(nv, singles, singles)
    assert not holds


def test_rewriter_reduces_products(B):
    nv = Naive(B)
    v2 = frozenset([B.index("v2")])
    gens = term_generators(("a1",), v2, ()) + term_generators(("a3",), to_set(B.mask(["v4", "v5"])),
                                                               ("a3",))
    alpha, A, beta = rewrite_product(nv, gens)
    assert (alpha, beta) == (("a1", "a3"), ("a3",))
    assert ids(B, [A]) == [["v4", "v5"]]
    assert rewrite_product(nv, [("t", "a1"), ("s", "a2")]) is None


def test_suite_result_bookkeeping():
    r = SuiteResult()
    r.record("x", MATCH)
    r.record("x", INCONCLUSIVE)
    assert r.ok and "all match" in r.summary()
    r.record("x", MISMATCH, None, "boom")
    assert not r.ok and "MISMATCH in x: boom" in r.summary()


def test_small_suite_matches():
    result = run_suite(seed=7, cases=25)
    assert result.ok, result.summary()
    assert result.cases == 25
