import random

import pytest

from labelspace.accommodating import generalized_vertex, singleton_condition, stable_partition, bar_e
from labelspace.automaton import build, infinite_label_classification
from labelspace.cofinality import check_strong_cofinality
from labelspace.disagreeable import disagreeable_block, disagreeable_space, is_disagreeable_word_from
from labelspace.graph import parse_graph, relative_range
from labelspace.oracles import Naive, naive_disagreeable, random_graph, to_set
from labelspace.words import is_primitive
from labelspace.wlr import check_wlr

from conftest import S


def test_single_loop(C):
    for level in (1, 2, 5):
        res = disagreeable_block(C, C.full, level)
        assert not res.disagreeable
        assert res.witness_word() is None
    v = disagreeable_space(C)
    assert not v.space_disagreeable and v.failure == ("v", 1)


def test_alternating_cycle(alternating):
    x = S(alternating, "x")
    res = disagreeable_block(alternating, x, 1)
    assert res.disagreeable
    word = res.witness_word()
    assert is_disagreeable_word_from(alternating, x, word, 1)
    assert not disagreeable_block(alternating, x, 2).disagreeable
    v = disagreeable_space(alternating)
    assert not v.space_disagreeable and v.failure[1] == 2


def test_fixture_b(B):
    for level in range(1, 6):
        res = disagreeable_block(B, S(B, "v1"), level)
        assert res.disagreeable and res.evidence.infinite
        assert is_disagreeable_word_from(B, S(B, "v1"), res.witness_word(), level)
    assert disagreeable_space(B).space_disagreeable


def test_witness_prefixes_stay_disagreeable(B):
    res = disagreeable_block(B, S(B, "v3"), 3)
    x = res.witness
    for n in range(res.threshold, res.threshold + 40):
        assert is_disagreeable_word_from(B, S(B, "v3"), x.take(n), 3)


def test_constructive_fallback_matches_search(B):
    from labelspace import disagreeable as dmod
    aut = build(B, [S(B, "v1")])
    x = dmod._constructive_lasso(aut, 0, 4)
    from labelspace.words import lasso_least_pure_period
    assert lasso_least_pure_period(x, 4) is None
    assert relative_range(B, S(B, "v1"), x.take(30))


def test_tail_failure_level():
    # a 3-cycle a.b.c: periods 1 and 2 fail, period 3 works, so level 3 is the first failure
    g = parse_graph("edge x y a\nedge y z b\nedge z x c\n")
    v = disagreeable_space(g)
    assert not v.space_disagreeable
    assert v.failure == ("x", 3)


@pytest.mark.parametrize("seed", range(80))
def test_against_window_oracle(seed):
    g = random_graph(random.Random(seed))
    nv = Naive(g)
    for level in range(1, 5):
        for v in range(g.n):
            block = generalized_vertex(g, v, level)
            res = disagreeable_block(g, block, level)
            assert res.disagreeable == naive_disagreeable(nv, to_set(block), level)
            if res.disagreeable:
                assert is_disagreeable_word_from(g, block, res.witness_word(), level)


@pytest.mark.parametrize("seed", range(80))
def test_structure_and_monotonicity(seed):
    g = random_graph(random.Random(2000 + seed))
    _, lstar = stable_partition(g)
    for v in range(g.n):
        for k in range(1, 5):
            block = generalized_vertex(g, v, k)
            res = disagreeable_block(g, block, k)
            if res.disagreeable:
                continue
            for later in (k + 1, k + 2):
                assert not disagreeable_block(g, generalized_vertex(g, v, later), later).disagreeable
            aut = build(g, [block])
            cls = infinite_label_classification(aut, 0)
            assert not cls.infinite
            for x in cls.lassos:
                assert x.prefix == () and is_primitive(x.cycle) and len(x.cycle) <= k


@pytest.mark.parametrize("seed", range(300))
def test_single_range_lemma(seed):
    """Under strong cofinality, block WLR and singletons, a non-disagreeable
    [v]_l forces every range from {v} to be a single vertex."""
    g = random_graph(random.Random(7000 + seed), max_vertices=5)
    if not (singleton_condition(g) and check_wlr(g, bar_e(g)).holds
            and check_strong_cofinality(g).holds):
        return
    rng = random.Random(seed)
    for v in range(g.n):
        for level in range(1, 4):
            block = generalized_vertex(g, v, level)
            if disagreeable_block(g, block, level).disagreeable:
                continue
            for _ in range(10):
                w = [rng.choice(g.labels) for _ in range(rng.randint(1, 6))]
                r = relative_range(g, 1 << v, w)
                assert r == 0 or bin(r).count("1") == 1


def test_space_failure_is_least_level():
    g = parse_graph("edge x y a\nedge y x b\nedge u u c\n")
    v = disagreeable_space(g)
    assert v.failure == ("u", 1)
