import random

import pytest

from labelspace.accommodating import BlockFamily, ExplicitFamily, bar_e, smallest_accommodating
from labelspace.errors import ResourceError
from labelspace.graph import relative_range
from labelspace.oracles import Naive, naive_wlr, random_graph, to_set
from labelspace.wlr import WlrCounterexample, check_wlr

from conftest import S


def test_fixture_a_smallest_family_holds(A):
    assert check_wlr(A, smallest_accommodating(A)).holds


def test_fixture_a_block_family_fails(A):
    v = check_wlr(A, bar_e(A), exhaustive=True)
    assert not v.holds
    assert v.counterexample.holds_on(A)
    found = {(A.fmt(c.A), A.fmt(c.B), c.word) for c in v.all_counterexamples}
    assert ("{v1}", "{v3}", ("d",)) in found
    # least by (word length, pair order): the first block pair that collides
    assert (A.fmt(v.counterexample.A), A.fmt(v.counterexample.B)) == ("{v1}", "{v2}")
    assert relative_range(A, S(A, "v1") & S(A, "v3"), "d") == 0
    assert relative_range(A, S(A, "v1"), "d") & relative_range(A, S(A, "v3"), "d") == S(A, "v4")


def test_whole_vertex_set_alone(B):
    assert check_wlr(B, ExplicitFamily((B.full,))).holds


def test_pair_cap(A):
    with pytest.raises(ResourceError, match="--cap-pairs"):
        check_wlr(A, bar_e(A), pair_cap=3)


def test_counterexample_replay(A):
    assert WlrCounterexample(S(A, "v1"), S(A, "v3"), ("d",)).holds_on(A)
    assert not WlrCounterexample(S(A, "v1"), S(A, "v1", "v2"), ("d",)).holds_on(A)


@pytest.mark.parametrize("seed", range(40))
def test_nested_pairs_always_hold(seed):
    rng = random.Random(seed)
    g = random_graph(rng)
    for _ in range(30):
        B = rng.randrange(1, g.full + 1)
        A = B & rng.randrange(g.full + 1)
        w = tuple(rng.choice(g.labels) for _ in range(rng.randint(1, 5)))
        assert not WlrCounterexample(A, B, w).holds_on(g)


@pytest.mark.parametrize("seed", range(60))
def test_against_word_enumeration(seed):
    g = random_graph(random.Random(seed))
    nv = Naive(g)
    fam = smallest_accommodating(g)
    v = check_wlr(g, fam)
    d = naive_wlr(nv, [to_set(m) for m in fam.members])
    assert v.holds == (d is None)
    if d is not None:
        assert len(v.counterexample.word) == d
        assert v.counterexample.holds_on(g)


@pytest.mark.parametrize("seed", range(60))
def test_block_criterion_matches_explicit(seed):
    g = random_graph(random.Random(500 + seed))
    fam = bar_e(g)
    if len(fam.blocks) > 12:
        pytest.skip("too many blocks to materialize")
    implicit = check_wlr(g, fam)
    explicit = check_wlr(g, fam.materialize())
    assert implicit.holds == explicit.holds
    if not implicit.holds:
        assert len(implicit.counterexample.word) == len(explicit.counterexample.word)


def test_block_family_kind(B):
    v = check_wlr(B, BlockFamily(tuple(1 << i for i in range(B.n))))
    assert v.holds and v.family_kind == "blocks"
