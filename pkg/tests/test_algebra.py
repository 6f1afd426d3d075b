import random
from fractions import Fraction
from itertools import combinations

import pytest

from labelspace import fixtures
from labelspace.algebra import Algebra, LinComb, Term
from labelspace.errors import FamilyError
from labelspace.graph import relative_range
from labelspace.oracles import Naive, rewrite_product, term_generators, to_mask, to_set

from conftest import S

SPACES = [("A", "smallest"), ("B", "smallest"), ("B", "blocks"), ("C", "smallest"),
          ("C", "blocks"), ("D", "smallest"), ("D", "blocks")]


@pytest.fixture(scope="module", params=SPACES, ids=lambda p: f"{p[0]}-{p[1]}")
def alg(request):
    name, family = request.param
    return Algebra(fixtures.load(name), family)


def members(alg):
    fam = alg.family
    return list(fam.members) if hasattr(fam, "members") else list(fam.materialize().members)


def random_lincomb(alg, rng, size=3):
    g = alg.g
    mem = members(alg)
    out = LinComb()
    for _ in range(size):
        alpha = tuple(rng.choice(g.labels) for _ in range(rng.randint(0, 3)))
        beta = tuple(rng.choice(g.labels) for _ in range(rng.randint(0, 3)))
        coeff = Fraction(rng.randint(-3, 3) or 1, rng.randint(1, 4))
        out = out + alg.term(alpha, rng.choice(mem), beta, coeff)
    return out


def test_canonicalize_examples(B):
    alg = Algebra(B)
    t = alg.canonicalize(Term(Fraction(1), ("a1",), B.full, ("a1",)))
    assert t.A == S(B, "v2")
    assert alg.canonicalize(Term(Fraction(1), ("a1",), S(B, "v1"), ())) is None
    t = alg.canonicalize(Term(Fraction(1), (), S(B, "v4", "v5"), ()))
    assert t.A == S(B, "v4", "v5")


def test_multiply_examples(B):
    alg = Algebra(B)
    v2, v45 = S(B, "v2"), S(B, "v4", "v5")
    assert alg.multiply(alg.p(B.full), alg.p(v2)) == alg.p(v2)
    assert alg.multiply(alg.s_star("a1"), alg.s("a2")) == LinComb()
    x = alg.multiply(alg.term("a1", v2, ()), alg.term("a3", v45, "a3"))
    assert x == alg.term(("a1", "a3"), v45, ("a3",))
    assert alg.format(x) == "s[a1.a3] p{v4,v5} s*[a3]"


def test_expand_examples(B, C):
    alg = Algebra(C)
    assert alg.expand(C.full, 1) == alg.term("a", C.full, "a")
    alg = Algebra(B)
    assert alg.expand(S(B, "v2"), 1) == alg.term("a3", S(B, "v4", "v5"), "a3")
    assert alg.expand(S(B, "v5"), 1) == alg.term("a6", S(B, "v6"), "a6")


def test_adjoint(B):
    alg = Algebra(B)
    x = alg.term("a1", S(B, "v2"), ("a1",), Fraction(2, 3))
    y = alg.adjoint(x)
    assert [(t.alpha, t.beta) for t in y] == [(("a1",), ("a1",))]
    z = alg.term(("a1", "a3"), S(B, "v4", "v5"), ("a3",))
    assert [(t.alpha, t.beta) for t in alg.adjoint(z)] == [(("a3",), ("a1", "a3"))]
    assert alg.adjoint(alg.adjoint(z)) == z
    assert alg.adjoint(alg.p(S(B, "v2"))) == alg.p(S(B, "v2"))


def test_non_wlr_family_refused(A):
    with pytest.raises(FamilyError):
        Algebra(A, "blocks")


def test_projection_relations(alg):
    mem = members(alg)[:14]
    for X, Y in combinations(mem, 2):
        assert alg.multiply(alg.p(X), alg.p(Y)) == alg.p(X & Y)
        assert alg.equivalent(alg.p(X | Y), alg.p(X) + alg.p(Y) - alg.p(X & Y))


def test_generator_relations(alg):
    g = alg.g
    for X in members(alg)[:14]:
        for a in g.labels:
            left = alg.multiply(alg.p(X), alg.s(a))
            assert left == alg.term((a,), relative_range(g, X, (a,)), ())
        assert alg.equivalent(alg.p(X), alg.expand(X, 1))
        assert alg.equivalent(alg.p(X), alg.expand(X, 2))
    for a in g.labels:
        for b in g.labels:
            prod = alg.multiply(alg.s_star(a), alg.s(b))
            if a == b:
                assert prod == alg.p(relative_range(g, g.full, (a,)))
            else:
                assert prod == LinComb()


def test_associativity(alg):
    rng = random.Random(11)
    for _ in range(1000):
        x, y, z = (random_lincomb(alg, rng, 1) for _ in range(3))
        assert alg.multiply(alg.multiply(x, y), z) == alg.multiply(x, alg.multiply(y, z))


def test_expand_coherence(alg):
    rng = random.Random(5)
    for X in members(alg)[:10]:
        e = alg.expand(X, 1)
        assert alg.equivalent(alg.multiply(e, e), e)
        for _ in range(20):
            x = random_lincomb(alg, rng)
            assert alg.equivalent(alg.multiply(alg.p(X), x), alg.multiply(e, x))


def test_adjoint_reverses_products(alg):
    rng = random.Random(3)
    for _ in range(200):
        x, y = random_lincomb(alg, rng), random_lincomb(alg, rng)
        assert alg.adjoint(alg.multiply(x, y)) == alg.multiply(alg.adjoint(y), alg.adjoint(x))


def test_against_naive_rewriter(alg):
    rng = random.Random(17)
    nv = Naive(alg.g)
    for _ in range(500):
        x, y = (random_lincomb(alg, rng, 1) for _ in range(2))
        if not x or not y:
            continue
        (s,), (t,) = list(x), list(y)
        got = alg.multiply_terms(s, t)
        naive = rewrite_product(nv, term_generators(s.alpha, to_set(s.A), s.beta)
                                + term_generators(t.alpha, to_set(t.A), t.beta))
        if got is None:
            assert naive is None
        else:
            assert naive == (got.alpha, to_set(got.A), got.beta)


def test_equivalence_detects_difference(B):
    alg = Algebra(B)
    assert not alg.equivalent(alg.p(S(B, "v2")), alg.p(S(B, "v3")))
    assert not alg.equivalent(alg.p(B.full), LinComb())
