import pytest
from hypothesis import given, settings, strategies as st

from labelspace.errors import GraphParseError, ValidationError
from labelspace.graph import (in_label_words, iter_bits, parse_graph, popcount, range_of_word,
                              relative_range, require_valid, serialize, validate)
from labelspace.oracles import random_graph

from conftest import S


def test_smallest_graph():
    g = parse_graph("edge v v a\n")
    assert g.vertices == ("v",)
    assert g.labels == ("a",)
    assert g.succ[0][0] == 1


def test_fixture_a_shape(A):
    assert A.n == 8
    assert A.labels == ("a", "b", "c", "d", "e", "f")
    assert len(A.edges) == 11


def test_duplicate_edge_rejected_with_line():
    with pytest.raises(GraphParseError) as exc:
        parse_graph("edge u w a\nedge u w a\n")
    assert exc.value.line == 2
    assert "duplicate" in str(exc.value)


def test_parse_errors():
    with pytest.raises(GraphParseError, match="line 1"):
        parse_graph("edge u w\n")
    with pytest.raises(GraphParseError, match="unknown directive"):
        parse_graph("node u\n")
    with pytest.raises(GraphParseError, match="unknown vertex"):
        parse_graph("vertex u\nedge u w a\n")
    with pytest.raises(GraphParseError, match="may not contain"):
        parse_graph("edge u u a.b\n")


def test_comments_and_declarations_order():
    g = parse_graph("# header\nvertex z\nvertex y\n\nedge y z a\nedge z y a\n")
    assert g.vertices == ("z", "y")


def test_validate(A, B):
    assert validate(A).ok
    assert validate(B).ok
    lonely = parse_graph("vertex v\n")
    report = validate(lonely)
    assert report.sinks == ("v",)
    with pytest.raises(ValidationError):
        require_valid(lonely)


def test_relative_range_examples(A, B):
    assert range_of_word(A, "a.b") == S(A, "v1", "v2")
    assert range_of_word(A, "a.c") == S(A, "v2", "v3")
    assert relative_range(A, 0, "a.b") == 0
    assert relative_range(B, S(B, "v2", "v3"), "a3") == S(B, "v4", "v5")
    assert range_of_word(B, "a3") == S(B, "v4", "v5")
    assert range_of_word(A, "f.a") == 0
    assert relative_range(A, S(A, "v1"), "d") == S(A, "v4")
    assert relative_range(A, S(A, "v1"), ()) == S(A, "v1")


def test_in_label_words(A):
    assert in_label_words(A, "v1", 2) == {("b",), ("a", "b")}
    assert in_label_words(A, "v2", 2) == {("b",), ("c",), ("a", "b"), ("a", "c")}
    assert in_label_words(A, "u0", 5) == frozenset()


def test_bit_helpers():
    assert list(iter_bits(0b10110)) == [1, 2, 4]
    assert popcount(0b10110) == 3


def test_unknown_label(A):
    with pytest.raises(ValueError):
        A.word("z")


graphs = st.builds(lambda seed: random_graph(__import__("random").Random(seed)), st.integers(0, 10**6))


@settings(max_examples=60, deadline=None)
@given(graphs, st.data())
def test_range_properties(g, data):
    A = data.draw(st.integers(0, g.full))
    B = data.draw(st.integers(0, g.full))
    letters = st.sampled_from(g.labels)
    u = tuple(data.draw(st.lists(letters, min_size=1, max_size=4)))
    v = tuple(data.draw(st.lists(letters, min_size=1, max_size=4)))
    r = relative_range
    assert r(g, A | B, u) == r(g, A, u) | r(g, B, u)
    assert r(g, A & B, u) & ~(r(g, A, u) & r(g, B, u)) == 0
    assert r(g, A, u + v) == r(g, r(g, A, u), v)


@settings(max_examples=60, deadline=None)
@given(graphs)
def test_serialize_round_trip(g):
    text = serialize(g)
    again = parse_graph(text)
    assert again == g
    assert serialize(again) == text
