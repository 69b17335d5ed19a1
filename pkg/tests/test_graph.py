import pytest
from hypothesis import given

from ngorenstein.graph import DecoratedGraph, GraphError, derived_weights, parse_graph, serialize, to_dot, validate

from conftest import cycle_graph, graphs


def test_parse_two_vertex():
    g = parse_graph("v a 1\nv b 2\ne a b")
    assert g.vertices == ("a", "b")
    assert dict(g.p) == {"a": 1, "b": 2}
    assert g.mult("a", "b") == 1
    assert g.e is None


def test_parse_single_weighted():
    g = parse_graph(b"v a 0 e=2")
    assert g.vertices == ("a",)
    assert dict(g.e) == {"a": 2}
    assert not g.edges


def test_comments_blank_lines_and_multiplicity():
    g = parse_graph("# header\n\nv x 0\n  v y 0\ne x y\ne y x m=2\n")
    assert g.mult("x", "y") == 3
    assert g.mult("y", "x") == 3


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("v a 0\ne a a", "loop"),
        ("v a 0\nv a 1", "duplicate"),
        ("v a 0\ne a b", "unknown vertex"),
        ("v a 0\nv b 0", "disconnected"),
        ("v a 0 e=2\nv b 0\ne a b", "some but not all"),
        ("v a 0 e=0", "e"),
        ("v a -1", "genus"),
        ("v a x", "integer"),
        ("w a 0", "unknown line type"),
        ("v a 0 f=2", "e=<e>"),
        ("v a 0\nv b 0\ne a b m=0", "multiplicity"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(GraphError, match=fragment):
        parse_graph(text)


def test_error_reports_line_and_column():
    with pytest.raises(GraphError) as info:
        parse_graph("v a 0\n\nv b zz")
    assert info.value.line == 3
    assert info.value.column == 5
    assert "line 3, column 5" in str(info.value)


def test_derived_weights_examples(two_vertex):
    dw = derived_weights(two_vertex)
    assert dict(dw.v) == {"a": 1, "b": 1}
    assert dict(dw.q) == {"a": 1, "b": 3}

    dw = derived_weights(DecoratedGraph.build(["x"], [1]))
    assert dict(dw.v) == {"x": 0} and dict(dw.q) == {"x": 0}

    dw = derived_weights(cycle_graph(3))
    assert set(dw.v.values()) == {2} and set(dw.q.values()) == {0}


def test_validate_examples(two_vertex):
    assert validate(two_vertex) == []
    split = DecoratedGraph(vertices=("a", "b"), p={"a": 0, "b": 0}, edges={})
    assert validate(split) == ["disconnected graph"]
    zero_e = DecoratedGraph(vertices=("a", "b"), p={"a": 0, "b": 0}, e={"a": 0, "b": 2}, edges={("a", "b"): 1})
    assert validate(zero_e) == ["non-positive self-intersection weight at vertex 'a'"]


def test_build_rejects_invalid():
    with pytest.raises(GraphError, match="loop"):
        DecoratedGraph.build(["a"], [0], [("a", "a")])


@given(graphs(max_vertices=6, max_mult=3))
def test_round_trip(g):
    h = parse_graph(serialize(g))
    assert h.vertices == g.vertices
    assert dict(h.p) == dict(g.p)
    assert h.adjacency() == g.adjacency()


@given(graphs(max_vertices=6, max_mult=3, with_e=True))
def test_round_trip_with_e(g):
    assert dict(parse_graph(serialize(g)).e) == dict(g.e)


@given(graphs(max_vertices=6, max_mult=3, max_p=4))
def test_derived_weight_invariants(g):
    dw = derived_weights(g)
    for v in g.vertices:
        assert dw.q[v] >= -2
        assert (dw.q[v] == -2) == (dw.v[v] == 0 and g.p[v] == 0)
    assert sum(dw.v.values()) == 2 * sum(g.edges.values())


def test_dot_labels(two_vertex):
    dot = to_dot(two_vertex.with_e([1, 2]))
    assert '"a" [label="a\\np=1\\ne=1"]' in dot
    assert '"a" -- "b" [label="1"]' in dot
