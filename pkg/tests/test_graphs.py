import pytest
from hypothesis import given, settings

from mcps import (DirectedGraph, EdgeSet, EdgeListParseError, parse_edge_list,
                  to_dot, to_edge_list)
from mcps.generators import fixtures

from strategies import digraphs

W_TEXT = "4 5\n0 1\n0 2\n1 3\n2 3\n1 2"


def test_parse_single_edge():
    g = parse_edge_list("2 1\n0 1")
    assert g.n == 2
    assert g.edges == ((0, 1),)


def test_parse_w_graph():
    assert parse_edge_list(W_TEXT) == fixtures()["W"]


def test_parse_comments_and_trailing_newline():
    g = parse_edge_list("# a comment\n2 1\n# another\n0 1\n")
    assert g.edges == ((0, 1),)


@pytest.mark.parametrize("text,line,needle", [
    ("2 2\n0 1\n0 1", 3, "duplicate"),
    ("2 1\n0 2", 2, "out of range"),
    ("2 1\n1 1", 2, "self-loop"),
    ("2 1\n0 1 2", 2, "two fields"),
    ("2 1\nx y", 2, "non-integer"),
    ("2 2\n0 1", 1, "promises"),
])
def test_parse_errors_name_the_line(text, line, needle):
    with pytest.raises(EdgeListParseError) as err:
        parse_edge_list(text)
    assert err.value.line_no == line
    assert needle in str(err.value)


def test_constructor_rejects_bad_edges():
    with pytest.raises(ValueError):
        DirectedGraph(2, [(0, 0)])
    with pytest.raises(ValueError):
        DirectedGraph(2, [(0, 1), (0, 1)])
    with pytest.raises(ValueError):
        DirectedGraph(2, [(0, 2)])


def test_reachable_from():
    assert DirectedGraph(2, [(0, 1)]).reachable_from(0) == {0, 1}
    cycle = DirectedGraph(3, [(0, 1), (1, 2), (2, 0)])
    assert cycle.reachable_from(0) == {0, 1, 2}
    assert fixtures()["W"].reachable_from(3) == {3}


def test_spanning_subgraph():
    w = fixtures()["W"]
    assert w.spanning_subgraph(EdgeSet.full(w)).edges == w.edges
    empty = w.spanning_subgraph([])
    assert empty.n == w.n and empty.m == 0
    path = w.spanning_subgraph(EdgeSet.from_pairs(w, [(0, 1), (1, 3)]))
    assert path.edges == ((0, 1), (1, 3))
    assert path.orig_index == (0, 2)


def test_to_dot():
    g = DirectedGraph(2, [(0, 1)])
    assert to_dot(g) == "digraph {\n  0 -> 1;\n}\n"
    w = fixtures()["W"]
    dot = to_dot(w, highlight=[4])
    assert "  1 -> 2 [color=red];" in dot
    assert dot.count("[color=red]") == 1
    assert to_dot(parse_edge_list(to_edge_list(w)), highlight=[4]) == dot


def test_labels_in_dot():
    dot = to_dot(fixtures()["w_plus"])
    assert '0 [label="u"];' in dot


def test_acyclic_sources_sinks():
    w = fixtures()["W"]
    assert w.is_acyclic() and w.sources() == [0] and w.sinks() == [3]
    cycle = DirectedGraph(3, [(0, 1), (1, 2), (2, 0)])
    assert not cycle.is_acyclic() and cycle.sources() == []
    edgeless = DirectedGraph(2, [])
    assert edgeless.is_acyclic() and edgeless.sources() == [0, 1]


def test_edge_set_semantics():
    es = EdgeSet([3, 1, 1], 5)
    assert len(es) == 2 and list(es) == [1, 3]
    assert es == EdgeSet([1, 3], 5)
    with pytest.raises(ValueError):
        EdgeSet([5], 5)


@settings(max_examples=80)
@given(digraphs())
def test_parse_serialize_round_trip(g):
    assert parse_edge_list(to_edge_list(g)) == g


@settings(max_examples=60)
@given(digraphs())
def test_spanning_subgraph_counts(g):
    keep = [i for i in range(g.m) if i % 2 == 0]
    sub = g.spanning_subgraph(keep)
    assert sub.n == g.n and sub.m == len(keep)


@settings(max_examples=60)
@given(digraphs(max_n=5, max_m=8))
def test_reachability_monotone_under_edge_addition(g):
    missing = [(u, v) for u in range(g.n) for v in range(g.n)
               if u != v and not g.has_edge(u, v)]
    if not missing:
        return
    bigger = DirectedGraph(g.n, list(g.edges) + [missing[0]])
    for v in range(g.n):
        assert g.reachable_from(v) <= bigger.reachable_from(v)
