from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planarcycles.graph import (
    GraphError,
    complete_bipartite,
    complete_graph,
    from_adjacency,
    from_edges,
    spanning_split,
    validate_nonseparable,
)


def test_edge_ids_follow_row_scan():
    g = from_adjacency(4, [[2, 3, 4], [1, 3, 4], [1, 2, 4], [1, 2, 3]])
    assert g.edge_ends == ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
    assert g.incident_edges(3) == (2, 4, 6)
    assert g.edge_id(4, 2) == 5
    assert g.other(5, 2) == 4


def test_row_order_sets_edge_numbers():
    g = from_adjacency(3, [[3, 2], [1, 3], [1, 2]])
    assert g.ends(1) == (1, 3)
    assert g.ends(2) == (1, 2)


def test_complete_graph_counts():
    g = complete_graph(5)
    assert (g.n, g.m, g.cyclomatic()) == (5, 10, 6)
    assert g.ends(8) == (3, 4)


def test_complete_bipartite():
    g = complete_bipartite(3, 3)
    assert g.m == 9
    assert all(g.degree(v) == 3 for v in g.vertices)


@pytest.mark.parametrize(
    "rows, fragment",
    [
        ([[2], [1, 1]], "duplicate"),
        ([[2], [3], [2]], "asymmetric"),
        ([[1, 2], [1]], "self-loop"),
        ([[5], [1]], "out of range"),
        ([[2]], "expected 2"),
    ],
)
def test_malformed_rows_rejected(rows, fragment):
    with pytest.raises(GraphError, match=fragment):
        from_adjacency(2 if fragment != "asymmetric" else 3, rows)


def test_unknown_edge():
    with pytest.raises(GraphError):
        complete_graph(3).edge_id(1, 1)


def test_validate_accepts_k4():
    assert validate_nonseparable(complete_graph(4)) == []


def test_validate_reports_every_problem():
    # two triangles sharing v3: degree < 3 and a cut vertex
    g = from_edges(5, [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)])
    problems = validate_nonseparable(g)
    assert any(p.startswith("degree<3") for p in problems)
    assert "cut vertex: v3" in problems


def test_validate_bridge_and_disconnected():
    two_k4 = from_edges(8, [(a, b) for a in range(1, 5) for b in range(a + 1, 5)] + [(a + 4, b + 4) for a in range(1, 5) for b in range(a + 1, 5)])
    assert "disconnected" in validate_nonseparable(two_k4)
    joined = from_edges(8, list(two_k4.edge_ends) + [(1, 5)])
    problems = validate_nonseparable(joined)
    assert any(p.startswith("bridge") for p in problems)


def test_spanning_split_partitions_edges():
    g = complete_graph(6)
    sp = spanning_split(g)
    assert len(sp.tree_edges) == g.n - 1
    assert sp.tree_edges | sp.chords == set(g.edges)
    assert nx.is_tree(nx.Graph(g.ends(e) for e in sp.tree_edges))


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 9).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(1, n), st.integers(1, n)).filter(lambda t: t[0] < t[1]), min_size=n))))
def test_from_edges_roundtrip(data):
    n, edges = data
    g = from_edges(n, edges)
    assert set(g.edge_ends) == set(edges)
    assert list(g.edge_ends) == sorted(edges)
    for v in g.vertices:
        assert len(g.incident_edges(v)) == g.degree(v)
