from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planarcycles.cycles import (
    bfs_levels,
    cycle_from_edges,
    cycle_from_vertices,
    cycle_vectors,
    edge_bits,
    edge_ids,
    enumerate_isometric_cycles,
    is_isometric,
    sym_diff,
    xor_all,
)
from planarcycles.graph import GraphError, complete_bipartite, complete_graph, from_edges

from named_graphs import g9


def test_edge_bits_roundtrip():
    assert edge_ids(edge_bits([3, 1, 7])) == [1, 3, 7]
    assert edge_bits([]) == 0


def test_sym_diff_checks_range():
    assert sym_diff(edge_bits([1, 2]), edge_bits([2, 3])) == edge_bits([1, 3])
    with pytest.raises(ValueError):
        sym_diff(edge_bits([5]), 0, m=4)
    with pytest.raises(ValueError):
        sym_diff(1, 0, m=4)


def test_xor_all_of_k4_faces_is_empty():
    g = complete_graph(4)
    tri = [cycle_from_vertices(g, t).edges for t in ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4))]
    assert xor_all(tri) == 0


def test_cycle_walk_starts_low():
    g = complete_graph(5)
    c = cycle_from_edges(g, [g.edge_id(3, 5), g.edge_id(1, 5), g.edge_id(1, 3)])
    assert c.vertices == (1, 3, 5)


def test_cycle_from_edges_rejects_non_cycles():
    g = complete_graph(5)
    with pytest.raises(GraphError):
        cycle_from_edges(g, [1, 2])
    with pytest.raises(GraphError):
        # two disjoint triangles do not exist in K5, but a bowtie is not simple
        cycle_from_edges(g, [g.edge_id(*p) for p in ((1, 2), (2, 3), (1, 3), (1, 4), (4, 5), (1, 5))])


def test_k5_triangles_in_canonical_order():
    s = enumerate_isometric_cycles(complete_graph(5))
    assert [c.edge_list for c in s.cycles] == [
        [1, 2, 5], [1, 3, 6], [1, 4, 7], [2, 3, 8], [2, 4, 9],
        [3, 4, 10], [5, 6, 8], [5, 7, 9], [6, 7, 10], [8, 9, 10],
    ]


def test_k33_has_nine_quadrilaterals():
    s = enumerate_isometric_cycles(complete_bipartite(3, 3))
    assert len(s) == 9 and all(c.length == 4 for c in s.cycles)


def test_petersen_cycles_are_the_twelve_pentagons():
    h = nx.petersen_graph()
    g = from_edges(10, [(a + 1, b + 1) for a, b in h.edges])
    s = enumerate_isometric_cycles(g)
    # diameter 2 rules out longer cycles
    assert len(s) == 12 and all(c.length == 5 for c in s.cycles)


def test_seven_vertex_graph_has_nineteen_cycles():
    g, s = g9()
    assert (g.n, g.m, len(s)) == (7, 16, 19)
    assert sum(s.p_v) == sum(c.length for c in s.cycles)


def test_cycle_vectors_count_membership():
    g = complete_graph(4)
    s = enumerate_isometric_cycles(g)
    p_e, p_v = cycle_vectors(s, s.full_mask)
    assert p_e == (2,) * 6 and p_v == (3,) * 4


def test_bfs_levels():
    g = complete_bipartite(2, 3)
    assert bfs_levels(g, 1, 3) == [1, 3, 2, 4, 4]
    with pytest.raises(GraphError):
        bfs_levels(g, 1, 2)


def _brute_isometric(g) -> set[int]:
    h = g.to_networkx()
    dist = dict(nx.all_pairs_shortest_path_length(h))
    out = set()
    for cyc in nx.simple_cycles(h):
        k = len(cyc)
        if k < 3:
            continue
        if all(dist[cyc[i]][cyc[j]] == min(j - i, k - j + i) for i in range(k) for j in range(i + 1, k)):
            out.add(cycle_from_vertices(g, cyc).edges)
    return out


graphs = st.integers(4, 8).flatmap(
    lambda n: st.sets(st.tuples(st.integers(1, n), st.integers(1, n)).filter(lambda t: t[0] < t[1]), min_size=n + 1).map(lambda es: from_edges(n, es))
).filter(lambda g: nx.is_connected(g.to_networkx()))


@settings(max_examples=80, deadline=None)
@given(graphs)
def test_enumeration_matches_brute_force(g):
    s = enumerate_isometric_cycles(g)
    assert {c.edges for c in s.cycles} == _brute_isometric(g)
    assert all(is_isometric(g, c) for c in s.cycles)
    assert [c.edge_list for c in s.cycles] == sorted(c.edge_list for c in s.cycles)
