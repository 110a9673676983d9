from __future__ import annotations

from hypothesis import given
from hypothesis import strategies as st

from planarcycles.cycles import cycle_from_vertices, enumerate_isometric_cycles, mask_of, CycleSystem
from planarcycles.graph import complete_graph
from planarcycles.maclane import cubic, euler_check, is_plane_configuration, maclane_f, maclane_fp, quadratic, report

import named_graphs as ng


def test_quadratic_ignores_uncovered_edges():
    assert quadratic([0, 1, 2, 3, 4]) == 0 + 0 + 2 + 6
    assert cubic([0, 1, 2, 3, 4]) == 6 + 24


@given(st.lists(st.integers(0, 30), max_size=40))
def test_functionals_vanish_exactly_on_counts_up_to_two(counts):
    zero = all(a <= 2 for a in counts)
    assert (cubic(counts) == 0) == zero
    assert (quadratic(counts) == 0) == all(a <= 2 for a in counts if a > 0)
    assert quadratic(counts) >= 0 and cubic(counts) >= 0


def test_k4_faces_form_a_plane_configuration():
    g = complete_graph(4)
    s = enumerate_isometric_cycles(g)
    assert maclane_f(s, s.full_mask) == 0
    assert is_plane_configuration(s, range(4))
    # three faces: the rim is the fourth triangle, Euler residual 0
    three = mask_of(range(3))
    assert euler_check(s, three) == 0
    assert report(s, three).covered_edges == 6


def test_k5_full_set_functionals():
    g, s = ng.k5()
    # every edge lies on 3 triangles
    assert maclane_f(s, s.full_mask) == 10 * 2
    assert maclane_fp(s, s.full_mask) == 10 * 6


def test_g5_full_set_functional():
    _, s = ng.from_lists(14, ng.G5_EDGES, ng.G5_CYCLES)
    assert maclane_f(s, s.full_mask) == 98


def test_plane_configuration_needs_empty_sum():
    g = complete_graph(4)
    s = CycleSystem(g, tuple(cycle_from_vertices(g, t) for t in ((1, 2, 3), (1, 2, 4))))
    assert not is_plane_configuration(s, [0, 1])
    assert not is_plane_configuration(s, [])
    # a cycle taken twice sums to zero but covers its edges twice
    assert is_plane_configuration(s, [0, 0])
    assert not is_plane_configuration(s, [0, 0, 0, 0])
