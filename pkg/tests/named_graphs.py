"""Small worked instances used across the test suite.

Edge numbers are 1-based in the order given; cycle numbers are 1-based
positions in the cycle lists.
"""

from __future__ import annotations

import json
from pathlib import Path

from planarcycles.cycles import CycleSystem, enumerate_isometric_cycles, system_from_edge_lists
from planarcycles.formats import parse_grf
from planarcycles.graph import Graph, SpanningTreeSplit, complete_graph, from_adjacency, from_edges

DATA = Path(__file__).parent / "data"


def split_with_chords(g: Graph, chords) -> SpanningTreeSplit:
    chords = frozenset(chords)
    return SpanningTreeSplit(frozenset(set(g.edges) - chords), chords)


# K5 with lexicographic edges; its isometric cycles are the 10 triangles.
K5_TREE = {1, 2, 8, 10}


def k5() -> tuple[Graph, CycleSystem]:
    g = complete_graph(5)
    return g, enumerate_isometric_cycles(g)


# K6 without {1,3} and {3,5}: 13 edges, 13 triangles.
G1_CHORDS = {2, 3, 4, 6, 7, 8, 10, 11}
G1_DEPS_MOVE_TO_END = [{13, 12, 9, 8, 7, 6, 3, 2}, {12, 10, 8, 7}, {11, 6, 3, 2}, {13, 12, 8, 7, 6, 4, 3, 1}, {12, 8, 7, 5, 3, 1}]
G1_DEPS_IN_PLACE = [{9, 4, 2, 1}, {10, 5, 3, 1}, {11, 6, 3, 2}, {12, 8, 7, 5, 3, 1}, {13, 6, 5, 4}]
G1_RIM_EDGES = [1, 2, 5, 10, 11, 13]
G1_RIM_CONFIG = {14, 8, 6, 4, 3}


def g1() -> tuple[Graph, CycleSystem]:
    g = from_edges(6, [(a, b) for a in range(1, 7) for b in range(a + 1, 7) if (a, b) not in ((1, 3), (3, 5))])
    return g, enumerate_isometric_cycles(g)


G3_EDGES = [(1, 2), (1, 3), (1, 6), (1, 8), (2, 5), (2, 9), (3, 4), (3, 7), (4, 6), (4, 7), (5, 6), (5, 7), (6, 7), (7, 8), (7, 11), (8, 9), (8, 10), (9, 10), (9, 11), (10, 11)]
G3_CYCLES = [[1, 3, 5, 11], [1, 4, 6, 16], [2, 3, 7, 9], [2, 3, 8, 13], [2, 4, 8, 14], [3, 4, 13, 14], [5, 6, 12, 14, 16], [5, 6, 12, 15, 19], [7, 8, 10], [9, 10, 13], [11, 12, 13], [1, 2, 5, 8, 12], [1, 4, 5, 12, 14], [14, 15, 16, 19], [14, 15, 17, 20], [16, 17, 18], [18, 19, 20]]
# (cycle removed, F after) for the whole steepest-descent run
G3_DESCENT = [(13, 64), (7, 44), (4, 28), (12, 18), (6, 8), (14, 0), (8, 0)]

G5_EDGES = [(1, 2), (1, 7), (1, 12), (2, 3), (2, 9), (3, 4), (3, 13), (4, 5), (4, 10), (5, 6), (5, 14), (6, 7), (6, 11), (7, 8), (8, 9), (8, 14), (9, 10), (10, 11), (11, 12), (12, 13), (13, 14)]
G5_CYCLES = [[1, 2, 5, 14, 15], [1, 3, 4, 7, 20], [2, 3, 12, 13, 19], [4, 5, 6, 9, 17], [6, 7, 8, 11, 21], [8, 9, 10, 13, 18], [10, 11, 12, 14, 16], [8, 9, 11, 15, 16, 17], [4, 5, 7, 15, 16, 21], [12, 13, 14, 15, 17, 18], [1, 3, 5, 17, 18, 19], [6, 7, 9, 18, 19, 20], [10, 11, 13, 19, 20, 21], [2, 3, 14, 16, 20, 21]]

G6_EDGES = [(1, 2), (1, 3), (1, 5), (1, 6), (1, 8), (2, 3), (2, 5), (2, 9), (3, 4), (3, 5), (3, 7), (4, 5), (4, 7), (4, 9), (5, 6), (5, 7), (5, 8), (6, 8), (6, 9), (7, 8)]
G6_CYCLES = [[1, 2, 6], [1, 3, 7], [1, 4, 8, 19], [2, 3, 10], [2, 5, 11, 20], [3, 4, 15], [3, 5, 17], [4, 5, 18], [6, 7, 10], [6, 8, 9, 14], [7, 8, 12, 14], [7, 8, 15, 19], [9, 10, 12], [9, 11, 13], [10, 11, 16], [12, 13, 16], [12, 14, 15, 19], [15, 17, 18], [16, 17, 20]]
# basis, FP at start, cycles removed in order
G6_RUNS = [
    ({2, 3, 5, 8, 9, 10, 14, 15, 16, 17, 18, 19}, 12, [5, 19]),
    ({1, 2, 3, 6, 8, 9, 11, 13, 14, 16, 18, 19}, 24, [3, 11]),
]


def from_lists(n: int, edges, cycles) -> tuple[Graph, CycleSystem]:
    g = from_edges(n, edges)
    return g, system_from_edge_lists(g, cycles)


# 13 vertices, 22 edges, 20 isometric cycles listed by edge numbers.
G4_EDGES = [(1, 7), (1, 9), (1, 11), (2, 7), (2, 9), (2, 8), (2, 10), (3, 8), (3, 7), (3, 13), (3, 10), (4, 9), (4, 8), (4, 13), (4, 12), (4, 11), (5, 11), (5, 9), (5, 12), (6, 13), (6, 10), (6, 12)]
G4_CYCLES = [[1, 2, 4, 5], [1, 3, 8, 9, 13, 16], [1, 3, 9, 10, 14, 16], [2, 3, 12, 16], [2, 3, 17, 18], [4, 6, 8, 9], [4, 7, 9, 11], [5, 6, 12, 13], [5, 7, 18, 19, 21, 22], [6, 7, 8, 11], [5, 7, 12, 15, 21, 22], [5, 7, 12, 14, 20, 21], [8, 10, 13, 14], [1, 2, 9, 10, 12, 14], [10, 11, 20, 21], [12, 16, 17, 18], [12, 15, 18, 19], [14, 15, 20, 22], [15, 16, 17, 19], [6, 7, 13, 15, 21, 22]]
G4_TREE = {1, 4, 5, 8, 10, 12, 13, 17, 19, 20, 21, 22}
G4_CHORD_ORDER = [14, 18, 2, 6, 9, 11, 3, 7, 16, 15]
G4_CHORD_ROWS = {14: [3, 12, 13, 14, 18], 18: [5, 9, 16, 17], 2: [1, 4, 5, 14], 6: [6, 8, 10, 20], 9: [2, 3, 6, 7, 14], 11: [7, 10, 15], 3: [2, 3, 4, 5], 7: [7, 9, 10, 11, 12, 20], 16: [2, 3, 4, 16, 19], 15: [11, 17, 18, 19, 20]}
G4_DEPENDENT = [3, 5, 1, 8, 2, 7, 4, 10, 19, 11]


def g4() -> tuple[Graph, CycleSystem]:
    rows: list[list[int]] = [[] for _ in range(13)]
    for a, b in G4_EDGES:
        rows[a - 1].append(b)
        rows[b - 1].append(a)
    g = from_adjacency(13, rows)
    return g, system_from_edge_lists(g, G4_CYCLES)


# 7 vertices, 16 edges (file 7.grf), 19 isometric cycles. Each variant is a
# cycle order, the basis it yields and the edges the pipeline deletes.
G9_ORDERS = {
    1: [3, 17, 18, 15, 16, 11, 19, 5, 2, 6, 8, 12, 9, 4, 13, 1, 10, 14, 7],
    2: [10, 12, 5, 7, 1, 19, 13, 2, 17, 9, 3, 11, 6, 15, 8, 14, 18, 16, 4],
    3: [7, 16, 5, 8, 19, 2, 10, 17, 4, 12, 13, 15, 9, 18, 1, 11, 3, 14, 6],
    4: [11, 17, 10, 19, 13, 3, 16, 9, 2, 15, 18, 8, 6, 7, 4, 1, 12, 5, 14],
    5: [11, 14, 6, 3, 16, 19, 9, 10, 1, 17, 8, 18, 13, 7, 2, 15, 5, 4, 12],
    6: [9, 13, 19, 15, 18, 6, 16, 5, 7, 2, 10, 4, 11, 8, 17, 1, 14, 12, 3],
    7: [16, 4, 9, 7, 19, 8, 11, 18, 2, 10, 17, 1, 12, 15, 5, 13, 3, 6, 14],
    8: [9, 15, 14, 11, 1, 12, 2, 16, 7, 10, 3, 19, 6, 13, 17, 18, 8, 5, 4],
}
G9_BASES = {
    1: {3, 17, 18, 15, 16, 11, 5, 2, 6, 13},
    2: {10, 12, 5, 7, 1, 19, 13, 2, 17, 9},
    3: {7, 16, 5, 8, 19, 2, 10, 17, 12, 13},
    4: {11, 17, 10, 19, 13, 3, 9, 2, 15, 6},
    6: {9, 13, 19, 15, 18, 6, 16, 2, 7, 10},
    7: {16, 4, 9, 7, 19, 11, 18, 2, 10, 12},
}
G9_DELETED = {3: {2, 5, 13}, 4: {3, 12, 13}, 5: {3, 8}, 6: {9, 13}, 7: {2, 9, 12, 13}}
# Worked outcomes that a steepest choice does not reach.
G9_DELETED_WORKED = {1: {6, 7, 15}, 2: {9, 11, 13}}
G9_DELETED_COUNT_WORKED = {8: 5}


def g9() -> tuple[Graph, CycleSystem]:
    g = parse_grf(DATA / "7.grf")
    return g, enumerate_isometric_cycles(g)


# 7 vertices, embedded; faces as vertex walks, rim last.
G10_SIGMA = {1: (3, 2, 5), 2: (1, 3, 7, 6), 3: (5, 4, 7, 2, 1), 4: (3, 5, 6), 5: (4, 3, 1, 6), 6: (4, 5, 2, 7), 7: (2, 3, 6)}
G10_FACES = [(3, 4, 5), (1, 3, 5), (1, 5, 6, 2), (2, 6, 7), (4, 6, 5), (1, 2, 3), (2, 7, 3)]
G10_RIM = (3, 7, 6, 4)
# rotation after routing v2-v4 through faces 3, 2, 1 (dummies 8 and 9)
G10_FORCED_SIGMA = {1: (3, 2, 8), 2: (1, 3, 7, 6, 8), 3: (9, 4, 7, 2, 1), 4: (3, 9, 5, 6), 5: (4, 9, 8, 6), 6: (4, 5, 2, 7), 7: (2, 3, 6), 8: (1, 2, 5, 9), 9: (4, 3, 8, 5)}


def g12_faces() -> tuple[list[list[int]], list[int]]:
    rows = [list(map(int, line.split())) for line in (DATA / "g12.faces").read_text().splitlines() if line.strip() and not line.startswith("#")]
    return rows[:-1], rows[-1]


# final level table of the 31-vertex embedded graph
G12_LEVELS = [
    [31, 29, 28, 10, 2, 1],
    [25, 14, 27, 13, 6, 3, 5, 22],
    [24, 26, 12, 15, 12, 7, 11, 4, 21, 23],
    [19, 30, 8, 17, 16, 20],
    [18, 9, 18],
]


def g7() -> dict:
    d = json.loads((DATA / "g7.json").read_text())
    g = from_edges(d["n"], [tuple(e) for e in d["edges"]])
    return {"graph": g, "system": system_from_edge_lists(g, d["cycles"]), "rim": d["rim"], "ring": d["ring"]}


G7_KEPT_CHORDS = [11, 34, 37, 54, 61]
G7_REMOVED_CHORDS = [9, 45, 50, 22]


def printed_coords(name: str) -> dict[int, tuple[float, float]]:
    """Coordinates table: comment line, then ids, x values and y values."""
    rows = [line.split() for line in (DATA / name).read_text().splitlines() if line.strip() and not line.startswith("#")]
    ids = list(map(int, rows[0]))
    return {v: (float(x), float(y)) for v, x, y in zip(ids, rows[1], rows[2])}


def as_printed(value: float) -> float:
    """How the coordinates table renders a value: a units digit 6 shows as 5."""
    return value - 1.0 if int(abs(value)) % 10 == 6 else value


