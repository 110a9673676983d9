"""Simple undirected graphs with row-scan edge numbering.

Vertices and edges are 1-based. Edge ids are assigned by scanning vertices in
increasing order and each adjacency row left to right; an unnumbered slot takes
the next id and its mirror slot takes the same id.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx


class GraphError(ValueError):
    """Raised for malformed adjacency input."""


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]
    incidence: tuple[tuple[int, ...], ...]
    edge_ends: tuple[tuple[int, int], ...]
    _slot: dict[tuple[int, int], int] = field(repr=False, compare=False, hash=False)

    @property
    def m(self) -> int:
        return len(self.edge_ends)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def edges(self) -> range:
        return range(1, self.m + 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v - 1]

    def incident_edges(self, v: int) -> tuple[int, ...]:
        return self.incidence[v - 1]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v - 1])

    def ends(self, e: int) -> tuple[int, int]:
        return self.edge_ends[e - 1]

    def edge_id(self, u: int, v: int) -> int:
        try:
            return self._slot[(u, v)]
        except KeyError:
            raise GraphError(f"no edge between v{u} and v{v}") from None

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._slot

    def other(self, e: int, v: int) -> int:
        a, b = self.ends(e)
        return b if v == a else a

    def cyclomatic(self) -> int:
        return self.m - self.n + 1

    def to_networkx(self) -> nx.Graph:
        h = nx.Graph()
        h.add_nodes_from(self.vertices)
        for e, (a, b) in enumerate(self.edge_ends, start=1):
            h.add_edge(a, b, id=e)
        return h

    def subgraph_edges(self, keep: Iterable[int]) -> "Graph":
        """Same vertex set, only the listed edges (ids renumbered)."""
        keep = set(keep)
        lists = [[u for u, e in zip(self.neighbors(v), self.incident_edges(v)) if e in keep] for v in self.vertices]
        return from_adjacency(self.n, lists)


def from_adjacency(n: int, lists: Sequence[Sequence[int]]) -> Graph:
    """Build a graph from 1-based neighbor rows, numbering edges by row scan."""
    if len(lists) != n:
        raise GraphError(f"expected {n} adjacency rows, got {len(lists)}")
    rows = tuple(tuple(int(u) for u in row) for row in lists)
    for v, row in enumerate(rows, start=1):
        if len(set(row)) != len(row):
            raise GraphError(f"duplicate neighbor in row of v{v}")
        for u in row:
            if not 1 <= u <= n:
                raise GraphError(f"neighbor v{u} of v{v} out of range 1..{n}")
            if u == v:
                raise GraphError(f"self-loop at v{v}")
    for v, row in enumerate(rows, start=1):
        for u in row:
            if v not in rows[u - 1]:
                raise GraphError(f"asymmetric adjacency: v{v} lists v{u} but not conversely")
    slot: dict[tuple[int, int], int] = {}
    ends: list[tuple[int, int]] = []
    for v, row in enumerate(rows, start=1):
        for u in row:
            if (v, u) not in slot:
                ends.append((min(u, v), max(u, v)))
                slot[(v, u)] = slot[(u, v)] = len(ends)
    incidence = tuple(tuple(slot[(v, u)] for u in row) for v, row in enumerate(rows, start=1))
    return Graph(n, rows, incidence, tuple(ends), slot)


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph with sorted adjacency rows, so edge ids follow lexicographic (min, max) order."""
    lists: list[set[int]] = [set() for _ in range(n)]
    for a, b in edges:
        if a == b:
            raise GraphError(f"self-loop at v{a}")
        lists[a - 1].add(b)
        lists[b - 1].add(a)
    return from_adjacency(n, [sorted(s) for s in lists])


def complete_graph(n: int) -> Graph:
    return from_edges(n, ((a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    return from_edges(a + b, ((i, a + j) for i in range(1, a + 1) for j in range(1, b + 1)))


def validate_nonseparable(g: Graph) -> list[str]:
    """Return every violation of the admissible input class (empty list means ok)."""
    problems: list[str] = []
    low = [v for v in g.vertices if g.degree(v) < 3]
    if low:
        problems.append("degree<3: " + " ".join(f"v{v}" for v in low))
    h = g.to_networkx()
    if g.n == 0 or not nx.is_connected(h):
        problems.append("disconnected")
        return problems
    bridges = sorted(g.edge_id(a, b) for a, b in nx.bridges(h))
    if bridges:
        problems.append("bridge: " + " ".join(f"e{e}" for e in bridges))
    cuts = sorted(nx.articulation_points(h))
    if cuts:
        problems.append("cut vertex: " + " ".join(f"v{v}" for v in cuts))
    return problems


@dataclass(frozen=True)
class SpanningTreeSplit:
    tree_edges: frozenset[int]
    chords: frozenset[int]


def spanning_split(g: Graph) -> SpanningTreeSplit:
    """Depth-first tree from v1 that always follows the first unvisited neighbor in row order."""
    if g.n == 0:
        return SpanningTreeSplit(frozenset(), frozenset())
    seen = {1}
    tree: list[int] = []
    stack = [1]
    while stack:
        v = stack[-1]
        for u, e in zip(g.neighbors(v), g.incident_edges(v)):
            if u not in seen:
                seen.add(u)
                tree.append(e)
                stack.append(u)
                break
        else:
            stack.pop()
    if len(seen) != g.n:
        raise GraphError("graph is disconnected")
    tree_set = frozenset(tree)
    return SpanningTreeSplit(tree_set, frozenset(set(g.edges) - tree_set))
