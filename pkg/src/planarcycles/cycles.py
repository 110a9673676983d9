"""Edge-set arithmetic over GF(2), isometric cycles and cycle-count vectors.

An edge set is a Python int with bit e set for edge id e (bit 0 unused).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .graph import Graph, GraphError


def edge_bits(ids: Iterable[int]) -> int:
    bits = 0
    for e in ids:
        bits |= 1 << e
    return bits


def edge_ids(bits: int) -> list[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


def sym_diff(a: int, b: int, m: int | None = None) -> int:
    """XOR of two edge sets; with m given, both must lie inside 1..m."""
    if m is not None:
        limit = 1 << (m + 1)
        if a >= limit or b >= limit or a & 1 or b & 1:
            raise ValueError(f"edge set outside 1..{m}")
    return a ^ b


def xor_all(sets: Iterable[int]) -> int:
    acc = 0
    for s in sets:
        acc ^= s
    return acc


@dataclass(frozen=True)
class Cycle:
    edges: int
    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)

    @property
    def edge_list(self) -> list[int]:
        return edge_ids(self.edges)

    def __len__(self) -> int:
        return len(self.vertices)


def _walk(g: Graph, bits: int) -> tuple[int, ...]:
    ids = edge_ids(bits)
    if not ids or ids[-1] > g.m:
        raise GraphError("edge set is empty or outside the graph")
    inc: dict[int, list[int]] = {}
    for e in ids:
        for v in g.ends(e):
            inc.setdefault(v, []).append(e)
    if any(len(es) != 2 for es in inc.values()):
        raise GraphError("edge set is not a simple cycle")
    start = min(inc)
    e1, e2 = inc[start]
    first = e1 if g.other(e1, start) < g.other(e2, start) else e2
    seq = [start]
    v, e = g.other(first, start), first
    while v != start:
        seq.append(v)
        a, b = inc[v]
        e = b if a == e else a
        v = g.other(e, v)
    if len(seq) != len(ids):
        raise GraphError("edge set is a union of several cycles")
    return tuple(seq)


def cycle_from_edges(g: Graph, ids: Iterable[int]) -> Cycle:
    """Cycle from an edge list; the vertex walk starts at the smallest vertex toward its smaller neighbor."""
    bits = edge_bits(ids)
    return Cycle(bits, _walk(g, bits))


def cycle_from_vertices(g: Graph, seq: Sequence[int]) -> Cycle:
    """Cycle from a closed vertex walk; the given orientation is kept."""
    seq = tuple(seq)
    if len(seq) < 3 or len(set(seq)) != len(seq):
        raise GraphError("vertex sequence is not a simple cycle")
    bits = 0
    for a, b in zip(seq, seq[1:] + seq[:1]):
        bits |= 1 << g.edge_id(a, b)
    return Cycle(bits, seq)


def normalized(g: Graph, c: Cycle) -> Cycle:
    return Cycle(c.edges, _walk(g, c.edges))


@dataclass(frozen=True)
class CycleSystem:
    graph: Graph
    cycles: tuple[Cycle, ...]

    def __len__(self) -> int:
        return len(self.cycles)

    def __getitem__(self, i: int) -> Cycle:
        return self.cycles[i]

    @property
    def full_mask(self) -> int:
        return (1 << len(self.cycles)) - 1

    @cached_property
    def vertex_bits(self) -> tuple[int, ...]:
        return tuple(sum(1 << v for v in set(c.vertices)) for c in self.cycles)

    @cached_property
    def p_e(self) -> tuple[int, ...]:
        return cycle_vectors(self, self.full_mask)[0]

    @cached_property
    def p_v(self) -> tuple[int, ...]:
        return cycle_vectors(self, self.full_mask)[1]

    def members(self, mask: int) -> list[int]:
        return [i for i in range(len(self.cycles)) if mask >> i & 1]

    def reordered(self, order: Sequence[int]) -> "CycleSystem":
        return CycleSystem(self.graph, tuple(self.cycles[i] for i in order))


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def system_from_edge_lists(g: Graph, lists: Iterable[Iterable[int]]) -> CycleSystem:
    return CycleSystem(g, tuple(cycle_from_edges(g, ids) for ids in lists))


def cycle_vectors(sys: CycleSystem, active: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Per-edge and per-vertex counts of active cycles (index e-1 and v-1)."""
    g = sys.graph
    p_e = [0] * g.m
    p_v = [0] * g.n
    for i, c in enumerate(sys.cycles):
        if active >> i & 1:
            for e in edge_ids(c.edges):
                p_e[e - 1] += 1
            for v in c.vertices:
                p_v[v - 1] += 1
    return tuple(p_e), tuple(p_v)


def bfs_levels(g: Graph, v1: int, v2: int) -> list[int]:
    """Wave depths: v1 gets 1, v2 gets 2, then the wave spreads from v2 without passing v1."""
    if v1 == v2 or not g.has_edge(v1, v2):
        raise GraphError("wave needs two distinct adjacent vertices")
    depth = [0] * (g.n + 1)
    depth[v1], depth[v2] = 1, 2
    queue = deque([v2])
    while queue:
        v = queue.popleft()
        for u in g.neighbors(v):
            if depth[u] == 0:
                depth[u] = depth[v] + 1
                queue.append(u)
    if any(d == 0 for d in depth[1:]):
        raise GraphError("graph is disconnected")
    return depth[1:]


def all_distances(g: Graph) -> list[list[int]]:
    """Breadth-first distance matrix, 1-based on both axes (row 0 unused); -1 marks unreachable."""
    dist = [[-1] * (g.n + 1) for _ in range(g.n + 1)]
    for s in g.vertices:
        row = dist[s]
        row[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in g.neighbors(v):
                if row[u] < 0:
                    row[u] = row[v] + 1
                    queue.append(u)
    return dist


def is_isometric(g: Graph, c: Cycle, dist: list[list[int]] | None = None) -> bool:
    """True iff every in-cycle distance equals the graph distance."""
    seq = _walk(g, c.edges)
    if dist is None:
        dist = all_distances(g)
    k = len(seq)
    for i, j in combinations(range(k), 2):
        d = j - i
        if dist[seq[i]][seq[j]] != min(d, k - d):
            return False
    return True


def _shortest_paths(g: Graph, dist: list[list[int]], src: int, dst: int) -> list[tuple[int, ...]]:
    """All shortest src->dst vertex paths."""
    out: list[tuple[int, ...]] = []
    target = dist[dst]

    def extend(path: list[int]) -> None:
        v = path[-1]
        if v == dst:
            out.append(tuple(path))
            return
        for u in g.neighbors(v):
            if target[u] == target[v] - 1:
                path.append(u)
                extend(path)
                path.pop()

    extend([src])
    return out


def enumerate_isometric_cycles(g: Graph) -> CycleSystem:
    """All isometric cycles, sorted by their ascending edge-id lists.

    Each isometric cycle through edge (u, w) closes two shortest paths meeting at an
    opposite vertex (odd length) or at the ends of an opposite edge (even length),
    so candidates come from pairing shortest paths and are then filtered.
    """
    dist = all_distances(g)
    if any(d < 0 for d in dist[1][1:]):
        raise GraphError("graph is disconnected")
    found: set[int] = set()
    for e in g.edges:
        u, w = g.ends(e)
        du, dw = dist[u], dist[w]
        for x in g.vertices:
            if du[x] == dw[x] and du[x] > 0:
                for p in _shortest_paths(g, dist, u, x):
                    for q in _shortest_paths(g, dist, w, x):
                        _try_cycle(g, dist, found, p + q[-2::-1])
            if dw[x] == du[x] + 1:
                for y in g.neighbors(x):
                    if du[y] == dw[x] and dw[y] == du[x]:
                        for p in _shortest_paths(g, dist, u, x):
                            for q in _shortest_paths(g, dist, w, y):
                                _try_cycle(g, dist, found, p + q[::-1])
    cycles = sorted(found, key=edge_ids)
    return CycleSystem(g, tuple(Cycle(b, _walk(g, b)) for b in cycles))


def _try_cycle(g: Graph, dist: list[list[int]], found: set[int], seq: tuple[int, ...]) -> None:
    if len(seq) < 3 or len(set(seq)) != len(seq):
        return
    bits = 0
    for a, b in zip(seq, seq[1:] + seq[:1]):
        bits |= 1 << g.edge_id(a, b)
    if bits in found:
        return
    k = len(seq)
    for i, j in combinations(range(k), 2):
        d = j - i
        if dist[seq[i]][seq[j]] != min(d, k - d):
            return
    found.add(bits)
