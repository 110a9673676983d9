"""Putting deleted material back: rim chords, vertices, routed edges and layers.

Chords with both ends on the rim are handled on the rim ring, where two chords
cross iff their endpoints interleave. Other edges are routed through the dual
graph, each crossed edge being subdivided by a degree-4 dummy vertex.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import networkx as nx

from .cycles import CycleSystem
from .embed import (
    Dart,
    Embedding,
    RotationSystem,
    embedding_from_result,
    face_darts,
    make_embedding,
    real_edge,
    rotation_of_graph,
    verify_embedding,
)
from .graph import Graph, GraphError
from .planarize import PlanarResult

ROUTE_CAP = 64


# ---------------------------------------------------------------- rim ring


@dataclass(frozen=True)
class KbsRing:
    """The rim as a closed ring of directed edges, starting at its lowest edge id."""

    vertices: tuple[int, ...]
    edge_ids: tuple[int, ...]

    @property
    def directed_edges(self) -> tuple[Dart, ...]:
        v = self.vertices
        return tuple(zip(v, v[1:] + v[:1]))

    @property
    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def __len__(self) -> int:
        return len(self.vertices)


def kbs_ring(g: Graph, emb: Embedding) -> KbsRing:
    rim = emb.rim
    if not rim:
        raise GraphError("embedding has no rim")
    ids = [g.edge_id(a, b) for a, b in face_darts(rim)]
    k = ids.index(min(ids))
    return KbsRing(rim[k:] + rim[:k], tuple(ids[k:] + ids[:k]))


def _arc(ring: KbsRing, u: int, w: int) -> tuple[int, int]:
    """Start position and length of the arc from min(u, w) to max(u, w)."""
    pos = ring.position
    if u not in pos or w not in pos:
        off = u if u not in pos else w
        raise GraphError(f"v{off} is not on the rim")
    lo, hi = pos[min(u, w)], pos[max(u, w)]
    return lo, (hi - lo) % len(ring)


def project(ring: KbsRing, u: int, w: int) -> tuple[int, ...]:
    """Edge ids of the ring arc from the lower-id endpoint to the higher-id one."""
    start, length = _arc(ring, u, w)
    n = len(ring)
    return tuple(ring.edge_ids[(start + i) % n] for i in range(length))


def _arc_bits(ring: KbsRing, u: int, w: int) -> int:
    start, length = _arc(ring, u, w)
    n = len(ring)
    bits = 0
    for i in range(length):
        bits |= 1 << ((start + i) % n)
    return bits


def chords_cross(ring: KbsRing, a: tuple[int, int], b: tuple[int, int]) -> bool:
    """Projections overlap without nesting, and so do their complements.

    The complement test makes the verdict independent of which arc is taken
    as the projection; it equals endpoint interleaving on the ring.
    """
    if set(a) & set(b):
        return False
    full = (1 << len(ring)) - 1
    pa, pb = _arc_bits(ring, *a), _arc_bits(ring, *b)
    partial = pa & pb and pa & ~pb and pb & ~pa
    return bool(partial and (pa | pb) != full)


def interleave(ring: KbsRing, a: tuple[int, int], b: tuple[int, int]) -> bool:
    """Reference predicate: exactly one endpoint of b lies strictly between the endpoints of a."""
    if set(a) & set(b):
        return False
    pos = ring.position
    lo, hi = sorted((pos[a[0]], pos[a[1]]))
    inside = [lo < pos[x] < hi for x in b]
    return inside[0] != inside[1]


def conflict_reduce(g: Graph, ring: KbsRing, chords: Sequence[int]) -> tuple[list[int], list[int]]:
    """Drop the chord with most remaining conflicts (ties: lowest id) until none cross."""
    live = sorted(set(chords))
    conflicts = {
        e: {f for f in live if f != e and chords_cross(ring, g.ends(e), g.ends(f))} for e in live
    }
    removed = []
    while True:
        worst = max(live, key=lambda e: (len(conflicts[e] & set(live)), -e), default=None)
        if worst is None or not conflicts[worst] & set(live):
            break
        live.remove(worst)
        removed.append(worst)
    return live, removed


# ---------------------------------------------------------------- face surgery


def _insert_after(sigma: dict[int, tuple[int, ...]], v: int, after: int, new: int) -> None:
    nbrs = list(sigma[v])
    nbrs.insert(nbrs.index(after) + 1, new)
    sigma[v] = tuple(nbrs)


def _corner(face: Sequence[int], v: int) -> int:
    """The vertex preceding v on the face walk (first occurrence of v)."""
    i = list(face).index(v)
    return face[i - 1]


def _split_face(sigma: dict[int, tuple[int, ...]], face: Sequence[int], x: int, y: int) -> None:
    """Add edge x-y inside the face, which must carry both vertices."""
    px, py = _corner(face, x), _corner(face, y)
    _insert_after(sigma, x, px, y)
    _insert_after(sigma, y, py, x)


def insert_chords(g: Graph, emb: Embedding, chords: Sequence[int]) -> Embedding:
    """Draw mutually non-crossing rim chords through the rim face.

    Each chord cuts off the arc on the side carrying no other pending chord
    endpoint (its projection when possible) as a new interior face; the rest
    stays the rim.
    """
    pending = list(chords)
    ring = kbs_ring(g, emb)
    for i, e in enumerate(pending):
        for f in pending[i + 1 :]:
            if chords_cross(ring, g.ends(e), g.ends(f)):
                raise GraphError(f"chords e{e} and e{f} cross")
    for e in pending:
        u, w = g.ends(e)
        if w in emb.rotation.sigma.get(u, ()):
            raise GraphError(f"e{e} is already embedded")
    while pending:
        ring = kbs_ring(g, emb)
        n = len(ring)
        pos = ring.position
        choice = None
        for e in sorted(pending):
            u, w = g.ends(e)
            start, length = _arc(ring, u, w)
            others = {x for f in pending if f != e for x in g.ends(f)}
            inner = {ring.vertices[(start + i) % n] for i in range(1, length)}
            outer = {ring.vertices[(start + length + i) % n] for i in range(1, n - length)}
            if not inner & others:
                choice = (e, start, length)
                break
            if not outer & others and choice is None:
                choice = (e, (start + length) % n, n - length)
        if choice is None:
            raise GraphError("no chord can be drawn without crossing another")
        e, start, length = choice
        cut = ring.vertices[start], ring.vertices[(start + length) % n]
        keep = (ring.vertices[(start + length) % n], ring.vertices[(start + length + 1) % n])
        sigma = dict(emb.rotation.sigma)
        _split_face(sigma, emb.rim, *cut)
        emb = make_embedding(RotationSystem(sigma), keep, emb.dummy_vertices)
        pending.remove(e)
    return emb


def insert_vertex(emb: Embedding, v: int, neighbors: Sequence[int]) -> tuple[Embedding, list[int], list[int]]:
    """Place v in the face carrying most of its neighbors and join it to them.

    Ties go to the lowest face index. Returns the new embedding, the joined
    neighbors and the neighbors left over.
    """
    if v in emb.rotation.sigma and emb.rotation.sigma[v]:
        raise GraphError(f"v{v} is already embedded")
    best = None
    for i, f in enumerate(emb.faces):
        hit = [x for x in dict.fromkeys(f) if x in neighbors]
        if hit and (best is None or len(hit) > len(best[1])):
            best = (i, hit)
    if best is None:
        raise GraphError(f"no face carries a neighbor of v{v}")
    i, hit = best
    face = emb.faces[i]
    sigma = dict(emb.rotation.sigma)
    for x in hit:
        _insert_after(sigma, x, _corner(face, x), v)
    sigma[v] = tuple(reversed(hit))
    anchor = None
    if emb.rim_face >= 0:
        rim_darts = face_darts(emb.rim)
        anchor = rim_darts[0]
        if i == emb.rim_face:
            # keep a rim dart that leaves a joined vertex away from v
            anchor = next(d for d in rim_darts if d[0] in hit) if hit else anchor
    leftover = [x for x in neighbors if x not in hit]
    return make_embedding(RotationSystem(sigma), anchor, emb.dummy_vertices), hit, leftover


# ---------------------------------------------------------------- routing


@dataclass(frozen=True)
class Route:
    """Faces visited from u to w and, between consecutive faces, the crossed dart of the earlier face."""

    edge: tuple[int, int]
    faces: tuple[int, ...]
    crossed_edges: tuple[Dart, ...]

    @property
    def crossings(self) -> int:
        return len(self.crossed_edges)


def _dual(emb: Embedding) -> dict[int, list[tuple[int, Dart]]]:
    owner = {}
    for i, f in enumerate(emb.faces):
        for d in face_darts(f):
            owner[d] = i
    adj: dict[int, list[tuple[int, Dart]]] = {i: [] for i in range(len(emb.faces))}
    for i, f in enumerate(emb.faces):
        for a, b in face_darts(f):
            j = owner[(b, a)]
            if j != i:
                adj[i].append((j, (a, b)))
    for lst in adj.values():
        lst.sort()
    return adj


def route_edge(emb: Embedding, u: int, w: int, cap: int = ROUTE_CAP) -> list[Route]:
    """All dual paths of minimal crossing count from a face at u to a face at w (at most cap)."""
    sigma = emb.rotation.sigma
    for x in (u, w):
        if not sigma.get(x):
            raise GraphError(f"v{x} is not embedded")
    starts = [i for i, f in enumerate(emb.faces) if u in f]
    goals = {i for i, f in enumerate(emb.faces) if w in f}
    adj = _dual(emb)
    dist = {i: 0 for i in starts}
    frontier = list(starts)
    while frontier and not goals & set(frontier):
        nxt = []
        for i in frontier:
            for j, _ in adj[i]:
                if j not in dist:
                    dist[j] = dist[i] + 1
                    nxt.append(j)
        frontier = nxt
    ends = sorted(goals & set(frontier))
    if not ends:
        raise GraphError(f"v{u} and v{w} lie in different components")
    depth = dist[ends[0]]
    # walk back from the goals along strictly decreasing distance
    back: dict[int, list[tuple[int, Dart]]] = {}
    for i in dist:
        for j, d in adj[i]:
            if dist.get(j) == dist[i] + 1:
                back.setdefault(j, []).append((i, d))
    routes: list[Route] = []

    def extend(path: list[int], darts: list[Dart]) -> None:
        if len(routes) >= cap:
            return
        head = path[0]
        if dist[head] == 0:
            routes.append(Route((u, w), tuple(path), tuple(darts)))
            return
        for i, d in sorted(back.get(head, [])):
            extend([i] + path, [d] + darts)

    for g_ in ends:
        extend([g_], [])
    routes.sort(key=lambda r: (r.faces, r.crossed_edges))
    assert all(r.crossings == depth for r in routes)
    return routes[:cap]


def apply_route(emb: Embedding, route: Route) -> Embedding:
    """Draw the edge along the route, subdividing each crossed edge by a new dummy vertex."""
    u, w = route.edge
    sigma = dict(emb.rotation.sigma)
    faces = {i: list(emb.faces[i]) for i in route.faces}
    next_id = max(max(sigma), max(emb.dummy_vertices, default=0)) + 1
    dummies = dict(emb.dummy_vertices)
    points = [u]
    rim_darts = face_darts(emb.rim) if emb.rim_face >= 0 else []
    for a, b in route.crossed_edges:
        d = next_id
        next_id += 1
        dummies[d] = (real_edge(emb, a, b), (min(u, w), max(u, w)))
        sigma[a] = tuple(d if x == b else x for x in sigma[a])
        sigma[b] = tuple(d if x == a else x for x in sigma[b])
        sigma[d] = (a, b)
        for walk in faces.values():
            for k in range(len(walk)):
                x, y = walk[k], walk[(k + 1) % len(walk)]
                if {x, y} == {a, b}:
                    walk.insert(k + 1, d)
                    break
        rim_darts = [p for x, y in rim_darts for p in (((x, d), (d, y)) if {x, y} == {a, b} else ((x, y),))]
        points.append(d)
    points.append(w)
    for k, i in enumerate(route.faces):
        _split_face(sigma, faces[i], points[k], points[k + 1])
    rot = RotationSystem(sigma)
    anchor = rim_darts[0] if rim_darts else None
    out = make_embedding(rot, anchor, dummies)
    report = verify_embedding(out)
    if not report.ok:
        raise GraphError("route application broke the embedding: " + "; ".join(report.problems))
    return out


@dataclass(frozen=True)
class CrossingResult:
    embedding: Embedding
    crossings: int
    order: tuple[tuple[int, int], ...]
    explored: int


def _route_search(emb: Embedding, edges: Sequence[tuple[int, int]], bound: int, budget: list[int]) -> tuple[int, Embedding] | None:
    """Depth-first search over minimal routes; returns the best result below bound."""
    if not edges:
        return emb.crossings, emb
    if budget[0] <= 0:
        return None
    budget[0] -= 1
    best = None
    u, w = edges[0]
    for r in route_edge(emb, u, w):
        if emb.crossings + r.crossings >= bound:
            continue
        got = _route_search(apply_route(emb, r), edges[1:], bound, budget)
        if got is not None and got[0] < bound:
            bound, best = got[0], got
    return best


def minimize_crossings(
    emb: Embedding,
    deleted: Sequence[tuple[int, int]],
    budget: int = 24,
    seed: int = 0,
    node_budget: int = 200_000,
) -> CrossingResult:
    """Best insertion over orders (identity first, then shuffles) and minimal-route choices.

    Each order is searched depth-first over the minimal routes of its edges,
    recomputed on the updated embedding after every insertion.
    """
    edges = [tuple(sorted(e)) for e in deleted]
    if not edges:
        return CrossingResult(emb, emb.crossings, (), 0)
    rng = random.Random(seed)
    orders: list[tuple[tuple[int, int], ...]] = [tuple(edges)]
    seen = {orders[0]}
    limit = math.factorial(len(edges))
    tries = 0
    while len(orders) < min(budget, limit) and tries < 20 * budget:
        tries += 1
        perm = list(edges)
        rng.shuffle(perm)
        if tuple(perm) not in seen:
            seen.add(tuple(perm))
            orders.append(tuple(perm))
    best: tuple[int, Embedding, tuple] | None = None
    nodes = [node_budget]
    for order in orders:
        bound = best[0] if best else 10**9
        got = _route_search(emb, order, bound, nodes)
        if got is not None and (best is None or got[0] < best[0]):
            best = (got[0], got[1], order)
    if best is None:
        raise GraphError("search budget exhausted before any insertion completed")
    return CrossingResult(best[1], best[0], best[2], node_budget - nodes[0])


# ---------------------------------------------------------------- bounds


@dataclass(frozen=True)
class CrossingBounds:
    quartic: Fraction | None
    dense: Fraction | None


def crossing_lower_bound(n: int, m: int) -> Fraction | None:
    """m^3 / (64 n^2) when m > 4n, otherwise None."""
    return Fraction(m**3, 64 * n * n) if m > 4 * n else None


def crossing_bounds(n: int, m: int) -> CrossingBounds:
    """The m > 4n bound and, when m > 7n, the sharper m^3 / (29 n^2)."""
    dense = Fraction(m**3, 29 * n * n) if m > 7 * n else None
    return CrossingBounds(crossing_lower_bound(n, m), dense)


def thickness_reference(n: int) -> int:
    """Thickness of K_n: floor((n + 7) / 6), except 3 for n = 9 and n = 10."""
    if n < 1:
        raise ValueError("n must be positive")
    return 3 if n in (9, 10) else (n + 7) // 6


def bipartite_thickness_reference(a: int, b: int) -> int:
    """ceil(ab / (2(a + b - 2))) for K_{a,b}; 1 when that denominator vanishes."""
    if a < 1 or b < 1:
        raise ValueError("part sizes must be positive")
    den = 2 * (a + b - 2)
    return 1 if den == 0 else max(1, -(-a * b // den))


# ---------------------------------------------------------------- thickness


@dataclass(frozen=True)
class Layer:
    index: int
    edges: frozenset[int]
    embedding: Embedding


def _grow_first_layer(g: Graph, emb: Embedding, kept: set[int], order: Sequence[int]) -> tuple[Embedding, set[int], list[int]]:
    rest = []
    for e in order:
        u, w = g.ends(e)
        if not emb.rotation.sigma.get(u) or not emb.rotation.sigma.get(w):
            rest.append(e)
            continue
        routes = route_edge(emb, u, w, cap=1)
        if routes and routes[0].crossings == 0:
            emb = apply_route(emb, routes[0])
            kept.add(e)
        else:
            rest.append(e)
    return emb, kept, rest


def _planar_layer(g: Graph, order: Sequence[int]) -> tuple[set[int], list[int]]:
    h = nx.Graph()
    taken: set[int] = set()
    rest = []
    for e in order:
        h.add_edge(*g.ends(e))
        if nx.check_planarity(h)[0]:
            taken.add(e)
        else:
            h.remove_edge(*g.ends(e))
            rest.append(e)
    return taken, rest


def thickness_decompose(
    g: Graph,
    sys: CycleSystem,
    base: PlanarResult,
    attempts: int = 50,
    seed: int = 0,
) -> list[Layer]:
    """Partition the edges into crossing-free layers, best of several seeded attempts.

    Layer 1 starts from the base embedding and takes every remaining edge that
    has a crossing-free route in it. Later layers start empty and take edges
    while the layer stays planar.
    """
    if attempts < 1:
        raise ValueError("attempts must be at least 1")
    base_emb = embedding_from_result(sys, base)
    base_edges = set(g.edges) - set(base.deleted_edges)
    rng = random.Random(seed)
    best: list[Layer] | None = None
    for _ in range(attempts):
        order = sorted(base.deleted_edges)
        rng.shuffle(order)
        emb, kept, rest = _grow_first_layer(g, base_emb, set(base_edges), order)
        layers = [Layer(1, frozenset(kept), emb)]
        while rest:
            taken, rest_next = _planar_layer(g, rest)
            rot = rotation_of_graph(g, sorted(taken))
            assert rot is not None
            layers.append(Layer(len(layers) + 1, frozenset(taken), make_embedding(rot, None)))
            rest = rest_next
        if best is None or len(layers) < len(best):
            best = layers
        if len(best) == 1:
            break
    assert best is not None
    return best
