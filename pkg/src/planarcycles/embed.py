"""Rotation systems, face tracing and the cycles-to-rotation construction.

A rotation lists the neighbors of each vertex in cyclic order. Faces are traced
with the successor rule: after arriving at v from u, leave toward the neighbor
that follows u in sigma(v).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .cycles import CycleSystem, _walk
from .graph import Graph, GraphError
from .planarize import PlanarResult

Dart = tuple[int, int]


def _rotate_to_min(seq: Sequence[int]) -> tuple[int, ...]:
    if not seq:
        return ()
    k = min(range(len(seq)), key=lambda i: seq[i])
    return tuple(seq[k:]) + tuple(seq[:k])


def cyclic_equal(a: Sequence[int], b: Sequence[int], *, reflect: bool = False) -> bool:
    """True iff a and b are the same cyclic sequence (optionally up to reversal)."""
    if len(a) != len(b):
        return False
    if not a:
        return True
    doubled = tuple(b) * 2
    n = len(a)
    ta = tuple(a)
    if any(doubled[i : i + n] == ta for i in range(n)):
        return True
    return reflect and cyclic_equal(tuple(reversed(a)), b)


@dataclass(frozen=True)
class RotationSystem:
    sigma: Mapping[int, tuple[int, ...]]

    def __post_init__(self) -> None:
        for v, nbrs in self.sigma.items():
            if len(set(nbrs)) != len(nbrs):
                raise GraphError(f"repeated neighbor in rotation of v{v}")
            for u in nbrs:
                if v not in self.sigma.get(u, ()):
                    raise GraphError(f"rotation lists v{u} at v{v} but not conversely")

    @property
    def vertices(self) -> list[int]:
        return sorted(v for v, nbrs in self.sigma.items() if nbrs)

    def edges(self) -> list[tuple[int, int]]:
        return sorted({(min(v, u), max(v, u)) for v, nbrs in self.sigma.items() for u in nbrs})

    def darts(self) -> list[Dart]:
        return sorted((v, u) for v, nbrs in self.sigma.items() for u in nbrs)

    def degree(self, v: int) -> int:
        return len(self.sigma.get(v, ()))

    def succ(self, v: int, u: int) -> int:
        nbrs = self.sigma[v]
        return nbrs[(nbrs.index(u) + 1) % len(nbrs)]

    def pred(self, v: int, u: int) -> int:
        nbrs = self.sigma[v]
        return nbrs[(nbrs.index(u) - 1) % len(nbrs)]

    def reflected(self) -> "RotationSystem":
        return RotationSystem({v: tuple(reversed(n)) for v, n in self.sigma.items()})

    def same_as(self, other: "RotationSystem", *, reflect: bool = True) -> bool:
        """Equal per vertex up to cyclic shift; with reflect, also up to one global reversal."""
        if set(self.vertices) != set(other.vertices):
            return False
        direct = all(cyclic_equal(self.sigma[v], other.sigma[v]) for v in self.vertices)
        if direct or not reflect:
            return direct
        return self.reflected().same_as(other, reflect=False)

    def canonical(self) -> dict[int, tuple[int, ...]]:
        return {v: _rotate_to_min(self.sigma[v]) for v in self.vertices}


def trace_faces(rot: RotationSystem) -> list[tuple[int, ...]]:
    """All faces as vertex walks, each started at its smallest unused dart."""
    used: set[Dart] = set()
    faces = []
    for dart in rot.darts():
        if dart in used:
            continue
        walk = []
        a, b = dart
        while (a, b) not in used:
            used.add((a, b))
            walk.append(a)
            a, b = b, rot.succ(b, a)
        faces.append(tuple(walk))
    return faces


def face_darts(face: Sequence[int]) -> list[Dart]:
    return list(zip(face, tuple(face[1:]) + tuple(face[:1])))


def orient_rim(rim: Sequence[int]) -> tuple[int, ...]:
    """Orient a closed walk so that at its smallest vertex the predecessor is below the successor."""
    rim = tuple(rim)
    k = rim.index(min(rim))
    pred, succ = rim[k - 1], rim[(k + 1) % len(rim)]
    return rim if pred < succ else tuple(reversed(rim))


def cycles_to_rotation(cycles: Sequence[Sequence[int]], rim: Sequence[int]) -> RotationSystem:
    """Rotation whose face trace returns the given interior cycles and rim.

    The rim is oriented by orient_rim, every interior cycle is oriented against
    its neighbors across shared edges, and the corners (a, v, b) of the oriented
    faces are stitched into succ_v(a) = b.
    """
    faces = [orient_rim(rim)] + [tuple(c) for c in cycles]
    for f in faces:
        if len(f) < 3 or len(set(f)) != len(f):
            raise GraphError(f"face {f} is not a simple cycle")
    owners: dict[tuple[int, int], list[int]] = {}
    for i, f in enumerate(faces):
        for a, b in face_darts(f):
            owners.setdefault((min(a, b), max(a, b)), []).append(i)
    bad = [e for e, o in owners.items() if len(o) != 2]
    if bad:
        a, b = bad[0]
        raise GraphError(f"edge v{a}-v{b} lies on {len(owners[bad[0]])} faces instead of 2")
    oriented: dict[int, tuple[int, ...]] = {0: faces[0]}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for a, b in face_darts(oriented[i]):
            own = owners[(min(a, b), max(a, b))]
            j = own[0] if own[1] == i else own[1]
            if j == i:
                raise GraphError(f"face {oriented[i]} meets itself along v{a}-v{b}")
            want = faces[j] if (b, a) in face_darts(faces[j]) else tuple(reversed(faces[j]))
            if j in oriented:
                if oriented[j] != want:
                    raise GraphError("cycles cannot be oriented consistently")
                continue
            oriented[j] = want
            queue.append(j)
    if len(oriented) != len(faces):
        raise GraphError("cycle system is not connected across edges")
    nxt: dict[int, dict[int, int]] = {}
    for f in oriented.values():
        k = len(f)
        for i, v in enumerate(f):
            a, b = f[i - 1], f[(i + 1) % k]
            slot = nxt.setdefault(v, {})
            if a in slot:
                raise GraphError(f"two corners at v{v} leave from v{a}")
            slot[a] = b
    sigma = {}
    for v, slot in nxt.items():
        start = min(slot)
        order = [start]
        while (u := slot[order[-1]]) != start:
            order.append(u)
        if len(order) != len(slot):
            raise GraphError(f"corners at v{v} form more than one cycle")
        sigma[v] = tuple(order)
    return RotationSystem(sigma)


@dataclass(frozen=True)
class Embedding:
    """A rotation with its faces; dummy vertices mark crossings of two real edges."""

    rotation: RotationSystem
    faces: tuple[tuple[int, ...], ...]
    rim_face: int
    dummy_vertices: Mapping[int, tuple[tuple[int, int], tuple[int, int]]] = field(default_factory=dict)

    @property
    def rim(self) -> tuple[int, ...]:
        return self.faces[self.rim_face] if self.rim_face >= 0 else ()

    @property
    def crossings(self) -> int:
        return len(self.dummy_vertices)

    def face_index(self, dart: Dart) -> int:
        for i, f in enumerate(self.faces):
            if dart in face_darts(f):
                return i
        raise GraphError(f"dart v{dart[0]}->v{dart[1]} is not embedded")


def make_embedding(
    rot: RotationSystem,
    rim_dart: Dart | None,
    dummies: Mapping[int, tuple[tuple[int, int], tuple[int, int]]] | None = None,
) -> Embedding:
    """Trace the faces of rot; the rim is the face holding rim_dart (none if rim_dart is None)."""
    faces = tuple(trace_faces(rot))
    emb = Embedding(rot, faces, -1, dict(dummies or {}))
    if rim_dart is None:
        return emb
    return Embedding(rot, faces, emb.face_index(rim_dart), dict(dummies or {}))


def embedding_from_cycles(cycles: Sequence[Sequence[int]], rim: Sequence[int]) -> Embedding:
    rot = cycles_to_rotation(cycles, rim)
    r = orient_rim(rim)
    return make_embedding(rot, (r[0], r[1]))


def embedding_from_result(sys: CycleSystem, res: PlanarResult) -> Embedding:
    """Embed the kept cycles of a planar result with its rim as the outer face."""
    g = sys.graph
    cycles = [sys.cycles[i].vertices for i in sys.members(res.kept_cycles)]
    if not res.rim:
        raise GraphError("planar result has an empty rim")
    return embedding_from_cycles(cycles, _walk(g, res.rim))


def real_edge(emb: Embedding, a: int, b: int) -> tuple[int, int]:
    """The real edge carrying segment a-b, followed straight through dummy vertices."""
    ends = []
    for x, y in ((a, b), (b, a)):
        prev, cur = x, y
        while cur in emb.dummy_vertices:
            nbrs = emb.rotation.sigma[cur]
            nxt = nbrs[(nbrs.index(prev) + 2) % 4]
            prev, cur = cur, nxt
        ends.append(cur)
    return min(ends), max(ends)


@dataclass(frozen=True)
class EmbeddingReport:
    vertices: int
    edges: int
    faces: int
    components: int
    euler_characteristic: int
    genus_residual: int
    problems: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.problems


def verify_embedding(emb: Embedding) -> EmbeddingReport:
    """Check the faces against the rotation, dart usage, Euler's formula and dummy degrees."""
    rot = emb.rotation
    problems = []
    traced = trace_faces(rot)
    canon = sorted(_rotate_to_min(f) for f in traced)
    if canon != sorted(_rotate_to_min(f) for f in emb.faces):
        problems.append("faces differ from the face trace of the rotation")
    seen: dict[Dart, int] = {}
    for f in emb.faces:
        for d in face_darts(f):
            seen[d] = seen.get(d, 0) + 1
    if set(seen) != set(rot.darts()) or any(c != 1 for c in seen.values()):
        problems.append("some dart is not on exactly one face")
    verts = rot.vertices
    edges = rot.edges()
    h = nx.Graph(edges)
    comps = nx.number_connected_components(h) if verts else 0
    chi = len(verts) - len(edges) + len(traced)
    residual = 2 * comps - chi
    if residual:
        problems.append(f"V-E+F = {chi}, expected {2 * comps}")
    for d in emb.dummy_vertices:
        if rot.degree(d) != 4:
            problems.append(f"dummy v{d} has degree {rot.degree(d)}")
    if emb.rim_face >= len(emb.faces):
        problems.append("rim index out of range")
    return EmbeddingReport(len(verts), len(edges), len(traced), comps, chi, residual, tuple(problems))


def rotation_from_networkx(emb: nx.PlanarEmbedding) -> RotationSystem:
    """Rotation from a networkx planar embedding (its clockwise neighbor order)."""
    data = emb.get_data()
    return RotationSystem({v: tuple(nbrs) for v, nbrs in data.items() if nbrs})


def rotation_of_graph(g: Graph, edges: Iterable[int] | None = None) -> RotationSystem | None:
    """A planar rotation of g (or of the listed edges), or None when nonplanar."""
    h = nx.Graph()
    ids = g.edges if edges is None else edges
    h.add_edges_from(g.ends(e) for e in ids)
    planar, cert = nx.check_planarity(h)
    return rotation_from_networkx(cert) if planar else None
