"""Level structure from the rim, contour placement and the fixed-boundary spring solve.

Levels are BFS strata from the rim (level 1). Each level is a cyclic vertex
sequence swept out of the level above it. The spring model puts every free
vertex at the stiffness-weighted average of its neighbors, which is a sparse
symmetric positive-definite system per coordinate.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Literal, Mapping, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from .embed import Embedding, RotationSystem
from .graph import Graph, GraphError

Point = tuple[float, float]
Adjacency = Mapping[int, Sequence[int]]


class LayoutError(GraphError):
    """Raised for singular spring systems and inconsistent boundaries."""


def adjacency_of(g: Graph | RotationSystem | Adjacency) -> dict[int, tuple[int, ...]]:
    """Neighbor rows keyed by vertex, keeping the source row order."""
    if isinstance(g, Graph):
        return {v: g.neighbors(v) for v in g.vertices}
    if isinstance(g, RotationSystem):
        return {v: tuple(n) for v, n in g.sigma.items()}
    return {v: tuple(n) for v, n in g.items()}


def _edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


# ---------------------------------------------------------------- levels


@dataclass(frozen=True)
class LevelStructure:
    """level_of[v] is 1 + distance to the rim; sequences[k - 1] is the cyclic level-k sequence.

    parents[k - 1][i] lists the level-(k - 1) occurrence indices that emitted
    occurrence i of level k, in sweep order. duplicates holds vertices that occur
    more than once in their level.
    """

    level_of: Mapping[int, int]
    sequences: tuple[tuple[int, ...], ...]
    parents: tuple[tuple[tuple[int, ...], ...], ...]
    duplicates: frozenset[int] = frozenset()

    @property
    def depth(self) -> int:
        return len(self.sequences)

    def sequence(self, k: int) -> tuple[int, ...]:
        return self.sequences[k - 1]


def rim_levels(adj: Adjacency, rim: Iterable[int]) -> dict[int, int]:
    """Multi-source BFS distance from the rim, plus one."""
    level = {v: 1 for v in rim}
    queue = deque(level)
    while queue:
        v = queue.popleft()
        for u in adj[v]:
            if u not in level:
                level[u] = level[v] + 1
                queue.append(u)
    return level


def _sweep_start(nbrs: Sequence[int], outer: set[int]) -> int:
    """Index in nbrs just after the block of outer neighbors."""
    k = len(nbrs)
    for i in range(k):
        if nbrs[i] in outer and nbrs[(i + 1) % k] not in outer:
            return (i + 1) % k
    return 0


def _merge_runs(emitted: list[tuple[int, list[int]]]) -> list[tuple[int, list[int]]]:
    """Merge equal neighbors (and the wrap when at least three entries survive)."""
    merged: list[tuple[int, list[int]]] = []
    for v, par in emitted:
        if merged and merged[-1][0] == v:
            merged[-1][1].extend(par)
        else:
            merged.append((v, list(par)))
    if len(merged) > 3 and merged[0][0] == merged[-1][0]:
        v, par = merged.pop()
        merged[0] = (v, par + merged[0][1])
    return merged


def level_structure(emb: Embedding) -> LevelStructure:
    """Level sequences swept from the rim walk.

    For each first occurrence a in level k - 1, the level-k neighbors of a are
    emitted in reverse rotation order, starting just after a's outer block (the
    rim predecessor on level 1, the lower-level neighbors deeper down).
    """
    if emb.rim_face < 0:
        raise LayoutError("embedding has no rim")
    sigma = emb.rotation.sigma
    rim = tuple(emb.rim)
    level = rim_levels(sigma, rim)
    sequences: list[tuple[int, ...]] = [rim]
    parents: list[tuple[tuple[int, ...], ...]] = [tuple(() for _ in rim)]
    depth = max(level.values())
    for k in range(2, depth + 1):
        upper = sequences[-1]
        seen: set[int] = set()
        emitted: list[tuple[int, list[int]]] = []
        for i, a in enumerate(upper):
            if a in seen:
                continue
            seen.add(a)
            back = tuple(reversed(sigma[a]))
            outer = {upper[i - 1]} if k == 2 else {u for u in back if level[u] < level[a]}
            start = _sweep_start(back, outer)
            for j in range(len(back)):
                u = back[(start + j) % len(back)]
                if level[u] == k:
                    emitted.append((u, [i]))
        merged = _merge_runs(emitted)
        sequences.append(tuple(v for v, _ in merged))
        parents.append(tuple(tuple(p) for _, p in merged))
    for k, seq in enumerate(sequences, start=1):
        missing = {v for v, lv in level.items() if lv == k} - set(seq)
        if missing:
            raise LayoutError(f"level {k} sweep missed vertices {sorted(missing)}")
    dups = frozenset(v for seq in sequences for v in seq if seq.count(v) > 1)
    return LevelStructure(level, tuple(sequences), tuple(parents), dups)


@dataclass(frozen=True)
class TopoSection:
    """Consecutive level-k pair, the level-(k - 1) endpoints it induces and the run between them."""

    level: int
    pair: tuple[int, int]
    endpoints: tuple[int, int]
    positions: tuple[int, int]
    members: tuple[int, ...]


def _central(par: Sequence[int]) -> int:
    return par[len(par) // 2]


def topo_sections(ls: LevelStructure, emb: Embedding | None = None) -> dict[int, list[TopoSection]]:
    """Sections of every level k >= 2; each pair member maps to its central parent occurrence."""
    out: dict[int, list[TopoSection]] = {}
    for k in range(2, ls.depth + 1):
        seq = ls.sequence(k)
        upper = ls.sequence(k - 1)
        par = ls.parents[k - 1]
        n, m = len(seq), len(upper)
        sections = []
        for i in range(n):
            j = (i + 1) % n
            pa, pb = _central(par[i]), _central(par[j])
            span = (pb - pa) % m
            members = tuple(upper[(pa + t) % m] for t in range(span + 1))
            sections.append(TopoSection(k, (seq[i], seq[j]), (upper[pa], upper[pb]), (pa, pb), members))
        out[k] = sections
    return out


# ---------------------------------------------------------------- placement


@dataclass(frozen=True)
class Drawing:
    """Vertex coordinates; fixed vertices kept their input positions exactly."""

    coords: Mapping[int, Point]
    fixed: frozenset[int] = frozenset()
    stiffness: Mapping[tuple[int, int], float] = field(default_factory=dict)
    residual: float = 0.0


def _unwrap(turns: list[float | None]) -> list[float]:
    """Cyclically ordered turn fractions, strictly increasing within one turn."""
    n = len(turns)
    anchored = [i for i, t in enumerate(turns) if t is not None]
    if not anchored:
        return [i / n for i in range(n)]
    first = anchored[0]
    base = turns[first]
    assert base is not None
    out: list[float | None] = [None] * n
    out[first] = base
    prev = base
    for i in anchored[1:]:
        t = turns[i]
        assert t is not None
        d = (t - prev) % 1.0
        prev = prev if d > 0.75 else prev + d
        out[i] = prev
    if prev - base >= 1.0:
        scale = (1.0 - 1.0 / n) / (prev - base)
        for i in anchored:
            out[i] = base + (out[i] - base) * scale  # type: ignore[operator]
    ring = anchored + [anchored[0] + n]
    for a, b in zip(ring, ring[1:]):
        ta = out[a % n]
        tb = out[b % n] if b < n else base + 1.0
        assert ta is not None and tb is not None
        for s in range(a + 1, b):
            out[s % n] = ta + (tb - ta) * (s - a) / (b - a)
    vals = [out[(first + i) % n] for i in range(n)]
    vals = [v if v is not None else 0.0 for v in vals]
    i = 0
    while i < n:
        j = i
        while j + 1 < n and vals[j + 1] <= vals[i]:
            j += 1
        if j > i:
            nxt = vals[j + 1] if j + 1 < n else vals[0] + 1.0
            gap = (nxt - vals[i]) / (j - i + 1)
            for s in range(i, j + 1):
                vals[s] = vals[i] + gap * (s - i)
        i = j + 1
    result = [0.0] * n
    for i in range(n):
        result[(first + i) % n] = vals[i] % 1.0
    return result


def _circular_mean(turns: Sequence[float]) -> float:
    s = sum(math.sin(2 * math.pi * t) for t in turns)
    c = sum(math.cos(2 * math.pi * t) for t in turns)
    if abs(s) < 1e-12 and abs(c) < 1e-12:
        return turns[0] % 1.0
    return (math.atan2(s, c) / (2 * math.pi)) % 1.0


def _contour_point(turn: float, r: float, contour: str) -> Point:
    s, c = math.sin(2 * math.pi * turn), math.cos(2 * math.pi * turn)
    if contour == "rect":
        scale = max(abs(s), abs(c))
        s, c = s / scale, c / scale
    return r * s, r * c


def place_on_contour(
    ls: LevelStructure,
    sections: Mapping[int, Sequence[TopoSection]],
    contour: Literal["circle", "rect"] = "circle",
    radius_step: float = 1.0,
) -> Drawing:
    """Initial drawing with every level on its own concentric contour.

    The longest level is spaced equally clockwise from the top. Levels above it
    take their section runs spread evenly between the pair positions; levels
    below it sit at the mean position of their parents. Level k uses radius
    radius_step * (depth - k + 1), so the rim is outermost.
    """
    if contour not in ("circle", "rect"):
        raise ValueError("contour must be 'circle' or 'rect'")
    depth = ls.depth
    base = max(range(1, depth + 1), key=lambda k: (len(ls.sequence(k)), -k))
    turns: dict[int, list[float]] = {base: [i / len(ls.sequence(base)) for i in range(len(ls.sequence(base)))]}
    for k in range(base, 1, -1):
        upper = ls.sequence(k - 1)
        anchors: list[list[float]] = [[] for _ in upper]
        m = len(upper)
        lower = turns[k]
        for s, sec in zip(range(len(sections[k])), sections[k]):
            ta = lower[s]
            tb = lower[(s + 1) % len(lower)]
            width = (tb - ta) % 1.0 or (1.0 if len(lower) == 1 else 0.0)
            span = len(sec.members) - 1
            for t in range(span + 1):
                frac = t / span if span else 0.5
                anchors[(sec.positions[0] + t) % m].append(ta + width * frac)
        turns[k - 1] = _unwrap([_circular_mean(a) if a else None for a in anchors])
    for k in range(base + 1, depth + 1):
        upper = turns[k - 1]
        raw = [_circular_mean([upper[p] for p in par]) for par in ls.parents[k - 1]]
        turns[k] = _unwrap(list(raw))
    coords: dict[int, Point] = {}
    for k in range(1, depth + 1):
        r = radius_step * (depth - k + 1)
        for v, t in zip(ls.sequence(k), turns[k]):
            coords.setdefault(v, _contour_point(t, r, contour))
    return Drawing(coords, frozenset(ls.sequence(1)))


# ---------------------------------------------------------------- spring model


@dataclass(frozen=True)
class SpringSystem:
    """One matrix shared by the x and y right-hand sides; free[i] owns row i."""

    free: tuple[int, ...]
    matrix: sp.csr_matrix
    rhs_x: np.ndarray
    rhs_y: np.ndarray
    fixed: Mapping[int, Point]
    adjacency: Mapping[int, tuple[int, ...]]
    stiffness: Mapping[tuple[int, int], float]

    def weight(self, u: int, v: int) -> float:
        return self.stiffness.get(_edge_key(u, v), 1.0)


def assemble_spring_system(
    g: Graph | RotationSystem | Adjacency,
    fixed: Mapping[int, Point],
    stiffness: Mapping[tuple[int, int], float] | None = None,
) -> SpringSystem:
    """Equilibrium rows: (sum of g_uv) x_v - sum over free u of g_uv x_u = sum over fixed u of g_uv X_u."""
    adj = adjacency_of(g)
    if not fixed:
        raise LayoutError("boundary is empty")
    unknown = [v for v in fixed if v not in adj]
    if unknown:
        raise LayoutError(f"boundary vertex v{unknown[0]} is not in the graph")
    weights = {_edge_key(*k): float(w) for k, w in (stiffness or {}).items()}
    if any(w <= 0 for w in weights.values()):
        raise LayoutError("stiffness must be positive")
    reach = set(fixed)
    queue = deque(fixed)
    while queue:
        v = queue.popleft()
        for u in adj[v]:
            if u not in reach:
                reach.add(u)
                queue.append(u)
    stranded = sorted(set(adj) - reach)
    if stranded:
        raise LayoutError(f"v{stranded[0]} has no path to the boundary (singular system)")
    free = tuple(sorted(v for v in adj if v not in fixed))
    index = {v: i for i, v in enumerate(free)}
    rows, cols, vals = [], [], []
    bx = np.zeros(len(free))
    by = np.zeros(len(free))
    for v in free:
        i = index[v]
        diag = 0.0
        for u in adj[v]:
            w = weights.get(_edge_key(u, v), 1.0)
            diag += w
            if u in index:
                rows.append(i)
                cols.append(index[u])
                vals.append(-w)
            else:
                bx[i] += w * fixed[u][0]
                by[i] += w * fixed[u][1]
        rows.append(i)
        cols.append(i)
        vals.append(diag)
    matrix = sp.csr_matrix((vals, (rows, cols)), shape=(len(free), len(free)))
    return SpringSystem(free, matrix, bx, by, dict(fixed), adj, weights)


def _relative_residual(a: sp.csr_matrix, z: np.ndarray, b: np.ndarray) -> float:
    r = float(np.max(np.abs(a @ z - b))) if len(b) else 0.0
    scale = float(np.max(np.abs(b))) if len(b) else 0.0
    return r / scale if scale > 0 else r


def solve_spring(system: SpringSystem, method: Literal["exact", "ildu"] = "exact") -> Drawing:
    """Equilibrium coordinates; residual is the worse relative residual of x and y.

    "exact" is a sparse LU factorization. "ildu" replays the incomplete
    factorization of the legacy solver (see _ildu_solve).
    """
    n = len(system.free)
    if n == 0:
        x = y = np.zeros(0)
    elif method == "exact":
        try:
            lu = splu(system.matrix.tocsc())
        except RuntimeError as exc:
            raise LayoutError(f"singular spring system: {exc}") from None
        x, y = lu.solve(system.rhs_x), lu.solve(system.rhs_y)
    elif method == "ildu":
        x, y = _ildu_solve(system)
    else:
        raise ValueError(f"unknown method {method!r}")
    residual = max(
        _relative_residual(system.matrix, x, system.rhs_x),
        _relative_residual(system.matrix, y, system.rhs_y),
    )
    coords: dict[int, Point] = {v: (float(p[0]), float(p[1])) for v, p in system.fixed.items()}
    for v, a, b in zip(system.free, x, y):
        coords[v] = (float(a), float(b))
    return Drawing(coords, frozenset(system.fixed), dict(system.stiffness), residual)


def _shell_sort(keys: list[int], carry: list[int]) -> None:
    """Diminishing-increment exchange sort of keys, permuting carry alongside.

    Kept instead of sorted() because the legacy solver's elimination order
    depends on how this unstable sort breaks ties.
    """
    n = len(keys)
    d = 1
    while d <= n:
        d *= 2
    while True:
        d = (d - 1) // 2
        if d == 0:
            return
        for i in range(n - d):
            j = i
            while j >= 0 and keys[j + d] < keys[j]:
                keys[j], keys[j + d] = keys[j + d], keys[j]
                carry[j], carry[j + d] = carry[j + d], carry[j]
                j -= d


def _ildu_solve(system: SpringSystem) -> tuple[np.ndarray, np.ndarray]:
    """Legacy incomplete LDU solve, reproduced step for step.

    Free vertices are ordered by their number of free neighbors. The upper
    structure of each row follows the adjacency row order. Fill is added only
    where a scan of the target row (running two entries past its end) misses
    the column, and the factorization updates only entries already present.
    The result is an approximation, so its residual is not small in general.
    """
    adj, fixed = system.adjacency, system.fixed
    free = list(system.free)
    na = len(free)
    order = list(free)
    counts = [sum(1 for u in adj[v] if u not in fixed) for v in order]
    _shell_sort(counts, order)
    pos = {v: i + 1 for i, v in enumerate(order)}
    for i, v in enumerate(fixed, start=na + 1):
        pos[v] = i
    # upper structure: ptr[r] is the first slot of row r (1-based rows, 0-based slots)
    cols: list[int] = []
    wts: list[float] = []
    ptr = [0, 0]
    for r in range(1, na + 1):
        v = order[r - 1]
        for u in adj[v]:
            k = pos[u]
            if k > na or k <= r:
                continue
            cols.append(k)
            wts.append(system.weight(u, v))
        ptr.append(len(cols))

    def col(i: int) -> int:
        return cols[i] if 0 <= i < len(cols) else 0

    for r in range(1, na + 1):
        lo, hi = ptr[r], ptr[r + 1]
        for a in range(lo, hi):
            koh = cols[a]
            k1 = ptr[koh]
            k2 = ptr[koh + 1] + 1
            for b in range(lo, hi):
                target = cols[b]
                if koh >= target:
                    continue
                if any(col(s) == target for s in range(k1, k2 + 1)):
                    continue
                at = ptr[koh]
                cols.insert(at, target)
                wts.insert(at, 0.0)
                for t in range(koh + 1, na + 2):
                    ptr[t] += 1
                k2 += 1
    diag = [0.0] * (na + 2)
    tx = [0.0] * (na + 2)
    ty = [0.0] * (na + 2)
    for v in free:
        diag[pos[v]] = sum(system.weight(u, v) for u in adj[v])
    for kv, (xk, yk) in fixed.items():
        for u in adj[kv]:
            k = pos[u]
            if k > na:
                continue
            w = system.weight(kv, u)
            tx[k] += w * xk
            ty[k] += w * yk
    upper = [-w for w in wts]
    lower = list(upper)
    for r in range(1, na):
        lo, hi = ptr[r], ptr[r + 1]
        for j in range(lo, hi):
            lower[j] /= diag[r]
        for j in range(lo, hi):
            koh = cols[j]
            k1, k2 = ptr[koh], ptr[koh + 1]
            for jc in range(lo, hi):
                if koh > cols[jc]:
                    continue
                if koh == cols[jc]:
                    diag[koh] -= upper[jc] * lower[jc]
                    continue
                for s in range(k1, k2):
                    if cols[s] == cols[jc]:
                        upper[s] -= upper[jc] * lower[j]
                        lower[s] -= lower[jc] * upper[j]
    for r in range(1, na):
        for j in range(ptr[r], ptr[r + 1]):
            tx[cols[j]] -= lower[j] * tx[r]
            ty[cols[j]] -= lower[j] * ty[r]
    zx = [0.0] * (na + 2)
    zy = [0.0] * (na + 2)
    for r in range(na, 0, -1):
        cx = cy = 0.0
        for j in range(ptr[r], ptr[r + 1]):
            cx += upper[j] * zx[cols[j]]
            cy += upper[j] * zy[cols[j]]
        zx[r] = (tx[r] - cx) / diag[r]
        zy[r] = (ty[r] - cy) / diag[r]
    x = np.array([zx[pos[v]] for v in free])
    y = np.array([zy[pos[v]] for v in free])
    return x, y


# ---------------------------------------------------------------- refinement


def refine_rounds(
    g: Graph | RotationSystem | Adjacency,
    ls: LevelStructure,
    boundary: Mapping[int, Point],
    rounds: int,
    *,
    stiffness: Mapping[tuple[int, int], float] | None = None,
    shrink: float = 2.0,
    method: Literal["exact", "ildu"] = "exact",
) -> Iterator[Drawing]:
    """Drawings after each round.

    Round 1 solves with the boundary fixed. Before round r + 1 every level-(r + 1)
    vertex is pulled toward its central parent, shortening that link by the
    shrink factor, and levels 1..r + 1 become fixed.
    """
    if rounds < 1:
        raise ValueError("rounds must be at least 1")
    if shrink < 1:
        raise ValueError("shrink factor must be at least 1")
    fixed = dict(boundary)
    for r in range(1, rounds + 1):
        drawing = solve_spring(assemble_spring_system(g, fixed, stiffness), method)
        yield drawing
        k = r + 1
        if k > ls.depth:
            return
        coords = drawing.coords
        upper = ls.sequence(k - 1)
        for v, par in zip(ls.sequence(k), ls.parents[k - 1]):
            if v in fixed:
                continue
            px, py = coords[upper[_central(par)]]
            wx, wy = coords[v]
            fixed[v] = (px + (wx - px) / shrink, py + (wy - py) / shrink)
        for v in ls.sequence(k - 1):
            fixed.setdefault(v, coords[v])


def iterative_refine(
    g: Graph | RotationSystem | Adjacency,
    ls: LevelStructure,
    boundary: Mapping[int, Point],
    rounds: int,
    **kwargs,
) -> Drawing:
    """Final drawing of refine_rounds."""
    drawing = None
    for drawing in refine_rounds(g, ls, boundary, rounds, **kwargs):
        pass
    assert drawing is not None
    return drawing


def _orient(p: Point, q: Point, r: Point) -> float:
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def _on_segment(p: Point, q: Point, r: Point, eps: float) -> bool:
    return min(p[0], q[0]) - eps <= r[0] <= max(p[0], q[0]) + eps and min(p[1], q[1]) - eps <= r[1] <= max(p[1], q[1]) + eps


def segments_intersect(a: Point, b: Point, c: Point, d: Point, eps: float = 1e-9) -> bool:
    """True iff closed segments ab and cd meet (touching counts)."""
    o1, o2 = _orient(a, b, c), _orient(a, b, d)
    o3, o4 = _orient(c, d, a), _orient(c, d, b)
    if ((o1 > eps and o2 < -eps) or (o1 < -eps and o2 > eps)) and ((o3 > eps and o4 < -eps) or (o3 < -eps and o4 > eps)):
        return True
    return (
        (abs(o1) <= eps and _on_segment(a, b, c, eps))
        or (abs(o2) <= eps and _on_segment(a, b, d, eps))
        or (abs(o3) <= eps and _on_segment(c, d, a, eps))
        or (abs(o4) <= eps and _on_segment(c, d, b, eps))
    )


def segment_crossings(coords: Mapping[int, Point], edges: Iterable[tuple[int, int]]) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Pairs of edges without a common endpoint whose straight segments meet."""
    segs = sorted({_edge_key(u, v) for u, v in edges})
    out = []
    for i, (a, b) in enumerate(segs):
        for c, d in segs[i + 1 :]:
            if {a, b} & {c, d}:
                continue
            if segments_intersect(coords[a], coords[b], coords[c], coords[d]):
                out.append(((a, b), (c, d)))
    return out
