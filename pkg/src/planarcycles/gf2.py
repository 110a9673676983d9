"""Gaussian elimination over GF(2) on cycle rows, with chord pivots and dependency labels.

Rows are edge sets (int bitsets). A row label is the bitset of cycle indices whose
XOR the row currently holds, so a row that becomes empty certifies a dependency.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .cycles import Cycle, CycleSystem, edge_ids, xor_all
from .graph import Graph, GraphError, SpanningTreeSplit
from .maclane import maclane_f


class BudgetExceeded(RuntimeError):
    """Raised when a transversal enumeration would exceed its budget."""


@dataclass(frozen=True)
class GaussTrace:
    """Outcome of one elimination.

    row_order lists cycle indices in final matrix order; row_edges and row_labels
    are aligned with it. A label always contains the row's own index.
    """

    pivot_chords: tuple[int, ...]
    row_order: tuple[int, ...]
    row_edges: tuple[int, ...]
    row_labels: tuple[int, ...]
    zero_rows: tuple[int, ...]
    basis_mask: int

    @property
    def dependencies(self) -> list[int]:
        label = dict(zip(self.row_order, self.row_labels))
        return [label[i] for i in self.zero_rows]

    @property
    def independent(self) -> bool:
        return not self.zero_rows


@dataclass(frozen=True)
class PlaneConfiguration:
    members: frozenset[int]
    plane: bool

    def sorted_members(self) -> list[int]:
        return sorted(self.members)


def _chord_bits(split: SpanningTreeSplit) -> int:
    bits = 0
    for h in split.chords:
        bits |= 1 << h
    return bits


def modified_gauss(
    g: Graph,
    split: SpanningTreeSplit,
    sys: CycleSystem,
    *,
    move_to_end: bool = True,
) -> GaussTrace:
    """Eliminate rows top-down with the first chord of each row as pivot.

    Lower rows holding the pivot chord are XOR-ed with the pivot row; with
    move_to_end they are also moved behind all other rows in ascending cycle
    index, otherwise they stay in place (which keeps a greedy prefix basis).
    """
    limit = 1 << (g.m + 1)
    chord_bits = _chord_bits(split)
    rows: list[list[int]] = []
    for i, c in enumerate(sys.cycles):
        if c.edges >= limit or c.edges & 1:
            raise GraphError(f"cycle {i + 1} is not an edge set of the graph")
        rows.append([c.edges, 1 << i, i])
    pivots: list[int] = []
    zero: list[int] = []
    k = 0
    while k < len(rows):
        bits, label, idx = rows[k]
        if not bits:
            zero.append(idx)
            k += 1
            continue
        live = bits & chord_bits
        if not live:
            raise GraphError(f"row of cycle {idx + 1} holds tree edges only")
        pivot = (live & -live).bit_length() - 1
        pivots.append(pivot)
        hit, rest = [], []
        for row in rows[k + 1 :]:
            if row[0] >> pivot & 1:
                row[0] ^= bits
                row[1] ^= label
                hit.append(row)
            else:
                rest.append(row)
        if move_to_end:
            hit.sort(key=lambda row: row[2])
            rows[k + 1 :] = rest + hit
        k += 1
    basis = 0
    for bits, _, idx in rows:
        if bits:
            basis |= 1 << idx
    return GaussTrace(
        tuple(pivots),
        tuple(r[2] for r in rows),
        tuple(r[0] for r in rows),
        tuple(r[1] for r in rows),
        tuple(zero),
        basis,
    )


def gf2_rank(vectors: Iterable[int]) -> int:
    """Rank of bitset vectors over GF(2)."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def is_independent(sys: CycleSystem, mask: int) -> bool:
    members = sys.members(mask)
    return gf2_rank(sys.cycles[i].edges for i in members) == len(members)


def extract_plane_configs(trace: GaussTrace, sys: CycleSystem) -> list[PlaneConfiguration]:
    """One configuration per zero row; members are the row label, plane iff F = 0."""
    out = []
    for label in trace.dependencies:
        members = sys.members(label)
        if xor_all(sys.cycles[i].edges for i in members):
            raise AssertionError("dependency label does not sum to the empty set")
        out.append(PlaneConfiguration(frozenset(members), maclane_f(sys, label) == 0))
    return out


def rim_constrained_configs(
    g: Graph,
    split: SpanningTreeSplit,
    sys: CycleSystem,
    rim_cycles: Sequence[Cycle],
    *,
    move_to_end: bool = False,
) -> list[PlaneConfiguration]:
    """Append the rim cycles as last rows and keep the dependencies that use a rim row.

    Member indices of rim rows continue the numbering of sys (first rim = len(sys)).
    """
    extended = CycleSystem(g, tuple(sys.cycles) + tuple(rim_cycles))
    trace = modified_gauss(g, split, extended, move_to_end=move_to_end)
    first_rim = len(sys)
    return [c for c in extract_plane_configs(trace, extended) if max(c.members) >= first_rim]


def chord_rows(
    g: Graph,
    split: SpanningTreeSplit,
    sys: CycleSystem,
    chord_order: Sequence[int] | None = None,
) -> list[tuple[int, list[int]]]:
    """For each chord, the indices of cycles passing through it (ascending chord id by default)."""
    order = sorted(split.chords) if chord_order is None else list(chord_order)
    if set(order) != set(split.chords):
        raise ValueError("chord order must list every chord once")
    return [(h, [i for i, c in enumerate(sys.cycles) if c.edges >> h & 1]) for h in order]


def _transversals(rows: Sequence[Sequence[int]], allowed: set[int] | None, budget: int) -> Iterator[tuple[int, ...]]:
    """Lexicographic transversals: one distinct cycle per row."""
    chosen: list[int] = []
    used: set[int] = set()
    emitted = 0

    def rec(k: int) -> Iterator[tuple[int, ...]]:
        nonlocal emitted
        if k == len(rows):
            emitted += 1
            if emitted > budget:
                raise BudgetExceeded(f"more than {budget} transversals")
            yield tuple(chosen)
            return
        for c in rows[k]:
            if c in used or (allowed is not None and c not in allowed):
                continue
            chosen.append(c)
            used.add(c)
            yield from rec(k + 1)
            used.discard(c)
            chosen.pop()

    yield from rec(0)


def parity_independence(
    g: Graph,
    split: SpanningTreeSplit,
    sys: CycleSystem,
    candidate: Sequence[int],
    *,
    budget: int = 10**6,
) -> tuple[bool, int]:
    """Count the ways the candidate covers the chord rows; odd means independent.

    Returns (independent, occurrences). The count parity equals the GF(2)
    determinant of the chord-by-candidate incidence matrix.
    """
    if len(candidate) != len(split.chords):
        raise ValueError("candidate size must equal the cyclomatic number")
    if len(set(candidate)) != len(candidate):
        return False, 0
    rows = [r for _, r in chord_rows(g, split, sys)]
    count = sum(1 for _ in _transversals(rows, set(candidate), budget))
    return count % 2 == 1, count


def running_string_enumerate(
    g: Graph,
    split: SpanningTreeSplit,
    sys: CycleSystem,
    *,
    budget: int = 10**6,
    chord_order: Sequence[int] | None = None,
) -> Iterator[frozenset[int]]:
    """Distinct cycle sets hit by the lexicographic transversals of the chord rows.

    Each set is yielded at its first occurrence; enumeration stops with
    BudgetExceeded once more than budget transversals were visited.
    """
    rows = [r for _, r in chord_rows(g, split, sys, chord_order)]
    seen: set[frozenset[int]] = set()
    for t in _transversals(rows, None, budget):
        s = frozenset(t)
        if s not in seen:
            seen.add(s)
            yield s


def basis_from_order(g: Graph, split: SpanningTreeSplit, sys: CycleSystem, order: Sequence[int]) -> int:
    """Greedy prefix basis of the cycles taken in the given order (mask over sys indices)."""
    trace = modified_gauss(g, split, sys.reordered(order), move_to_end=False)
    mask = 0
    for pos in range(len(order)):
        if trace.basis_mask >> pos & 1:
            mask |= 1 << order[pos]
    return mask


def describe_label(label: int) -> list[int]:
    """1-based cycle numbers held in a label."""
    return edge_ids(label << 1)
