"""Search engines for a planar spanning subgraph built from isometric cycles.

All engines work on masks over a CycleSystem. Steepest descent trims the full
set to a basis by the quadratic functional, cubic descent then drops cycles one
edge at a time, and the greedy and random-restart drivers wrap these steps.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .cycles import CycleSystem, cycle_vectors, edge_bits
from .gf2 import basis_from_order, is_independent
from .graph import Graph, SpanningTreeSplit, spanning_split
from .maclane import cubic, euler_check, maclane_f, quadratic


class DescentFailure(RuntimeError):
    """Cubic descent stalled with FP > 0 and no admissible removal."""

    def __init__(self, message: str, trace: list["DescentStep"], mask: int):
        super().__init__(message)
        self.trace = trace
        self.mask = mask


@dataclass(frozen=True)
class DescentStep:
    removed_cycle: int
    functional_after: int
    edges_deleted: frozenset[int] = frozenset()
    rejected: tuple[tuple[int, int, str], ...] = ()


@dataclass(frozen=True)
class BasisResult:
    mask: int
    trace: list[DescentStep]
    vetoed: list[tuple[int, int]] = field(default_factory=list)
    stalled: bool = False


@dataclass(frozen=True)
class PlanarResult:
    kept_cycles: int
    deleted_edges: frozenset[int]
    rim: int
    trace: list[DescentStep]
    seed: int | None = None
    permutation: tuple[int, ...] = ()

    @property
    def kept_count(self) -> int:
        return bin(self.kept_cycles).count("1")

    def rank_key(self) -> tuple[int, list[int]]:
        return len(self.deleted_edges), sorted(self.deleted_edges)


def _rim(sys: CycleSystem, mask: int) -> int:
    rim = 0
    for i in sys.members(mask):
        rim ^= sys.cycles[i].edges
    return rim


def _deleted(sys: CycleSystem, mask: int) -> frozenset[int]:
    p_e = cycle_vectors(sys, mask)[0]
    return frozenset(e for e, a in enumerate(p_e, start=1) if a == 0)


def steepest_descent_basis(sys: CycleSystem, nu: int) -> BasisResult:
    """Drop cycles one at a time, each time the one whose removal leaves the smallest F.

    A removal that would leave some covered vertex with no cycle is vetoed.
    Ties go to the longer cycle, then the lower index.
    """
    if len(sys) < nu:
        raise ValueError("fewer cycles than the cyclomatic number")
    mask = sys.full_mask
    trace: list[DescentStep] = []
    vetoed: list[tuple[int, int]] = []
    while bin(mask).count("1") > nu:
        options = []
        for i in sys.members(mask):
            p_e, p_v = cycle_vectors(sys, mask & ~(1 << i))
            options.append((quadratic(p_e), -sys.cycles[i].length, i, p_v))
        options.sort(key=lambda o: o[:3])
        chosen = None
        for f, _, i, p_v in options:
            if 0 in p_v:
                vetoed.append((i, f))
                continue
            chosen = (i, f)
            break
        if chosen is None:
            return BasisResult(mask, trace, vetoed, stalled=True)
        i, f = chosen
        mask &= ~(1 << i)
        trace.append(DescentStep(i, f))
    return BasisResult(mask, trace, vetoed)


def removal_effect(sys: CycleSystem, mask: int, i: int) -> tuple[int, frozenset[int], int]:
    """FP after dropping cycle i, the edges it would leave uncovered, and the Euler residual."""
    c = sys.cycles[i]
    p_e = list(cycle_vectors(sys, mask)[0])
    zeroed = []
    for e in c.edge_list:
        p_e[e - 1] -= 1
        if p_e[e - 1] == 0:
            zeroed.append(e)
    after = mask & ~(1 << i)
    return cubic(p_e), frozenset(zeroed), euler_check(sys, after)


def cubic_descent(sys: CycleSystem, basis_mask: int) -> PlanarResult:
    """Remove cycles until FP = 0, each removal uncovering exactly one edge.

    A removal uncovering several edges is allowed only when the Euler residual of
    the remaining cycles stays 0 (the lost vertices balance the lost edges).
    Among admissible removals the smallest FP wins, ties to the lowest index.
    """
    mask = basis_mask
    trace: list[DescentStep] = []
    fp = cubic(cycle_vectors(sys, mask)[0])
    while fp > 0:
        best = None
        rejected = []
        for i in sys.members(mask):
            fp_after, zeroed, residual = removal_effect(sys, mask, i)
            if not zeroed:
                rejected.append((i, fp_after, "no edge uncovered"))
                continue
            if len(zeroed) > 1 and residual != 0:
                rejected.append((i, fp_after, "Euler residual broken"))
                continue
            if best is None or fp_after < best[0]:
                best = (fp_after, i, zeroed)
        if best is None:
            raise DescentFailure(f"no admissible removal at FP={fp}", trace, mask)
        fp, i, zeroed = best
        mask &= ~(1 << i)
        trace.append(DescentStep(i, fp, zeroed, tuple(rejected)))
    return PlanarResult(mask, _deleted(sys, mask), _rim(sys, mask), trace)


def fragmentary_greedy(sys: CycleSystem, order: Sequence[int]) -> PlanarResult:
    """Grow a plane configuration by scanning cycles in order.

    A cycle joins when it shares an edge with the current rim (the first cycle
    always joins), the new rim is non-empty, F stays 0 and the Euler residual stays 0.
    """
    if sorted(order) != list(range(len(sys))):
        raise ValueError("order must permute the cycle indices")
    mask = 0
    rim = 0
    trace: list[DescentStep] = []
    for i in order:
        c = sys.cycles[i].edges
        if mask and not c & rim:
            continue
        new_rim = rim ^ c
        new_mask = mask | 1 << i
        if not new_rim or maclane_f(sys, new_mask) or euler_check(sys, new_mask):
            continue
        mask, rim = new_mask, new_rim
        trace.append(DescentStep(i, 0))
    return PlanarResult(mask, _deleted(sys, mask), rim, trace, permutation=tuple(order))


def pipeline_once(
    g: Graph, split: SpanningTreeSplit, sys: CycleSystem, order: Sequence[int]
) -> PlanarResult:
    """Greedy prefix basis of the permuted cycles followed by cubic descent."""
    basis = basis_from_order(g, split, sys, order)
    res = cubic_descent(sys, basis)
    return PlanarResult(res.kept_cycles, res.deleted_edges, res.rim, res.trace, permutation=tuple(order))


def random_restart_pipeline(
    g: Graph,
    sys: CycleSystem,
    restarts: int,
    seed: int,
    split: SpanningTreeSplit | None = None,
) -> PlanarResult:
    """Best of several shuffled runs: fewest deleted edges, then smallest edge list, then earliest run."""
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    split = split or spanning_split(g)
    rng = random.Random(seed)
    best: tuple | None = None
    failure: DescentFailure | None = None
    for run in range(restarts):
        order = list(range(len(sys)))
        rng.shuffle(order)
        try:
            res = pipeline_once(g, split, sys, order)
        except DescentFailure as exc:
            failure = exc
            continue
        key = (*res.rank_key(), run)
        if best is None or key < best[0]:
            best = (key, res)
    if best is None:
        assert failure is not None
        raise failure
    res = best[1]
    return PlanarResult(res.kept_cycles, res.deleted_edges, res.rim, res.trace, seed, res.permutation)


def crossover_merge(p1: Sequence[int], p2: Sequence[int]) -> list[int]:
    """Take the smaller head of the two parents, then drop that value from both."""
    if sorted(p1) != sorted(p2) or len(set(p1)) != len(p1):
        raise ValueError("parents must permute the same set")
    a, b = list(p1), list(p2)
    child = []
    while a:
        v = min(a[0], b[0])
        child.append(v)
        a.remove(v)
        b.remove(v)
    return child


@dataclass(frozen=True)
class EvolutionResult:
    best: PlanarResult
    history: list[int]


def evolutionary_search(
    g: Graph,
    sys: CycleSystem,
    population: int,
    generations: int,
    seed: int,
    p_mut: float = 0.2,
    split: SpanningTreeSplit | None = None,
) -> EvolutionResult:
    """Elitist permutation search; fitness is the number of edges kept.

    history holds the best fitness after initialization and after each generation.
    """
    if population < 2:
        raise ValueError("population must be at least 2")
    split = split or spanning_split(g)
    rng = random.Random(seed)
    counter = 0

    def evaluate(order: list[int]) -> tuple[tuple[int, int], list[int], PlanarResult | None]:
        nonlocal counter
        counter += 1
        try:
            res = pipeline_once(g, split, sys, order)
            fit = g.m - len(res.deleted_edges)
        except DescentFailure:
            res, fit = None, -1
        return (fit, -counter), order, res

    pool = []
    for _ in range(population):
        order = list(range(len(sys)))
        rng.shuffle(order)
        pool.append(evaluate(order))
    pool.sort(key=lambda t: t[0], reverse=True)
    history = [pool[0][0][0]]
    for _ in range(generations):
        children = []
        for _ in range(population):
            x, y = rng.sample(range(len(pool)), 2)
            child = crossover_merge(pool[x][1], pool[y][1])
            if rng.random() < p_mut:
                i, j = rng.sample(range(len(child)), 2)
                child[i], child[j] = child[j], child[i]
            children.append(evaluate(child))
        pool = sorted(pool + children, key=lambda t: t[0], reverse=True)[:population]
        history.append(pool[0][0][0])
    top = pool[0][2]
    if top is None:
        raise DescentFailure("every individual failed", [], 0)
    return EvolutionResult(
        PlanarResult(top.kept_cycles, top.deleted_edges, top.rim, top.trace, seed, top.permutation),
        history,
    )


def check_planar_result(sys: CycleSystem, res: PlanarResult) -> list[str]:
    """Every invariant a planar result must satisfy; empty list means all hold."""
    problems = []
    p_e, p_v = cycle_vectors(sys, res.kept_cycles)
    if quadratic(p_e):
        problems.append("quadratic functional > 0")
    if cubic(p_e):
        problems.append("cubic functional > 0")
    if euler_check(sys, res.kept_cycles):
        problems.append("Euler residual != 0")
    if not is_independent(sys, res.kept_cycles):
        problems.append("kept cycles dependent")
    if any(a > 2 for a in p_e):
        problems.append("edge covered more than twice")
    if res.deleted_edges != frozenset(e for e, a in enumerate(p_e, start=1) if a == 0):
        problems.append("deleted edges disagree with coverage")
    if res.rim != _rim(sys, res.kept_cycles):
        problems.append("rim is not the XOR of kept cycles")
    if res.rim != edge_bits(e for e, a in enumerate(p_e, start=1) if a == 1):
        problems.append("rim differs from the singly covered edges")
    return problems
