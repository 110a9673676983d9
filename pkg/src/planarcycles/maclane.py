"""Quadratic and cubic MacLane functionals and the Euler residual of a cycle subset."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .cycles import CycleSystem, cycle_vectors, xor_all


@dataclass(frozen=True)
class FunctionalReport:
    f_quadratic: int
    fp_cubic: int
    covered_edges: int
    covered_vertices: int
    euler_residual: int
    active_cycles: int


def quadratic(p_e: Iterable[int]) -> int:
    return sum((a - 1) * (a - 2) for a in p_e if a > 0)


def cubic(p_e: Iterable[int]) -> int:
    return sum(a * (a - 1) * (a - 2) for a in p_e)


def maclane_f(sys: CycleSystem, mask: int) -> int:
    """Sum of (a-1)(a-2) over edges covered by the active cycles."""
    return quadratic(cycle_vectors(sys, mask)[0])


def maclane_fp(sys: CycleSystem, mask: int) -> int:
    """Sum of a(a-1)(a-2) over all edges."""
    return cubic(cycle_vectors(sys, mask)[0])


def euler_check(sys: CycleSystem, mask: int) -> int:
    """k - m' + n' - 1 over the active cycles and the edges/vertices they cover."""
    p_e, p_v = cycle_vectors(sys, mask)
    k = bin(mask).count("1")
    return k - sum(1 for a in p_e if a) + sum(1 for b in p_v if b) - 1


def report(sys: CycleSystem, mask: int) -> FunctionalReport:
    p_e, p_v = cycle_vectors(sys, mask)
    k = bin(mask).count("1")
    me = sum(1 for a in p_e if a)
    nv = sum(1 for b in p_v if b)
    return FunctionalReport(quadratic(p_e), cubic(p_e), me, nv, k - me + nv - 1, k)


def is_plane_configuration(sys: CycleSystem, members: Iterable[int]) -> bool:
    """XOR of the members is empty and their quadratic functional is zero.

    Repeated members are counted with multiplicity.
    """
    members = list(members)
    if not members:
        return False
    if xor_all(sys.cycles[i].edges for i in members):
        return False
    counts: dict[int, int] = {}
    for i in members:
        for e in sys.cycles[i].edge_list:
            counts[e] = counts.get(e, 0) + 1
    return quadratic(counts.values()) == 0


__all__ = [
    "FunctionalReport",
    "cubic",
    "euler_check",
    "is_plane_configuration",
    "maclane_f",
    "maclane_fp",
    "quadratic",
    "report",
]
