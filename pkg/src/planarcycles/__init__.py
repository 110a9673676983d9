"""Maximal planar subgraphs via MacLane functionals over isometric cycles, embeddings and layouts."""

from __future__ import annotations

from .cycles import Cycle, CycleSystem, enumerate_isometric_cycles
from .embed import Embedding, RotationSystem, embedding_from_cycles, embedding_from_result, verify_embedding
from .gf2 import modified_gauss
from .graph import Graph, GraphError, complete_graph, from_adjacency, from_edges, validate_nonseparable
from .layout import (
    Drawing,
    LevelStructure,
    assemble_spring_system,
    iterative_refine,
    level_structure,
    place_on_contour,
    solve_spring,
    topo_sections,
)
from .maclane import cubic, maclane_f, maclane_fp, quadratic
from .planarize import PlanarResult, cubic_descent, evolutionary_search, random_restart_pipeline
from .reinsert import minimize_crossings, route_edge, thickness_decompose

__all__ = [
    "Cycle",
    "CycleSystem",
    "Drawing",
    "Embedding",
    "Graph",
    "GraphError",
    "LevelStructure",
    "PlanarResult",
    "RotationSystem",
    "assemble_spring_system",
    "complete_graph",
    "cubic",
    "cubic_descent",
    "embedding_from_cycles",
    "embedding_from_result",
    "enumerate_isometric_cycles",
    "evolutionary_search",
    "from_adjacency",
    "from_edges",
    "iterative_refine",
    "level_structure",
    "maclane_f",
    "maclane_fp",
    "minimize_crossings",
    "modified_gauss",
    "place_on_contour",
    "quadratic",
    "random_restart_pipeline",
    "route_edge",
    "solve_spring",
    "thickness_decompose",
    "topo_sections",
    "validate_nonseparable",
    "verify_embedding",
]
