"""Command line: planarize, embed, reinsert, lay out and render graphs from .grf files.

Exit status is 0 on success, 1 when the input fails validation or a stage
cannot finish, and 2 when a file cannot be parsed.
"""

from __future__ import annotations

import functools
import sys
from pathlib import Path
from typing import Callable

import click

from .cycles import CycleSystem, enumerate_isometric_cycles
from .embed import Embedding, embedding_from_result
from .formats import (
    FormatError,
    document,
    emit_json,
    emit_svg,
    parse_gm1,
    parse_grf,
    write_ezi,
    write_gm2,
)
from .graph import Graph, GraphError, validate_nonseparable
from .layout import (
    Point,
    assemble_spring_system,
    iterative_refine,
    solve_spring,
    level_structure,
    place_on_contour,
    topo_sections,
)
from .planarize import DescentFailure, PlanarResult, evolutionary_search, random_restart_pipeline
from .reinsert import minimize_crossings, thickness_decompose


def _guarded(fn: Callable) -> Callable:
    @functools.wraps(fn)
    def run(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except FormatError as exc:
            click.echo(f"parse error: {exc}", err=True)
            sys.exit(2)
        except (GraphError, DescentFailure) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)

    return run


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        out.write_text(text)


def _load(path: Path) -> Graph:
    try:
        text = path.read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    return parse_grf(text)


def _admissible(g: Graph) -> None:
    problems = validate_nonseparable(g)
    if problems:
        raise GraphError("input is not nonseparable: " + "; ".join(problems))


def _planarize(g: Graph, opts: dict) -> tuple[CycleSystem, PlanarResult]:
    _admissible(g)
    sys_ = enumerate_isometric_cycles(g)
    if opts["evolve"]:
        res = evolutionary_search(g, sys_, opts["pop"], opts["gens"], opts["seed"]).best
    else:
        res = random_restart_pipeline(g, sys_, opts["restarts"], opts["seed"])
    return sys_, res


def planar_options(fn: Callable) -> Callable:
    for deco in reversed(
        [
            click.option("--restarts", default=100, show_default=True, help="Shuffled pipeline runs."),
            click.option("--seed", default=0, show_default=True, help="Seed for every random choice."),
            click.option("--evolve", is_flag=True, help="Use the evolutionary search instead of restarts."),
            click.option("--pop", default=8, show_default=True, help="Population size for --evolve."),
            click.option("--gens", default=20, show_default=True, help="Generations for --evolve."),
        ]
    ):
        fn = deco(fn)
    return fn


def _split_opts(kwargs: dict) -> dict:
    return {k: kwargs.pop(k) for k in ("restarts", "seed", "evolve", "pop", "gens")}


GRF = click.argument("grf", type=click.Path(path_type=Path))
OUT = click.option("-o", "--output", "out", type=click.Path(path_type=Path), help="Write here instead of stdout.")


@click.group()
def main() -> None:
    """Maximal planar subgraphs from isometric cycles, embeddings and drawings."""


@main.command()
@GRF
@_guarded
def check(grf: Path) -> None:
    """Validate that the graph is nonseparable."""
    problems = validate_nonseparable(_load(grf))
    for p in problems:
        click.echo(p)
    if problems:
        sys.exit(1)
    click.echo("ok")


@main.command()
@GRF
@OUT
@_guarded
def cycles(grf: Path, out: Path | None) -> None:
    """Write the isometric cycles as .ezi."""
    _emit(write_ezi(enumerate_isometric_cycles(_load(grf))), out)


@main.command()
@GRF
@planar_options
@OUT
@_guarded
def planarize(grf: Path, out: Path | None, **kwargs) -> None:
    """Find a planar spanning subgraph; JSON with kept cycles and deleted edges."""
    g = _load(grf)
    sys_, res = _planarize(g, _split_opts(kwargs))
    _emit(emit_json(document(g, system=sys_, result=res)), out)


@main.command()
@GRF
@planar_options
@OUT
@_guarded
def embed(grf: Path, out: Path | None, **kwargs) -> None:
    """Planarize, then emit the rotation system and faces of the planar part."""
    g = _load(grf)
    sys_, res = _planarize(g, _split_opts(kwargs))
    emb = embedding_from_result(sys_, res)
    _emit(emit_json(document(g, system=sys_, result=res, embedding=emb)), out)


def _reinsert(g: Graph, sys_: CycleSystem, res: PlanarResult, mode: str, budget: int, attempts: int, seed: int):
    if mode == "crossings":
        base = embedding_from_result(sys_, res)
        deleted = [g.ends(e) for e in sorted(res.deleted_edges)]
        return minimize_crossings(base, deleted, budget=budget, seed=seed).embedding, None
    layers = thickness_decompose(g, sys_, res, attempts=attempts, seed=seed)
    return layers[0].embedding, layers


MODE = click.option("--mode", type=click.Choice(["crossings", "thickness"]), default="crossings", show_default=True)


@main.command()
@GRF
@MODE
@click.option("--budget", default=24, show_default=True, help="Insertion orders tried for crossings.")
@click.option("--attempts", default=50, show_default=True, help="Seeded attempts for thickness.")
@planar_options
@OUT
@_guarded
def reinsert(grf: Path, mode: str, budget: int, attempts: int, out: Path | None, **kwargs) -> None:
    """Put deleted edges back with crossings (dummy vertices) or as extra planar layers."""
    g = _load(grf)
    opts = _split_opts(kwargs)
    sys_, res = _planarize(g, opts)
    emb, layers = _reinsert(g, sys_, res, mode, budget, attempts, opts["seed"])
    doc = document(g, system=sys_, result=res, embedding=emb, layers=[lay.edges for lay in layers] if layers else None)
    _emit(emit_json(doc), out)


def _coords(
    emb: Embedding,
    spring: Graph | object,
    boundary: dict[int, Point] | None,
    contour: str,
    refine: int,
    method: str,
):
    ls = level_structure(emb)
    if boundary is None:
        initial = place_on_contour(ls, topo_sections(ls, emb), contour, radius_step=100.0 / max(1, ls.depth))
        boundary = {v: initial.coords[v] for v in ls.sequence(1)}
    return iterative_refine(spring, ls, boundary, refine, method=method)


LAYOUT_OPTS = [
    click.option("--boundary", type=click.Path(path_type=Path), help=".gm1 file with fixed vertices."),
    click.option("--contour", type=click.Choice(["circle", "rect"]), default="circle", show_default=True),
    click.option("--refine", default=1, show_default=True, help="Refinement rounds (1 = single solve)."),
    click.option("--method", type=click.Choice(["exact", "ildu"]), default="exact", show_default=True, help="Spring solver."),
]


def layout_options(fn: Callable) -> Callable:
    for deco in reversed(LAYOUT_OPTS):
        fn = deco(fn)
    return fn


def _boundary(path: Path | None) -> dict[int, Point] | None:
    if path is None:
        return None
    try:
        text = path.read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    return parse_gm1(text)


@main.command()
@GRF
@layout_options
@click.option("--format", "fmt", type=click.Choice(["json", "gm2"]), default="json", show_default=True)
@planar_options
@OUT
@_guarded
def layout(grf: Path, boundary: Path | None, contour: str, refine: int, method: str, fmt: str, out: Path | None, **kwargs) -> None:
    """Spring coordinates for every vertex of the input graph.

    With --boundary and a single round the graph is solved directly. Otherwise
    the levels come from the embedding of a planar part, whose rim is placed on
    the contour when no boundary file is given.
    """
    g = _load(grf)
    fixed = _boundary(boundary)
    if fixed is not None and refine <= 1:
        drawing = solve_spring(assemble_spring_system(g, fixed), method)
    else:
        sys_, res = _planarize(g, _split_opts(kwargs))
        drawing = _coords(embedding_from_result(sys_, res), g, fixed, contour, refine, method)
    _emit(write_gm2(drawing) if fmt == "gm2" else emit_json(document(g, drawing=drawing)), out)


@main.command()
@GRF
@click.option("--out", "out", type=click.Path(path_type=Path), required=True, help="SVG file to write.")
@click.option("--mode", type=click.Choice(["planar", "crossings", "thickness"]), default="crossings", show_default=True)
@click.option("--budget", default=24, show_default=True)
@click.option("--attempts", default=50, show_default=True)
@layout_options
@planar_options
@_guarded
def render(grf: Path, out: Path, mode: str, budget: int, attempts: int, boundary: Path | None, contour: str, refine: int, method: str, **kwargs) -> None:
    """Draw the graph as SVG: planar part, crossings as squares, or thickness layers."""
    g = _load(grf)
    opts = _split_opts(kwargs)
    sys_, res = _planarize(g, opts)
    if mode == "planar":
        emb, layers = embedding_from_result(sys_, res), None
    else:
        emb, layers = _reinsert(g, sys_, res, mode, budget, attempts, opts["seed"])
    drawing = _coords(emb, emb.rotation, _boundary(boundary), contour, refine, method)
    groups = [[g.ends(e) for e in lay.edges] for lay in layers] if layers else None
    out.write_text(emit_svg(drawing, embedding=emb, layers=groups))
    click.echo(f"wrote {out}")


if __name__ == "__main__":
    main()
