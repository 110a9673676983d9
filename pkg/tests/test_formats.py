from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planarcycles.cycles import enumerate_isometric_cycles
from planarcycles.embed import embedding_from_result
from planarcycles.formats import (
    FormatError,
    document,
    emit_json,
    emit_svg,
    parse_ezi,
    parse_gm1,
    parse_gr1,
    parse_grf,
    write_ezi,
    write_gm1,
    write_gm2,
    write_gr1,
    write_grf,
)
from planarcycles.graph import GraphError, complete_graph, from_edges
from planarcycles.layout import Drawing
from planarcycles.planarize import random_restart_pipeline

import named_graphs as ng

DATA = Path(__file__).parent / "data"


def test_seven_vertex_files_round_trip():
    text = (DATA / "7.grf").read_text()
    g = parse_grf(text)
    assert (g.n, g.m) == (7, 16)
    assert parse_gr1(DATA / "7.gr1") == g
    assert write_grf(g).split() == text.split()
    assert write_gr1(g).split() == (DATA / "7.gr1").read_text().split()


def test_ezi_output_is_byte_identical():
    g = parse_grf(DATA / "7.grf")
    assert write_ezi(enumerate_isometric_cycles(g)) == (DATA / "7.ezi").read_text()


def test_ezi_parse_round_trip():
    g = parse_grf(DATA / "7.grf")
    s = parse_ezi(DATA / "7.ezi", g)
    assert [c.edges for c in s.cycles] == [c.edges for c in enumerate_isometric_cycles(g).cycles]


@pytest.mark.parametrize(
    "text, line",
    [
        ("x", 1),
        ("0\n1\n", 1),
        ("3\n1 3 5 7\n2 3\n1 3\n1 9\n", 5),
        ("3\n1 3 5\n2 3\n1 3\n", 2),
        ("3\n1 3 5 7\n2 3\n1 3\n1 2\n4\n", 6),
    ],
)
def test_grf_errors_carry_line(text, line):
    with pytest.raises(FormatError) as info:
        parse_grf(text)
    assert info.value.line == line
    assert isinstance(info.value, GraphError)


def test_gr1_incidence_mismatch():
    bad = (DATA / "7.gr1").read_text().splitlines()
    row = bad[-1].split()
    bad[-1] = " ".join(reversed(row))
    with pytest.raises(FormatError, match="incidence"):
        parse_gr1("\n".join(bad))


def test_ezi_vertex_row_mismatch():
    g = parse_grf(DATA / "7.grf")
    lines = (DATA / "7.ezi").read_text().splitlines()
    lines[-1] = lines[-1].replace(lines[-1].split()[0], "7", 1)
    with pytest.raises(FormatError):
        parse_ezi("\n".join(lines), g)


def test_gm1_round_trip_and_order():
    bd = parse_gm1(DATA / "31_iter1.gm1")
    assert list(bd) == [31, 29, 28, 10, 2, 1]
    assert bd[29] == (0.67, 100.0)
    assert parse_gm1(write_gm1(bd)) == bd


@pytest.mark.parametrize("text", ["0\n", "2\n1 2\n0 0\n1\n", "2\n1 1\n0 0\n1 1\n", "1\n1\n0\n0\n7\n"])
def test_gm1_errors(text):
    with pytest.raises(FormatError):
        parse_gm1(text)


def test_gm2_lists_free_vertices():
    d = Drawing({1: (0.0, 0.0), 3: (1.23456, 2.0), 2: (5.0, 5.0)}, frozenset({1}))
    assert write_gm2(d) == "2\n2 3\n5.000 1.235\n5.000 2.000\n"


def test_json_document_shape():
    g, s = ng.g9()
    res = random_restart_pipeline(g, s, 10, seed=0)
    emb = embedding_from_result(s, res)
    doc = json.loads(emit_json(document(g, system=s, result=res, embedding=emb)))
    assert list(doc) == ["graph", "kept_cycles", "deleted_edges", "rotation", "faces", "dummies", "layers", "coords"]
    assert doc["graph"]["m"] == 16
    assert doc["faces"][0] == list(emb.rim)
    assert len(doc["kept_cycles"]) == res.kept_count
    assert doc["deleted_edges"] == sorted(res.deleted_edges)


def test_json_is_stable():
    g, s = ng.g9()
    res = random_restart_pipeline(g, s, 10, seed=0)
    a = emit_json(document(g, system=s, result=res))
    b = emit_json(document(g, system=s, result=res))
    assert a == b


def test_svg_is_well_formed():
    g, s = ng.g9()
    res = random_restart_pipeline(g, s, 10, seed=0)
    emb = embedding_from_result(s, res)
    coords = {v: (float(v), float(v * v % 7)) for v in g.vertices}
    svg = emit_svg(Drawing(coords), embedding=emb, layers=[[g.ends(e) for e in g.edges]])
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg")
    ns = {"s": "http://www.w3.org/2000/svg"}
    assert len(root.findall(".//s:circle", ns)) == g.n
    assert root.find(".//s:g[@id='layer-1']", ns) is not None


def test_svg_needs_every_coordinate():
    with pytest.raises(GraphError):
        emit_svg(Drawing({1: (0, 0)}), [(1, 2)])


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 9).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(1, n), st.integers(1, n)).filter(lambda t: t[0] < t[1]), min_size=1))))
def test_grf_round_trip(data):
    n, edges = data
    g = from_edges(n, edges)
    assert parse_grf(write_grf(g)) == g
    assert parse_gr1(write_gr1(g)) == g
