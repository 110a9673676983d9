from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest
from click.testing import CliRunner

from planarcycles.cli import main
from planarcycles.formats import write_grf
from planarcycles.graph import complete_graph, from_edges

DATA = Path(__file__).parent / "data"


@pytest.fixture
def runner():
    return CliRunner()


def run(runner, *args):
    return runner.invoke(main, [str(a) for a in args])


def test_check_ok(runner):
    res = run(runner, "check", DATA / "7.grf")
    assert res.exit_code == 0 and res.output == "ok\n"


def test_check_reports_violation(runner, tmp_path):
    f = tmp_path / "c4.grf"
    f.write_text(write_grf(from_edges(4, [(1, 2), (2, 3), (3, 4), (1, 4)])))
    res = run(runner, "check", f)
    assert res.exit_code == 1 and "degree<3" in res.output


def test_parse_error_exit_two(runner, tmp_path):
    f = tmp_path / "bad.grf"
    f.write_text("3\n1 x\n")
    res = run(runner, "check", f)
    assert res.exit_code == 2 and "line 2" in res.output


def test_missing_file_exit_two(runner, tmp_path):
    assert run(runner, "cycles", tmp_path / "none.grf").exit_code == 2


def test_cycles_matches_ezi(runner, tmp_path):
    out = tmp_path / "7.ezi"
    assert run(runner, "cycles", DATA / "7.grf", "-o", out).exit_code == 0
    assert out.read_text() == (DATA / "7.ezi").read_text()


def test_planarize_is_seeded(runner):
    a = run(runner, "planarize", DATA / "7.grf", "--seed", 3)
    b = run(runner, "planarize", DATA / "7.grf", "--seed", 3)
    assert a.exit_code == 0 and a.output == b.output
    doc = json.loads(a.output)
    assert len(doc["deleted_edges"]) <= 2


def test_planarize_evolve(runner):
    res = run(runner, "planarize", DATA / "7.grf", "--evolve", "--pop", 4, "--gens", 3)
    assert res.exit_code == 0 and json.loads(res.output)["kept_cycles"]


def test_planarize_rejects_separable_input(runner, tmp_path):
    f = tmp_path / "bowtie.grf"
    f.write_text(write_grf(from_edges(5, [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)])))
    res = run(runner, "planarize", f)
    assert res.exit_code == 1 and "nonseparable" in res.output


def test_embed_has_faces(runner):
    doc = json.loads(run(runner, "embed", DATA / "7.grf", "--restarts", 10).output)
    n, m = doc["graph"]["n"], doc["graph"]["m"] - len(doc["deleted_edges"])
    assert n - m + len(doc["faces"]) == 2


def test_reinsert_crossings_on_k5(runner, tmp_path):
    f = tmp_path / "k5.grf"
    f.write_text(write_grf(complete_graph(5)))
    doc = json.loads(run(runner, "reinsert", f, "--restarts", 5).output)
    assert len(doc["dummies"]) == 1


def test_reinsert_thickness_on_k7(runner, tmp_path):
    f = tmp_path / "k7.grf"
    f.write_text(write_grf(complete_graph(7)))
    doc = json.loads(run(runner, "reinsert", f, "--mode", "thickness", "--restarts", 20, "--seed", 1).output)
    assert len(doc["layers"]) == 2


def test_layout_with_boundary(runner):
    res = run(runner, "layout", DATA / "31.grf", "--boundary", DATA / "31_iter1.gm1", "--format", "gm2")
    assert res.exit_code == 0
    lines = res.output.splitlines()
    assert lines[0] == "25" and "27" in lines[1].split()


def test_layout_from_embedding(runner):
    res = run(runner, "layout", DATA / "7.grf", "--restarts", 5, "--refine", 2, "--contour", "rect")
    coords = json.loads(res.output)["coords"]
    assert res.exit_code == 0 and len(coords) == 7


def test_render_writes_svg(runner, tmp_path):
    out = tmp_path / "k6.svg"
    f = tmp_path / "k6.grf"
    f.write_text(write_grf(complete_graph(6)))
    res = run(runner, "render", f, "--out", out, "--restarts", 5)
    assert res.exit_code == 0 and "<svg" in out.read_text()
    assert out.read_text().count('class="dummy"') == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "planarcycles", "check", str(DATA / "7.grf")], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "ok\n"
