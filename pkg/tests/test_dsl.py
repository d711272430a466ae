from __future__ import annotations

import pytest
from helpers import scene_files
from hypothesis import given, settings
from hypothesis import strategies as st

from fibercut.cli import random_scenes
from fibercut.dsl import parse_scene, render_scene, tokenize
from fibercut.errors import DanglingHalfEdge, SceneError
from fibercut.paths import ImmersedArc, Loop

EXPLICIT = """
# trefoil fiber
surface {
  vertex D1 = [b1+, b2+, b3+]
  vertex D2 = [b1-, b2-, b3-]
  edge b1 = (b1+, b1-); edge b2 = (b2+, b2-); edge b3 = (b3+, b3-)
}
loop c = [b2+, b1-]
monodromy phi = t(c) t([b3+, b2-])^2
arc a = D1(0) b2+ D2(1)
arc e = D1(0, 1/2) D1(1)
"""


def test_explicit_scene():
    sc = parse_scene(EXPLICIT)
    F = sc.surface
    assert F.vertex_names == ("D1", "D2")
    assert F.euler_characteristic() == -1
    assert sc.monodromy_name == "phi"
    assert [e for _, e in sc.book.monodromy.letters] == [1, 2]
    assert isinstance(sc.get("c"), Loop)
    assert sc.arc("e").start.key == pytest.approx(0.5)


def test_aliases_match_explicit_form():
    alias = parse_scene("surface torus2 p=3\n")
    assert alias.surface.rotations == parse_scene(EXPLICIT).surface.rotations
    assert len(alias.book.monodromy.letters) == 2
    sc = parse_scene("surface pants a=2 b=-1\nimmersed ell = v(0) a+ b+ v(2)\n")
    assert isinstance(sc.get("ell"), ImmersedArc)
    assert "bands" in parse_scene("surface torus2sum p=2 q=3\n").systems


@pytest.mark.parametrize(
    "text, kind, where",
    [
        ("surface {\n  vertex v = [a+];\n  edge a = (a+, a-);\n}\n", "DanglingHalfEdge", (1, 1)),
        ("surface annulus k=1\narc x = X(0) a+ D(0);\n", "UnknownName", (2, 9)),
        ("surface annulus k=1\narc x [\n", "SyntaxError", (2, 7)),
        ("surface annulus k=1\nmonodromy h = t([a+])^0;\n", "ValidationError", (2, 23)),
        ("surface torus2 p=3\narc q = D1(0) b1+ b1- D1(1);\n", "ValidationError", (2, 1)),
        ("surface annulus k=1\narc x = D(0) a+ D(1) $\n", "SyntaxError", (2, 22)),
    ],
)
def test_diagnostics_carry_positions(text, kind, where):
    with pytest.raises(SceneError) as info:
        parse_scene(text)
    err = info.value
    assert (err.kind, (err.line, err.column)) == (kind, where)
    assert str(err).startswith(f"{kind} at {where[0]}:{where[1]}:")


def test_dangling_is_also_a_surface_error():
    with pytest.raises(DanglingHalfEdge):
        parse_scene("surface {\n  vertex v = [a+];\n  edge a = (a+, a-);\n}\n")


def test_comments_are_ignored():
    assert [t.text for t in tokenize("arc # a comment\nx")][:2] == ["arc", "x"]


@pytest.mark.parametrize("path", scene_files(), ids=lambda p: p.stem)
def test_fixture_round_trip(path):
    sc = parse_scene(path.read_text())
    again = parse_scene(render_scene(sc))
    assert again == sc
    assert render_scene(again) == render_scene(sc)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_random_round_trip(seed):
    (_, text), = random_scenes(seed, 1)
    sc = parse_scene(text)
    assert parse_scene(render_scene(sc)) == sc
