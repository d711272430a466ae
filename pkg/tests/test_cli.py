from __future__ import annotations

import json
import xml.etree.ElementTree as ET

import pytest
from helpers import FIXTURES

from fibercut.cli import main
from fibercut.documents import validate

TREFOIL = str(FIXTURES / "torus2-3.scene")


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_classify_text(capsys):
    code, out = run(capsys, "--input", TREFOIL, "classify", "a")
    assert code == 0
    assert "2-unclean-alternating" in out
    assert "not-fiber-by-this-surface" in out


@pytest.mark.parametrize(
    "argv",
    [
        ("classify", "chord"),
        ("cut", "chord"),
        ("slopes", "chord"),
        ("twist", "chord", "-2"),
        ("oracle", "a", "h(a)"),
        ("diagram", "a", "b"),
        ("render",),
    ],
)
def test_documents_validate(capsys, argv):
    code, out = run(capsys, "--input", TREFOIL, "--format", "doc", *argv)
    doc = json.loads(out)
    validate(doc)
    assert code == 0 and doc["ok"]


def test_enumerate_table(capsys):
    code, out = run(capsys, "enumerate-torus", "4", "8")
    assert code == 0
    rows = [line.split() for line in out.splitlines()[1:]]
    assert ["T(2,3)", "T(2,1)#T(2,3)", "classes", "1"] == rows[0][:4]
    assert ["T(2,2)#T(2,2)", "T(2,2)#T(2,2)", "classes", "2"] == rows[1][:4]


def test_svg_output_is_xml(capsys):
    code, out = run(capsys, "--input", TREFOIL, "--format", "svg", "diagram", "a", "h(a)")
    assert code == 0
    assert ET.fromstring(out).tag.endswith("svg")


def test_decompose_sum(capsys):
    code, out = run(capsys, "--input", str(FIXTURES / "torus2sum-2-3.scene"), "--format", "doc", "decompose", "bands", "x")
    doc = json.loads(out)
    assert code == 0 and doc["kind"] == "decomposition"


@pytest.mark.parametrize(
    "argv, kind",
    [
        (("bogus",), "UsageError"),
        (("classify", "nope"), "UnknownName"),
        (("twist", "chord", "0"), "ZeroTwist"),
        (("classify",), "UsageError"),
    ],
)
def test_errors_exit_nonzero(capsys, argv, kind):
    code, out = run(capsys, "--input", TREFOIL, "--format", "doc", *argv)
    doc = json.loads(out)
    assert code == 1
    assert (doc["ok"], doc["result"]["type"]) == (False, kind)


def test_bad_scene_reports_position(tmp_path, capsys):
    bad = tmp_path / "bad.scene"
    bad.write_text("surface annulus k=1\narc x [\n")
    code, out = run(capsys, "--input", str(bad), "render")
    assert code == 1
    assert "2:7" in out


def test_oracle_mode_over_fixtures(capsys):
    code, out = run(capsys, "--oracle", "--input", str(FIXTURES), "--format", "doc")
    doc = json.loads(out)
    assert code == 0
    assert doc["result"]["failed"] == 0 and doc["result"]["passed"] > 0
