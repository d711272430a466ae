from __future__ import annotations

import json
from fractions import Fraction

import jsonschema
import pytest
from helpers import ROOT

from fibercut.documents import SCHEMA, envelope, error_doc, is_valid, q, validate
from fibercut.errors import SceneSyntaxError


def test_schema_is_a_valid_draft_and_matches_the_shipped_copy():
    jsonschema.Draft202012Validator.check_schema(SCHEMA)
    assert json.loads((ROOT / "docs" / "schema.json").read_text()) == SCHEMA


@pytest.mark.parametrize("x, s", [(Fraction(1, 2), "1/2"), (3, "3"), (Fraction(-4, 6), "-2/3"), (0, "0")])
def test_rationals_are_strings(x, s):
    assert q(x) == s
    assert Fraction(s) == Fraction(x)


def test_error_documents():
    doc = error_doc("load x", SceneSyntaxError("bad", 3, 4))
    validate(doc)
    assert (doc["ok"], doc["result"]["type"], doc["result"]["line"]) == (False, "SyntaxError", 3)


def test_malformed_documents_are_rejected():
    doc = envelope("render", "scene", {"text": 3})
    assert not is_valid(doc)
    doc = error_doc("x", ValueError("boom"))
    doc["schema"] = "other/2"
    with pytest.raises(jsonschema.ValidationError):
        validate(doc)
