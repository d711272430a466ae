"""Structured documents for every command result, and their schema.

All documents share one envelope, versioned as ``fibercut/1``.  Exact
rationals are written as ``"p/q"`` strings (integers as ``"n"``) so that no
value ever passes through floating point.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

import jsonschema

from .paths import ImmersedArc, Loop
from .surface import BoundaryPoint, FatGraph

SCHEMA_ID = "fibercut/1"

KINDS = (
    "arc-report",
    "open-book",
    "slope-set",
    "twist-verdict",
    "decomposition",
    "enumeration",
    "composite-enumeration",
    "oracle",
    "oracle-run",
    "diagram",
    "scene",
    "error",
)


def q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def point_doc(F: FatGraph, p: BoundaryPoint) -> dict:
    return {"vertex": F.vertex_names[p.vertex], "corner": p.corner, "key": q(p.key)}


def arc_doc(F: FatGraph, a) -> dict:
    if isinstance(a, ImmersedArc):
        return {**arc_doc(F, a.arc), "immersed": True}
    return {"start": point_doc(F, a.start), "path": list(a.path), "end": point_doc(F, a.end)}


def loop_doc(L: Loop) -> dict:
    return {"cycle": list(L.cycle)}


def path_doc(F: FatGraph, g) -> dict:
    return loop_doc(g) if isinstance(g, Loop) else arc_doc(F, g)


def word_doc(w) -> list[dict]:
    return [{"loop": list(L.cycle), "exponent": int(e)} for L, e in getattr(w, "letters", ())]


def surface_doc(F: FatGraph) -> dict:
    d = F.to_doc()
    d["components"] = len(F.components)
    return d


def book_doc(B) -> dict:
    return {
        "surface": surface_doc(B.surface),
        "monodromy": word_doc(B.monodromy),
        "positivity": B.positivity,
        "provenance": list(B.provenance),
    }


def geometry_doc(geo) -> dict:
    return {
        "rho": geo.rho,
        "i_boundary": q(geo.i_boundary),
        "i_total": q(geo.i_total),
        "boundary_signs": list(geo.boundary_signs),
        "crossings": [{"disk": c.disk, "sign": c.sign} for c in geo.crossings],
        "fixed": geo.fixed,
    }


def arc_report_doc(F: FatGraph, rep, verdict: str, banding: str, prefiber: bool) -> dict:
    return {
        "arc": arc_doc(F, rep.arc),
        "image": arc_doc(F, rep.image),
        "geometry": geometry_doc(rep.geometry),
        "label": rep.label,
        "positivity": rep.positivity,
        "boundary_parallel": rep.boundary_parallel,
        "verdict": verdict,
        "banding": banding,
        "prefiber": prefiber,
    }


def slopes_doc(S, bound: int = 5) -> dict:
    return {
        "family": S.family,
        "base": q(S.base),
        "blackboard": q(S.blackboard),
        "members": [q(r) for r in S.members(bound)],
    }


def envelope(command: str, kind: str, result: dict, svg: str | None = None) -> dict:
    doc = {"schema": SCHEMA_ID, "command": command, "ok": kind != "error", "kind": kind, "result": result}
    if svg is not None:
        doc["svg"] = svg
    return doc


def error_doc(command: str, err: BaseException) -> dict:
    return envelope(
        command,
        "error",
        {
            "type": getattr(err, "kind", type(err).__name__),
            "message": getattr(err, "message", str(err)),
            "line": getattr(err, "line", 0),
            "column": getattr(err, "column", 0),
        },
    )


# -- schema ------------------------------------------------------------------

_RATIONAL = {"type": "string", "pattern": r"^-?\d+(/[1-9]\d*)?$"}
_SIGN = {"type": "integer", "enum": [-1, 1]}
_STRS = {"type": "array", "items": {"type": "string"}}


def _obj(props: dict, required=None, extra: bool = False) -> dict:
    return {
        "type": "object",
        "properties": props,
        "required": list(props) if required is None else required,
        "additionalProperties": extra,
    }


_DEFS = {
    "rational": _RATIONAL,
    "point": _obj({"vertex": {"type": "string"}, "corner": {"type": "integer", "minimum": 0}, "key": _RATIONAL}),
    "arc": _obj(
        {"start": {"$ref": "#/$defs/point"}, "path": _STRS, "end": {"$ref": "#/$defs/point"}, "immersed": {"type": "boolean"}},
        ["start", "path", "end"],
    ),
    "loop": _obj({"cycle": _STRS}),
    "word": {"type": "array", "items": _obj({"loop": _STRS, "exponent": {"type": "integer"}})},
    "surface": _obj(
        {
            "vertices": {"type": "array", "items": _obj({"name": {"type": "string"}, "rotation": _STRS})},
            "edges": {
                "type": "array",
                "items": _obj({"name": {"type": "string"}, "pair": {**_STRS, "minItems": 2, "maxItems": 2}}),
            },
            "split": {"type": "boolean"},
            "chi": {"type": "integer", "maximum": 1},
            "boundary_components": {"type": "integer", "minimum": 1},
            "components": {"type": "integer", "minimum": 1},
        }
    ),
    "positivity": {"enum": ["all-right", "all-left", "mixed"]},
    "book": _obj(
        {
            "surface": {"$ref": "#/$defs/surface"},
            "monodromy": {"$ref": "#/$defs/word"},
            "positivity": {"$ref": "#/$defs/positivity"},
            "provenance": _STRS,
        }
    ),
    "geometry": _obj(
        {
            "rho": {"type": "integer", "minimum": 0},
            "i_boundary": _RATIONAL,
            "i_total": _RATIONAL,
            "boundary_signs": {"type": "array", "items": _SIGN, "maxItems": 2},
            "crossings": {"type": "array", "items": _obj({"disk": {"type": "integer"}, "sign": _SIGN})},
            "fixed": {"type": "boolean"},
        }
    ),
    "verdict": {"enum": ["fiber", "not-fiber-by-this-surface", "split-union"]},
}

_RESULTS = {
    "arc-report": _obj(
        {
            "arc": {"$ref": "#/$defs/arc"},
            "image": {"$ref": "#/$defs/arc"},
            "geometry": {"$ref": "#/$defs/geometry"},
            "label": {"type": "string"},
            "positivity": {"$ref": "#/$defs/positivity"},
            "boundary_parallel": {"type": "boolean"},
            "verdict": {"$ref": "#/$defs/verdict"},
            "banding": {"enum": ["hopf(+1)", "hopf(-1)", "generalized-hopf", "neither"]},
            "prefiber": {"type": "boolean"},
        }
    ),
    "open-book": _obj(
        {
            "operation": {"type": "string"},
            "input": {"$ref": "#/$defs/book"},
            "output": {"$ref": "#/$defs/book"},
            "marks": {"type": "object", "additionalProperties": {"oneOf": [{"$ref": "#/$defs/arc"}, {"$ref": "#/$defs/loop"}]}},
            "chi_change": {"type": "integer"},
        }
    ),
    "slope-set": _obj(
        {
            "arc": {"$ref": "#/$defs/arc"},
            "family": {"enum": ["shifted-harmonic", "single", "empty"]},
            "base": _RATIONAL,
            "blackboard": _RATIONAL,
            "members": {"type": "array", "items": _RATIONAL},
            "mbc1": {"type": "integer", "minimum": 0},
        }
    ),
    "twist-verdict": _obj(
        {
            "arc": {"$ref": "#/$defs/arc"},
            "n": {"type": "integer", "not": {"const": 0}},
            "case": {
                "enum": [
                    "chi-increases",
                    "fiber-preserved-stallings",
                    "fiber-preserved-hopf-reversal",
                    "fiber-preserved-unclean",
                    "not-fiber-by-this-surface",
                ]
            },
            "preserving": {"type": "boolean"},
            "slope": _RATIONAL,
            "slope_in_set": {"type": "boolean"},
            "book": {"oneOf": [{"$ref": "#/$defs/book"}, {"type": "null"}]},
        }
    ),
    "decomposition": _obj(
        {
            "arc": {"$ref": "#/$defs/arc"},
            "system": {"type": "string"},
            "pieces": {"type": "array", "items": _obj({"chi": {"type": "integer"}, "boundary_components": {"type": "integer"}, "positivity": {"$ref": "#/$defs/positivity"}})},
            "parts": {
                "type": "array",
                "items": _obj(
                    {
                        "piece": {"type": "integer", "minimum": 0},
                        "label": {"type": "string"},
                        "rho": {"type": "integer", "minimum": 0},
                        "t": {"oneOf": [_SIGN, {"type": "null"}]},
                        "s": {"oneOf": [_SIGN, {"type": "null"}]},
                    }
                ),
            },
            "rho_formula": {"type": "integer", "minimum": 0},
            "rho_direct": {"type": "integer", "minimum": 0},
            "label_direct": {"type": "string"},
            "pattern": {"type": ["string", "null"]},
            "pattern_note": {"type": "string"},
        }
    ),
    "enumeration": _obj(
        {
            "p": {"type": "integer", "minimum": 2},
            "max_visits": {"type": "integer", "minimum": 0},
            "examined": {"type": "integer", "minimum": 0},
            "chi": {"type": "integer"},
            "signature": {"type": "integer"},
            "rows": {
                "type": "array",
                "items": _obj(
                    {
                        "split": {"type": "array", "items": {"type": "integer"}},
                        "link": {"type": "string"},
                        "sum": {"type": "string"},
                        "classes": {"type": "integer", "minimum": 1},
                        "arcs": {"type": "integer", "minimum": 0},
                    }
                ),
            },
            "records": {"type": "array", "items": {"type": "object"}},
        }
    ),
    "composite-enumeration": _obj(
        {
            "p": {"type": "integer"},
            "q": {"type": "integer"},
            "max_visits": {"type": "integer"},
            "records": {"type": "array", "items": {"type": "object"}},
        }
    ),
    "oracle": _obj(
        {
            "a": {"$ref": "#/$defs/arc"},
            "b": {"$ref": "#/$defs/arc"},
            "budget": {"type": "integer", "minimum": 0},
            "closed": {"type": "boolean"},
            "states": {"type": "integer", "minimum": 0},
            "brute": _obj(
                {
                    "rho": {"type": "integer", "minimum": 0},
                    "boundary_signs": {"type": "array", "items": _SIGN},
                    "interior_signs": {"type": "array", "items": _SIGN},
                    "fixed": {"type": "boolean"},
                }
            ),
            "cover": _obj(
                {
                    "rho": {"type": "integer", "minimum": 0},
                    "boundary_signs": {"type": "array", "items": _SIGN},
                    "interior_signs": {"type": "array", "items": _SIGN},
                    "fixed": {"type": "boolean"},
                }
            ),
            "agree": {"type": "boolean"},
        }
    ),
    "oracle-run": _obj(
        {
            "sources": _STRS,
            "checks": {
                "type": "array",
                "items": _obj(
                    {
                        "source": {"type": "string"},
                        "object": {"type": "string"},
                        "criterion": {"enum": ["calibration", "cut", "oracle"]},
                        "status": {"enum": ["pass", "fail", "skip"]},
                        "detail": {"type": "string"},
                    }
                ),
            },
            "passed": {"type": "integer", "minimum": 0},
            "failed": {"type": "integer", "minimum": 0},
            "skipped": {"type": "integer", "minimum": 0},
        }
    ),
    "diagram": _obj({"names": _STRS, "ascii": {"type": "string"}}),
    "scene": _obj(
        {
            "book": {"$ref": "#/$defs/book"},
            "objects": {"type": "object", "additionalProperties": {"oneOf": [{"$ref": "#/$defs/arc"}, {"$ref": "#/$defs/loop"}]}},
            "systems": {"type": "object", "additionalProperties": {"type": "object"}},
            "text": {"type": "string"},
        }
    ),
    "error": _obj(
        {
            "type": {"type": "string"},
            "message": {"type": "string"},
            "line": {"type": "integer", "minimum": 0},
            "column": {"type": "integer", "minimum": 0},
        }
    ),
}

SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": SCHEMA_ID,
    "title": "fibercut report",
    "type": "object",
    "properties": {
        "schema": {"const": SCHEMA_ID},
        "command": {"type": "string"},
        "ok": {"type": "boolean"},
        "kind": {"enum": list(KINDS)},
        "result": {"type": "object"},
        "svg": {"type": "string"},
    },
    "required": ["schema", "command", "ok", "kind", "result"],
    "additionalProperties": False,
    "allOf": [
        {"if": {"properties": {"kind": {"const": k}}}, "then": {"properties": {"result": {"$ref": f"#/$defs/result-{k}"}}}}
        for k in KINDS
    ],
    "$defs": {**_DEFS, **{f"result-{k}": v for k, v in _RESULTS.items()}},
}

_VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


def validate(doc: dict) -> None:
    """Raise :class:`jsonschema.ValidationError` unless ``doc`` fits the schema."""
    _VALIDATOR.validate(doc)


def is_valid(doc: dict) -> bool:
    return _VALIDATOR.is_valid(doc)


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)


__all__ = [
    "KINDS",
    "SCHEMA",
    "SCHEMA_ID",
    "arc_doc",
    "arc_report_doc",
    "book_doc",
    "dumps",
    "envelope",
    "error_doc",
    "geometry_doc",
    "is_valid",
    "loop_doc",
    "path_doc",
    "point_doc",
    "q",
    "slopes_doc",
    "surface_doc",
    "validate",
    "word_doc",
]
