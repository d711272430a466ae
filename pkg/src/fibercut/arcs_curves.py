"""Arcs and loops on fat graphs and their minimal-position invariants.

Paths are band words (:mod:`fibercut.paths`); intersection data comes from
the universal cover (:mod:`fibercut.cover`, :mod:`fibercut.intersect`).
"""
from __future__ import annotations

from .cover import Lift, Tip, lifts, line_of, orient, side
from .cut import boundary_parallel
from .errors import InvalidPath, NonDiskRegionUnresolved, NotEmbedded
from .intersect import (
    ArcPairGeometry,
    Crossing,
    boundary_intersection,
    classify_arc,
    disjoint,
    i_total,
    intersection_number,
    is_embedded,
    label_of,
    minimal_position,
    rho,
    self_crossing_count,
)
from .paths import (
    Arc,
    ImmersedArc,
    Loop,
    Word,
    check_arc,
    inverse,
    make_arc,
    make_loop,
    normalize,
    reduce_word,
    same_loop,
)

PathOnSurface = Arc | Loop

__all__ = [
    "Arc",
    "ArcPairGeometry",
    "Crossing",
    "ImmersedArc",
    "InvalidPath",
    "Lift",
    "Loop",
    "NonDiskRegionUnresolved",
    "NotEmbedded",
    "PathOnSurface",
    "Tip",
    "Word",
    "boundary_intersection",
    "boundary_parallel",
    "check_arc",
    "classify_arc",
    "disjoint",
    "i_total",
    "intersection_number",
    "inverse",
    "is_embedded",
    "label_of",
    "lifts",
    "line_of",
    "make_arc",
    "make_loop",
    "minimal_position",
    "normalize",
    "orient",
    "reduce_word",
    "rho",
    "same_loop",
    "self_crossing_count",
    "side",
]
