"""Exact fiber-surface calculus on fat graphs with Dehn-twist monodromies.

The usual entry points::

    from fibercut import hopf_book, spanning_arc, report, decide_cut_fiber

    B = hopf_book(+1)
    rep = report(B, spanning_arc())
    rep.rho, rep.i_boundary, rep.i_total   # 0, 1, 1
    decide_cut_fiber(B, spanning_arc())    # "fiber"
"""
from __future__ import annotations

from .catalog import annulus_book, four_class_fixtures, hopf_book, pants_book, spanning_arc
from .composite_calculus import (
    band_system,
    boundary_connect_sum,
    classify_composite_arc,
    divide_arc,
    rho_via_decomposition,
)
from .dsl import Scene, parse_scene, render_scene
from .errors import FibercutError
from .fiber_calculus import (
    OpenBook,
    attach_generalized_hopf_band,
    cut_along_arc,
    decide_cut_fiber,
    detect_banding,
    detect_prefiber_case,
    plumb_hopf,
    report,
)
from .intersect import is_embedded, minimal_position
from .mapping_classes import ArcReport, invariants_of, right_veering_witness
from .oracle import brute_min_crossings, brute_sign_profile, cross_check
from .paths import Arc, ImmersedArc, Loop, make_arc, make_loop
from .surface import BoundaryPoint, FatGraph, annulus, build_surface, disk
from .surgery_twists import classify_crossing_change, fiber_preserving_slopes, twist_monodromy_update
from .torus_families import enumerate_composite_fiber_bands, enumerate_fiber_bands, torus_open_book
from .twist import TwistWord, make_word, mcg_equal

__version__ = "0.1.0"

__all__ = [
    "Arc",
    "ArcReport",
    "BoundaryPoint",
    "FatGraph",
    "FibercutError",
    "ImmersedArc",
    "Loop",
    "OpenBook",
    "Scene",
    "TwistWord",
    "annulus",
    "annulus_book",
    "attach_generalized_hopf_band",
    "band_system",
    "boundary_connect_sum",
    "brute_min_crossings",
    "brute_sign_profile",
    "build_surface",
    "classify_composite_arc",
    "classify_crossing_change",
    "cross_check",
    "cut_along_arc",
    "decide_cut_fiber",
    "detect_banding",
    "detect_prefiber_case",
    "disk",
    "divide_arc",
    "enumerate_composite_fiber_bands",
    "enumerate_fiber_bands",
    "fiber_preserving_slopes",
    "four_class_fixtures",
    "hopf_book",
    "invariants_of",
    "is_embedded",
    "make_arc",
    "make_loop",
    "make_word",
    "mcg_equal",
    "minimal_position",
    "pants_book",
    "parse_scene",
    "plumb_hopf",
    "render_scene",
    "report",
    "rho_via_decomposition",
    "right_veering_witness",
    "spanning_arc",
    "torus_open_book",
    "twist_monodromy_update",
    "__version__",
]
