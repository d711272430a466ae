from __future__ import annotations

import random
from fractions import Fraction

import pytest
from helpers import embedded_arc, hopf, immersed_arc, random_torus_book, torus_book
from hypothesis import given, settings
from hypothesis import strategies as st

from fibercut.catalog import four_class_fixtures, spanning_arc
from fibercut.errors import CutNotFiber
from fibercut.fiber_calculus import (
    FIBER,
    NOT_FIBER,
    SPLIT_UNION,
    attach_generalized_hopf_band,
    cut_along_arc,
    decide_cut_fiber,
    detect_banding,
    detect_prefiber_case,
    plumb_hopf,
    report,
)
from fibercut.paths import Arc
from fibercut.surface_core import BoundaryPoint
from fibercut.twist import mcg_equal

seeds = st.integers(min_value=0, max_value=10**9)

FOUR_CLASSES = {
    "clean-non-alternating": (0, 0, NOT_FIBER, "neither", True),
    "clean-alternating": (0, 1, FIBER, "hopf(+1)", False),
    "once-unclean-non-alternating": (1, 0, FIBER, "generalized-hopf", False),
    "once-unclean-alternating": (1, 1, NOT_FIBER, "neither", False),
}


@pytest.mark.parametrize("name", FOUR_CLASSES)
def test_four_basic_classes(name):
    B, a = four_class_fixtures()[name]
    rep = report(B, a)
    got = (rep.rho, rep.i_boundary, decide_cut_fiber(B, a), detect_banding(B, a), detect_prefiber_case(B, a))
    assert rep.label == name
    assert got == FOUR_CLASSES[name]


def test_identity_arc_gives_split_union():
    B = torus_book(2, [0])
    a = Arc(BoundaryPoint(0, 0, Fraction(0)), ("b1+",), BoundaryPoint(1, 0, Fraction(0)))
    assert decide_cut_fiber(B, a) == SPLIT_UNION
    assert cut_along_arc(B, a).surface.euler_characteristic() == 1


def test_cutting_a_non_fiber_arc_raises():
    B = torus_book(3, [1, 1])
    a = Arc(BoundaryPoint(0, 1, Fraction(0)), ("b1+",), BoundaryPoint(1, 1, Fraction(0)))
    assert report(B, a).rho == 2
    with pytest.raises(CutNotFiber):
        cut_along_arc(B, a)


@pytest.mark.parametrize("sign", (1, -1))
def test_hopf_cut_leaves_a_disk(sign):
    out = cut_along_arc(hopf(sign), spanning_arc())
    assert out.surface.euler_characteristic() == 1
    assert not out.monodromy.letters


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from((1, -1)))
def test_plumbing_adds_a_hopf_band(seed, sign):
    rng = random.Random(seed)
    B = random_torus_book(rng, exps=(1, -1))
    P = plumb_hopf(B, embedded_arc(B.surface, rng), sign)
    co = P.marks["spanning"]
    rep = report(P, co)
    assert P.surface.euler_characteristic() == B.surface.euler_characteristic() - 1
    assert (rep.label, rep.i_boundary) == ("clean-alternating", sign)
    assert detect_banding(P, co) == ("hopf(+1)" if sign == 1 else "hopf(-1)")


@settings(max_examples=20, deadline=None)
@given(seeds, st.sampled_from(("over", "under")))
def test_generalized_hopf_band_round_trip(seed, side):
    rng = random.Random(seed)
    B = random_torus_book(rng, exps=(1, -1))
    ell = immersed_arc(B.surface, rng)
    if ell is None:
        return
    G = attach_generalized_hopf_band(B, ell, side)
    co = G.marks["spanning"]
    assert report(G, co).label == "once-unclean-non-alternating"
    out = cut_along_arc(G, co)
    assert out.surface == B.surface
    assert mcg_equal(B.surface, out.monodromy, B.monodromy)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_cut_raises_euler_characteristic_by_one(seed):
    rng = random.Random(seed)
    B = random_torus_book(rng)
    a = embedded_arc(B.surface, rng)
    rep = report(B, a)
    verdict = decide_cut_fiber(B, a)
    assert (verdict == FIBER) == (rep.i_total == 1)
    if verdict != NOT_FIBER:
        out = cut_along_arc(B, a)
        assert out.surface.euler_characteristic() == B.surface.euler_characteristic() + 1
