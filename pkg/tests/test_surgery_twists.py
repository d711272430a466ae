from __future__ import annotations

import random
from fractions import Fraction

import pytest
from helpers import embedded_arc, hopf, random_torus_book
from hypothesis import given, settings
from hypothesis import strategies as st

from fibercut.catalog import four_class_fixtures, spanning_arc
from fibercut.errors import NotFiberPreserving, ZeroTwist
from fibercut.surgery_twists import (
    classify_crossing_change,
    fiber_preserving_slopes,
    mbc1,
    twist_monodromy_update,
)
from fibercut.twist import mcg_equal

seeds = st.integers(min_value=0, max_value=10**9)


def test_hopf_slopes_are_shifted_harmonic():
    S = fiber_preserving_slopes(hopf(1), spanning_arc())
    assert S.family == "shifted-harmonic"
    assert S.members(2) == [Fraction(1, 2), Fraction(0), Fraction(2), Fraction(3, 2)]
    assert Fraction(1) not in S


def test_once_unclean_non_alternating_has_the_single_slope_zero():
    B, a = four_class_fixtures()["once-unclean-non-alternating"]
    S = fiber_preserving_slopes(B, a)
    assert (S.family, S.members(5)) == ("single", [Fraction(0)])
    assert mbc1(B, a) == 1


@pytest.mark.parametrize(
    "n, case",
    [
        (-1, "chi-increases"),
        (-2, "fiber-preserved-hopf-reversal"),
        (1, "not-fiber-by-this-surface"),
        (3, "not-fiber-by-this-surface"),
    ],
)
def test_crossing_changes_on_a_positive_hopf_band(n, case):
    assert classify_crossing_change(hopf(1), spanning_arc(), n).case == case


def test_zero_twist_rejected():
    with pytest.raises(ZeroTwist):
        classify_crossing_change(hopf(1), spanning_arc(), 0)


def test_non_preserving_update_raises():
    with pytest.raises(NotFiberPreserving):
        twist_monodromy_update(hopf(1), spanning_arc(), 1)


def test_hopf_reversal_flips_the_band():
    out = twist_monodromy_update(hopf(1), spanning_arc(), -2)
    assert mcg_equal(out.surface, out.monodromy, hopf(-1).monodromy)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(min_value=-5, max_value=5).filter(bool))
def test_preserving_iff_slope_in_set(seed, n):
    rng = random.Random(seed)
    B = random_torus_book(rng)
    a = embedded_arc(B.surface, rng)
    v = classify_crossing_change(B, a, n)
    assert v.preserving == (Fraction(-1, n) in fiber_preserving_slopes(B, a))


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from((1, -1, 2, -2, 3)))
def test_twist_and_untwist(seed, n):
    rng = random.Random(seed)
    B = random_torus_book(rng)
    a = embedded_arc(B.surface, rng)
    if not classify_crossing_change(B, a, n).preserving:
        return
    back = twist_monodromy_update(twist_monodromy_update(B, a, n), a, -n)
    assert mcg_equal(B.surface, back.monodromy, B.monodromy)
