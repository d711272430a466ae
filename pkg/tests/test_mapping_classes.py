from __future__ import annotations

import random
from fractions import Fraction

import pytest
from helpers import embedded_arc, random_torus_book, torus_book
from hypothesis import given, settings
from hypothesis import strategies as st

from fibercut.catalog import pants_surface
from fibercut.errors import NotPositiveWord
from fibercut.mapping_classes import (
    TwistWord,
    filling_arcs,
    invariants_of,
    make_word,
    mcg_equal,
    positivity,
    right_veering_witness,
)
from fibercut.paths import Arc, make_loop
from fibercut.surface_core import BoundaryPoint
from fibercut.surface_core import torus_link_surface
from fibercut.twist import twist

seeds = st.integers(min_value=0, max_value=10**9)

T1 = ("b2+", "b1-")
T2 = ("b3+", "b2-")


def test_braid_relation_on_the_trefoil_fiber():
    F = torus_link_surface(3)
    lhs = make_word(F, [(T1, 1), (T2, 1), (T1, 1)])
    rhs = make_word(F, [(T2, 1), (T1, 1), (T2, 1)])
    assert mcg_equal(F, lhs, rhs)
    assert not mcg_equal(F, make_word(F, [(T1, 1), (T2, 1)]), make_word(F, [(T2, 1), (T1, 1)]))


def test_disjoint_twists_commute_and_inverses_cancel():
    F = pants_surface()
    ab = make_word(F, [(("a+",), 1), (("b+",), 2)])
    ba = make_word(F, [(("b+",), 2), (("a+",), 1)])
    assert mcg_equal(F, ab, ba)
    assert mcg_equal(F, make_word(F, [(("a+",), 3), (("a+",), -3)]), TwistWord())


def test_last_letter_acts_first():
    F = torus_link_surface(3)
    w = make_word(F, [(T1, 1), (T2, -1)])
    a = filling_arcs(F)[0]
    expected = twist(F, make_loop(F, T1), 1, twist(F, make_loop(F, T2), -1, a))
    assert w.apply(F, a) == expected


def test_positivity_labels():
    F = torus_link_surface(3)
    assert positivity(make_word(F, [(T1, 1), (T2, 2)])) == "all-right"
    assert positivity(make_word(F, [(T1, -1)])) == "all-left"
    assert positivity(make_word(F, [(T1, 1), (T2, -1)])) == "mixed"
    assert positivity(TwistWord()) == "all-right"


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_word_times_inverse_is_trivial(seed):
    rng = random.Random(seed)
    B = random_torus_book(rng)
    F, w = B.surface, B.monodromy
    inv = TwistWord(tuple((C, -e) for C, e in reversed(w.letters)))
    both = TwistWord(w.letters + inv.letters)
    assert mcg_equal(F, both, TwistWord())
    a = embedded_arc(F, rng)
    assert inv.apply(F, w.apply(F, a)) == a


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_positive_words_veer_right(seed):
    rng = random.Random(seed)
    p = rng.randint(2, 5)
    B = torus_book(p, [rng.randint(0, 2) for _ in range(p - 1)])
    a = embedded_arc(B.surface, rng)
    assert right_veering_witness(B.surface, B.monodromy, a) in ("fixed", "alternating(+1)")


def test_right_veering_needs_a_positive_word():
    B = torus_book(3, [-1, -1])
    a = Arc(BoundaryPoint(0, 1, Fraction(0)), ("b1+",), BoundaryPoint(1, 1, Fraction(0)))
    with pytest.raises(NotPositiveWord):
        right_veering_witness(B.surface, B.monodromy, a)


def test_report_fields_agree():
    B = torus_book(3, [1, 1])
    a = Arc(BoundaryPoint(0, 1, Fraction(0)), ("b1+",), BoundaryPoint(1, 1, Fraction(0)))
    rep = invariants_of(B.surface, B.monodromy, a)
    assert rep.i_total == rep.rho + abs(rep.i_boundary)
    assert rep.positivity == "all-right"
