from __future__ import annotations

import random

import pytest
from helpers import embedded_arc
from hypothesis import given, settings
from hypothesis import strategies as st

from fibercut.cut import Cut
from fibercut.fiber_calculus import FIBER, report
from fibercut.torus_families import (
    boundary_count,
    chord_split,
    class_key,
    d1_chords,
    enumerate_composite_fiber_bands,
    enumerate_fiber_bands,
    involution,
    signature_bookkeeping,
    sum_boundary_count,
    torus_open_book,
    torus_surface,
)

seeds = st.integers(min_value=0, max_value=10**9)


@pytest.mark.parametrize("p", range(1, 8))
def test_bookkeeping(p):
    F = torus_surface(p)
    chi, sigma = signature_bookkeeping(p)
    assert F.euler_characteristic() == chi
    assert sigma == chi - 1
    assert len(F.boundary_components) == boundary_count(p)


@pytest.mark.parametrize("p", range(2, 7))
def test_chords_split_the_bands(p):
    chords = d1_chords(p)
    assert len(chords) == p * (p - 1) // 2
    for ch in chords:
        i, j = chord_split(p, ch)
        assert i + j == p and 1 <= i <= j


def test_chord_cut_is_a_torus_sum():
    B = torus_open_book(4)
    for ch in d1_chords(4):
        G = Cut(B.surface, ch).surface
        assert G.euler_characteristic() == B.surface.euler_characteristic() + 1
        assert len(G.boundary_components) == sum_boundary_count(chord_split(4, ch))


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(min_value=2, max_value=5))
def test_involution_is_an_involution(seed, p):
    F = torus_surface(p)
    a = embedded_arc(F, random.Random(seed))
    assert involution(F, involution(F, a)) == a


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(min_value=2, max_value=4))
def test_class_key_is_monodromy_invariant(seed, p):
    B = torus_open_book(p)
    a = embedded_arc(B.surface, random.Random(seed))
    assert class_key(B, a) == class_key(B, B.apply(a))


@pytest.mark.parametrize(
    "p, budget, counts",
    [(2, 6, {(1, 1): 1}), (3, 6, {(1, 2): 1}), (4, 4, {(1, 3): 1, (2, 2): 2})],
)
def test_small_enumerations(p, budget, counts):
    e = enumerate_fiber_bands(p, budget)
    assert e.class_counts() == counts
    B = torus_open_book(p)
    assert all(report(B, r.arc).i_total == 1 and r.verdict == FIBER for r in e.records)
    assert {tuple(row["split"]) for row in e.table()} == set(counts)


def test_composite_sum_arcs_stay_in_one_summand():
    recs = enumerate_composite_fiber_bands(2, 3, 3)
    assert recs
    for r in recs:
        assert r.summand in (0, 1)
        assert sum(r.parts) == 5
    assert {r.shape for r in recs} == {"T(2,1)#T(2,1)#T(2,3)", "T(2,2)#T(2,1)#T(2,2)"}


def test_composite_needs_two_bands_each():
    with pytest.raises(ValueError):
        enumerate_composite_fiber_bands(1, 3, 2)
