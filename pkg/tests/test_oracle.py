from __future__ import annotations

import random

import pytest
from helpers import embedded_arc, random_torus_book
from hypothesis import given, settings
from hypothesis import strategies as st

from fibercut.catalog import spanning_arc
from fibercut.errors import BudgetExhaustedWithoutClosure
from fibercut.intersect import self_crossing_count
from fibercut.oracle import aligned, brute_min_crossings, brute_sign_profile, cross_check
from fibercut.surface import annulus
from fibercut.twist import make_word

seeds = st.integers(min_value=0, max_value=10**9)


@pytest.mark.parametrize("k", (-3, -2, -1, 1, 2, 3))
def test_annulus_twists(k):
    F, a = annulus(), spanning_arc()
    b = make_word(F, [(("a+",), k)]).apply(F, a)
    prof = brute_sign_profile(F, a, b)
    sign = 1 if k > 0 else -1
    assert prof.closed
    assert prof.rho == abs(k) - 1
    assert prof.boundary_signs == (sign, sign)
    assert prof.interior_signs == (-sign,) * (abs(k) - 1)
    assert cross_check(F, a, b).agree


def test_zero_budget_cannot_close():
    F, a = annulus(), spanning_arc()
    b = make_word(F, [(("a+",), 3)]).apply(F, a)
    with pytest.raises(BudgetExhaustedWithoutClosure) as info:
        brute_min_crossings(F, a, b, 0)
    assert info.value.upper_bound == 2
    loose = brute_min_crossings(F, a, b, 0, strict=False)
    assert (loose.value, loose.closed) == (2, False)


def test_alignment_reverses_crossed_endpoints():
    F, a = annulus(), spanning_arc()
    r = a.reversed(F)
    flipped = aligned(F, a, r)
    assert (flipped.start, flipped.end) == (a.start, a.end)
    assert aligned(F, a, a) == a


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_oracle_agrees_with_the_cover_model(seed):
    rng = random.Random(seed)
    B = random_torus_book(rng, p_range=(2, 3), exps=(1, -1))
    a = embedded_arc(B.surface, rng, max_len=3)
    b = B.apply(a)
    if self_crossing_count(B.surface, b) or len(a.path) + len(b.path) > 8:
        return
    try:
        c = cross_check(B.surface, a, b, move_budget=6)
    except BudgetExhaustedWithoutClosure:
        return
    assert c.agree, (c.brute, c.cover)
