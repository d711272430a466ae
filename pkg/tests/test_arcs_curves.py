from __future__ import annotations

import random
from fractions import Fraction

import pytest
from helpers import embedded_arc, immersed_arc, random_torus_book
from hypothesis import given, settings
from hypothesis import strategies as st

from fibercut.arcs_curves import (
    Arc,
    boundary_parallel,
    intersection_number,
    inverse,
    is_embedded,
    make_arc,
    make_loop,
    minimal_position,
    reduce_word,
    self_crossing_count,
)
from fibercut.errors import InvalidPath
from fibercut.surface_core import BoundaryPoint, annulus, torus_link_surface
from fibercut.twist import twist_arc

seeds = st.integers(min_value=0, max_value=10**9)


def P(v, c, k=0):
    return BoundaryPoint(v, c, Fraction(k))


@pytest.mark.parametrize("k", range(-4, 5))
def test_annulus_twists_of_the_spanning_arc(k):
    A = annulus()
    a = make_arc(A, P(0, 0), (), P(0, 1))
    g = minimal_position(A, a, twist_arc(A, make_loop(A, ("a+",)), k, a))
    if k == 0:
        assert g.fixed
    else:
        assert g.rho == abs(k) - 1
        assert g.i_boundary == (1 if k > 0 else -1)


def test_path_must_follow_the_rotation():
    F = torus_link_surface(3)
    with pytest.raises(InvalidPath):
        make_arc(F, P(0, 0), ("b1-",), P(1, 0))


def test_arc_inside_one_corner_is_boundary_parallel():
    A = annulus()
    assert boundary_parallel(A, Arc(P(0, 0), (), P(0, 0, 1)))
    assert not boundary_parallel(A, Arc(P(0, 0), (), P(0, 1)))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_word_reduction(seed):
    rng = random.Random(seed)
    F = torus_link_surface(rng.randint(2, 5))
    w = [rng.choice(F.half_edges) for _ in range(rng.randint(0, 8))]
    r = reduce_word(F, w)
    assert reduce_word(F, r) == r
    assert inverse(F, inverse(F, r)) == r
    assert reduce_word(F, tuple(r) + inverse(F, r)) == ()


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_intersection_number_is_symmetric(seed):
    rng = random.Random(seed)
    F = random_torus_book(rng).surface
    a, b = embedded_arc(F, rng, 4), embedded_arc(F, rng, 4)
    if {a.start, a.end} & {b.start, b.end}:
        return
    assert intersection_number(F, a, b) == intersection_number(F, b, a)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_intersection_number_is_mapping_class_invariant(seed):
    rng = random.Random(seed)
    B = random_torus_book(rng)
    F = B.surface
    a, b = embedded_arc(F, rng, 4), embedded_arc(F, rng, 4)
    if {a.start, a.end} & {b.start, b.end}:
        return
    assert intersection_number(F, B.apply(a), B.apply(b)) == intersection_number(F, a, b)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_images_of_embedded_arcs_stay_embedded(seed):
    rng = random.Random(seed)
    B = random_torus_book(rng)
    a = embedded_arc(B.surface, rng)
    assert is_embedded(B.surface, B.apply(a))


def test_immersed_arc_has_one_self_crossing():
    rng = random.Random(3)
    F = torus_link_surface(3)
    ell = immersed_arc(F, rng)
    assert ell is not None
    assert self_crossing_count(F, ell) == 1
    assert not is_embedded(F, ell)
