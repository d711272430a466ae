from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fibercut.catalog import pants_surface, random_surface
from fibercut.errors import DanglingHalfEdge, DisconnectedSurface
from fibercut.surface_core import (
    BoundaryPoint,
    FatGraph,
    annulus,
    build_surface,
    delete_band,
    disjoint_union,
    disk,
    find_isomorphism,
    insert_band,
    torus_link_surface,
)

seeds = st.integers(min_value=0, max_value=10**9)


def test_small_surfaces():
    assert (disk().euler_characteristic(), len(disk().boundary_components)) == (1, 1)
    A = annulus()
    assert (A.euler_characteristic(), len(A.boundary_components)) == (0, 2)
    P = pants_surface()
    assert (P.euler_characteristic(), len(P.boundary_components), P.genus()) == (-1, 3, 0)


@pytest.mark.parametrize("p", range(2, 7))
def test_torus_link_fiber(p):
    F = torus_link_surface(p)
    assert F.euler_characteristic() == 2 - p
    assert len(F.boundary_components) == (2 if p % 2 == 0 else 1)


def test_one_sided_pairing_is_dangling():
    with pytest.raises(DanglingHalfEdge):
        build_surface({"D": ["a+"]}, {"a": ("a+", "a-")})


def test_disconnected_gluing_rejected():
    with pytest.raises(DisconnectedSurface):
        build_surface({"P": ["a+", "a-"], "Q": ["b+", "b-"]}, {"a": ("a+", "a-"), "b": ("b+", "b-")})


def test_corners_walk_between_half_edges():
    F = build_surface({"D1": ["x+", "y+"], "D2": ["x-", "y-"]}, {"x": ("x+", "x-"), "y": ("y+", "y-")})
    # corner (v, i) sits between rot[i] and rot[i+1]
    assert F.corner_after("x+") == (0, 0)
    assert F.corner_before("y+") == (0, 0)
    assert sum(len(c) for c in F.boundary_components) == len(F.corners())


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_euler_and_boundary_bookkeeping(seed):
    F = random_surface(random.Random(seed))
    V, E = len(F.rotations), len(F.pairs)
    assert F.euler_characteristic() == V - E
    assert sum(len(c) for c in F.boundary_components) == 2 * E
    doubled_genus = 2 - F.euler_characteristic() - len(F.boundary_components)
    assert doubled_genus >= 0 and doubled_genus % 2 == 0


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_insert_then_delete_band_restores_surface(seed):
    rng = random.Random(seed)
    F = random_surface(rng)
    pts = [BoundaryPoint(v, c, Fraction(0)) for v in range(len(F.rotations)) for c in range(F.n_corners(v))]
    x, y = rng.sample(pts, 2)
    G, _pm, ends = insert_band(F, x, y, ("z+", "z-"), edge_name="z")
    assert G.euler_characteristic() == F.euler_characteristic() - 1
    assert ends[0] != ends[1]
    H, _pm2, _info = delete_band(G, "z")
    assert H.rotations == F.rotations and H.pairs == F.pairs


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_isomorphism_found_after_rotating_and_renaming(seed):
    rng = random.Random(seed)
    F = random_surface(rng)
    rename = {h: f"r{k}" for k, h in enumerate(F.half_edges)}
    rots = []
    for r in F.rotations:
        k = rng.randrange(len(r))
        rots.append([rename[h] for h in r[k:] + r[:k]])
    G = build_surface(rots, [(rename[a], rename[b]) for a, b in F.pairs])
    iso = find_isomorphism(F, G)
    assert iso is not None
    assert all(iso[F.pair[h]] == G.pair[iso[h]] for h in F.half_edges)


def test_document_round_trip():
    F = torus_link_surface(4)
    assert FatGraph.from_doc(F.to_doc()) == F


def test_disjoint_union_is_split():
    U = disjoint_union(annulus(), build_surface({"E": ["b+", "b-"]}, {"b": ("b+", "b-")}))
    assert len(U.components) == 2
    assert U.euler_characteristic() == 0
