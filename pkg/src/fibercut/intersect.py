"""Minimal-position intersection data for pairs of arcs and loops.

In the universal cover, minimal position is automatic: two lifts meet
essentially exactly when their endpoints interleave.  Counting interleaved
lifts therefore gives the geometric intersection number without any bigon
surgery, and the side on which a lift starts gives the crossing sign.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cover import Line, Lift, line_of, lifts, overlap_end, ref_vertex, side
from .errors import NotEmbedded
from .paths import Arc, Loop
from .surface import FatGraph


@dataclass(frozen=True)
class Crossing:
    disk: int
    sign: int
    lift: Lift = field(compare=False, repr=False)


@dataclass(frozen=True)
class ArcPairGeometry:
    crossings: tuple[Crossing, ...]
    boundary_signs: tuple[int, ...]
    fixed: bool = False

    @property
    def rho(self) -> int:
        return len(self.crossings)

    @property
    def i_boundary(self) -> Fraction:
        return Fraction(sum(self.boundary_signs), 2)

    @property
    def i_total(self) -> Fraction:
        return self.rho + abs(self.i_boundary)

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(c.sign for c in self.crossings)


def _pair_data(F: FatGraph, ref: Line, g, exclude_identity: bool):
    crossings: list[Crossing] = []
    contacts: list[tuple[str, int]] = []
    fixed = False
    P, Q = ref.P, ref.Q
    for L in lifts(F, ref, g):
        if L.R == P and L.S == Q:
            if exclude_identity:
                continue
            fixed = True
            continue
        if L.R == Q and L.S == P:
            fixed = True
            continue
        if L.R == P or L.R == Q or L.S == P or L.S == Q:
            for here, other in ((L.R, L.S), (L.S, L.R)):
                if here == P:
                    contacts.append(("x", side(F, P, Q, other)))
                elif here == Q:
                    contacts.append(("y", -side(F, P, Q, other)))
            continue
        sR, sS = side(F, P, Q, L.R), side(F, P, Q, L.S)
        if sR != sS:
            e = overlap_end(F, ref, g, L)
            crossings.append(Crossing(ref_vertex(F, ref, e), 1 if sR == 1 else -1, L))
    return crossings, contacts, fixed


def minimal_position(F: FatGraph, a, b) -> ArcPairGeometry:
    """Crossings, endpoint signs, and the derived invariants of ``(a, b)``.

    Both paths must be embedded.  Endpoints shared by the two paths are
    contacts, not crossings; each contributes a sign, +1 when ``b`` leaves
    the contact towards the right of ``a``.
    """
    for g in (a, b):
        if self_crossing_count(F, g):
            raise NotEmbedded("path is not embedded")
    crossings, contacts, fixed = _pair_data(F, line_of(F, a), b, exclude_identity=False)
    contacts.sort()
    return ArcPairGeometry(tuple(crossings), tuple(s for _, s in contacts), fixed)


def self_crossing_lifts(F: FatGraph, g) -> list[Crossing]:
    crossings, _, _ = _pair_data(F, line_of(F, g), g, exclude_identity=True)
    return crossings


def self_crossing_count(F: FatGraph, g) -> int:
    """Number of essential self-crossings (each is seen by two lifts)."""
    return len(self_crossing_lifts(F, g)) // 2


def is_embedded(F: FatGraph, g) -> bool:
    return self_crossing_count(F, g) == 0


def intersection_number(F: FatGraph, a, b) -> int:
    """Geometric intersection number, ignoring shared-endpoint contacts."""
    crossings, _, _ = _pair_data(F, line_of(F, a), b, exclude_identity=False)
    return len(crossings)


def disjoint(F: FatGraph, a, b) -> bool:
    return intersection_number(F, a, b) == 0


def rho(F: FatGraph, a, b) -> int:
    return minimal_position(F, a, b).rho


def boundary_intersection(F: FatGraph, a, b) -> Fraction:
    return minimal_position(F, a, b).i_boundary


def i_total(F: FatGraph, a, b) -> Fraction:
    return minimal_position(F, a, b).i_total


def label_of(geo: ArcPairGeometry) -> str:
    if geo.fixed:
        return "clean-fixed"
    alt = "alternating" if abs(geo.i_boundary) == 1 else "non-alternating"
    if geo.rho == 0:
        return f"clean-{alt}"
    if geo.rho == 1:
        return f"once-unclean-{alt}"
    return f"{geo.rho}-unclean-{alt}"


def classify_arc(F: FatGraph, a: Arc, image: Arc) -> str:
    return label_of(minimal_position(F, a, image))


def is_loop(g) -> bool:
    return isinstance(g, Loop)
