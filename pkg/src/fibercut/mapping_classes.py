"""Monodromies as twist words, their invariants on arcs, and right-veering checks."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cut import boundary_parallel
from .errors import NotAnArc, NotPositiveWord, RightVeeringViolation
from .intersect import ArcPairGeometry, label_of, minimal_position
from .paths import Arc
from .surface import FatGraph
from .twist import (
    TwistWord,
    apply,
    filling_arcs,
    letter_key,
    loops_of,
    make_word,
    mcg_equal,
    positivity,
    twist,
    word_is_identity,
)


@dataclass(frozen=True)
class ArcReport:
    """Everything the fiber criteria need to know about one arc."""

    arc: Arc
    image: Arc
    geometry: ArcPairGeometry
    label: str
    positivity: str
    boundary_parallel: bool

    @property
    def rho(self) -> int:
        return self.geometry.rho

    @property
    def i_boundary(self) -> Fraction:
        return self.geometry.i_boundary

    @property
    def i_total(self) -> Fraction:
        return self.geometry.i_total

    @property
    def fixed(self) -> bool:
        return self.geometry.fixed

    @property
    def alternating(self) -> bool:
        return abs(self.geometry.i_boundary) == 1


def invariants_of(F: FatGraph, w, alpha: Arc) -> ArcReport:
    if not isinstance(alpha, Arc):
        raise NotAnArc("invariants are defined for arcs")
    image = w.apply(F, alpha)
    geo = minimal_position(F, alpha, image)
    return ArcReport(alpha, image, geo, label_of(geo), positivity(w), boundary_parallel(F, alpha))


def right_veering_witness(F: FatGraph, w, alpha: Arc) -> str:
    """Check that a product of right twists moves ``alpha`` to the right.

    Returns ``"fixed"`` or ``"alternating(+1)"``; anything else is a bug
    and raises :class:`RightVeeringViolation` carrying the report.
    """
    if positivity(w) != "all-right":
        raise NotPositiveWord("right-veering check needs an all-right word")
    rep = invariants_of(F, w, alpha)
    if rep.fixed:
        return "fixed"
    if rep.i_boundary == 1:
        return "alternating(+1)"
    err = RightVeeringViolation(f"arc {alpha} has label {rep.label} and i_boundary {rep.i_boundary}")
    err.report = rep
    raise err


__all__ = [
    "ArcReport",
    "TwistWord",
    "apply",
    "filling_arcs",
    "invariants_of",
    "letter_key",
    "loops_of",
    "make_word",
    "mcg_equal",
    "positivity",
    "right_veering_witness",
    "twist",
    "word_is_identity",
]
