"""Surgery slopes along arc loops and twists along them.

A twist of ``n`` full turns along the loop encircling ``alpha`` is
``(-1/n)``-surgery on that loop, so whether the fiber survives can be read
two ways: from the slope family of ``alpha`` and from a case table in
``(rho, i_boundary, n)``.  Both are implemented independently here and are
expected to agree.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import LoopNullHomotopic, NotFiberPreserving, ZeroTwist
from .fiber_calculus import OpenBook, compose_prefix, prepend, report, resolution_loops, sigma_for, unclean_correction
from .paths import Arc, inverse, make_loop

SHIFTED_HARMONIC = "shifted-harmonic"
SINGLE = "single"
EMPTY = "empty"

CHI_INCREASES = "chi-increases"
STALLINGS = "fiber-preserved-stallings"
HOPF_REVERSAL = "fiber-preserved-hopf-reversal"
UNCLEAN = "fiber-preserved-unclean"
NOT_FIBER = "not-fiber-by-this-surface"
PRESERVING = frozenset({STALLINGS, HOPF_REVERSAL, UNCLEAN})


@dataclass(frozen=True)
class SlopeSet:
    """Slopes on the arc loop, measured against the preferred longitude.

    ``base`` is ``i_boundary(alpha)``; the blackboard longitude is
    ``lambda + base * mu``.
    """

    family: str
    base: Fraction

    def __contains__(self, r) -> bool:
        r = Fraction(r)
        if self.family == SINGLE:
            return r == self.base
        if self.family == SHIFTED_HARMONIC:
            d = r - self.base
            return d != 0 and abs(d.numerator) == 1
        return False

    def members(self, bound: int) -> list[Fraction]:
        """Members with ``|n| <= bound``, ordered by n."""
        if self.family == SINGLE:
            return [self.base]
        if self.family == EMPTY:
            return []
        return [self.base + Fraction(1, n) for n in range(-bound, bound + 1) if n]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.members(5))

    @property
    def blackboard(self) -> Fraction:
        return self.base


@dataclass(frozen=True)
class TwistVerdict:
    case: str
    n: int
    book: OpenBook | None = None

    @property
    def preserving(self) -> bool:
        return self.case in PRESERVING


def fiber_preserving_slopes(B: OpenBook, alpha: Arc) -> SlopeSet:
    rep = report(B, alpha)
    base = rep.i_boundary
    if rep.rho == 0:
        return SlopeSet(SHIFTED_HARMONIC, base)
    if rep.rho == 1:
        return SlopeSet(SINGLE, base)
    return SlopeSet(EMPTY, base)


def _case(rep, n: int) -> str:
    ib = rep.i_boundary
    if rep.fixed or rep.label == "clean-non-alternating":
        return STALLINGS
    if rep.label == "clean-alternating":
        if n in (1, -1) and ib == -n:
            return CHI_INCREASES
        if n in (2, -2) and ib == Fraction(-n, 2):
            return HOPF_REVERSAL
        return NOT_FIBER
    if rep.label == "once-unclean-alternating" and n in (1, -1) and ib == -n:
        return UNCLEAN
    return NOT_FIBER


def classify_crossing_change(B: OpenBook, alpha: Arc, n: int) -> TwistVerdict:
    if n == 0:
        raise ZeroTwist("a twist needs a nonzero number of turns")
    return TwistVerdict(_case(report(B, alpha), int(n)), int(n))


def twist_monodromy_update(B: OpenBook, alpha: Arc, n: int) -> OpenBook:
    if n == 0:
        raise ZeroTwist("a twist needs a nonzero number of turns")
    rep = report(B, alpha)
    case = _case(rep, n)
    if case not in PRESERVING:
        raise NotFiberPreserving(f"a {n}-twist along a {rep.label} arc does not preserve the fiber")
    F, h = B.surface, B.monodromy
    if case == UNCLEAN:
        rl = resolution_loops(F, alpha, rep.image, rep.geometry)
        w = compose_prefix(F, unclean_correction(rl, sigma_for(rl.crossing_sign)), h)
        return OpenBook(F, w, B.provenance + (f"twist {n} unclean",))
    try:
        C = make_loop(F, alpha.path + inverse(F, rep.image.path))
    except LoopNullHomotopic:
        C = None
    if case == STALLINGS:
        # the loop alpha + h(alpha) lies on the fiber; a fixed arc bounds a disk with it
        w = h if C is None else prepend(F, C, -n, h)
        return OpenBook(F, w, B.provenance + (f"twist {n} stallings",))
    # Hopf reversal: strip the band's twist, then put it back the other way
    eps = int(rep.i_boundary)
    deplumbed = prepend(F, C, -eps, h)
    w = prepend(F, C, -eps, deplumbed)
    return OpenBook(F, w, B.provenance + (f"twist {n} hopf-reversal",))


def mbc1(B: OpenBook, alpha: Arc) -> int:
    """Least 1-bridge crossing number of the arc loop, which equals rho."""
    return report(B, alpha).rho


__all__ = [
    "SlopeSet",
    "TwistVerdict",
    "classify_crossing_change",
    "fiber_preserving_slopes",
    "mbc1",
    "twist_monodromy_update",
]
