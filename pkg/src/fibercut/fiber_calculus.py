"""Open books, the cut verdict, and the band constructions that invert it.

Cutting an open book ``(F, h)`` along an arc ``alpha`` gives a fiber
surface exactly when ``i_total(alpha) = 1``.  To hand back a monodromy on
the cut surface, ``h`` is first corrected by a few twists so that the
corrected map fixes ``alpha``; the corrected word then restricts to the cut
surface loop by loop.  Hopf plumbing and generalized Hopf banding add a
band and the twists that make its co-core behave as required, so each
construction is undone by a cut along that co-core.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping

from .cover import line_of
from .cut import Cut, NotDisjoint, boundary_parallel
from .errors import (
    CutNotFiber,
    LoopNullHomotopic,
    NotAnArc,
    RestrictionFailed,
    SelfCrossingCountWrong,
)
from .intersect import ArcPairGeometry, intersection_number, is_embedded, label_of, minimal_position, self_crossing_lifts
from .mapping_classes import ArcReport, invariants_of
from .paths import Arc, ImmersedArc, Loop, Word, inverse, loop_key, make_loop, reduce_word
from .surface import BoundaryPoint, FatGraph, insert_band
from .twist import TwistWord, positivity, twist

SPLIT_UNION = "split-union"
FIBER = "fiber"
NOT_FIBER = "not-fiber-by-this-surface"


@dataclass(frozen=True)
class OpenBook:
    """A surface with a monodromy fixing its boundary.

    ``marks`` carries named paths produced by a construction, such as the
    co-core of a freshly attached band.
    """

    surface: FatGraph
    monodromy: object = field(default_factory=TwistWord)
    provenance: tuple[str, ...] = ()
    marks: Mapping[str, object] = field(default_factory=dict, compare=False)

    def apply(self, g):
        return self.monodromy.apply(self.surface, g)

    def logged(self, step: str, **marks) -> "OpenBook":
        return replace(self, provenance=self.provenance + (step,), marks={**self.marks, **marks})

    @property
    def positivity(self) -> str:
        return positivity(self.monodromy)

    @property
    def split(self) -> bool:
        return len(self.surface.components) > 1


class RestrictedMap:
    """Monodromy on a cut surface, evaluated through the original surface.

    Used when the corrected word cannot be written with loops on the cut
    surface; it is exact but carries no letters.
    """

    def __init__(self, cut: Cut, inner):
        self.cut = cut
        self.inner = inner
        self.letters = ()

    def apply(self, G: FatGraph, g):
        back = self.cut.to_original(g)
        return self.cut.to_cut(self.inner.apply(self.cut.F, back))

    @property
    def positivity(self) -> str:
        return positivity(self.inner)


@dataclass(frozen=True)
class ResolutionLoops:
    """Loops from smoothing the single interior crossing of alpha and h(alpha)."""

    a: Loop | None
    b: Loop | None
    c: Loop | None
    crossing_sign: int


# -- verdicts ---------------------------------------------------------------


def report(B: OpenBook, alpha: Arc) -> ArcReport:
    if not isinstance(alpha, Arc):
        raise NotAnArc("a cut needs an arc, not a loop")
    return invariants_of(B.surface, B.monodromy, alpha)


def verdict_of(geo: ArcPairGeometry) -> str:
    if geo.fixed:
        return SPLIT_UNION
    return FIBER if geo.i_total == 1 else NOT_FIBER


def decide_cut_fiber(B: OpenBook, alpha: Arc) -> str:
    return verdict_of(report(B, alpha).geometry)


def detect_banding(B: OpenBook, alpha: Arc) -> str:
    rep = report(B, alpha)
    if rep.label == "clean-alternating":
        return "hopf(+1)" if rep.i_boundary == 1 else "hopf(-1)"
    if rep.label == "once-unclean-non-alternating":
        return "generalized-hopf"
    return "neither"


def detect_prefiber_case(B: OpenBook, alpha: Arc) -> bool:
    return report(B, alpha).label == "clean-non-alternating"


# -- word surgery -------------------------------------------------------------


def _same(F: FatGraph, C: Loop, D: Loop) -> bool:
    return loop_key(F, C) == loop_key(F, D)


def simplify(F: FatGraph, w: TwistWord) -> TwistWord:
    """Merge letters on the same loop when everything between commutes with it."""
    letters = [(C, e) for C, e in w.letters if e]
    changed = True
    while changed:
        changed = False
        for i in range(len(letters)):
            for j in range(i + 1, len(letters)):
                if _same(F, letters[i][0], letters[j][0]):
                    between = letters[i + 1 : j]
                    if all(intersection_number(F, letters[i][0], D) == 0 for D, _ in between):
                        e = letters[i][1] + letters[j][1]
                        merged = [(letters[i][0], e)] if e else []
                        letters = letters[:i] + merged + between + letters[j + 1 :]
                        changed = True
                        break
            if changed:
                break
    return TwistWord(tuple(letters))


def prepend(F: FatGraph, C: Loop, e: int, w: TwistWord) -> TwistWord:
    """``t_C^e o w``, absorbed into a later letter when the loops line up.

    Moving ``t_C^e`` past ``t_D^f`` turns it into a twist along
    ``t_D^{-f}(C)``; if that loop is some later letter's loop, the exponents
    merge there and the word does not grow.
    """
    if e == 0:
        return w
    cur = C
    letters = list(w.letters)
    for k, (D, f) in enumerate(letters):
        if _same(F, cur, D):
            ne = f + e
            rest = [(D, ne)] if ne else []
            return simplify(F, TwistWord(tuple(letters[:k] + rest + letters[k + 1 :])))
        cur = twist(F, D, -f, cur)
    return simplify(F, TwistWord(((C, e),) + w.letters))


def compose_prefix(F: FatGraph, prefix: list[tuple[Loop, int]], w: TwistWord) -> TwistWord:
    """``prefix[0] o prefix[1] o ... o w`` with absorption at every step."""
    for C, e in reversed(prefix):
        w = prepend(F, C, e, w)
    return w


# -- resolution loops --------------------------------------------------------


def _loop_or_none(F: FatGraph, word: Word) -> Loop | None:
    try:
        return make_loop(F, word)
    except LoopNullHomotopic:
        return None


def resolution_loops(F: FatGraph, alpha: Arc, image: Arc, geo: ArcPairGeometry | None = None) -> ResolutionLoops:
    geo = geo or minimal_position(F, alpha, image)
    if geo.rho != 1 or geo.fixed:
        raise CutNotFiber("resolution loops need exactly one interior crossing")
    cr = geo.crossings[0]
    L = cr.lift
    R1, S1 = L.R, L.S
    Q = line_of(F, alpha).Q
    g = R1.path
    words = {
        "a": g,
        "b": reduce_word(F, inverse(F, S1.path) + Q.path),
        "c": reduce_word(F, S1.path + inverse(F, Q.path) + R1.path),
    }
    # a null-homotopic loop twists trivially and is kept as None
    loops = {k: _loop_or_none(F, w) for k, w in words.items()}

    def order(C):
        return (0, ()) if C is None else (1, (min(F.vertex_of[h] for h in C.cycle), loop_key(F, C)))

    a, b = sorted([loops["a"], loops["b"]], key=order)
    return ResolutionLoops(a, b, loops["c"], cr.sign)


def unclean_correction(rl: ResolutionLoops, sigma: int) -> list[tuple[Loop, int]]:
    """Twists ``t_a^{2s} t_b^{2s} t_c^{-s}`` as a letter list (leftmost first)."""
    out = [(rl.a, 2 * sigma), (rl.b, 2 * sigma), (rl.c, -sigma)]
    return [(C, e) for C, e in out if C is not None]


def sigma_for(crossing_sign: int) -> int:
    """Branch of the unclean correction keyed to the interior crossing sign."""
    return crossing_sign


def _fixing_word(B: OpenBook, alpha: Arc, rep: ArcReport) -> TwistWord:
    """A word equal to ``h`` up to twists, fixing ``alpha``."""
    F, h = B.surface, B.monodromy
    geo = rep.geometry
    if geo.fixed:
        return h
    if rep.label == "clean-alternating":
        C = make_loop(F, alpha.path + inverse(F, rep.image.path))
        eps = int(geo.i_boundary)
        return prepend(F, C, -eps, h)
    if rep.label == "once-unclean-non-alternating":
        rl = resolution_loops(F, alpha, rep.image, geo)
        return compose_prefix(F, unclean_correction(rl, sigma_for(rl.crossing_sign)), h)
    raise CutNotFiber(f"cutting along a {rep.label} arc does not give a fiber (i_total = {geo.i_total})")


def restrict(cut: Cut, w) -> object:
    """The restriction of a word fixing the cutting arc to the cut surface."""
    F, alpha = cut.F, cut.alpha
    letters = []
    try:
        for C, e in getattr(w, "letters", None) or ():
            if intersection_number(F, alpha, C):
                raise NotDisjoint("letter meets the cutting arc")
            try:
                letters.append((cut.to_cut(C), e))
            except LoopNullHomotopic:
                continue
        if getattr(w, "letters", None) is None:
            raise NotDisjoint("opaque monodromy")
    except NotDisjoint:
        return RestrictedMap(cut, w)
    return simplify(cut.surface, TwistWord(tuple(letters)))


def cut_along_arc(B: OpenBook, alpha: Arc) -> OpenBook:
    rep = report(B, alpha)
    verdict = verdict_of(rep.geometry)
    if verdict == NOT_FIBER:
        raise CutNotFiber(f"cutting along a {rep.label} arc does not give a fiber (i_total = {rep.i_total})")
    F = B.surface
    fixing = _fixing_word(B, alpha, rep)
    if fixing.apply(F, alpha) != alpha:
        raise RestrictionFailed("corrected monodromy does not fix the cutting arc")
    cut = Cut(F, alpha)
    mono = restrict(cut, fixing)
    return OpenBook(cut.surface, mono, B.provenance + (f"cut {rep.label}",), {"cut": cut, "corrected": fixing})


# -- constructions -----------------------------------------------------------


def _fresh_band(F: FatGraph, stem: str = "h") -> tuple[str, str, str]:
    used = set(F.vertex_of) | set(F.edge_names)
    n = 1
    while f"{stem}{n}" in used or f"{stem}{n}+" in used or f"{stem}{n}-" in used:
        n += 1
    return f"{stem}{n}+", f"{stem}{n}-", f"{stem}{n}"


def _attach(F: FatGraph, x: BoundaryPoint, y: BoundaryPoint, stem: str):
    hx, hy, name = _fresh_band(F, stem)
    G, fn, ends = insert_band(F, x, y, (hx, hy), edge_name=name)
    co_core = Arc(ends[0], (hx,), ends[1])
    return G, fn, hx, hy, co_core


def plumb_hopf(B: OpenBook, a: Arc, sign: int) -> OpenBook:
    """Plumb a Hopf annulus along ``a``; its core picks up ``t^sign``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    F = B.surface
    a = Arc(a.start, reduce_word(F, a.path), a.end)
    G, fn, hx, hy, co = _attach(F, a.start, a.end, "p")
    core = make_loop(G, a.path + (hy,))
    letters = ((core, sign),) + tuple(getattr(B.monodromy, "letters", ()))
    return OpenBook(G, TwistWord(letters), B.provenance + (f"plumb {'+' if sign > 0 else '-'}",), {"spanning": co, "core": core})


def _crossing_word(F: FatGraph, l: Arc) -> list[Word]:
    out = []
    for cr in self_crossing_lifts(F, l):
        L = cr.lift
        out.append(reduce_word(F, l.path[: L.i] + inverse(F, l.path[: L.j])))
    return out


def attach_generalized_hopf_band(B: OpenBook, ell, side: str) -> OpenBook:
    """Attach a once-overlapped band whose core projects to ``ell``.

    ``side`` is ``"over"`` or ``"under"``: which strand of the band passes
    on top at the self-crossing.
    """
    if side not in ("over", "under"):
        raise ValueError("side must be 'over' or 'under'")
    sigma = 1 if side == "over" else -1
    F = B.surface
    arc = ell.arc if isinstance(ell, ImmersedArc) else ell
    arc = Arc(arc.start, reduce_word(F, arc.path), arc.end)
    words = _crossing_word(F, arc)
    n = len(words) // 2
    if n == 0:
        out = plumb_hopf(B, arc, -sigma)
        return replace(out, provenance=B.provenance + (f"ghopf {side} (hopf)",))
    if n != 1:
        raise SelfCrossingCountWrong(f"expected one self-crossing, found {n}")
    choice = None
    for g in sorted(set(words)):
        gi = inverse(F, g)
        pa = reduce_word(F, gi + arc.path)
        pc = reduce_word(F, gi + gi + arc.path)
        if is_embedded(F, Arc(arc.start, pa, arc.end)) and is_embedded(F, Arc(arc.start, pc, arc.end)):
            choice = (g, pa, pc)
            break
    if choice is None:
        raise SelfCrossingCountWrong("could not split the self-crossing into embedded pieces")
    g, pa, pc = choice
    G, fn, hx, hy, co = _attach(F, arc.start, arc.end, "g")
    a = make_loop(G, pa + (hy,))
    c = make_loop(G, pc + (hy,))
    letters: list[tuple[Loop, int]] = [(c, sigma)]
    try:
        letters.append((make_loop(G, g), -2 * sigma))
    except LoopNullHomotopic:
        pass
    letters.append((a, -2 * sigma))
    w = TwistWord(tuple(letters) + tuple(getattr(B.monodromy, "letters", ())))
    return OpenBook(G, w, B.provenance + (f"ghopf {side}",), {"spanning": co})


__all__ = [
    "FIBER",
    "NOT_FIBER",
    "SPLIT_UNION",
    "OpenBook",
    "ResolutionLoops",
    "RestrictedMap",
    "attach_generalized_hopf_band",
    "boundary_parallel",
    "compose_prefix",
    "cut_along_arc",
    "decide_cut_fiber",
    "detect_banding",
    "detect_prefiber_case",
    "label_of",
    "plumb_hopf",
    "prepend",
    "report",
    "resolution_loops",
    "restrict",
    "simplify",
    "unclean_correction",
]
