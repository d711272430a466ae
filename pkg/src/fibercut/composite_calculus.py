"""Boundary connected sums, decomposing systems, and arcs divided by them.

A boundary connected sum joins two open books by a single band whose
co-core is the decomposing arc.  Deleting every connecting band gives the
pieces; an arc that runs through connecting bands is cut at each passage
into sub-arcs, one per stay inside a piece.  Each sub-arc is compared with
its own image under the piece monodromy, and the contact signs at its two
ends feed the crossing count of the whole arc.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .cover import line_of, lifts, side
from .cut import boundary_parallel, strand_orders
from .errors import HypothesesUnmet, MixedPositivity, NotMinimal
from .fiber_calculus import OpenBook, cut_along_arc
from .intersect import intersection_number, is_embedded, label_of, minimal_position
from .mapping_classes import ArcReport
from .paths import Arc, inverse, make_loop, reduce_word, vertex_after
from .surface import BoundaryPoint, FatGraph, delete_band, disjoint_union, insert_band
from .twist import TwistWord, positivity

CLEAN_ALTERNATING = "clean-alternating"
PATTERN_2_1 = "once-unclean-non-alternating(2-1)"
PATTERN_2_2 = "once-unclean-non-alternating(2-2)"
OTHER = "other"


@dataclass(frozen=True)
class DecomposingSystem:
    """Disjoint arcs cutting a sum into its summands.

    ``bands`` names the connecting bands when the arcs are their co-cores;
    after a repositioning the arcs are general and ``bands`` is empty.
    """

    arcs: tuple[Arc, ...]
    pieces: tuple[OpenBook, ...]
    bands: tuple[str, ...] = ()

    @property
    def positivities(self) -> tuple[str, ...]:
        return tuple(p.positivity for p in self.pieces)

    def fingerprint(self) -> tuple:
        return piece_fingerprint(self.pieces)


@dataclass(frozen=True)
class SubArc:
    arc: Arc
    piece: int
    report: ArcReport
    t: int | None  # sign at the start; None when free
    s: int | None  # sign at the end

    @property
    def free(self) -> bool:
        return self.report.fixed


@dataclass(frozen=True)
class DividedArc:
    arc: Arc
    parts: tuple[SubArc, ...]
    piece_positivity: tuple[str, ...]
    surface: FatGraph = field(compare=False, repr=False)

    @property
    def n(self) -> int:
        return len(self.parts)

    @property
    def free(self) -> tuple[bool, ...]:
        return tuple(p.free for p in self.parts)


@dataclass(frozen=True)
class CompositeVerdict:
    pattern: str
    witness: tuple[int, ...] | None

    def agrees_with(self, label: str) -> bool:
        """Does the pattern predict the direct label of the whole arc?"""
        if self.pattern == CLEAN_ALTERNATING:
            return label == "clean-alternating"
        if self.pattern in (PATTERN_2_1, PATTERN_2_2):
            return label == "once-unclean-non-alternating"
        return label not in ("clean-alternating", "once-unclean-non-alternating")


# -- pieces -----------------------------------------------------------------


def component_graph(G: FatGraph, comp) -> tuple[FatGraph, dict[int, int]]:
    """One component as a surface of its own, with the vertex renumbering."""
    verts = sorted(comp)
    index = {v: i for i, v in enumerate(verts)}
    halves = {h for v in verts for h in G.rotations[v]}
    keep = [k for k, (a, _b) in enumerate(G.pairs) if a in halves]
    H = FatGraph(
        tuple(G.rotations[v] for v in verts),
        tuple(G.pairs[k] for k in keep),
        tuple(G.vertex_names[v] for v in verts),
        tuple(G.edge_names[k] for k in keep),
    )
    return H, index


def split_book(G: FatGraph, w) -> tuple[OpenBook, ...]:
    """The open books on the components of ``G``, letters sorted by support."""
    letters = getattr(w, "letters", None)
    out = []
    for comp in G.components:
        H, _ = component_graph(G, comp)
        if letters is None:
            out.append(OpenBook(H, w))
            continue
        mine = tuple((C, e) for C, e in letters if G.vertex_of[C.cycle[0]] in comp)
        out.append(OpenBook(H, TwistWord(tuple((make_loop(H, C.cycle), e) for C, e in mine))))
    return tuple(out)


def piece_fingerprint(pieces) -> tuple:
    """Multiset of (chi, boundary count, positivity) over the pieces."""
    return tuple(
        sorted((B.surface.euler_characteristic(), len(B.surface.boundary_components), B.positivity) for B in pieces)
    )


# -- sums -------------------------------------------------------------------


def _relabel_book(B: OpenBook, taken: set[str]) -> OpenBook:
    F = B.surface
    names = set(F.vertex_of) | set(F.vertex_names) | set(F.edge_names)
    if not names & taken:
        return B
    k = 1
    while {f"s{k}_{n}" for n in names} & taken:
        k += 1
    prefix = f"s{k}_"
    G = F.relabeled({}, prefix)
    letters = tuple((make_loop(G, tuple(prefix + h for h in C.cycle)), e) for C, e in getattr(B.monodromy, "letters", ()))
    return OpenBook(G, TwistWord(letters), B.provenance)


def _fresh(F: FatGraph, stem: str) -> str:
    used = set(F.vertex_of) | set(F.edge_names)
    n = 1
    while f"{stem}{n}" in used or f"{stem}{n}+" in used or f"{stem}{n}-" in used:
        n += 1
    return f"{stem}{n}"


def co_cores(F: FatGraph, bands, points=()) -> tuple[Arc, ...]:
    """Co-cores of the named bands, each end just clockwise of its foot.

    The ends are placed past every key among ``points`` in the same corner,
    so no listed point lies between a co-core end and its foot.
    """
    out = []
    for name in bands:
        a, b = F.pairs[F.edge_names.index(name)]
        ends = []
        for foot in (a, b):
            c = F.corner_before(foot)
            ends.append(BoundaryPoint(c[0], c[1], _max_key(F, c, points)))
        out.append(Arc(ends[0], (a,), ends[1]))
    return tuple(out)


def band_system(B: OpenBook, bands) -> DecomposingSystem:
    """The system of co-cores of the named bands."""
    G, _move = _pieces_graph(B.surface, bands)
    return DecomposingSystem(co_cores(B.surface, bands), split_book(G, B.monodromy), tuple(bands))


def boundary_connect_sum(
    B1: OpenBook,
    B2: OpenBook,
    at1: BoundaryPoint | None = None,
    at2: BoundaryPoint | None = None,
    system: DecomposingSystem | None = None,
) -> tuple[OpenBook, DecomposingSystem]:
    """Join two open books by a band from ``at1`` on B1 to ``at2`` on B2.

    The monodromy is ``h1`` followed by ``h2``; their supports are
    disjoint so the order is immaterial.  Passing the system of B1 extends
    it, which is how longer sums are built.
    """
    F1 = B1.surface
    taken = set(F1.vertex_of) | set(F1.vertex_names) | set(F1.edge_names)
    B2 = _relabel_book(B2, taken)
    F2 = B2.surface
    U = disjoint_union(F1, F2)
    shift = len(F1.rotations)
    at1 = at1 or BoundaryPoint(0, 0, Fraction(0))
    at2 = at2 or BoundaryPoint(0, 0, Fraction(0))
    at2 = BoundaryPoint(at2.vertex + shift, at2.corner, at2.key)
    name = _fresh(U, "c")
    G, _pm, _ends = insert_band(U, at1, at2, (f"{name}+", f"{name}-"), edge_name=name, split=False)
    letters = tuple(getattr(B1.monodromy, "letters", ())) + tuple(getattr(B2.monodromy, "letters", ()))
    book = OpenBook(G, TwistWord(letters), B1.provenance + B2.provenance + ("boundary sum",))
    bands = (system.bands if system else ()) + (name,)
    pieces = (system.pieces if system else (B1,)) + (B2,)
    return book, DecomposingSystem(co_cores(G, bands), pieces, bands)


def connect_sum_chain(books, points=None) -> tuple[OpenBook, DecomposingSystem]:
    """Sum a list of books left to right, each new one attached to the previous."""
    books = list(books)
    if not books:
        raise HypothesesUnmet("nothing to sum")
    B, S = books[0], None
    if len(books) == 1:
        return B, DecomposingSystem((), (B,), ())
    for i, nxt in enumerate(books[1:]):
        at1, at2 = (points[i] if points else (None, None))
        B, S = boundary_connect_sum(B, nxt, at1, at2, S)
    return B, S


# -- dividing an arc ---------------------------------------------------------


def _pieces_graph(F: FatGraph, bands):
    G = F
    maps = []
    for name in bands:
        G, pm, _info = delete_band(G, name)
        maps.append(pm)

    def move(p: BoundaryPoint) -> BoundaryPoint:
        for pm in maps:
            p = pm(p)
        return p

    return G, move


def _max_key(F: FatGraph, corner, points) -> Fraction:
    keys = [Fraction(p.key) for p in points if (p.vertex, p.corner) == corner]
    return max(keys) + 1 if keys else Fraction(0)


def divide_arc(B: OpenBook, S: DecomposingSystem, alpha: Arc) -> DividedArc:
    """Cut ``alpha`` at its passages through the system into sub-arcs."""
    F, h = B.surface, B.monodromy
    if not S.arcs:
        return _whole(B, alpha)
    if not S.bands:
        return _divide_general(B, S, alpha)
    band_idx = {F.edge_names.index(n) for n in S.bands}
    passes = [t for t, x in enumerate(alpha.path) if F.edge_of[x] in band_idx]
    expected = sum(intersection_number(F, alpha, d) for d in co_cores(F, S.bands, (alpha.start, alpha.end)))
    if len(passes) != expected:
        raise NotMinimal(f"arc passes the system {len(passes)} times but meets it {expected} times")
    orders = strand_orders(F, alpha)
    # junction points sit just clockwise of each band foot, in the order of the strands there
    live = [alpha.start, alpha.end]
    near: dict[int, BoundaryPoint] = {}
    far: dict[int, BoundaryPoint] = {}
    by_foot: dict[str, list[tuple[int, int, str]]] = {}
    for t in passes:
        x = alpha.path[t]
        e = F.edge_of[x]
        order = orders[e]
        rank, size = order.index(t), len(order)
        for foot, slot in ((x, "near"), (F.pair[x], "far")):
            pos = size - 1 - rank if foot == F.pairs[e][0] else rank
            by_foot.setdefault(foot, []).append((pos, t, slot))
    for foot, items in by_foot.items():
        corner = F.corner_before(foot)
        base = _max_key(F, corner, live)
        for pos, t, slot in items:
            p = BoundaryPoint(corner[0], corner[1], base + pos)
            (near if slot == "near" else far)[t] = p
        live.extend(BoundaryPoint(corner[0], corner[1], base + pos) for pos, _t, _s in items)
    P, move = _pieces_graph(F, S.bands)
    pos_of = {tuple(sorted(c)): j for j, c in enumerate(P.components)}
    piece_index = {v: pos_of[tuple(sorted(c))] for c in P.components for v in c}
    cuts = [-1] + passes + [len(alpha.path)]
    parts = []
    for i in range(len(cuts) - 1):
        a, b = cuts[i], cuts[i + 1]
        start = alpha.start if a < 0 else far[a]
        end = alpha.end if b == len(alpha.path) else near[b]
        sub = Arc(move(start), alpha.path[a + 1 : b], move(end))
        parts.append(_sub_arc(P, h, sub, piece_index[sub.start.vertex]))
    pos = [positivity_of_piece(P, h, comp) for comp in P.components]
    return DividedArc(alpha, tuple(parts), tuple(pos), P)


def positivity_of_piece(G: FatGraph, w, comp) -> str:
    letters = getattr(w, "letters", None)
    if letters is None:
        return positivity(w)
    mine = tuple((C, e) for C, e in letters if G.vertex_of[C.cycle[0]] in comp)
    return positivity(TwistWord(mine))


def _sub_arc(P: FatGraph, h, sub: Arc, piece: int) -> SubArc:
    image = h.apply(P, sub)
    geo = minimal_position(P, sub, image)
    rep = ArcReport(sub, image, geo, label_of(geo), positivity(h), boundary_parallel(P, sub))
    if geo.fixed:
        return SubArc(sub, piece, rep, None, None)
    t, s = geo.boundary_signs
    return SubArc(sub, piece, rep, t, s)


def _whole(B: OpenBook, alpha: Arc) -> DividedArc:
    F = B.surface
    part = _sub_arc(F, B.monodromy, alpha, 0)
    return DividedArc(alpha, (part,), (B.positivity,), F)


def _divide_general(B: OpenBook, S: DecomposingSystem, alpha: Arc) -> DividedArc:
    """Only arcs missing a general system are handled: they live in one piece."""
    F = B.surface
    if any(intersection_number(F, alpha, d) for d in S.arcs):
        raise HypothesesUnmet("dividing along a repositioned system needs an arc disjoint from it")
    book, cuts = cut_system(B, S.arcs)
    a = alpha
    for c in cuts:
        a = c.to_cut(a)
    G = book.surface
    comps = G.components
    j = next(k for k, c in enumerate(comps) if a.start.vertex in c)
    part = _sub_arc(G, book.monodromy, a, j)
    pos = tuple(positivity_of_piece(G, book.monodromy, c) for c in comps)
    return DividedArc(alpha, (part,), pos, G)


# -- the crossing formula -----------------------------------------------------


def _sign_choices(d: DividedArc):
    options = [((p.t, p.s),) if not p.free else ((1, -1), (-1, 1)) for p in d.parts]
    return product(*options)


def rho_via_decomposition(d: DividedArc) -> int:
    """Crossings of the whole arc from its sub-arcs and junction signs."""
    inner = sum(p.report.rho for p in d.parts)
    best = None
    for choice in _sign_choices(d):
        extra = sum(abs(choice[i][1] + choice[i + 1][0]) for i in range(len(choice) - 1)) // 2
        best = extra if best is None else min(best, extra)
    return inner + (best or 0)


# -- the composite classifier -------------------------------------------------


def _eps(pos: str) -> int:
    if pos == "all-right":
        return 1
    if pos == "all-left":
        return -1
    raise MixedPositivity(f"piece positivity is {pos}")


def classify_composite_arc(d: DividedArc) -> CompositeVerdict:
    """Match the sub-arc data against the three sum patterns."""
    eps_piece = [_eps(p) for p in d.piece_positivity]
    n = d.n
    labels = [p.report.label for p in d.parts]
    bp = [p.report.boundary_parallel for p in d.parts]
    eps = [eps_piece[p.piece] for p in d.parts]
    found = {}
    for mask in range(1, 1 << n):
        A = tuple(i for i in range(n) if mask >> i & 1)
        if any(not bp[i] for i in range(n) if not mask >> i & 1):
            continue
        flips = [eps[A[k]] != eps[A[k + 1]] for k in range(len(A) - 1)]
        lab = [labels[i] for i in A]
        clean = lab.count("clean-alternating")
        unclean = lab.count("once-unclean-alternating")
        if len(A) % 2 == 1 and clean == len(A) and all(flips):
            found.setdefault(CLEAN_ALTERNATING, A)
        if len(A) % 2 == 0 and clean == len(A) - 1 and unclean == 1 and all(flips):
            found.setdefault(PATTERN_2_1, A)
        if len(A) % 2 == 1 and clean == len(A) and flips.count(False) == 1:
            found.setdefault(PATTERN_2_2, A)
    for pattern in (CLEAN_ALTERNATING, PATTERN_2_1, PATTERN_2_2):
        if pattern in found:
            return CompositeVerdict(pattern, found[pattern])
    return CompositeVerdict(OTHER, None)


# -- moving the system off a band ---------------------------------------------


def cut_system(B: OpenBook, arcs) -> tuple[OpenBook, list]:
    """Cut along each arc in turn; returns the cut book and the cut maps."""
    book = B
    cuts = []
    for d in arcs:
        for c in cuts:
            d = c.to_cut(d)
        book = cut_along_arc(book, d)
        cuts.append(book.marks["cut"])
    return book, cuts


def system_from_arcs(B: OpenBook, arcs) -> DecomposingSystem:
    book, _ = cut_system(B, arcs)
    G = book.surface
    pieces = split_book(G, book.monodromy)
    return DecomposingSystem(tuple(arcs), pieces, ())


def _crossing_total(F: FatGraph, alpha: Arc, arcs) -> int:
    return sum(intersection_number(F, alpha, d) for d in arcs)


def _gap(points, corner) -> Fraction:
    keys = sorted({Fraction(p.key) for p in points if (p.vertex, p.corner) == corner})
    gaps = [b - a for a, b in zip(keys, keys[1:])]
    return (min(gaps) if gaps else Fraction(1)) / 4


def _candidates(F: FatGraph, alpha: Arc, arcs):
    """Replacement arcs: from a pushed end of alpha, back along it, then out along a crossing arc."""
    pts = [alpha.start, alpha.end] + [p for d in arcs for p in (d.start, d.end)]
    for a in (alpha, alpha.reversed(F)):
        ref = line_of(F, a)
        Pt, Qt = ref.P, ref.Q
        for m, d in enumerate(arcs):
            hits = []
            for L in lifts(F, ref, d):
                if {L.R, L.S} & {Pt, Qt}:
                    continue
                if side(F, Pt, Qt, L.R) != side(F, Pt, Qt, L.S):
                    hits.append(L)
            for L in hits:
                for Z in (L.R, L.S):
                    zv = vertex_after(F, Z.path[-1]) if Z.path else a.start.vertex
                    zp = BoundaryPoint(zv, Z.corner, Fraction(Z.key))
                    path = reduce_word(F, inverse(F, Qt.path) + Z.path)
                    eps = _gap(pts, (a.end.vertex, a.end.corner))
                    for sgn in (1, -1):
                        yield m, Arc(a.end.shifted(sgn * eps), path, zp)


def reposition_disjoint(B: OpenBook, S: DecomposingSystem, alpha: Arc, trace: list | None = None) -> DecomposingSystem:
    """A decomposing system missing ``alpha``, built by replacement moves.

    Each move swaps one system arc for an arc that starts next to an end
    of ``alpha``, runs alongside it to a crossing, and leaves along the old
    arc.  A move is kept only if the new arc is embedded, misses the rest
    of the system, is fixed by the monodromy, lowers the crossing count,
    and leaves the pieces unchanged.
    """
    F, h = B.surface, B.monodromy
    pos = set(S.positivities)
    if len(pos) != 1 or pos & {"mixed"}:
        raise HypothesesUnmet("all pieces must share one positivity")
    rep = minimal_position(F, alpha, h.apply(F, alpha))
    if label_of(rep) != "clean-alternating":
        raise HypothesesUnmet("the arc must be clean-alternating")
    arcs = list(co_cores(F, S.bands, (alpha.start, alpha.end)) if S.bands else S.arcs)
    count = _crossing_total(F, alpha, arcs)
    if trace is not None:
        trace.append(count)
    if count == 0:
        return S
    target = S.fingerprint()
    while count:
        done = False
        for m, cand in _candidates(F, alpha, arcs):
            others = arcs[:m] + arcs[m + 1 :]
            try:
                ok = (
                    is_embedded(F, cand)
                    and not boundary_parallel(F, cand)
                    and all(intersection_number(F, cand, o) == 0 for o in others)
                    and not {cand.start, cand.end} & {p for o in others for p in (o.start, o.end)}
                    and h.apply(F, cand) == cand
                )
            except Exception:
                ok = False
            if not ok:
                continue
            new = others[:m] + [cand] + others[m:]
            c = _crossing_total(F, alpha, new)
            if c >= count:
                continue
            try:
                system = system_from_arcs(B, new)
            except Exception:
                continue
            if system.fingerprint() != target:
                continue
            arcs, count, done = new, c, True
            if trace is not None:
                trace.append(count)
            break
        if not done:
            raise HypothesesUnmet("no replacement move lowers the crossing count")
    return system_from_arcs(B, arcs)


def summand_of(S: DecomposingSystem, B: OpenBook, alpha: Arc) -> int:
    """Index of the piece (in the cut surface's order) holding an arc that misses the system."""
    return divide_arc(B, S, alpha).parts[0].piece


__all__ = [
    "CLEAN_ALTERNATING",
    "OTHER",
    "PATTERN_2_1",
    "PATTERN_2_2",
    "CompositeVerdict",
    "DecomposingSystem",
    "DividedArc",
    "SubArc",
    "band_system",
    "boundary_connect_sum",
    "classify_composite_arc",
    "connect_sum_chain",
    "cut_system",
    "divide_arc",
    "piece_fingerprint",
    "reposition_disjoint",
    "rho_via_decomposition",
    "split_book",
    "summand_of",
    "system_from_arcs",
]
