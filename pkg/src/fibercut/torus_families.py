"""Torus-link fiber surfaces and exhaustive searches for fiber bands on them.

The fiber of T(2,p) is two disks D1, D2 joined by p bands.  In the fat
graph D1 has rotation ``b1+ ... bp+`` and D2 has ``b1- ... bp-``; loop
``t_i`` runs out of D1 through ``b(i+1)`` and back through ``b(i)``.

Arcs are enumerated by band word with a bound on the number of band
passages.  A partial word is abandoned as soon as it already contains a
self-crossing that no extension can remove.  Surviving arcs are sorted
into classes up to sliding the endpoints along the boundary and applying
the monodromy, which is isotopy of the link as a set.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .composite_calculus import boundary_connect_sum, component_graph, divide_arc, reposition_disjoint
from .cover import INF, _cyclic_sign, _position, _sym, arc_line, lcp, lifts, side
from .cut import Cut, boundary_parallel
from .errors import ComplexityBudgetExceeded, HypothesesUnmet
from .fiber_calculus import FIBER, OpenBook, report, verdict_of
from .paths import Arc
from .documents import arc_doc
from .surface import BoundaryPoint, FatGraph, build_surface
from .twist import make_word

MAX_CANDIDATES = 400_000


def torus_surface(p: int) -> FatGraph:
    if p < 1:
        raise ValueError("p must be at least 1")
    return build_surface(
        {"D1": [f"b{i}+" for i in range(1, p + 1)], "D2": [f"b{i}-" for i in range(1, p + 1)]},
        {f"b{i}": (f"b{i}+", f"b{i}-") for i in range(1, p + 1)},
    )


def torus_open_book(p: int) -> OpenBook:
    """The T(2,p) fiber with monodromy ``t_1 o t_2 o ... o t_(p-1)``."""
    F = torus_surface(p)
    w = make_word(F, [((f"b{i + 1}+", f"b{i}-"), 1) for i in range(1, p)])
    return OpenBook(F, w, (f"T(2,{p})",))


def signature_bookkeeping(p: int) -> tuple[int, int]:
    """Euler characteristic and signature of T(2,p)."""
    if p < 1:
        raise ValueError("p must be at least 1")
    return 2 - p, 1 - p


def boundary_count(p: int) -> int:
    return 1 if p % 2 else 2


def sum_boundary_count(parts) -> int:
    """Components of a connected sum of T(2,p_k) links."""
    return sum(boundary_count(k) for k in parts) - (len(parts) - 1)


def shape(parts) -> str:
    return "#".join(f"T(2,{k})" for k in parts)


# -- symmetry ---------------------------------------------------------------


def involution(F: FatGraph, a: Arc) -> Arc:
    """Swap D1 and D2, keeping every band: ``b_i+`` and ``b_i-`` trade places."""
    sw = {h: (h[:-1] + ("-" if h.endswith("+") else "+")) for h in F.vertex_of}
    vmap = {v: F.vertex_of[sw[F.rotations[v][0]]] for v in range(len(F.rotations))}

    def pt(p: BoundaryPoint) -> BoundaryPoint:
        return BoundaryPoint(vmap[p.vertex], p.corner, p.key)

    return Arc(pt(a.start), tuple(sw[h] for h in a.path), pt(a.end))


def _bounds(F: FatGraph, v: int, c: int) -> tuple[str, str]:
    return F.half_edge_at(v, c), F.half_edge_at(v, c + 1)


def _slide_once(F: FatGraph, a: Arc) -> Arc | None:
    """Shorten ``a`` by sliding one endpoint across a band, if allowed."""
    for end in (False, True):
        g = a.reversed(F) if end else a
        if not g.path:
            continue
        x, y = g.start, g.end
        cw, ccw = _bounds(F, x.vertex, x.corner)
        first = g.path[0]
        for h, forward in ((ccw, True), (cw, False)):
            if first != h:
                continue
            same = (y.vertex, y.corner) == (x.vertex, x.corner)
            # the endpoint may not pass the other one on its way to the band
            if same and ((forward and y.key > x.key) or (not forward and y.key < x.key)):
                continue
            nc = F.next_corner((x.vertex, x.corner)) if forward else F.prev_corner((x.vertex, x.corner))
            if (y.vertex, y.corner) == nc:
                key = Fraction(y.key) - 1 if forward else Fraction(y.key) + 1
            else:
                key = Fraction(0)
            moved = Arc(BoundaryPoint(nc[0], nc[1], key), g.path[1:], y)
            return moved.reversed(F) if end else moved
    return None


def slide_normal(F: FatGraph, a: Arc) -> Arc:
    """Shortest representative under sliding the endpoints along the boundary."""
    while True:
        nxt = _slide_once(F, a)
        if nxt is None:
            return a
        a = nxt


def _step(F: FatGraph, a: Arc, forward: bool) -> Arc | None:
    """Slide the start of ``a`` across the next band end, or None if blocked."""
    x, y = a.start, a.end
    cw, ccw = _bounds(F, x.vertex, x.corner)
    same = (y.vertex, y.corner) == (x.vertex, x.corner)
    if same and ((forward and y.key > x.key) or (not forward and y.key < x.key)):
        return None
    h = ccw if forward else cw
    nc = F.next_corner((x.vertex, x.corner)) if forward else F.prev_corner((x.vertex, x.corner))
    if (y.vertex, y.corner) == nc:
        key = Fraction(y.key) - 1 if forward else Fraction(y.key) + 1
    else:
        key = Fraction(0)
    path = a.path[1:] if a.path and a.path[0] == h else (F.pair[h],) + a.path
    return Arc(BoundaryPoint(nc[0], nc[1], key), path, y)


def _start_moves(F: FatGraph, a: Arc) -> list[Arc]:
    x = (a.start.vertex, a.start.corner)
    n = len(next(c for c in F.boundary_components if x in c))
    out = [a]
    for forward in (True, False):
        g = a
        for _ in range(n):
            g = _step(F, g, forward)
            if g is None:
                break
            out.append(g)
    return out


def _form(g: Arc) -> tuple:
    same = (g.start.vertex, g.start.corner) == (g.end.vertex, g.end.corner)
    order = (g.start.key < g.end.key) if same else None
    return (len(g.path), g.start.vertex, g.start.corner, g.path, g.end.vertex, g.end.corner, order)


def arc_key(F: FatGraph, a: Arc) -> tuple:
    """Orientation-free key of an arc up to sliding its ends along the boundary.

    The arc is first shortened greedily, then every position of each end
    within one tour of its boundary component is tried.
    """
    a = slide_normal(F, a)
    best = None
    for g in _start_moves(F, a):
        for r in _start_moves(F, g.reversed(F)):
            for k in (_form(r), _form(r.reversed(F))):
                if best is None or k < best:
                    best = k
    return best


def class_key(B: OpenBook, a: Arc, limit: int | None = None) -> tuple:
    """Key of the class of ``a`` up to sliding and the monodromy action."""
    F, h = B.surface, B.monodromy
    limit = limit or 4 * len(F.pairs) + 4
    keys = [arc_key(F, a)]
    g = a
    for _ in range(limit):
        g = h.apply(F, g)
        k = arc_key(F, g)
        if k == keys[0]:
            return min(keys)
        keys.append(k)
    raise ComplexityBudgetExceeded("monodromy orbit did not close up to sliding")


def d1_chords(p: int) -> list[Arc]:
    """Chords of D1 between distinct corners; corner i sits after band b(i+1)."""
    F = torus_surface(p)
    v = F.vertex_index["D1"]
    out = []
    for i in range(p):
        for j in range(i + 1, p):
            out.append(Arc(BoundaryPoint(v, i, Fraction(0)), (), BoundaryPoint(v, j, Fraction(0))))
    return out


def chord_split(p: int, chord: Arc) -> tuple[int, int]:
    i, j = sorted((chord.start.corner, chord.end.corner))
    k = j - i
    return tuple(sorted((k, p - k)))


# -- enumeration -------------------------------------------------------------


def _fiber_precheck(F: FatGraph, image: Arc, a: Arc) -> bool:
    """Cheap necessary condition for a fiber verdict: fewer than two crossings."""
    ref = arc_line(F, a)
    P, Q = ref.P, ref.Q
    n = 0
    for L in lifts(F, ref, image):
        if (L.R == P and L.S == Q) or (L.R == Q and L.S == P):
            return False
        if L.R == P or L.R == Q or L.S == P or L.S == Q:
            continue
        if side(F, P, Q, L.R) != side(F, P, Q, L.S):
            n += 1
            if n > 1:
                return False
    return True


def _open_orient(F: FatGraph, x, y, z, tx: int, ty: int, tz: int) -> int | None:
    """Like :func:`orient`, but None when an unfinished end could still matter.

    ``tx, ty, tz`` are the indices of the terminal symbols of unfinished
    points (``INF`` for finished ones).  Once every common prefix stops
    before those symbols, every symbol that :func:`orient` reads is final.
    """
    lxy, lxz, lyz = lcp(x, y), lcp(x, z), lcp(y, z)
    if lxy >= min(tx, ty) or lxz >= min(tx, tz) or lyz >= min(ty, tz):
        return None
    L = max(lxy, lxz, lyz)
    if lxy == L or lxz == L:
        ref, to_ref = x, (INF, lxy, lxz)
    else:
        ref, to_ref = y, (lxy, INF, lyz)
    back = F.pair[_sym(ref, L - 1)] if L else None
    slots = [_sym(p, L) if k >= L else back for p, k in zip((x, y, z), to_ref)]
    return _cyclic_sign(*(_position(F, s) for s in slots))


def _open_lifts(F: FatGraph, start: BoundaryPoint, path: tuple[str, ...]) -> list | None:
    """Self-lifts of an unfinished arc whose crossing depends on the far end.

    None means some lift already crosses for every completion.
    """
    g = Arc(start, path, BoundaryPoint(0, -1, Fraction(0)))
    ref = arc_line(F, g)
    P, Q = ref.P, ref.Q
    pending = []
    for L in lifts(F, ref, g):
        if L.R == P and L.S == Q:
            continue
        if L.R == P or L.R == Q or L.S == P or L.S == Q:
            continue
        tq, ts = len(Q.path), len(L.S.path)
        sR = _open_orient(F, P, L.R, Q, INF, INF, tq)
        sS = _open_orient(F, P, L.S, Q, INF, ts, tq)
        if sR is not None and sS is not None:
            if sR != sS:
                return None
            continue
        pending.append(L)
    return pending


def _closes_embedded(F: FatGraph, a: Arc, pending: list) -> bool:
    ref = arc_line(F, a)
    P, Q = ref.P, ref.Q
    c, k = a.end.corner, Fraction(a.end.key)
    for L in pending:
        S = L.S._replace(corner=c, key=k)
        if side(F, P, Q, L.R) != side(F, P, Q, S):
            return False
    return True


def enumerate_arcs(F: FatGraph, max_visits: int, cap: int = MAX_CANDIDATES, unique: bool = True) -> Iterator[Arc]:
    """Embedded essential arcs with at most ``max_visits`` band passages.

    Endpoints are taken one per corner, plus both orders when the two ends
    share a corner.  Words whose first or last band hugs the endpoint's
    corner are skipped: sliding gives a shorter word for the same class.
    With ``unique`` repeats within a sliding class are mostly suppressed.
    """
    seen_keys: set = set()
    seen = 0
    for v in range(len(F.rotations)):
        for c in range(F.n_corners(v)):
            start = BoundaryPoint(v, c, Fraction(0))
            stack: list[tuple[str, ...]] = [()]
            while stack:
                path = stack.pop()
                seen += 1
                if seen > cap:
                    raise ComplexityBudgetExceeded(f"more than {cap} partial words at budget {max_visits}")
                pending = _open_lifts(F, start, path)
                if pending is None:
                    continue
                w = v if not path else F.vertex_of[F.pair[path[-1]]]
                for a in _closings(F, start, path, w):
                    if unique:
                        k = _quick_key(F, a)
                        if k in seen_keys:
                            continue
                        seen_keys.add(k)
                    if _closes_embedded(F, a, pending) and not boundary_parallel(F, a):
                        yield a
                if len(path) < max_visits:
                    for h in F.rotations[w]:
                        if path and h == F.pair[path[-1]]:
                            continue
                        if not path and h in _bounds(F, v, c):
                            continue
                        stack.append(path + (h,))


def _quick_key(F: FatGraph, a: Arc) -> tuple:
    # greedy sliding is not confluent, so this only catches most repeats
    return min(_form(slide_normal(F, a)), _form(slide_normal(F, a.reversed(F))))


def _closings(F: FatGraph, start: BoundaryPoint, path, w: int) -> Iterator[Arc]:
    for c in range(F.n_corners(w)):
        if path and F.pair[path[-1]] in _bounds(F, w, c):
            continue
        if (w, c) == (start.vertex, start.corner):
            yield Arc(start, path, BoundaryPoint(w, c, Fraction(1)))
            yield Arc(start, path, BoundaryPoint(w, c, Fraction(-1)))
        else:
            yield Arc(start, path, BoundaryPoint(w, c, Fraction(0)))


@dataclass(frozen=True)
class BandRecord:
    """A fiber-producing arc with the bookkeeping of its cut."""

    arc: Arc
    verdict: str
    label: str
    class_key: tuple = field(repr=False)
    split: tuple[int, ...]
    components: int
    chi: int
    boundary: int

    @property
    def shape(self) -> str:
        return shape(self.split)

    def to_doc(self, F: FatGraph) -> dict:
        return {
            "arc": arc_doc(F, self.arc),
            "verdict": self.verdict,
            "label": self.label,
            "split": list(self.split),
            "shape": self.shape,
            "components": self.components,
            "chi": self.chi,
            "boundary": self.boundary,
        }


@dataclass
class TorusEnumeration:
    p: int
    max_visits: int
    records: list[BandRecord]
    classes: dict  # class key -> split
    chord_classes: dict  # class key -> list of chords
    examined: int

    def class_counts(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for split in self.classes.values():
            out[split] = out.get(split, 0) + 1
        return out

    def table(self) -> list[dict]:
        rows = []
        for split, n in sorted(self.class_counts().items()):
            found = sum(1 for r in self.records if r.split == split)
            lead = [k for k in split if k > 1] or [1]
            rows.append({"split": list(split), "link": shape(lead), "sum": shape(split), "classes": n, "arcs": found})
        return rows


def chord_classes(B: OpenBook, p: int) -> dict:
    out: dict = {}
    for ch in d1_chords(p):
        out.setdefault(class_key(B, ch), []).append(ch)
    return out


def enumerate_fiber_bands(p: int, max_visits: int, cap: int = MAX_CANDIDATES) -> TorusEnumeration:
    """All fiber-producing arcs on the T(2,p) fiber within the visit budget.

    Raises :class:`HypothesesUnmet` if a fiber arc falls outside the chord
    classes or its cut disagrees with the connected-sum bookkeeping.
    """
    if p < 2:
        raise ValueError("p must be at least 2")
    B = torus_open_book(p)
    F = B.surface
    chords = chord_classes(B, p)
    split_of = {k: chord_split(p, v[0]) for k, v in chords.items()}
    records = []
    classes: dict = {}
    examined = 0
    for a in enumerate_arcs(F, max_visits, cap):
        examined += 1
        if not _fiber_precheck(F, B.monodromy.apply(F, a), a):
            continue
        rep = report(B, a)
        verdict = verdict_of(rep.geometry)
        if verdict != FIBER:
            continue
        key = class_key(B, a)
        if key not in split_of:
            raise HypothesesUnmet(f"fiber arc {a} is not in a chord class")
        split = split_of[key]
        G = Cut(F, a).surface
        rec = BandRecord(
            a,
            verdict,
            rep.label,
            key,
            split,
            len(G.components),
            G.euler_characteristic(),
            len(G.boundary_components),
        )
        if rec.chi != F.euler_characteristic() + 1 or rec.boundary != sum_boundary_count(split) or sum(split) != p:
            raise HypothesesUnmet(f"cut of {a} does not match {rec.shape}")
        records.append(rec)
        classes[key] = split
    return TorusEnumeration(p, max_visits, records, classes, chords, examined)


# -- sums of two torus books -------------------------------------------------


@dataclass(frozen=True)
class CompositeBandRecord:
    arc: Arc
    verdict: str
    summand: int
    split: tuple[int, ...]
    parts: tuple[int, ...]
    crossings_before: int

    @property
    def shape(self) -> str:
        return shape(self.parts)

    def to_doc(self, F: FatGraph) -> dict:
        return {
            "arc": arc_doc(F, self.arc),
            "verdict": self.verdict,
            "summand": self.summand,
            "split": list(self.split),
            "shape": self.shape,
            "crossings_before": self.crossings_before,
        }


def torus_sum_book(p: int, q: int):
    return boundary_connect_sum(torus_open_book(p), torus_open_book(q))


def _piece_arc(d, k: int) -> tuple[int, Arc]:
    """The essential sub-arc moved onto a standard torus surface."""
    part = d.parts[k]
    P = d.surface
    comp = next(c for c in P.components if part.arc.start.vertex in c)
    H, index = component_graph(P, comp)
    # summands after the first carry a relabeling prefix such as "s1_"
    strip = {h: re.sub(r"^s\d+_", "", h) for h in H.vertex_of}
    std = torus_surface(len(H.pairs))
    vmap = {index[v]: std.vertex_of[strip[H.rotations[index[v]][0]]] for v in comp}

    def pt(x: BoundaryPoint) -> BoundaryPoint:
        return BoundaryPoint(vmap[index[x.vertex]], x.corner, x.key)

    return len(H.pairs), Arc(pt(part.arc.start), tuple(strip[h] for h in part.arc.path), pt(part.arc.end))


def enumerate_composite_fiber_bands(p: int, q: int, max_visits: int, cap: int = MAX_CANDIDATES) -> list[CompositeBandRecord]:
    """Fiber-producing arcs on T(2,p) # T(2,q), each placed in one summand."""
    if p < 2 or q < 2:
        raise ValueError("both summands need at least two bands")
    B, S = torus_sum_book(p, q)
    F = B.surface
    chords = {}
    out = []
    for a in enumerate_arcs(F, max_visits, cap):
        rep = report(B, a)
        if verdict_of(rep.geometry) != FIBER:
            continue
        trace: list[int] = []
        S2 = reposition_disjoint(B, S, a, trace)
        if any(x <= y for x, y in zip(trace, trace[1:])) or trace[-1] != 0:
            raise HypothesesUnmet("repositioning did not clear the arc")
        del S2
        d = divide_arc(B, S, a)
        essential = [i for i, part in enumerate(d.parts) if not part.report.fixed]
        if len(essential) != 1:
            raise HypothesesUnmet(f"expected one essential sub-arc, found {len(essential)}")
        summand = d.parts[essential[0]].piece
        n, sub = _piece_arc(d, essential[0])
        if n not in chords:
            chords[n] = {k: chord_split(n, v[0]) for k, v in chord_classes(torus_open_book(n), n).items()}
        key = class_key(torus_open_book(n), sub)
        if key not in chords[n]:
            raise HypothesesUnmet(f"sub-arc {sub} is not a chord class of T(2,{n})")
        split = chords[n][key]
        parts = (split + (q,)) if summand == 0 else ((p,) + split)
        G = Cut(F, a).surface
        if G.euler_characteristic() != F.euler_characteristic() + 1 or len(G.boundary_components) != sum_boundary_count(parts):
            raise HypothesesUnmet(f"cut of {a} does not match {shape(parts)}")
        out.append(CompositeBandRecord(a, FIBER, summand, split, parts, trace[0]))
    return out


__all__ = [
    "BandRecord",
    "CompositeBandRecord",
    "TorusEnumeration",
    "arc_key",
    "boundary_count",
    "chord_classes",
    "chord_split",
    "class_key",
    "d1_chords",
    "enumerate_arcs",
    "enumerate_composite_fiber_bands",
    "enumerate_fiber_bands",
    "involution",
    "shape",
    "signature_bookkeeping",
    "slide_normal",
    "sum_boundary_count",
    "torus_open_book",
    "torus_surface",
]
