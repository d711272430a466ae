"""Cutting a fat-graph surface along an embedded arc.

Every band the arc runs through is split into sub-bands, one more than the
number of strands, and every vertex disk is divided by the arc's chords
into regions.  Regions become the vertices of the cut surface.  Band order
questions (which strand lies to the right of which) are answered in the
universal cover, so the construction needs no geometric realization.

After splitting, leaves (a disk attached by a single band) are absorbed
into their neighbour; a cut along a band's co-core then returns exactly the
surface with that band deleted, labels included.

Paths disjoint from the arc move across with :meth:`Cut.to_cut`, and paths
on the cut surface come back with :meth:`Cut.to_original`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import floor
from typing import Callable

from .cover import Tip, line_of, orient, side
from .errors import NotEmbedded, PathError
from .intersect import is_embedded
from .paths import Arc, Loop, Word, check_arc, inverse, make_loop, reduce_word
from .surface import BoundaryPoint, FatGraph, squash, unsquash


class NotDisjoint(PathError):
    """A path to be carried across the cut meets the cutting arc."""


def _name(h: str, q: int | None) -> str:
    return h if q is None else f"{h}#{q}"


def _strip(h: str) -> str:
    return h.rsplit("#", 1)[0] if "#" in h else h


def _aligned_lift(F: FatGraph, alpha: Arc, t: int, addr: Word, same_direction: bool):
    """Lift of ``alpha`` whose traversal ``t`` runs through the tree edge leaving ``addr``."""
    path = alpha.path
    k = t if same_direction else t + 1
    R = Tip(reduce_word(F, addr + inverse(F, path[:k])), alpha.start.corner, Fraction(alpha.start.key))
    S = Tip(reduce_word(F, addr + path[k:]), alpha.end.corner, Fraction(alpha.end.key))
    return R, S


def strand_orders(F: FatGraph, alpha: Arc) -> dict[int, list[int]]:
    """Per edge index, traversal indices of ``alpha`` listed left to right.

    Left and right are taken relative to the edge's first half-edge.
    """
    path = alpha.path
    by_edge: dict[int, list[int]] = {}
    for t, h in enumerate(path):
        by_edge.setdefault(F.edge_of[h], []).append(t)
    out = {}
    for e, ts in by_edge.items():
        d = F.pairs[e][0]
        if len(ts) == 1:
            out[e] = ts
            continue

        P = Tip((), alpha.start.corner, Fraction(alpha.start.key))
        Q = Tip(path, alpha.end.corner, Fraction(alpha.end.key))

        def right_of(t2: int, t1: int) -> bool:
            """Is traversal t2 to the right of t1, relative to d?"""
            R, _S = _aligned_lift(F, alpha, t2, path[:t1], path[t1] == path[t2])
            s = side(F, P, Q, R)
            return (s == 1) if path[t1] == d else (s == -1)

        def cmp(t1: int, t2: int) -> int:
            return -1 if right_of(t2, t1) else 1

        out[e] = sorted(ts, key=cmp_to_key(cmp))
    return out


@dataclass
class _Region:
    vertex_name: str
    rotation: list[str]
    corners: list[list[tuple]]  # per corner, components: ("seg", v, c, lo, hi) or ("chord", i, side)


class Cut:
    """The cut surface together with the maps across the cut."""

    def __init__(self, F: FatGraph, alpha: Arc, contract: bool = True):
        if not is_embedded(F, alpha):
            raise NotEmbedded("cannot cut along a self-crossing arc")
        self.F = F
        self.alpha = alpha
        self._split()
        self.steps: list[_Contraction] = []
        if contract:
            self._contract_leaves()
        G = self._current
        connected = len(G.components) == 1
        self.surface = FatGraph(G.rotations, G.pairs, G.vertex_names, G.edge_names, not connected) if connected else G

    # -- construction ----------------------------------------------------
    def _split(self) -> None:
        F, alpha = self.F, self.alpha
        path = alpha.path
        k = len(path)
        orders = strand_orders(F, alpha)
        self.orders = orders
        self.rank: dict[int, int] = {}
        for e, ts in orders.items():
            for r, t in enumerate(ts):
                self.rank[t] = r
        # marks and chords
        def strand_mark(t: int, h: str):
            return ("strand", t, h)

        chords = []
        partner: dict = {}
        for i in range(k + 1):
            E = ("pt", "start") if i == 0 else strand_mark(i - 1, F.pair[path[i - 1]])
            O = ("pt", "end") if i == k else strand_mark(i, path[i])
            chords.append((E, O))
            partner[E] = (O, i, 0)
            partner[O] = (E, i, 1)
        self.partner = partner
        pts_at: dict[tuple[int, int], list[tuple[Fraction, tuple]]] = {}
        pts_at.setdefault((alpha.start.vertex, alpha.start.corner), []).append((Fraction(alpha.start.key), ("pt", "start")))
        pts_at.setdefault((alpha.end.vertex, alpha.end.corner), []).append((Fraction(alpha.end.key), ("pt", "end")))

        regions: list[_Region] = []
        self.item_home: dict[tuple, tuple[int, int, int]] = {}  # seg item -> (vertex', corner', slot)
        self.seg_items: dict[tuple[int, int], list[tuple]] = {}
        self.sub_name: dict[tuple[str, int | None], str] = {}
        region_of_vertex: dict[int, list[int]] = {}
        for v, rot in enumerate(F.rotations):
            items: list[tuple] = []
            for ix in range(max(1, len(rot))):
                if rot:
                    h = rot[ix]
                    e = F.edge_of[h]
                    ts = orders.get(e, [])
                    s = len(ts)
                    d = F.pairs[e][0]
                    if s == 0:
                        items.append(("sub", h, None))
                    else:
                        # left-to-right sequence relative to d: sub 0, strand ts[0], sub 1, ...
                        seq: list[tuple] = []
                        for q in range(s + 1):
                            seq.append(("sub", h, q))
                            if q < s:
                                seq.append(strand_mark(ts[q], h))
                        if h == d:
                            seq.reverse()
                        items.extend(seq)
                c = ix
                marks = sorted(pts_at.get((v, c), []))
                lo = None
                segs = []
                for key, m in marks:
                    segs.append(("seg", v, c, lo, key))
                    segs.append(m)
                    lo = key
                segs.append(("seg", v, c, lo, None))
                self.seg_items[(v, c)] = [x for x in segs if x[0] == "seg"]
                items.extend(segs)
            self._item_pos = {it: j for j, it in enumerate(items)}
            marks_idx = [j for j, it in enumerate(items) if it[0] in ("strand", "pt")]
            if not marks_idx:
                self._emit_region(regions, region_of_vertex, v, items)
                continue
            M = [items[j] for j in marks_idx]
            pos_of = {m: n for n, m in enumerate(M)}
            nM = len(M)
            gap_items = []
            for g in range(nM):
                a, b = marks_idx[g], marks_idx[(g + 1) % nM]
                if b > a:
                    gap_items.append(items[a + 1 : b])
                else:
                    gap_items.append(items[a + 1 :] + items[:b])
            seen = set()
            cycles = []
            for g in range(nM):
                if g in seen:
                    continue
                cyc = []
                x = g
                while x not in seen:
                    seen.add(x)
                    cyc.append(x)
                    end_mark = M[(x + 1) % nM]
                    other, _i, _s = partner[end_mark]
                    x = pos_of[other]
                cycles.append(cyc)
            for cyc in cycles:
                feats: list[tuple] = []
                for x in cyc:
                    feats.extend(gap_items[x])
                    end_mark = M[(x + 1) % nM]
                    _o, ci, sd = partner[end_mark]
                    feats.append(("chord", ci, sd))
                self._emit_region(regions, region_of_vertex, v, feats)
        for v, rs in region_of_vertex.items():
            for n, ri in enumerate(rs):
                regions[ri].vertex_name = F.vertex_names[v] if len(rs) == 1 else f"{F.vertex_names[v]}.{n}"
        rotations = tuple(tuple(r.rotation) for r in regions)
        pairs = []
        enames = []
        for e, (a, b) in enumerate(F.pairs):
            s = len(orders.get(e, []))
            if s == 0:
                pairs.append((a, b))
                enames.append(F.edge_names[e])
            else:
                for q in range(s + 1):
                    pairs.append((_name(a, q), _name(b, q)))
                    enames.append(f"{F.edge_names[e]}#{q}")
        G = FatGraph(rotations, tuple(pairs), tuple(r.vertex_name for r in regions), tuple(enames), True)
        self.split_surface = G
        self.regions = regions
        # seg item -> (vertex', corner', slot)
        for vi, r in enumerate(regions):
            for cj, comps in enumerate(r.corners):
                for s, comp in enumerate(comps):
                    if comp[0] == "seg":
                        self.item_home[comp] = (vi, cj, s)
        self._current = G
        self._fwd_point: Callable[[BoundaryPoint], BoundaryPoint] = self._split_point
        self._back_point: Callable[[BoundaryPoint], BoundaryPoint] = self._unsplit_point
        self._rename: dict[str, str] = {h: h for h in G.vertex_of}

    def _emit_region(self, regions, region_of_vertex, v, feats) -> None:
        rot: list[str] = []
        corners: list[list[tuple]] = []
        subs = [j for j, it in enumerate(feats) if it[0] == "sub"]
        if not subs:
            corners = [[it for it in feats if it[0] in ("seg", "chord")]]
        else:
            # start at the sub-band end that came first around the old vertex
            first = min(range(len(subs)), key=lambda m: self._item_pos[feats[subs[m]]])
            subs = subs[first:] + subs[:first]
            for m, j in enumerate(subs):
                it = feats[j]
                rot.append(_name(it[1], it[2]))
                nxt = subs[(m + 1) % len(subs)]
                if nxt > j:
                    between = feats[j + 1 : nxt]
                else:
                    between = feats[j + 1 :] + feats[:nxt]
                corners.append([it for it in between if it[0] in ("seg", "chord")])
        regions.append(_Region("", rot, corners))
        region_of_vertex.setdefault(v, []).append(len(regions) - 1)

    # -- points across the split ------------------------------------------
    def _split_point(self, p: BoundaryPoint) -> BoundaryPoint:
        key = Fraction(p.key)
        for it in self.seg_items[(p.vertex, p.corner)]:
            _, v, c, lo, hi = it
            if (lo is None or lo < key) and (hi is None or key < hi):
                vi, cj, s = self.item_home[it]
                return BoundaryPoint(vi, cj, 2 * s + squash(key))
        raise NotDisjoint("point coincides with an endpoint of the cutting arc")

    def _unsplit_point(self, p: BoundaryPoint) -> BoundaryPoint:
        comps = self.regions[p.vertex].corners[p.corner]
        key = Fraction(p.key)
        s = floor((key + 1) / 2)
        if not (0 <= s < len(comps)) or comps[s][0] != "seg":
            raise NotDisjoint("point lies on a copy of the cutting arc")
        _, v, c, lo, hi = comps[s]
        return BoundaryPoint(v, c, unsquash(key - 2 * s))

    # -- leaf contraction --------------------------------------------------
    def _contract_leaves(self) -> None:
        while True:
            G = self._current
            leaf = None
            for u, rot in enumerate(G.rotations):
                if len(rot) == 1:
                    g = rot[0]
                    w = G.vertex_of[G.pair[g]]
                    if w != u:
                        leaf = (u, g)
                        break
            if leaf is None:
                break
            step = _Contraction(G, *leaf)
            self.steps.append(step)
            self._current = step.result
        # tidy vertex names of split vertices that are whole again
        G = self._current
        base = {}
        for n in G.vertex_names:
            base.setdefault(n.split(".")[0], []).append(n)
        names = tuple(
            n.split(".")[0] if len(base[n.split(".")[0]]) == 1 and n.split(".")[0] in self.F.vertex_names else n
            for n in G.vertex_names
        )
        if names != G.vertex_names and len(set(names)) == len(names):
            self._current = FatGraph(G.rotations, G.pairs, names, G.edge_names, True)

    # -- public maps --------------------------------------------------------
    def point_to_cut(self, p: BoundaryPoint) -> BoundaryPoint:
        q = self._split_point(p)
        for st in self.steps:
            q = st.forward(q)
        return q

    def point_to_original(self, p: BoundaryPoint) -> BoundaryPoint:
        q = p
        for st in reversed(self.steps):
            q = st.backward(q)
        return self._unsplit_point(q)

    def half_edge_to_original(self, h: str) -> str:
        return _strip(h)

    def _transfer_word(self, g, word: Word, loop: bool) -> Word:
        F, alpha = self.F, self.alpha
        path = alpha.path
        ref = line_of(F, g)
        out = []
        for u, h in enumerate(word):
            e = F.edge_of[h]
            ts = self.orders.get(e)
            if not ts:
                out.append(h)
                continue
            d = F.pairs[e][0]
            addr = word[:u]
            q = 0
            for t in ts:
                same = path[t] == h
                R, S = _aligned_lift(F, alpha, t, addr, same)
                s1 = orient(F, R, ref.P, S)
                s2 = orient(F, R, ref.Q, S)
                if s1 != s2:
                    raise NotDisjoint("path crosses the cutting arc")
                right = (s1 == 1) if path[t] == h else (s1 == -1)
                # right relative to the traversal direction h; convert to d
                right_d = right if h == d else not right
                if right_d:
                    q += 1
            out.append(_name(h, q))
        return tuple(out)

    def to_cut(self, g):
        """Carry an arc or loop disjoint from the cutting arc onto the cut surface."""
        if isinstance(g, Loop):
            return self.loop_to_cut(g)
        if isinstance(g, Arc):
            if g.start in (self.alpha.start, self.alpha.end) or g.end in (self.alpha.start, self.alpha.end):
                raise NotDisjoint("arc shares an endpoint with the cutting arc")
            w = self._transfer_word(g, g.path, False)
            a = Arc(self.point_to_cut(g.start), w, self.point_to_cut(g.end))
            return self._finish_arc(a)
        raise TypeError(g)

    def _finish_arc(self, a: Arc) -> Arc:
        # names of contracted bands vanish from words; walk the contractions
        for st in self.steps:
            a = st.forward_arc(a)
        a = Arc(a.start, reduce_word(self.surface, a.path), a.end)
        check_arc(self.surface, a)
        return a

    def loop_to_cut(self, L: Loop) -> Loop:
        w = self._transfer_word(L, L.cycle, True)
        for st in self.steps:
            w = st.forward_cycle(w)
        return make_loop(self.surface, w)

    def to_original(self, g):
        """Include a path on the cut surface back into the original surface."""
        F = self.F
        if isinstance(g, Loop):
            return make_loop(F, [_strip(h) for h in g.cycle])
        if isinstance(g, Arc):
            for st in reversed(self.steps):
                g = st.backward_arc(g)
            start, end = self._unsplit_point(g.start), self._unsplit_point(g.end)
            return Arc(start, reduce_word(F, tuple(_strip(h) for h in g.path)), end)
        raise TypeError(g)


class _Contraction:
    """Absorb leaf vertex ``u`` (single half-edge ``g``) into its neighbour."""

    def __init__(self, G: FatGraph, u: int, g: str):
        self.G = G
        self.u = u
        self.g = g
        gp = G.pair[g]
        self.gp = gp
        w = G.vertex_of[gp]
        self.w = w
        rot = list(G.rotations[w])
        j = rot.index(gp)
        d = len(rot)
        self.j, self.d = j, d
        new_rot = rot[:j] + rot[j + 1 :]
        rots = [list(r) for r in G.rotations]
        rots[w] = new_rot
        del rots[u]
        self.vmap = {x: (x if x < u else x - 1) for x in range(len(G.rotations)) if x != u}
        k = G.edge_of[g]
        pairs = G.pairs[:k] + G.pairs[k + 1 :]
        enames = G.edge_names[:k] + G.edge_names[k + 1 :]
        vnames = tuple(n for i, n in enumerate(G.vertex_names) if i != u)
        self.result = FatGraph(tuple(tuple(r) for r in rots), pairs, vnames, enames, True)
        self.merged = (j - 1) % d if j > 0 else d - 2 if d > 1 else 0

    def forward(self, p: BoundaryPoint) -> BoundaryPoint:
        u, w, j, d = self.u, self.w, self.j, self.d
        key = Fraction(p.key)
        if d == 1:
            if p.vertex == w:
                return BoundaryPoint(self.vmap[w], 0, squash(key) - 1)
            if p.vertex == u:
                return BoundaryPoint(self.vmap[w], 0, squash(key) + 1)
            return BoundaryPoint(self.vmap[p.vertex], p.corner, key)
        if p.vertex == u:
            return BoundaryPoint(self.vmap[w], self.merged, squash(key))
        if p.vertex == w:
            c = p.corner
            if c == (j - 1) % d:
                return BoundaryPoint(self.vmap[w], self.merged, squash(key) - 2)
            if c == j:
                return BoundaryPoint(self.vmap[w], self.merged, squash(key) + 2)
            return BoundaryPoint(self.vmap[w], c - 1 if c > j else c, key)
        return BoundaryPoint(self.vmap[p.vertex], p.corner, key)

    def backward(self, p: BoundaryPoint) -> BoundaryPoint:
        u, w, j, d = self.u, self.w, self.j, self.d
        inv = {b: a for a, b in self.vmap.items()}
        v = inv[p.vertex]
        key = Fraction(p.key)
        if v != w:
            return BoundaryPoint(v, p.corner, key)
        if d == 1:
            if key < 0:
                return BoundaryPoint(w, 0, unsquash(key + 1))
            return BoundaryPoint(u, 0, unsquash(key - 1))
        if p.corner == self.merged:
            if key < -1:
                return BoundaryPoint(w, (j - 1) % d, unsquash(key + 2))
            if key > 1:
                return BoundaryPoint(w, j, unsquash(key - 2))
            return BoundaryPoint(u, 0, unsquash(key))
        c = p.corner
        return BoundaryPoint(w, c + 1 if c >= j else c, key)

    def _drop(self, word: Word) -> Word:
        return tuple(h for h in word if h not in (self.g, self.gp))

    def forward_arc(self, a: Arc) -> Arc:
        return Arc(a.start, self._drop(a.path), a.end)

    def forward_cycle(self, w: Word) -> Word:
        return self._drop(w)

    def backward_arc(self, a: Arc) -> Arc:
        start, end = self.backward(a.start), self.backward(a.end)
        path = a.path
        if start.vertex == self.u:
            path = (self.g,) + path
        if end.vertex == self.u:
            path = path + (self.gp,)
        return Arc(start, reduce_word(self.G, path), end)


def boundary_parallel(F: FatGraph, alpha: Arc) -> bool:
    """True when ``alpha`` is isotopic rel endpoints into the boundary."""
    fwd = F.boundary_walk(alpha.start, alpha.end)
    if fwd is not None and reduce_word(F, fwd) == alpha.path:
        return True
    back = F.boundary_walk(alpha.end, alpha.start)
    if back is not None and inverse(F, reduce_word(F, back)) == alpha.path:
        return True
    return False
