"""Dehn twists and twist words acting on arcs and loops.

A right (positive) twist along ``C`` makes every strand crossing ``C`` turn
right, run once around ``C``, and continue.  In the universal cover that is
a deck translation along each crossed lift of ``C`` towards the end lying
on the right of the strand, so the image of a path is obtained by
composing those translations in the order the crossings are met.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from typing import Iterable, Sequence

from .cover import Lift, Line, backward_cycle, line_of, lifts, side, translate
from .errors import LoopNotEmbedded, LoopNullHomotopic, MonodromyError
from .intersect import is_embedded
from .paths import (
    Arc,
    Loop,
    Word,
    canonical_cycle,
    inverse,
    loop_key,
    make_loop,
    primitive_root,
    reduce_word,
    rotations,
)
from .surface import BoundaryPoint, FatGraph


def _power(F: FatGraph, w: Word, e: int) -> Word:
    if e >= 0:
        return w * e
    return inverse(F, w) * (-e)


def _deck_word(F: FatGraph, ref: Line, C: Loop, L: Lift, forward: bool) -> Word:
    addr = ref.address(L.i)
    c = C.cycle
    cyc = c[L.j :] + c[: L.j] if forward else backward_cycle(F, c, L.j)
    return addr + cyc + inverse(F, addr)


def _crossing_lifts(F: FatGraph, ref: Line, C: Loop) -> list[tuple[Lift, Word]]:
    out = []
    for L in lifts(F, ref, C):
        sR, sS = side(F, ref.P, ref.Q, L.R), side(F, ref.P, ref.Q, L.S)
        if sR == sS:
            continue
        # translate towards the end on the right of the strand
        out.append((L, _deck_word(F, ref, C, L, forward=(sS == 1))))
    return out


def _sort_along(F: FatGraph, ref: Line, items: list[tuple[Lift, Word]]):
    def before(A, B) -> int:
        la, lb = A[0], B[0]
        sq = side(F, la.R, la.S, ref.Q)
        sb = side(F, la.R, la.S, lb.S)
        return -1 if sb == sq else 1

    return sorted(items, key=cmp_to_key(before))


def twist_arc(F: FatGraph, C: Loop, e: int, a: Arc) -> Arc:
    if e == 0:
        return a
    ref = line_of(F, a)
    items = _sort_along(F, ref, _crossing_lifts(F, ref, C))
    if not items:
        return a
    word: Word = ()
    for _, g in items:
        word += _power(F, g, e)
    return Arc(a.start, reduce_word(F, word + a.path), a.end)


def twist_loop(F: FatGraph, C: Loop, e: int, D: Loop) -> Loop:
    if e == 0:
        return D
    ref = line_of(F, D)
    items = _crossing_lifts(F, ref, C)
    if not items:
        return D
    T = D.cycle
    Tinv = inverse(F, T)

    def shifted(item, k):
        L, g = item
        if k > 0:
            pre, post = T, Tinv
        else:
            pre, post = Tinv, T
        R = translate(F, pre, L.R)
        S = translate(F, pre, L.S)
        return (Lift(L.i, L.j, R, S), reduce_word(F, pre + g + post))

    def after(X, Y) -> bool:
        ly, lx = Y[0], X[0]
        return side(F, ly.R, ly.S, lx.S) == side(F, ly.R, ly.S, ref.Q)

    items = _sort_along(F, ref, items)
    for _ in range(4 * len(items) * (len(T) + 2) + 8):
        first_shift = shifted(items[0], 1)
        if len(items) > 1 and after(items[-1], first_shift):
            items = _sort_along(F, ref, items[:-1] + [shifted(items[-1], -1)])
            continue
        break
    word: Word = ()
    for _, g in items:
        word += _power(F, g, e)
    return Loop(min(rotations(primitive_root(canonical_cycle(F, word + T)))))


def twist(F: FatGraph, C: Loop, e: int, g):
    if isinstance(g, Arc):
        return twist_arc(F, C, e, g)
    if isinstance(g, Loop):
        return twist_loop(F, C, e, g)
    raise TypeError(f"cannot twist {g!r}")


@dataclass(frozen=True)
class TwistWord:
    """Composition ``t_{L1}^{e1} o ... o t_{Ln}^{en}``; the last letter acts first."""

    letters: tuple[tuple[Loop, int], ...] = ()

    def apply(self, F: FatGraph, g):
        for C, e in reversed(self.letters):
            g = twist(F, C, e, g)
        return g

    def inverse(self) -> "TwistWord":
        return TwistWord(tuple((C, -e) for C, e in reversed(self.letters)))

    def then(self, other: "TwistWord") -> "TwistWord":
        """``other o self``: apply self first."""
        return TwistWord(other.letters + self.letters)

    def __mul__(self, other: "TwistWord") -> "TwistWord":
        return TwistWord(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def positivity(self) -> str:
        return positivity(self)


def positivity(w) -> str:
    """Sign pattern of the exponents; the empty word counts as all-right."""
    letters = getattr(w, "letters", ())
    if all(e > 0 for _, e in letters):
        return "all-right"
    if all(e < 0 for _, e in letters):
        return "all-left"
    return "mixed"


def make_word(F: FatGraph, letters: Iterable[tuple[Sequence[str] | Loop, int]]) -> TwistWord:
    """Validate twist letters; null-homotopic loops are dropped as identities."""
    out = []
    for loop, e in letters:
        try:
            L = loop if isinstance(loop, Loop) else make_loop(F, loop)
        except LoopNullHomotopic:
            continue
        if not is_embedded(F, L):
            raise LoopNotEmbedded(f"twist loop {L.cycle} is not simple")
        if e:
            out.append((L, int(e)))
    return TwistWord(tuple(out))


def apply(F: FatGraph, w, g):
    return w.apply(F, g)


# -- equality of mapping classes ---------------------------------------------


def filling_arcs(F: FatGraph) -> list[Arc]:
    """Arcs whose images determine a mapping class fixing the boundary.

    Per component: a based arc through each non-tree band of a spanning
    tree (these generate the fundamental group rel a boundary point) and an
    arc from the base to every other boundary component.
    """
    out: list[Arc] = []
    for comp in F.components:
        r = comp[0]
        if not F.rotations[r]:
            continue
        tree: dict[int, Word] = {r: ()}
        order = [r]
        tree_edges: set[int] = set()
        k = 0
        while k < len(order):
            v = order[k]
            k += 1
            for h in F.rotations[v]:
                w = F.vertex_of[F.pair[h]]
                if w not in tree:
                    tree[w] = tree[v] + (h,)
                    tree_edges.add(F.edge_of[h])
                    order.append(w)
        n = 0
        for ei, (a, b) in enumerate(F.pairs):
            if ei in tree_edges or F.vertex_of[a] not in tree:
                continue
            va = F.vertex_of[a]
            word = tree[va] + (a,) + inverse(F, tree[F.vertex_of[b]])
            start = BoundaryPoint(r, 0, -(2 * n + 1))
            end = BoundaryPoint(r, 0, 2 * n + 1)
            out.append(Arc(start, reduce_word(F, word), end))
            n += 1
        base_comp = F.component_of_corner[(r, 0)]
        seen = {base_comp}
        for bi, bc in enumerate(F.boundary_components):
            v, c = bc[0]
            if v not in tree or bi in seen:
                continue
            seen.add(bi)
            out.append(Arc(BoundaryPoint(r, 0, 0), tree[v], BoundaryPoint(v, c, 0)))
    return out


def mcg_equal(F: FatGraph, w1, w2) -> bool:
    """Alexander-method comparison on a filling arc system."""
    for a in filling_arcs(F):
        if w1.apply(F, a) != w2.apply(F, a):
            return False
    return True


def word_is_identity(F: FatGraph, w) -> bool:
    return mcg_equal(F, w, TwistWord())


def loops_of(w) -> list[Loop]:
    return [C for C, _ in getattr(w, "letters", ())]


def letter_key(F: FatGraph, C: Loop) -> Word:
    return loop_key(F, C)


__all__ = [
    "TwistWord",
    "apply",
    "filling_arcs",
    "make_word",
    "mcg_equal",
    "positivity",
    "twist",
    "twist_arc",
    "twist_loop",
    "MonodromyError",
]
