"""Combinatorics of the universal cover.

The universal cover of a fat graph thickens a tree, and that thickening is
a planar disk whose boundary circle carries the lifted boundary points
together with the ideal ends of lifted loops.  Tree vertices are addressed
by reduced words from a base vertex.  A finite boundary point of the cover
is a :class:`Tip` (address, corner, key); an ideal point is a :class:`Ray`
(eventually periodic word).  Two lifts cross exactly when their endpoints
interleave on the circle, so every intersection question reduces to the
cyclic orientation of three points, read off at their median tree vertex.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Union

from .paths import Arc, Loop, Word, inverse, primitive_root, reduce_word, vertex_after
from .surface import FatGraph


class Tip(NamedTuple):
    path: Word
    corner: int
    key: Fraction


class Ray(NamedTuple):
    prefix: Word
    cycle: Word


Point = Union[Tip, Ray]
INF = 1 << 30


def make_ray(F: FatGraph, prefix: Word, cycle: Word) -> Ray:
    """Canonical form of the ideal point ``prefix . cycle^infinity``.

    ``cycle`` must be cyclically reduced.  Cancellation at the junction is
    absorbed by rotating the cycle, then the prefix is trimmed as far as
    it agrees with the cycle's tail.
    """
    pre = list(reduce_word(F, prefix))
    cyc = primitive_root(tuple(cycle))
    while pre and pre[-1] == F.pair[cyc[0]]:
        pre.pop()
        cyc = cyc[1:] + cyc[:1]
    while pre and pre[-1] == cyc[-1]:
        pre.pop()
        cyc = cyc[-1:] + cyc[:-1]
    return Ray(tuple(pre), cyc)


def _sym(p: Point, k: int):
    if isinstance(p, Tip):
        if k < len(p.path):
            return p.path[k]
        return ("c", p.corner, p.key)
    if k < len(p.prefix):
        return p.prefix[k]
    return p.cycle[(k - len(p.prefix)) % len(p.cycle)]


def _length(p: Point) -> int:
    return len(p.path) + 1 if isinstance(p, Tip) else INF


def lcp(p: Point, q: Point) -> int:
    """Length of the common address prefix; ``INF`` when the points agree."""
    if p == q:
        return INF
    if isinstance(p, Tip) and isinstance(q, Tip):
        # two finite addresses first differ inside the shorter path or at its end
        a, b = p.path, q.path
        n = min(len(a), len(b))
        k = 0
        while k < n and a[k] == b[k]:
            k += 1
        return k
    cap = min(_length(p), _length(q))
    if cap == INF:
        cap = max(len(p.prefix), len(q.prefix)) + len(p.cycle) + len(q.cycle) + 1
    k = 0
    while k < cap:
        if _sym(p, k) != _sym(q, k):
            return k
        k += 1
    return INF


def translate(F: FatGraph, g: Word, p: Point) -> Point:
    """Act by the deck transformation with word ``g`` (a closed path at the base)."""
    if isinstance(p, Tip):
        return Tip(reduce_word(F, g + p.path), p.corner, p.key)
    return make_ray(F, g + p.prefix, p.cycle)


def _position(F: FatGraph, s) -> tuple[int, Fraction]:
    if isinstance(s, tuple):
        return (2 * s[1] + 1, s[2])
    return (2 * F.index_of[s], 0)


def _cyclic_sign(a, b, c) -> int:
    if a < b < c or b < c < a or c < a < b:
        return 1
    return -1


def orient(F: FatGraph, x: Point, y: Point, z: Point) -> int:
    """+1 when x, y, z occur counterclockwise on the boundary circle."""
    lxy, lxz, lyz = lcp(x, y), lcp(x, z), lcp(y, z)
    if INF in (lxy, lxz, lyz):
        raise ValueError("orientation of coincident points")
    L = max(lxy, lxz, lyz)
    # the pair achieving L passes through the median vertex and splits there
    if lxy == L or lxz == L:
        ref, to_ref = x, (INF, lxy, lxz)
    else:
        ref, to_ref = y, (lxy, INF, lyz)
    slots = []
    for p, k in zip((x, y, z), to_ref):
        if k >= L:
            slots.append(_sym(p, L))
        else:
            slots.append(F.pair[_sym(ref, L - 1)])
    return _cyclic_sign(*(_position(F, s) for s in slots))


def side(F: FatGraph, p: Point, q: Point, x: Point) -> int:
    """+1 when ``x`` lies to the right of the directed line from ``p`` to ``q``."""
    return orient(F, p, x, q)


# -- reference lines and their lifts ---------------------------------------


@dataclass(frozen=True)
class Line:
    """A lifted arc (finite) or loop axis (infinite) used as reference."""

    kind: str  # "arc" or "loop"
    word: Word
    P: Point
    Q: Point
    start_vertex: int

    def positions(self) -> range:
        return range(len(self.word) + 1) if self.kind == "arc" else range(len(self.word))

    def address(self, i: int) -> Word:
        return self.word[:i]

    def vertex(self, F: FatGraph, i: int) -> int:
        if self.kind == "loop":
            return F.vertex_of[self.word[i]]
        return self.start_vertex if i == 0 else vertex_after(F, self.word[i - 1])

    def back_slot(self, F: FatGraph, i: int) -> str | None:
        if self.kind == "loop":
            return F.pair[self.word[i - 1]]
        return F.pair[self.word[i - 1]] if i > 0 else None

    def forward_slot(self, i: int) -> str | None:
        if self.kind == "loop":
            return self.word[i % len(self.word)]
        return self.word[i] if i < len(self.word) else None


def arc_line(F: FatGraph, a: Arc) -> Line:
    return Line(
        "arc",
        a.path,
        Tip((), a.start.corner, Fraction(a.start.key)),
        Tip(a.path, a.end.corner, Fraction(a.end.key)),
        a.start.vertex,
    )


def backward_cycle(F: FatGraph, c: Word, j: int) -> Word:
    m = len(c)
    return tuple(F.pair[c[(j - 1 - t) % m]] for t in range(m))


def loop_line(F: FatGraph, L: Loop) -> Line:
    c = L.cycle
    return Line("loop", c, make_ray(F, (), backward_cycle(F, c, 0)), make_ray(F, (), c), F.vertex_of[c[0]])


def line_of(F: FatGraph, g) -> Line:
    return arc_line(F, g) if isinstance(g, Arc) else loop_line(F, g)


@dataclass(frozen=True)
class Lift:
    """One lift of a path meeting the reference line.

    ``i`` is the reference position where the overlap starts and ``j`` the
    matching position on the lifted path.  ``R`` and ``S`` are the lifted
    start and end (backward and forward ideal points for loops).
    """

    i: int
    j: int
    R: Point
    S: Point


def _slots(F: FatGraph, kind: str, word: Word, j: int) -> set[str]:
    out = set()
    if kind == "loop":
        m = len(word)
        out.add(F.pair[word[(j - 1) % m]])
        out.add(word[j % m])
        return out
    if j > 0:
        out.add(F.pair[word[j - 1]])
    if j < len(word):
        out.add(word[j])
    return out


def lifts(F: FatGraph, ref: Line, g) -> Iterator[Lift]:
    """All lifts of ``g`` sharing at least one tree vertex with ``ref``.

    For a loop reference only one lift per orbit of the axis translation is
    produced.  Each lift is reported once, at the start of its overlap.
    """
    if isinstance(g, Arc):
        kind, word, gv = "arc", g.path, g.start.vertex
        jpos = range(len(word) + 1)

        def gvert(j):
            return gv if j == 0 else vertex_after(F, word[j - 1])

    else:
        kind, word = "loop", g.cycle
        jpos = range(len(word))

        def gvert(j):
            return F.vertex_of[word[j]]

    by_vertex: dict[int, list[int]] = {}
    for j in jpos:
        by_vertex.setdefault(gvert(j), []).append(j)
    for i in ref.positions():
        v = ref.vertex(F, i)
        back = ref.back_slot(F, i)
        addr = ref.address(i)
        for j in by_vertex.get(v, ()):
            if back is not None and back in _slots(F, kind, word, j):
                continue
            if kind == "arc":
                R = Tip(reduce_word(F, addr + inverse(F, word[:j])), g.start.corner, Fraction(g.start.key))
                S = Tip(reduce_word(F, addr + word[j:]), g.end.corner, Fraction(g.end.key))
            else:
                R = make_ray(F, addr, backward_cycle(F, word, j))
                S = make_ray(F, addr, word[j:] + word[:j])
            yield Lift(i, j, R, S)


def overlap_end(F: FatGraph, ref: Line, g, lift: Lift) -> int:
    """Reference position where the lift leaves the reference line."""
    word = g.path if isinstance(g, Arc) else g.cycle
    loop = not isinstance(g, Arc)
    i, j = lift.i, lift.j
    n = len(word)
    limit = 4 * (len(ref.word) + n) + 4
    t = 0
    fwd = ref.forward_slot(i)
    if fwd is None:
        return i

    def gsym(k):
        if loop:
            return word[k % n]
        return word[k] if 0 <= k < n else None

    if gsym(j) == fwd:
        while t < limit:
            a = ref.forward_slot(i + t) if (ref.kind == "loop" or i + t < len(ref.word)) else None
            if a is None or gsym(j + t) != a:
                break
            t += 1
    else:
        prev = gsym(j - 1)
        if prev is not None and F.pair[prev] == fwd:
            while t < limit:
                a = ref.forward_slot(i + t) if (ref.kind == "loop" or i + t < len(ref.word)) else None
                b = gsym(j - 1 - t)
                if a is None or b is None or F.pair[b] != a:
                    break
                t += 1
    return i + t


def ref_vertex(F: FatGraph, ref: Line, i: int) -> int:
    if ref.kind == "loop":
        return F.vertex_of[ref.word[i % len(ref.word)]]
    return ref.vertex(F, min(i, len(ref.word)))
