"""Arcs and loops on a fat graph, represented by their band words.

An arc is a start point, the sequence of half-edges it leaves through, and
an end point.  Because a fat graph deformation retracts onto its graph,
the reduced word together with the endpoints determines the arc up to
homotopy rel endpoints, which for embedded arcs is isotopy rel endpoints.
A loop is a cyclic word; the cyclically reduced primitive word names the
free homotopy class, and for simple curves that is the isotopy class.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidPath, LoopNullHomotopic
from .surface import BoundaryPoint, FatGraph

Word = tuple[str, ...]


def inverse(F: FatGraph, word: Sequence[str]) -> Word:
    return tuple(F.pair[h] for h in reversed(word))


def reduce_word(F: FatGraph, word: Sequence[str]) -> Word:
    out: list[str] = []
    for h in word:
        if out and out[-1] == F.pair[h]:
            out.pop()
        else:
            out.append(h)
    return tuple(out)


def cyclic_reduce(F: FatGraph, word: Sequence[str]) -> Word:
    w = list(reduce_word(F, word))
    while len(w) > 1 and w[0] == F.pair[w[-1]]:
        w = w[1:-1]
    return tuple(w)


def primitive_root(word: Word) -> Word:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word == word[:d] * (n // d):
            return word[:d]
    return word


def rotations(word: Word) -> list[Word]:
    return [word[i:] + word[:i] for i in range(len(word))]


def vertex_after(F: FatGraph, h: str) -> int:
    """Vertex reached after traversing the band that ``h`` leaves through."""
    return F.vertex_of[F.pair[h]]


@dataclass(frozen=True)
class Arc:
    start: BoundaryPoint
    path: Word
    end: BoundaryPoint

    def reversed(self, F: FatGraph) -> "Arc":
        return Arc(self.end, inverse(F, self.path), self.start)

    def vertices(self, F: FatGraph) -> list[int]:
        out = [self.start.vertex]
        for h in self.path:
            out.append(vertex_after(F, h))
        return out

    @property
    def kind(self) -> str:
        return "arc"


@dataclass(frozen=True)
class Loop:
    """Closed curve as a cyclic band word; stored in canonical rotation."""

    cycle: Word

    @property
    def kind(self) -> str:
        return "loop"

    def __len__(self) -> int:
        return len(self.cycle)


@dataclass(frozen=True)
class ImmersedArc:
    """An arc allowed one transverse self-crossing."""

    arc: Arc

    @property
    def kind(self) -> str:
        return "immersed"


def check_arc(F: FatGraph, a: Arc) -> None:
    F.check_point(a.start)
    F.check_point(a.end)
    v = a.start.vertex
    for h in a.path:
        if h not in F.vertex_of:
            raise InvalidPath(f"unknown half-edge {h!r}")
        if F.vertex_of[h] != v:
            raise InvalidPath(f"half-edge {h!r} does not leave vertex {F.vertex_names[v]}")
        v = vertex_after(F, h)
    if v != a.end.vertex:
        raise InvalidPath("arc path does not arrive at the end point's vertex")
    if a.start == a.end:
        raise InvalidPath("arc endpoints coincide")


def make_arc(F: FatGraph, start: BoundaryPoint, path: Sequence[str], end: BoundaryPoint) -> Arc:
    a = Arc(start, reduce_word(F, tuple(path)), end)
    check_arc(F, a)
    return a


def canonical_cycle(F: FatGraph, word: Sequence[str]) -> Word:
    c = cyclic_reduce(F, word)
    if not c:
        raise LoopNullHomotopic("loop is null-homotopic")
    return min(rotations(c))


def check_cycle(F: FatGraph, word: Sequence[str]) -> None:
    if not word:
        raise LoopNullHomotopic("empty loop")
    n = len(word)
    for j, h in enumerate(word):
        if h not in F.vertex_of:
            raise InvalidPath(f"unknown half-edge {h!r}")
        nxt = word[(j + 1) % n]
        if nxt not in F.vertex_of:
            raise InvalidPath(f"unknown half-edge {nxt!r}")
        if F.vertex_of[nxt] != vertex_after(F, h):
            raise InvalidPath(f"loop word is not closed at {h!r} -> {nxt!r}")


def make_loop(F: FatGraph, word: Sequence[str]) -> Loop:
    """Validate a closed band word and return its canonical loop.

    Proper powers are replaced by their primitive root, since a simple
    closed curve is never a proper power.
    """
    check_cycle(F, tuple(word))
    c = canonical_cycle(F, word)
    return Loop(min(rotations(primitive_root(c))))


def loop_key(F: FatGraph, L: Loop) -> Word:
    """Orientation-free identity of a loop."""
    return min(L.cycle, min(rotations(inverse(F, L.cycle))))


def reverse_loop(F: FatGraph, L: Loop) -> Loop:
    return Loop(min(rotations(inverse(F, L.cycle))))


def same_loop(F: FatGraph, a: Loop, b: Loop) -> bool:
    return loop_key(F, a) == loop_key(F, b)


def normalize(F: FatGraph, g):
    """Canonical representative: free reduction, cyclic rotation for loops."""
    if isinstance(g, Arc):
        return make_arc(F, g.start, g.path, g.end)
    if isinstance(g, Loop):
        return make_loop(F, g.cycle)
    if isinstance(g, ImmersedArc):
        return ImmersedArc(make_arc(F, g.arc.start, g.arc.path, g.arc.end))
    raise InvalidPath(f"not a path: {g!r}")
