"""Standard open books, reference arcs, and seeded random instances.

Everything here is deterministic given its arguments, so tests and the
command line can share the same fixtures.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .cut import boundary_parallel
from .errors import DisconnectedSurface, InvalidPath, LoopNotEmbedded, LoopNullHomotopic
from .fiber_calculus import OpenBook
from .intersect import is_embedded
from .paths import Arc, check_arc, make_loop, reduce_word
from .surface import BoundaryPoint, FatGraph, annulus, build_surface, disk
from .twist import TwistWord, make_word


def _pt(v: int, c: int, key=0) -> BoundaryPoint:
    return BoundaryPoint(v, c, Fraction(key))


def annulus_book(k: int) -> OpenBook:
    """The annulus with ``t_C^k`` for its core ``C``."""
    F = annulus()
    return OpenBook(F, make_word(F, [(("a+",), k)]) if k else TwistWord(), (f"annulus t^{k}",))


def hopf_book(sign: int) -> OpenBook:
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return annulus_book(sign)


def spanning_arc() -> Arc:
    """The arc across the annulus from the outer to the inner boundary."""
    return Arc(_pt(0, 0), (), _pt(0, 1))


def pants_surface() -> FatGraph:
    """One vertex with two loop bands; corners 0 and 2 are whole boundary circles."""
    return build_surface({"v": ["a+", "a-", "b+", "b-"]}, {"a": ("a+", "a-"), "b": ("b+", "b-")})


def pants_book(ea: int, eb: int) -> OpenBook:
    F = pants_surface()
    return OpenBook(F, make_word(F, [(("a+",), ea), (("b+",), eb)]), (f"pants t_a^{ea} t_b^{eb}",))


def pants_arc() -> Arc:
    """Joins the two boundary circles that the twist loops run around."""
    return Arc(_pt(0, 0), (), _pt(0, 2))


def four_class_fixtures() -> dict[str, tuple[OpenBook, Arc]]:
    """One arc for each of the four clean/unclean, alternating/non-alternating classes."""
    return {
        "clean-non-alternating": (pants_book(-1, 1), pants_arc()),
        "clean-alternating": (hopf_book(1), spanning_arc()),
        "once-unclean-non-alternating": (pants_book(-2, 1), pants_arc()),
        "once-unclean-alternating": (annulus_book(2), spanning_arc()),
    }


def disk_book() -> OpenBook:
    return OpenBook(disk(), TwistWord(), ("disk",))


# -- random instances --------------------------------------------------------


def random_surface(rng: random.Random, max_vertices: int = 3, max_edges: int = 4) -> FatGraph:
    """A connected fat graph with at least one band."""
    while True:
        V = rng.randint(1, max_vertices)
        E = rng.randint(max(1, V - 1), max_edges)
        slots: list[list[str]] = [[] for _ in range(V)]
        pairs = {}
        for k in range(E):
            a, b = f"e{k}+", f"e{k}-"
            pairs[f"e{k}"] = (a, b)
            for h in (a, b):
                row = slots[rng.randrange(V)]
                row.insert(rng.randint(0, len(row)), h)
        if any(not row for row in slots):
            continue
        try:
            return build_surface({f"v{i}": row for i, row in enumerate(slots)}, pairs)
        except DisconnectedSurface:
            continue


def random_loop(F: FatGraph, rng: random.Random, max_len: int = 4):
    """A random simple essential loop, or None after a few misses."""
    for _ in range(40):
        v = rng.randrange(len(F.rotations))
        w: list[str] = []
        for _ in range(rng.randint(1, max_len)):
            opts = [h for h in F.rotations[v] if not w or h != F.pair[w[-1]]]
            if not opts:
                break
            h = rng.choice(opts)
            w.append(h)
            v = F.vertex_of[F.pair[h]]
        if not w or F.vertex_of[w[0]] != v:
            continue
        try:
            L = make_loop(F, w)
        except (LoopNullHomotopic, InvalidPath):
            continue
        if is_embedded(F, L):
            return L
    return None


def random_word(F: FatGraph, rng: random.Random, length: int = 3, signs=(1, -1), exponents=(1,)) -> TwistWord:
    letters = []
    for _ in range(length):
        L = random_loop(F, rng)
        if L is not None:
            letters.append((L, rng.choice(signs) * rng.choice(exponents)))
    try:
        return make_word(F, letters)
    except LoopNotEmbedded:
        return TwistWord()


def random_book(rng: random.Random, max_vertices: int = 3, max_edges: int = 4, length: int = 3, signs=(1, -1)) -> OpenBook:
    F = random_surface(rng, max_vertices, max_edges)
    return OpenBook(F, random_word(F, rng, length, signs), ("random",))


def random_arc(F: FatGraph, rng: random.Random, max_len: int = 5, essential: bool = True, tries: int = 200) -> Arc | None:
    """A random embedded arc with reduced band word."""
    for _ in range(tries):
        v = rng.randrange(len(F.rotations))
        start = BoundaryPoint(v, rng.randrange(F.n_corners(v)), Fraction(rng.randint(-2, 2)))
        w: list[str] = []
        for _ in range(rng.randint(0, max_len)):
            opts = [h for h in F.rotations[v] if not w or h != F.pair[w[-1]]]
            if not opts:
                break
            h = rng.choice(opts)
            w.append(h)
            v = F.vertex_of[F.pair[h]]
        end = BoundaryPoint(v, rng.randrange(F.n_corners(v)), Fraction(rng.randint(-2, 2)))
        if end == start:
            continue
        a = Arc(start, reduce_word(F, w), end)
        try:
            check_arc(F, a)
        except InvalidPath:
            continue
        if not is_embedded(F, a):
            continue
        if essential and boundary_parallel(F, a):
            continue
        return a
    return None


__all__ = [
    "annulus_book",
    "disk_book",
    "four_class_fixtures",
    "hopf_book",
    "pants_arc",
    "pants_book",
    "pants_surface",
    "random_arc",
    "random_book",
    "random_loop",
    "random_surface",
    "random_word",
    "spanning_arc",
]
