"""Seeded instance generators shared by the test modules."""
from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path

from fibercut.catalog import random_arc
from fibercut.composite_calculus import boundary_connect_sum
from fibercut.errors import InvalidPath
from fibercut.fiber_calculus import OpenBook
from fibercut.intersect import self_crossing_count
from fibercut.paths import Arc, check_arc, reduce_word
from fibercut.surface import BoundaryPoint, FatGraph, annulus
from fibercut.torus_families import torus_open_book, torus_surface
from fibercut.twist import make_word

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"

# one-line acceptance verdicts, echoed in the terminal summary
VERDICTS: list[str] = []


def scene_files() -> list[Path]:
    return sorted(FIXTURES.glob("*.scene"))


def torus_book(p: int, exponents) -> OpenBook:
    """T(2,p) surface with ``t_i^{e_i}``; exponent 0 drops the letter."""
    F = torus_surface(p)
    letters = [((f"b{i + 1}+", f"b{i}-"), e) for i, e in zip(range(1, p), exponents) if e]
    return OpenBook(F, make_word(F, letters), (f"T(2,{p}) {list(exponents)}",))


def hopf(sign: int) -> OpenBook:
    F = annulus()
    return OpenBook(F, make_word(F, [(("a+",), sign)]))


def random_torus_book(rng: random.Random, p_range=(2, 4), exps=(1, -1, 2)) -> OpenBook:
    p = rng.randint(*p_range)
    return torus_book(p, [rng.choice(exps) for _ in range(p - 1)])


def embedded_arc(F: FatGraph, rng: random.Random, max_len: int = 5) -> Arc:
    a = None
    while a is None:
        a = random_arc(F, rng, max_len=max_len, essential=False)
    return a


def immersed_arc(F: FatGraph, rng: random.Random, max_len: int = 6, tries: int = 2000) -> Arc | None:
    """An arc with exactly one essential self-crossing."""
    for _ in range(tries):
        v = rng.randrange(len(F.rotations))
        start = BoundaryPoint(v, rng.randrange(F.n_corners(v)), Fraction(rng.randint(-2, 2)))
        w: list[str] = []
        for _ in range(rng.randint(1, max_len)):
            h = rng.choice([h for h in F.rotations[v] if not w or h != F.pair[w[-1]]])
            w.append(h)
            v = F.vertex_of[F.pair[h]]
        end = BoundaryPoint(v, rng.randrange(F.n_corners(v)), Fraction(rng.randint(-2, 2)))
        a = Arc(start, reduce_word(F, w), end)
        if a.start == a.end:
            continue
        try:
            check_arc(F, a)
        except InvalidPath:
            continue
        if self_crossing_count(F, a) == 1:
            return a
    return None


def _point(F: FatGraph, rng: random.Random) -> BoundaryPoint:
    v = rng.randrange(len(F.rotations))
    return BoundaryPoint(v, rng.randrange(F.n_corners(v)), Fraction(rng.randint(-2, 2)))


def _piece(rng: random.Random) -> OpenBook:
    s = rng.choice((1, -1))
    if rng.random() < 0.5:
        return hopf(s)
    p = rng.choice((2, 3))
    return torus_book(p, [s] * (p - 1))


def composite_fixture(rng: random.Random, pieces: int):
    """A boundary sum of Hopf and T(2,p) books, each of uniform sign."""
    books = [_piece(rng) for _ in range(pieces)]
    B, S = books[0], None
    for nxt in books[1:]:
        B, S = boundary_connect_sum(B, nxt, _point(B.surface, rng), _point(nxt.surface, rng), S)
    return B, S


__all__ = [
    "FIXTURES",
    "VERDICTS",
    "ROOT",
    "composite_fixture",
    "embedded_arc",
    "hopf",
    "immersed_arc",
    "random_torus_book",
    "scene_files",
    "torus_book",
    "torus_open_book",
]
