"""Brute-force reference for arc intersection data on small instances.

Nothing here touches the universal-cover code.  A configuration is a pair
of explicit band words plus, for every band, the left-to-right order of
all strands running through it.  Crossings are counted chord by chord
inside each vertex disk.  A breadth-first search over elementary moves
(slide one strand to a new place across its band, retract a finger whose two strands
are adjacent) finds the least crossing count.  The search is exact only
when its frontier closes inside the move budget.

Shared endpoints are handled by pushing the second arc's endpoints a
little along the boundary.  Pushing an endpoint to one side forces a
crossing exactly when the second arc leaves on the other side, so three
push-off patterns recover the interior count and both endpoint signs.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import BudgetExhaustedWithoutClosure, InvalidPath
from .paths import Arc, inverse
from .surface import BoundaryPoint, FatGraph

Strand = tuple[int, int]  # (path id, traversal index)


@dataclass(frozen=True)
class OracleResult:
    value: int
    closed: bool
    states: int
    depth: int


@dataclass(frozen=True)
class SignProfile:
    rho: int
    boundary_signs: tuple[int, ...]
    interior_signs: tuple[int, ...]
    fixed: bool
    closed: bool
    transcript: dict = field(default_factory=dict, compare=False)


class _Config:
    """Static data shared by all states of one search."""

    def __init__(self, F: FatGraph, ends: Sequence[tuple[BoundaryPoint, BoundaryPoint]]):
        self.F = F
        self.ends = tuple(ends)
        self.canon = {k: a for k, (a, _b) in enumerate(F.pairs)}
        self._cache: dict = {}

    def initial(self, words: Sequence[tuple[str, ...]]):
        orders: dict[int, list[Strand]] = {k: [] for k in range(len(self.F.pairs))}
        for p, w in enumerate(words):
            for t, h in enumerate(w):
                orders[self.F.edge_of[h]].append((p, t))
        return (tuple(tuple(w) for w in words), tuple(tuple(orders[k]) for k in range(len(self.F.pairs))))

    def _templates(self, words):
        """Chord ends per vertex as constants or (edge, strand, at-canonical-end)."""
        got = self._cache.get(words)
        if got is not None:
            return got
        F = self.F
        out: dict[int, list[tuple[int, tuple, tuple]]] = {}

        def band_end(p, t, h):
            k = F.edge_of[h]
            return ("b", 2 * F.index_of[h], k, (p, t), h == self.canon[k])

        for p, w in enumerate(words):
            start, end = self.ends[p]
            v = start.vertex
            for s in range(len(w) + 1):
                if s == 0:
                    ent = ("c", (2 * start.corner + 1, Fraction(start.key)))
                else:
                    ent = band_end(p, s - 1, F.pair[w[s - 1]])
                if s == len(w):
                    ext = ("c", (2 * end.corner + 1, Fraction(end.key)))
                else:
                    ext = band_end(p, s, w[s])
                out.setdefault(v, []).append((p, ent, ext))
                if s < len(w):
                    v = F.vertex_of[F.pair[w[s]]]
        res = [(v, [c for c in ch if c[0] == 0], [c for c in ch if c[0] == 1]) for v, ch in out.items()]
        self._cache[words] = res
        return res

    def crossings(self, state) -> list[int]:
        """Signs of the crossings between path 0 and path 1."""
        words, orders = state
        rank = {}
        for order in orders:
            n = len(order)
            for r, st in enumerate(order):
                rank[st] = (r, n)

        def pos(e):
            if e[0] == "c":
                return e[1]
            r, n = rank[e[3]]
            return (e[1], n - 1 - r if e[4] else r)

        signs = []
        for _v, a, b in self._templates(words):
            if not a or not b:
                continue
            bp = [(pos(e2), pos(o2)) for _, e2, o2 in b]
            for _, e1, o1 in a:
                p1, q1 = pos(e1), pos(o1)
                for p2, q2 in bp:
                    x = _between(p1, p2, q1)
                    if x != _between(p1, q2, q1):
                        signs.append(1 if x else -1)
        return signs

    def neighbours(self, state):
        words, orders = state
        F = self.F
        for k, order in enumerate(orders):
            n = len(order)
            for q in range(n):
                rest = order[:q] + order[q + 1 :]
                for r in range(n):
                    if r == q:
                        continue
                    new = list(orders)
                    new[k] = rest[:r] + (order[q],) + rest[r:]
                    yield (words, tuple(new))
        for p, w in enumerate(words):
            for t in range(len(w) - 1):
                if w[t + 1] != F.pair[w[t]]:
                    continue
                k = F.edge_of[w[t]]
                order = orders[k]
                i1, i2 = order.index((p, t)), order.index((p, t + 1))
                if abs(i1 - i2) != 1:
                    continue
                yield self._retract(state, p, t)

    def _retract(self, state, p: int, t: int):
        words, orders = state
        w = words[p]
        nw = w[:t] + w[t + 2 :]

        def renum(s: Strand):
            if s[0] != p or s[1] < t:
                return s
            return (p, s[1] - 2)

        new_orders = tuple(tuple(renum(s) for s in order if not (s[0] == p and s[1] in (t, t + 1))) for order in orders)
        new_words = tuple(nw if i == p else x for i, x in enumerate(words))
        return (new_words, new_orders)


def _between(a, x, b) -> bool:
    """``x`` strictly inside the counterclockwise run from ``a`` to ``b``."""
    if a < b:
        return a < x < b
    return x > a or x < b


MAX_STATES = 20000


def _search(cfg: _Config, words, budget: int, max_states: int = MAX_STATES) -> OracleResult:
    start = cfg.initial(words)
    best = len(cfg.crossings(start))
    seen = {start}
    frontier = deque([start])
    depth = 0
    while frontier and depth < budget:
        nxt = deque()
        for s in frontier:
            for n in cfg.neighbours(s):
                if n not in seen:
                    seen.add(n)
                    nxt.append(n)
                    best = min(best, len(cfg.crossings(n)))
            if len(seen) > max_states:
                return OracleResult(best, False, len(seen), depth)
        frontier = nxt
        depth += 1
    closed = not frontier
    if frontier:
        closed = all(n in seen for s in frontier for n in cfg.neighbours(s))
    return OracleResult(best, closed, len(seen), depth)


def _best_state(cfg: _Config, words, budget: int):
    start = cfg.initial(words)
    best, arg = len(cfg.crossings(start)), start
    seen = {start}
    frontier = [start]
    for _ in range(budget):
        nxt = []
        for s in frontier:
            for n in cfg.neighbours(s):
                if n not in seen:
                    seen.add(n)
                    nxt.append(n)
                    c = len(cfg.crossings(n))
                    if c < best:
                        best, arg = c, n
        frontier = nxt
        if not frontier or len(seen) > MAX_STATES:
            break
    return arg


def _epsilon(points: Sequence[BoundaryPoint]) -> Fraction:
    keys = sorted({Fraction(p.key) for p in points})
    gaps = [b - a for a, b in zip(keys, keys[1:])]
    return (min(gaps) if gaps else Fraction(1)) / 4


def _arc_data(g):
    try:
        return g.start, tuple(g.path), g.end
    except AttributeError as exc:
        raise InvalidPath("the oracle handles arcs only") from exc


def _pushed_runs(F: FatGraph, a, b, budget: int, pushes: Sequence[tuple[int, int]]):
    sa, wa, ea = _arc_data(a)
    sb, wb, eb = _arc_data(b)
    eps = _epsilon([sa, ea, sb, eb])
    out = {}
    for px, py in pushes:
        nb_s = sb.shifted(px * eps) if sb in (sa, ea) else sb
        nb_e = eb.shifted(py * eps) if eb in (sa, ea) else eb
        cfg = _Config(F, [(sa, ea), (nb_s, nb_e)])
        out[(px, py)] = (cfg, _search(cfg, [wa, wb], budget))
    return out


def brute_min_crossings(F: FatGraph, a, b, move_budget: int = 6, strict: bool = True) -> OracleResult:
    """Least number of interior crossings of ``a`` and ``b`` found by search.

    For arcs sharing endpoints the endpoint contributions are removed, so
    the value is comparable with the interior count of the cover model.
    With ``strict`` an unclosed search raises; otherwise the result is an
    upper bound flagged ``closed=False``.
    """
    prof = brute_sign_profile(F, a, b, move_budget, strict=strict)
    return OracleResult(prof.rho, prof.closed, prof.transcript.get("states", 0), move_budget)


def aligned(F: FatGraph, a, b):
    """``b``, reversed if it shares an endpoint with ``a`` in the opposite role.

    Shared endpoints are compared start with start and end with end, the
    way an arc meets its own image, so ``b`` is flipped when it ends where
    ``a`` starts or starts where ``a`` ends.
    """
    if not isinstance(a, Arc) or not isinstance(b, Arc):
        return b
    if (b.start == a.end and b.start != a.start) or (b.end == a.start and b.end != a.end):
        return Arc(b.end, inverse(F, b.path), b.start)
    return b


def brute_sign_profile(F: FatGraph, a, b, move_budget: int = 6, strict: bool = True) -> SignProfile:
    b = aligned(F, a, b)
    sa, _, ea = _arc_data(a)
    sb, _, eb = _arc_data(b)
    shared_x = sb == sa
    shared_y = eb == ea
    if not (shared_x or shared_y) and not ({sb, eb} & {sa, ea}):
        cfg = _Config(F, [(sa, ea), (sb, eb)])
        res = _search(cfg, [tuple(a.path), tuple(b.path)], move_budget)
        _check(res, strict)
        st = _best_state(cfg, [tuple(a.path), tuple(b.path)], move_budget)
        return SignProfile(res.value, (), tuple(sorted(cfg.crossings(st))), False, res.closed, {"states": res.states})
    runs = _pushed_runs(F, a, b, move_budget, [(1, 1), (-1, 1), (1, -1)])
    closed = all(r.closed for _, r in runs.values())
    if strict:
        for _, r in runs.values():
            _check(r, True)
    tpp = runs[(1, 1)][1].value
    tmp = runs[(-1, 1)][1].value
    tpm = runs[(1, -1)][1].value
    sx = tmp - tpp if shared_x else 0
    sy = tpm - tpp if shared_y else 0
    states = sum(r.states for _, r in runs.values())
    transcript = {"T++": tpp, "T-+": tmp, "T+-": tpm, "states": states}
    # a parallel copy can leave on either side: both mixed pushes are free
    if shared_x and shared_y and tmp == 0 and tpm == 0:
        return SignProfile(0, (), (), True, closed, transcript)
    rho = tpp - (sx == -1) - (sy == -1)
    # interior signs: push each endpoint towards the side it leaves on
    px = 1 if sx >= 0 else -1
    py = 1 if sy >= 0 else -1
    cfg_runs = _pushed_runs(F, a, b, move_budget, [(px, py)])
    cfg, _ = cfg_runs[(px, py)]
    st = _best_state(cfg, [tuple(a.path), tuple(b.path)], move_budget)
    signs = tuple(sorted(cfg.crossings(st)))
    bsigns = tuple(s for s, on in ((sx, shared_x), (sy, shared_y)) if on)
    return SignProfile(rho, bsigns, signs, False, closed, transcript)


def _check(res: OracleResult, strict: bool) -> None:
    if strict and not res.closed:
        raise BudgetExhaustedWithoutClosure(
            f"search frontier still open after {res.depth} moves; {res.value} is only an upper bound",
            res.value,
        )


def crossing_count(F: FatGraph, a, b, orders: dict[str, Sequence[int]] | None = None) -> int:
    """Crossings of one explicit configuration (default strand orders)."""
    sa, wa, ea = _arc_data(a)
    sb, wb, eb = _arc_data(b)
    cfg = _Config(F, [(sa, ea), (sb, eb)])
    return len(cfg.crossings(cfg.initial([wa, wb])))


@dataclass(frozen=True)
class CrossCheck:
    """A brute-force profile next to the universal-cover answer for one pair."""

    brute: SignProfile
    cover: SignProfile

    @property
    def agree(self) -> bool:
        b, c = self.brute, self.cover
        return (b.rho, b.boundary_signs, b.interior_signs, b.fixed) == (
            c.rho,
            c.boundary_signs,
            c.interior_signs,
            c.fixed,
        )


def cover_profile(F: FatGraph, a, b) -> SignProfile:
    """The same profile read off the universal-cover model."""
    from .intersect import minimal_position

    g = minimal_position(F, a, aligned(F, a, b))
    return SignProfile(g.rho, () if g.fixed else g.boundary_signs, tuple(sorted(g.signs)), g.fixed, True)


def cross_check(F: FatGraph, a, b, move_budget: int = 6) -> CrossCheck:
    """Compare both methods; raises if the search frontier does not close."""
    return CrossCheck(brute_sign_profile(F, a, b, move_budget), cover_profile(F, a, b))


__all__ = [
    "CrossCheck",
    "OracleResult",
    "SignProfile",
    "brute_min_crossings",
    "aligned",
    "brute_sign_profile",
    "cover_profile",
    "cross_check",
    "crossing_count",
]
