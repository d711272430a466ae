"""Fat-graph (ribbon graph) model of compact oriented surfaces with boundary.

A vertex is a disk whose half-edges are listed counterclockwise; an edge is
an untwisted band joining two half-edges.  Corner ``(v, i)`` is the stretch
of the disk boundary between half-edge ``i`` and half-edge ``i + 1``.  A
point on the boundary of the surface lives in a corner and carries an
exact rational key; keys increase in the counterclockwise direction, which
is also the positive direction of the boundary.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Mapping, NamedTuple, Sequence

from .errors import DanglingHalfEdge, DisconnectedSurface, EmptySurface, SurfaceError

Corner = tuple[int, int]


class BoundaryPoint(NamedTuple):
    vertex: int
    corner: int
    key: Fraction = Fraction(0)

    def shifted(self, delta) -> "BoundaryPoint":
        return BoundaryPoint(self.vertex, self.corner, Fraction(self.key) + Fraction(delta))


def squash(k: Fraction) -> Fraction:
    """Order-preserving bijection from the rationals onto (-1, 1)."""
    k = Fraction(k)
    return k / (1 + abs(k))


def unsquash(y: Fraction) -> Fraction:
    y = Fraction(y)
    return y / (1 - abs(y))


@dataclass(frozen=True)
class FatGraph:
    rotations: tuple[tuple[str, ...], ...]
    pairs: tuple[tuple[str, str], ...]
    vertex_names: tuple[str, ...] = ()
    edge_names: tuple[str, ...] = ()
    split: bool = False

    def __post_init__(self):
        if not self.vertex_names:
            object.__setattr__(self, "vertex_names", tuple(f"v{i}" for i in range(len(self.rotations))))
        if not self.edge_names:
            object.__setattr__(self, "edge_names", tuple(f"e{i}" for i in range(len(self.pairs))))
        self._validate()

    # -- validation -------------------------------------------------------
    def _validate(self) -> None:
        if not self.rotations:
            raise EmptySurface("a surface needs at least one vertex")
        if len(self.vertex_names) != len(self.rotations):
            raise SurfaceError("vertex name count does not match vertex count")
        if len(self.edge_names) != len(self.pairs):
            raise SurfaceError("edge name count does not match edge count")
        if len(set(self.vertex_names)) != len(self.vertex_names):
            raise SurfaceError("duplicate vertex names")
        if len(set(self.edge_names)) != len(self.edge_names):
            raise SurfaceError("duplicate edge names")
        placed: dict[str, int] = {}
        for v, rot in enumerate(self.rotations):
            for h in rot:
                if h in placed:
                    raise DanglingHalfEdge(f"half-edge {h!r} placed twice")
                placed[h] = v
        paired: set[str] = set()
        for a, b in self.pairs:
            if a == b:
                raise DanglingHalfEdge(f"half-edge {a!r} paired with itself")
            for h in (a, b):
                if h in paired:
                    raise DanglingHalfEdge(f"half-edge {h!r} paired twice")
                if h not in placed:
                    raise DanglingHalfEdge(f"half-edge {h!r} is paired but not placed on a vertex")
                paired.add(h)
        for h in placed:
            if h not in paired:
                raise DanglingHalfEdge(f"half-edge {h!r} is not paired")
        if not self.split and len(self.components) > 1:
            raise DisconnectedSurface("surface is disconnected; pass split=True for a disjoint union")

    # -- incidence --------------------------------------------------------
    @cached_property
    def pair(self) -> dict[str, str]:
        out = {}
        for a, b in self.pairs:
            out[a] = b
            out[b] = a
        return out

    @cached_property
    def vertex_of(self) -> dict[str, int]:
        return {h: v for v, rot in enumerate(self.rotations) for h in rot}

    @cached_property
    def index_of(self) -> dict[str, int]:
        return {h: i for rot in self.rotations for i, h in enumerate(rot)}

    @cached_property
    def edge_of(self) -> dict[str, int]:
        return {h: k for k, e in enumerate(self.pairs) for h in e}

    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {name: v for v, name in enumerate(self.vertex_names)}

    @property
    def half_edges(self) -> list[str]:
        return [h for rot in self.rotations for h in rot]

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def n_corners(self, v: int) -> int:
        return max(1, len(self.rotations[v]))

    def corners(self) -> list[Corner]:
        return [(v, i) for v in range(len(self.rotations)) for i in range(self.n_corners(v))]

    def half_edge_at(self, v: int, i: int) -> str:
        rot = self.rotations[v]
        return rot[i % len(rot)]

    def corner_after(self, h: str) -> Corner:
        """Corner following ``h`` counterclockwise at its vertex."""
        return (self.vertex_of[h], self.index_of[h])

    def corner_before(self, h: str) -> Corner:
        v = self.vertex_of[h]
        return (v, (self.index_of[h] - 1) % self.degree(v))

    def next_corner(self, c: Corner) -> Corner:
        """Successor of a corner along the positively oriented boundary."""
        v, i = c
        if not self.rotations[v]:
            return c
        h = self.half_edge_at(v, i + 1)
        return self.corner_after(self.pair[h])

    def prev_corner(self, c: Corner) -> Corner:
        v, i = c
        if not self.rotations[v]:
            return c
        h = self.pair[self.half_edge_at(v, i)]
        return self.corner_before(h)

    # -- global invariants ------------------------------------------------
    @cached_property
    def boundary_components(self) -> tuple[tuple[Corner, ...], ...]:
        seen: set[Corner] = set()
        out = []
        for c in self.corners():
            if c in seen:
                continue
            cycle = []
            d = c
            while d not in seen:
                seen.add(d)
                cycle.append(d)
                d = self.next_corner(d)
            out.append(tuple(cycle))
        return tuple(out)

    @cached_property
    def component_of_corner(self) -> dict[Corner, int]:
        return {c: k for k, comp in enumerate(self.boundary_components) for c in comp}

    def euler_characteristic(self) -> int:
        return len(self.rotations) - len(self.pairs)

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Connected components as sorted tuples of vertex indices."""
        parent = list(range(len(self.rotations)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        vof = {h: v for v, rot in enumerate(self.rotations) for h in rot}
        for a, b in self.pairs:
            ra, rb = find(vof[a]), find(vof[b])
            if ra != rb:
                parent[ra] = rb
        groups: dict[int, list[int]] = {}
        for v in range(len(self.rotations)):
            groups.setdefault(find(v), []).append(v)
        return tuple(sorted(tuple(g) for g in groups.values()))

    @cached_property
    def component_of_vertex(self) -> dict[int, int]:
        return {v: k for k, comp in enumerate(self.components) for v in comp}

    def component_summary(self) -> list[dict]:
        """Per connected component: vertices, edges, chi, boundary count, genus."""
        out = []
        for k, comp in enumerate(self.components):
            vs = set(comp)
            n_edges = sum(1 for a, _ in self.pairs if self.vertex_of[a] in vs)
            n_bdry = sum(1 for bc in self.boundary_components if bc[0][0] in vs)
            chi = len(comp) - n_edges
            out.append(
                {
                    "vertices": len(comp),
                    "edges": n_edges,
                    "chi": chi,
                    "boundary": n_bdry,
                    "genus": (2 - chi - n_bdry) // 2,
                }
            )
        return out

    def genus(self) -> int:
        return sum(c["genus"] for c in self.component_summary())

    # -- points -----------------------------------------------------------
    def check_point(self, p: BoundaryPoint) -> None:
        if not (0 <= p.vertex < len(self.rotations)):
            raise SurfaceError(f"vertex {p.vertex} out of range")
        if not (0 <= p.corner < self.n_corners(p.vertex)):
            raise SurfaceError(f"corner {p.corner} out of range at vertex {p.vertex}")

    def boundary_component_of(self, p: BoundaryPoint) -> int:
        return self.component_of_corner[(p.vertex, p.corner)]

    def boundary_position(self, p: BoundaryPoint) -> tuple[int, int, Fraction]:
        """(component, segment index along the traced boundary word, key)."""
        comp = self.boundary_component_of(p)
        seg = self.boundary_components[comp].index((p.vertex, p.corner))
        return comp, seg, Fraction(p.key)

    def boundary_walk(self, p: BoundaryPoint, q: BoundaryPoint) -> tuple[str, ...] | None:
        """Half-edges crossed when sliding from ``p`` to ``q`` along the boundary.

        Returns ``None`` when the two points lie on different components.
        The result is the (unreduced) band path of the boundary segment
        traversed in the positive direction.
        """
        if self.boundary_component_of(p) != self.boundary_component_of(q):
            return None
        if (p.vertex, p.corner) == (q.vertex, q.corner) and q.key > p.key:
            return ()
        path = []
        c = (p.vertex, p.corner)
        while True:
            v, i = c
            h = self.half_edge_at(v, i + 1)
            path.append(h)
            c = self.corner_after(self.pair[h])
            if c == (q.vertex, q.corner):
                return tuple(path)

    # -- structure comparison ---------------------------------------------
    def structure_key(self) -> tuple:
        """Label-aware canonical form, ignoring vertex names and ordering."""
        rots = []
        for rot in self.rotations:
            if not rot:
                rots.append(())
                continue
            k = min(range(len(rot)), key=lambda i: rot[i])
            rots.append(rot[k:] + rot[:k])
        pairs = sorted(tuple(sorted(p)) for p in self.pairs)
        return (tuple(sorted(rots)), tuple(pairs))

    def relabeled(self, mapping: Mapping[str, str], prefix: str = "") -> "FatGraph":
        def m(h):
            return mapping.get(h, prefix + h)

        return FatGraph(
            tuple(tuple(m(h) for h in rot) for rot in self.rotations),
            tuple((m(a), m(b)) for a, b in self.pairs),
            tuple(prefix + n for n in self.vertex_names),
            tuple(prefix + n for n in self.edge_names),
            self.split,
        )

    def to_doc(self) -> dict:
        return {
            "vertices": [{"name": n, "rotation": list(r)} for n, r in zip(self.vertex_names, self.rotations)],
            "edges": [{"name": n, "pair": list(p)} for n, p in zip(self.edge_names, self.pairs)],
            "split": self.split,
            "chi": self.euler_characteristic(),
            "boundary_components": len(self.boundary_components),
        }

    @classmethod
    def from_doc(cls, doc: Mapping) -> "FatGraph":
        return cls(
            tuple(tuple(v["rotation"]) for v in doc["vertices"]),
            tuple(tuple(e["pair"]) for e in doc["edges"]),
            tuple(v["name"] for v in doc["vertices"]),
            tuple(e["name"] for e in doc["edges"]),
            bool(doc.get("split", False)),
        )


def build_surface(
    vertices: Mapping[str, Sequence[str]] | Sequence[Sequence[str]],
    edges: Mapping[str, Sequence[str]] | Sequence[Sequence[str]],
    split: bool = False,
) -> FatGraph:
    """Validate gluing data and return the fat graph."""
    if isinstance(vertices, Mapping):
        vnames = tuple(vertices)
        rots = tuple(tuple(vertices[n]) for n in vnames)
    else:
        vnames = ()
        rots = tuple(tuple(r) for r in vertices)
    if isinstance(edges, Mapping):
        enames = tuple(edges)
        prs = []
        for n in enames:
            e = tuple(edges[n])
            if len(e) != 2:
                raise DanglingHalfEdge(f"edge {n!r} must pair exactly two half-edges")
            prs.append(e)
        pairs = tuple(prs)
    else:
        enames = ()
        pairs = tuple(tuple(e) for e in edges)
        for e in pairs:
            if len(e) != 2:
                raise DanglingHalfEdge(f"edge {e!r} must pair exactly two half-edges")
    return FatGraph(rots, pairs, vnames, enames, split)


def euler_characteristic(F: FatGraph) -> int:
    return F.euler_characteristic()


def boundary_components(F: FatGraph) -> tuple[tuple[Corner, ...], ...]:
    return F.boundary_components


def disk() -> FatGraph:
    return FatGraph(((),), (), ("D",), ())


def annulus() -> FatGraph:
    """One vertex, one band with adjacent ends."""
    return FatGraph((("a+", "a-"),), (("a+", "a-"),), ("D",), ("a",))


# -- modifications ---------------------------------------------------------


class PointMap:
    """Transports boundary points across a modification of the surface."""

    def __init__(self, fn: Callable[[BoundaryPoint], BoundaryPoint]):
        self._fn = fn

    def __call__(self, p: BoundaryPoint) -> BoundaryPoint:
        return self._fn(p)

    def then(self, other: "PointMap") -> "PointMap":
        return PointMap(lambda p: other(self(p)))


def _insert_one(rotations, h: str, at: BoundaryPoint):
    """Insert half-edge ``h`` at a boundary point; returns rotations, map, adjacent key."""
    v, c, kappa = at.vertex, at.corner, Fraction(at.key)
    rots = [list(r) for r in rotations]
    rot = rots[v]
    d = len(rot)
    if d == 0:
        rots[v] = [h]

        def fn(p):
            if p.vertex != v:
                return p
            if p.key == kappa:
                raise SurfaceError("point coincides with band foot")
            if p.key > kappa:
                return BoundaryPoint(v, 0, squash(p.key - kappa))
            return BoundaryPoint(v, 0, 2 + squash(p.key - kappa))

        return rots, fn, Fraction(2)
    rots[v] = rot[: c + 1] + [h] + rot[c + 1 :]

    def fn(p):
        if p.vertex != v:
            return p
        if p.corner < c:
            return p
        if p.corner > c:
            return BoundaryPoint(v, p.corner + 1, p.key)
        if p.key == kappa:
            raise SurfaceError("point coincides with band foot")
        if p.key < kappa:
            return p
        return BoundaryPoint(v, c + 1, p.key)

    return rots, fn, kappa


def insert_band(
    F: FatGraph,
    foot1: BoundaryPoint,
    foot2: BoundaryPoint,
    names: tuple[str, str],
    edge_name: str | None = None,
    split: bool | None = None,
) -> tuple[FatGraph, PointMap, tuple[BoundaryPoint, BoundaryPoint]]:
    """Attach a new band whose feet sit at two boundary points.

    Returns the new surface, the map for other boundary points, and the two
    points just clockwise of each foot (the ends of the band's co-core).
    """
    h1, h2 = names
    if h1 in F.vertex_of or h2 in F.vertex_of or h1 == h2:
        raise SurfaceError("band half-edge names already in use")
    if foot1 == foot2:
        raise SurfaceError("band feet must be distinct")
    F.check_point(foot1)
    F.check_point(foot2)
    rots1, fn1, k1 = _insert_one(F.rotations, h1, foot1)
    r1 = rots1[foot1.vertex]
    before1 = BoundaryPoint(foot1.vertex, (r1.index(h1) - 1) % len(r1), k1)
    rots2, fn2, k2 = _insert_one(tuple(tuple(r) for r in rots1), h2, fn1(foot2))
    G = FatGraph(
        tuple(tuple(r) for r in rots2),
        F.pairs + ((h1, h2),),
        F.vertex_names,
        F.edge_names + (edge_name or f"{h1}|{h2}",),
        F.split if split is None else split,
    )
    c2 = G.corner_before(h2)
    ends = (fn2(before1), BoundaryPoint(c2[0], c2[1], k2))
    return G, PointMap(lambda p: fn2(fn1(p))), ends


def _delete_one(rotations, h: str):
    rots = [list(r) for r in rotations]
    v = next(i for i, r in enumerate(rots) if h in r)
    rot = rots[v]
    i = rot.index(h)
    d = len(rot)
    rots[v] = rot[:i] + rot[i + 1 :]
    if d == 1:
        return rots, (lambda p: p), v, None

    def fn(p):
        if p.vertex != v:
            return p
        c = p.corner
        if c == (i - 1) % d:
            return BoundaryPoint(v, (i - 1) % d if i > 0 else d - 2, squash(p.key) - 1)
        if c == i:
            return BoundaryPoint(v, (i - 1) % d if i > 0 else d - 2, squash(p.key) + 1)
        if c > i:
            return BoundaryPoint(v, c - 1, p.key)
        return p

    merged = (i - 1) % d if i > 0 else d - 2
    return rots, fn, v, merged


def delete_band(F: FatGraph, edge: str | int, split: bool = True) -> tuple[FatGraph, PointMap, dict]:
    """Remove a band.  Corners on either side of each foot merge.

    The returned dict gives, for each removed half-edge, the merged corner
    and the key at which the foot used to sit (``None`` for a vertex that
    drops to degree zero, where the foot sat past every key).
    """
    k = F.edge_names.index(edge) if isinstance(edge, str) else edge
    a, b = F.pairs[k]
    rots1, fn1, va, ma = _delete_one(F.rotations, a)
    rots2, fn2, vb, mb = _delete_one(rots1, b)
    feet = {}
    feet[a] = (va, ma)
    feet[b] = (vb, mb)
    G = FatGraph(
        tuple(tuple(r) for r in rots2),
        F.pairs[:k] + F.pairs[k + 1 :],
        F.vertex_names,
        F.edge_names[:k] + F.edge_names[k + 1 :],
        split,
    )
    pm = PointMap(lambda p: fn2(fn1(p)))
    return G, pm, {"fn_a": fn1, "fn_b": fn2, "a": a, "b": b, "merged_a": (va, ma), "merged_b": (vb, mb)}


def disjoint_union(F1: FatGraph, F2: FatGraph) -> FatGraph:
    """Union of two surfaces with disjoint labels; vertices of F2 follow F1."""
    if set(F1.vertex_of) & set(F2.vertex_of):
        raise SurfaceError("half-edge labels collide; relabel first")
    if set(F1.vertex_names) & set(F2.vertex_names) or set(F1.edge_names) & set(F2.edge_names):
        raise SurfaceError("vertex or edge names collide; relabel first")
    return FatGraph(
        F1.rotations + F2.rotations,
        F1.pairs + F2.pairs,
        F1.vertex_names + F2.vertex_names,
        F1.edge_names + F2.edge_names,
        True,
    )


def find_isomorphism(F1: FatGraph, F2: FatGraph) -> dict[str, str] | None:
    """Orientation-preserving fat-graph isomorphism as a half-edge map, or None."""
    if len(F1.rotations) != len(F2.rotations) or len(F1.pairs) != len(F2.pairs):
        return None
    if sorted(len(r) for r in F1.rotations) != sorted(len(r) for r in F2.rotations):
        return None
    comps1 = [list(c) for c in F1.components]

    def extend(mapping, vmap, h1, h2):
        # propagate along rotation successor and pairing
        stack = [(h1, h2)]
        mapping = dict(mapping)
        vmap = dict(vmap)
        while stack:
            x, y = stack.pop()
            if x in mapping:
                if mapping[x] != y:
                    return None
                continue
            if y in mapping.values():
                return None
            vx, vy = F1.vertex_of[x], F2.vertex_of[y]
            if F1.degree(vx) != F2.degree(vy):
                return None
            if vmap.get(vx, vy) != vy or (vy in vmap.values() and vmap.get(vx) != vy):
                return None
            vmap[vx] = vy
            mapping[x] = y
            stack.append((F1.half_edge_at(vx, F1.index_of[x] + 1), F2.half_edge_at(vy, F2.index_of[y] + 1)))
            stack.append((F1.pair[x], F2.pair[y]))
        return mapping, vmap

    def solve(ci, mapping, vmap):
        if ci == len(comps1):
            return mapping, vmap
        comp = comps1[ci]
        hs = [h for v in comp for h in F1.rotations[v]]
        if not hs:
            v1 = comp[0]
            for v2 in range(len(F2.rotations)):
                if F2.degree(v2) == 0 and v2 not in vmap.values():
                    vm = dict(vmap)
                    vm[v1] = v2
                    res = solve(ci + 1, mapping, vm)
                    if res:
                        return res
            return None
        h0 = hs[0]
        for y in F2.half_edges:
            if y in mapping.values():
                continue
            res = extend(mapping, vmap, h0, y)
            if res is None:
                continue
            out = solve(ci + 1, *res)
            if out:
                return out
        return None

    res = solve(0, {}, {})
    if res is None:
        return None
    return res[0]
