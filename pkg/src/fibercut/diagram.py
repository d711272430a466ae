"""Pictures of fat-graph surfaces and paths on them, as SVG or plain text.

Vertices are drawn as disks in a row and bands as thick curves between
half-edge positions.  Half-edges sit counterclockwise around each disk in
rotation order, with corner ``i`` between half-edges ``i`` and ``i+1``.
Purely presentational: nothing here feeds back into any computation.
"""
from __future__ import annotations

import math
from fractions import Fraction
from xml.sax.saxutils import escape

from .paths import Arc, ImmersedArc, Loop
from .surface import FatGraph

RADIUS = 60.0
GAP = 240.0
MARGIN = 130.0
COLORS = ("#c0392b", "#2471a3", "#1e8449", "#af601a", "#7d3c98", "#117864")


def _center(v: int) -> tuple[float, float]:
    return MARGIN + GAP * v, MARGIN + 40.0


def _angle(F: FatGraph, v: int, slot: float) -> float:
    n = max(1, F.degree(v))
    return math.pi / 2 + 2 * math.pi * slot / n


def _at(F: FatGraph, v: int, slot: float, r: float = RADIUS) -> tuple[float, float]:
    cx, cy = _center(v)
    t = _angle(F, v, slot)
    # screen y grows downwards, so counterclockwise needs the minus sign
    return cx + r * math.cos(t), cy - r * math.sin(t)


def _half_pos(F: FatGraph, h: str, r: float = RADIUS) -> tuple[float, float]:
    return _at(F, F.vertex_of[h], F.index_of[h], r)


def _corner_pos(F: FatGraph, v: int, c: int, key=0) -> tuple[float, float]:
    if F.degree(v) == 0:
        return _at(F, v, float(Fraction(key)) * 0.05)
    spread = 0.35 * math.atan(float(Fraction(key))) / (math.pi / 2)
    return _at(F, v, c + 0.5 + spread)


def _band_path(F: FatGraph, a: str, b: str, offset: float = 0.0) -> str:
    x1, y1 = _half_pos(F, a, RADIUS + offset)
    x2, y2 = _half_pos(F, b, RADIUS + offset)
    c1 = _half_pos(F, a, RADIUS * 2.2 + offset)
    c2 = _half_pos(F, b, RADIUS * 2.2 + offset)
    return f"M {x1:.1f} {y1:.1f} C {c1[0]:.1f} {c1[1]:.1f} {c2[0]:.1f} {c2[1]:.1f} {x2:.1f} {y2:.1f}"


def _path_points(F: FatGraph, g) -> list[tuple[str, tuple]]:
    """Segments of a path: chords inside disks and runs along bands."""
    if isinstance(g, ImmersedArc):
        g = g.arc
    out: list[tuple[str, tuple]] = []
    if isinstance(g, Arc):
        here = _corner_pos(F, g.start.vertex, g.start.corner, g.start.key)
        for h in g.path:
            out.append(("chord", (here, _half_pos(F, h))))
            out.append(("band", (h, F.pair[h])))
            here = _half_pos(F, F.pair[h])
        out.append(("chord", (here, _corner_pos(F, g.end.vertex, g.end.corner, g.end.key))))
        return out
    word = g.cycle
    for j, h in enumerate(word):
        prev = F.pair[word[j - 1]]
        out.append(("chord", (_half_pos(F, prev), _half_pos(F, h))))
        out.append(("band", (h, F.pair[h])))
    return out


def svg(F: FatGraph, paths: dict | None = None, title: str = "") -> str:
    """An SVG picture of ``F`` with the named arcs and loops drawn on it."""
    paths = paths or {}
    V = len(F.rotations)
    width = 2 * MARGIN + GAP * max(0, V - 1)
    height = 2 * MARGIN + 80 + 18 * len(paths)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">',
        f"<title>{escape(title or 'fat graph')}</title>",
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for (a, b), name in zip(F.pairs, F.edge_names):
        parts.append(f'<path d="{_band_path(F, a, b)}" fill="none" stroke="#d5d8dc" stroke-width="16"/>')
        mid = _half_pos(F, a, RADIUS * 1.6)
        parts.append(f'<text x="{mid[0]:.1f}" y="{mid[1]:.1f}" font-size="11" fill="#566573">{escape(name)}</text>')
    for v, name in enumerate(F.vertex_names):
        cx, cy = _center(v)
        parts.append(f'<circle cx="{cx:.1f}" cy="{cy:.1f}" r="{RADIUS:.0f}" fill="#f2f3f4" stroke="#5d6d7e" stroke-width="2"/>')
        parts.append(f'<text x="{cx:.1f}" y="{cy + 4:.1f}" font-size="13" text-anchor="middle">{escape(name)}</text>')
        for c in range(F.n_corners(v)):
            x, y = _corner_pos(F, v, c)
            parts.append(f'<text x="{x:.1f}" y="{y:.1f}" font-size="9" fill="#909497">{c}</text>')
    for k, (name, g) in enumerate(paths.items()):
        color = COLORS[k % len(COLORS)]
        d = []
        for kind, data in _path_points(F, g):
            if kind == "chord":
                (x1, y1), (x2, y2) = data
                d.append(f"M {x1:.1f} {y1:.1f} L {x2:.1f} {y2:.1f}")
            else:
                d.append(_band_path(F, *data, offset=3.0 * (k + 1)))
        parts.append(f'<path d="{" ".join(d)}" fill="none" stroke="{color}" stroke-width="2"/>')
        y = height - MARGIN / 2 + 18 * k - 18 * len(paths)
        kind = "loop" if isinstance(g, Loop) else "arc"
        parts.append(f'<text x="10" y="{y:.0f}" font-size="12" fill="{color}">{kind} {escape(name)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _render_path(F: FatGraph, g) -> str:
    if isinstance(g, ImmersedArc):
        return _render_path(F, g.arc) + "  (immersed)"
    if isinstance(g, Loop):
        return "(" + " ".join(g.cycle) + ")"
    steps = [f"{F.vertex_names[g.start.vertex]}[{g.start.corner}]"]
    for h in g.path:
        steps.append(f"--{h}-->")
        steps.append(F.vertex_names[F.vertex_of[F.pair[h]]])
    steps.append(f"[{g.end.corner}]")
    return " ".join(steps)


def ascii_art(F: FatGraph, paths: dict | None = None) -> str:
    """A plain-text summary: disks with their rotations, bands, and paths."""
    lines = []
    for name, rot in zip(F.vertex_names, F.rotations):
        cells = " | ".join(rot) if rot else "(no bands)"
        lines.append(f"({name}) [ {cells} ]")
    for name, (a, b) in zip(F.edge_names, F.pairs):
        lines.append(f"  {name}: {F.vertex_names[F.vertex_of[a]]} {a} ==== {b} {F.vertex_names[F.vertex_of[b]]}")
    lines.append(f"  chi = {F.euler_characteristic()}, boundary circles = {len(F.boundary_components)}")
    for name, g in (paths or {}).items():
        lines.append(f"  {name}: {_render_path(F, g)}")
    return "\n".join(lines) + "\n"


__all__ = ["ascii_art", "svg"]
