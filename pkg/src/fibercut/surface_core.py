"""Fat-graph surfaces: construction, boundary tracing, and standard examples.

The implementation lives in :mod:`fibercut.surface`; this module is the
stable import point for it.
"""
from __future__ import annotations

from .errors import DanglingHalfEdge, DisconnectedSurface, EmptySurface
from .surface import (
    BoundaryPoint,
    Corner,
    FatGraph,
    PointMap,
    annulus,
    boundary_components,
    build_surface,
    delete_band,
    disjoint_union,
    disk,
    euler_characteristic,
    find_isomorphism,
    insert_band,
)


def torus_link_surface(p: int) -> FatGraph:
    """Two disks joined by ``p`` bands, the fiber of T(2,p)."""
    from .torus_families import torus_surface

    return torus_surface(p)


__all__ = [
    "BoundaryPoint",
    "Corner",
    "DanglingHalfEdge",
    "DisconnectedSurface",
    "EmptySurface",
    "FatGraph",
    "PointMap",
    "annulus",
    "boundary_components",
    "build_surface",
    "delete_band",
    "disjoint_union",
    "disk",
    "euler_characteristic",
    "find_isomorphism",
    "insert_band",
    "torus_link_surface",
]
