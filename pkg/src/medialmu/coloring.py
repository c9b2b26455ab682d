"""Mod-2 Laplacian, conservative vertex colourings and the region space."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .gf2 import GF2Matrix, null_space_basis, nullity, rank
from .medial import Flat, medial
from .plane_graph import PlaneGraph

MAX_ENUMERATION_DIM = 20


class NotConservative(ValueError):
    pass


class TooMany(ValueError):
    pass


@dataclass(frozen=True)
class Coloring:
    vertex_colors: tuple[int, ...]
    region_colors: dict[int, int] | None = None


def laplacian_mod2(g: PlaneGraph) -> GF2Matrix:
    """Degrees on the diagonal, edge multiplicities off it, all mod 2.

    A loop adds 2 to its vertex's degree, so loops never touch the matrix.
    """
    entries = [(v, v) for v in range(g.vertex_count) if g.degree(v) % 2]
    for u, w in g.edges():
        if u != w:
            entries += [(u, w), (w, u)]
    return GF2Matrix.from_entries(g.vertex_count, g.vertex_count, entries)


def mu_nullity(g: PlaneGraph, backend: str | None = None) -> int:
    return nullity(laplacian_mod2(g), backend)


def is_conservative(g: PlaneGraph, colors: Sequence[int]) -> bool:
    """Parity check at every vertex, neighbours counted with multiplicity.

    Even degree: the neighbours' colours sum to 0.  Odd degree: the
    neighbours' colours plus the vertex's own colour sum to 0.
    """
    if len(colors) != g.vertex_count:
        raise ValueError(f"expected {g.vertex_count} colours, got {len(colors)}")
    for v in range(g.vertex_count):
        total = sum(colors[w] for w in g.neighbors(v))
        if g.degree(v) % 2:
            total += colors[v]
        if total % 2:
            return False
    return True


def _crossing_regions(f: Flat, c: int) -> tuple[int, int, int, int]:
    """Regions at the four corners of crossing ``c``.

    For a medial flat the corners ending at darts ``4c+1`` and ``4c+3`` are
    the edge's endpoint vertices; ``4c`` and ``4c+2`` are the faces beside it.
    """
    return tuple(f.region_of_dart(4 * c + k) for k in range(4))  # type: ignore[return-value]


def _relations_hold(f: Flat, colors: dict[int, int]) -> bool:
    for c in range(f.crossing_count):
        if sum(colors[r] for r in _crossing_regions(f, c)) % 2:
            return False
    return True


def extend_coloring(
    f: Flat, vertex_colors: Sequence[int], order: str = "bfs"
) -> Coloring:
    """Colour the unshaded regions by integrating from the unbounded region.

    Crossing the medial crossing of edge ``{a, b}`` out of a region coloured
    ``gamma`` gives the next region ``alpha_a + alpha_b + gamma``.  The
    spanning tree of the walk is grown breadth-first (``order="bfs"``) or
    depth-first over crossings in reverse (``order="dfs"``); afterwards every
    crossing relation is checked.
    """
    if f.origin is None:
        raise ValueError("extend_coloring needs a flat built by medial()")
    g = f.origin.graph
    if len(vertex_colors) != g.vertex_count:
        raise ValueError(f"expected {g.vertex_count} colours, got {len(vertex_colors)}")
    colors: dict[int, int] = {0: 0}
    for v, region in enumerate(f.origin.vertex_region):
        colors[region] = int(vertex_colors[v]) & 1

    adjacency: dict[int, list[tuple[int, int]]] = {}
    for c in range(f.crossing_count):
        regions = _crossing_regions(f, c)
        for a, b in ((regions[0], regions[2]), (regions[2], regions[0])):
            adjacency.setdefault(a, []).append((c, b))
    if order == "dfs":
        for edges in adjacency.values():
            edges.reverse()
    elif order != "bfs":
        raise ValueError("order must be 'bfs' or 'dfs'")

    frontier: deque[int] = deque([0])
    while frontier:
        here = frontier.popleft() if order == "bfs" else frontier.pop()
        for c, there in adjacency.get(here, ()):
            if there in colors:
                continue
            regions = _crossing_regions(f, c)
            colors[there] = (colors[regions[1]] + colors[regions[3]] + colors[here]) % 2
            frontier.append(there)

    if len(colors) != f.region_count or not _relations_hold(f, colors):
        raise NotConservative("vertex colouring does not extend over the regions")
    colors.pop(0)
    return Coloring(tuple(int(x) & 1 for x in vertex_colors), colors)


def iter_conservative(g: PlaneGraph, cap_dim: int = MAX_ENUMERATION_DIM) -> Iterator[tuple[int, ...]]:
    """Kernel elements of the mod-2 Laplacian in Gray-code order."""
    basis = null_space_basis(laplacian_mod2(g))
    if len(basis) > cap_dim:
        raise TooMany(f"nullity {len(basis)} exceeds enumeration cap 2^{cap_dim}")
    vecs = [np.array(b, dtype=np.uint8) for b in basis]
    current = np.zeros(g.vertex_count, dtype=np.uint8)
    yield tuple(int(x) for x in current)
    for i in range(1, 1 << len(vecs)):
        current ^= vecs[(i & -i).bit_length() - 1]
        yield tuple(int(x) for x in current)


def enumerate_conservative(g: PlaneGraph, cap_dim: int = MAX_ENUMERATION_DIM) -> list[tuple[int, ...]]:
    return list(iter_conservative(g, cap_dim))


def relation_matrix(f: Flat) -> GF2Matrix:
    """One row per crossing, one column per bounded region (region id - 1)."""
    entries = []
    for c in range(f.crossing_count):
        for r in _crossing_regions(f, c):
            if r:
                entries.append((c, r - 1))
    return GF2Matrix.from_entries(f.crossing_count, f.region_count - 1, entries)


def region_space_dim(f: Flat) -> int:
    """Bounded regions minus the rank of the crossing relations."""
    return (f.region_count - 1) - rank(relation_matrix(f))


def mu_coloring(g: PlaneGraph, cap_dim: int = MAX_ENUMERATION_DIM) -> int | None:
    """log2 of the number of conservative colourings, or None past the cap."""
    try:
        count = sum(1 for _ in iter_conservative(g, cap_dim))
    except TooMany:
        return None
    return count.bit_length() - 1


def mu_regions(g: PlaneGraph) -> int:
    return region_space_dim(medial(g))
