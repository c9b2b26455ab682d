"""Plane multigraphs stored as rotation systems over darts.

Edge ``e`` owns darts ``2e`` and ``2e + 1``; the twin of a dart is ``d ^ 1``.
Each vertex lists its darts in counterclockwise order.  Faces are the orbits
of ``d -> rot_next(twin(d))``: the successor of a dart is the dart following
its twin in the rotation at the twin's vertex.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class PlaneGraphError(ValueError):
    """Malformed rotation system or ``.pg`` text."""


class NonPlanar(ValueError):
    """A connected component of the rotation system is not genus zero."""

    def __init__(self, component: int, characteristic: int):
        super().__init__(
            f"component {component} has Euler characteristic {characteristic} (expected 2)"
        )
        self.component = component
        self.characteristic = characteristic


def twin(d: int) -> int:
    return d ^ 1


def edge_of(d: int) -> int:
    return d >> 1


@dataclass(frozen=True)
class Face:
    id: int
    darts: tuple[int, ...]


@dataclass(frozen=True, eq=True)
class PlaneGraph:
    vertex_count: int
    edge_count: int
    rotations: tuple[tuple[int, ...], ...]
    outer: int | None = field(default=None)

    def __post_init__(self) -> None:
        rotations = tuple(tuple(int(d) for d in rot) for rot in self.rotations)
        object.__setattr__(self, "rotations", rotations)
        if self.vertex_count < 0 or self.edge_count < 0:
            raise PlaneGraphError("counts must be non-negative")
        if len(rotations) != self.vertex_count:
            raise PlaneGraphError(
                f"expected {self.vertex_count} rotations, got {len(rotations)}"
            )
        n_darts = 2 * self.edge_count
        seen = [False] * n_darts
        for v, rot in enumerate(rotations):
            for d in rot:
                if not 0 <= d < n_darts:
                    raise PlaneGraphError(f"dart {d} at vertex {v} out of range [0, {n_darts})")
                if seen[d]:
                    raise PlaneGraphError(f"dart {d} repeated")
                seen[d] = True
        missing = [d for d in range(n_darts) if not seen[d]]
        if missing:
            raise PlaneGraphError(f"dart {missing[0]} missing")
        if self.outer is not None and not 0 <= self.outer < n_darts:
            raise PlaneGraphError(f"outer dart {self.outer} out of range")

    # -- dart-level tables ------------------------------------------------

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        table = [0] * (2 * self.edge_count)
        for v, rot in enumerate(self.rotations):
            for d in rot:
                table[d] = v
        return tuple(table)

    @cached_property
    def rot_next(self) -> tuple[int, ...]:
        """Counterclockwise successor of each dart around its vertex."""
        table = [0] * (2 * self.edge_count)
        for rot in self.rotations:
            k = len(rot)
            for i, d in enumerate(rot):
                table[d] = rot[(i + 1) % k]
        return tuple(table)

    @cached_property
    def rot_prev(self) -> tuple[int, ...]:
        table = [0] * (2 * self.edge_count)
        for d, nxt in enumerate(self.rot_next):
            table[nxt] = d
        return tuple(table)

    def face_next(self, d: int) -> int:
        return self.rot_next[d ^ 1]

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def endpoints(self, e: int) -> tuple[int, int]:
        return self.vertex_of[2 * e], self.vertex_of[2 * e + 1]

    def edges(self) -> list[tuple[int, int]]:
        return [self.endpoints(e) for e in range(self.edge_count)]

    def neighbors(self, v: int) -> list[int]:
        """Adjacent vertices with multiplicity; a loop lists ``v`` twice."""
        return [self.vertex_of[d ^ 1] for d in self.rotations[v]]

    # -- structure --------------------------------------------------------

    @cached_property
    def component_of(self) -> tuple[int, ...]:
        """Component index per vertex, numbered by smallest vertex."""
        comp = [-1] * self.vertex_count
        n = 0
        for start in range(self.vertex_count):
            if comp[start] != -1:
                continue
            comp[start] = n
            stack = [start]
            while stack:
                v = stack.pop()
                for w in self.neighbors(v):
                    if comp[w] == -1:
                        comp[w] = n
                        stack.append(w)
            n += 1
        return tuple(comp)

    @property
    def component_count(self) -> int:
        return max(self.component_of, default=-1) + 1

    def components(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.component_count)]
        for v, c in enumerate(self.component_of):
            out[c].append(v)
        return out

    @cached_property
    def _faces(self) -> tuple[Face, ...]:
        seen = [False] * (2 * self.edge_count)
        faces = []
        for start in range(2 * self.edge_count):
            if seen[start]:
                continue
            orbit = []
            d = start
            while not seen[d]:
                seen[d] = True
                orbit.append(d)
                d = self.face_next(d)
            faces.append(Face(len(faces), tuple(orbit)))
        return tuple(faces)

    @cached_property
    def face_of(self) -> tuple[int, ...]:
        table = [0] * (2 * self.edge_count)
        for f in self._faces:
            for d in f.darts:
                table[d] = f.id
        return tuple(table)

    def outer_dart(self, component: int) -> int | None:
        """A dart on the unbounded face of ``component`` (None if edgeless).

        The hint wins when it lies in the component; otherwise the smallest
        dart of the component is used.
        """
        verts = [v for v, c in enumerate(self.component_of) if c == component]
        darts = [d for v in verts for d in self.rotations[v]]
        if not darts:
            return None
        if self.outer is not None and self.outer in darts:
            return self.outer
        return min(darts)

    def euler_characteristics(self) -> list[int]:
        """V - E + F per component; an edgeless component has one face."""
        comp = self.component_of
        n = self.component_count
        v_count = [0] * n
        e_count = [0] * n
        f_count = [0] * n
        for v in range(self.vertex_count):
            v_count[comp[v]] += 1
        for e in range(self.edge_count):
            e_count[comp[self.vertex_of[2 * e]]] += 1
        for f in self._faces:
            f_count[comp[self.vertex_of[f.darts[0]]]] += 1
        return [
            v_count[c] - e_count[c] + (f_count[c] if e_count[c] else 1) for c in range(n)
        ]

    def mirror(self) -> "PlaneGraph":
        """Same abstract graph with every rotation reversed."""
        rots = tuple(tuple(reversed(r)) for r in self.rotations)
        return PlaneGraph(self.vertex_count, self.edge_count, rots, self.outer)


def faces(g: PlaneGraph) -> list[Face]:
    return list(g._faces)


def check_planar(g: PlaneGraph) -> None:
    """Raise :class:`NonPlanar` for the first component with V - E + F != 2."""
    for c, chi in enumerate(g.euler_characteristics()):
        if chi != 2:
            raise NonPlanar(c, chi)


def is_planar(g: PlaneGraph) -> bool:
    return all(chi == 2 for chi in g.euler_characteristics())


def disjoint_union(*graphs: PlaneGraph) -> PlaneGraph:
    rotations: list[tuple[int, ...]] = []
    offset = 0
    outer = None
    for g in graphs:
        rotations.extend(tuple(d + offset for d in rot) for rot in g.rotations)
        if outer is None and g.outer is not None:
            outer = g.outer + offset
        offset += 2 * g.edge_count
    return PlaneGraph(
        sum(g.vertex_count for g in graphs),
        sum(g.edge_count for g in graphs),
        tuple(rotations),
        outer,
    )


# ---------------------------------------------------------------------------
# .pg text format
# ---------------------------------------------------------------------------


def parse_plane_graph(text: str) -> PlaneGraph:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        lines.append((lineno, line))
    if not lines or lines[0][1].split() != ["pg", "v1"]:
        raise PlaneGraphError("missing 'pg v1' header")
    if len(lines) < 2:
        raise PlaneGraphError("missing 'edges <m>' line")
    lineno, line = lines[1]
    tok = line.split()
    if len(tok) != 2 or tok[0] != "edges" or not tok[1].isdigit():
        raise PlaneGraphError(f"line {lineno}: expected 'edges <m>'")
    m = int(tok[1])

    rotations: list[tuple[int, ...]] = []
    outer = None
    for lineno, line in lines[2:]:
        tok = line.split()
        if tok[0] == "v":
            if len(tok) < 3 or tok[2] != ":":
                raise PlaneGraphError(f"line {lineno}: expected 'v <id> : <darts>'")
            try:
                vid = int(tok[1])
                darts = tuple(int(t) for t in tok[3:])
            except ValueError:
                raise PlaneGraphError(f"line {lineno}: non-integer token") from None
            if vid != len(rotations):
                raise PlaneGraphError(
                    f"line {lineno}: vertex id {vid}, expected {len(rotations)}"
                )
            if outer is not None:
                raise PlaneGraphError(f"line {lineno}: vertex after 'outer'")
            rotations.append(darts)
        elif tok[0] == "outer":
            if len(tok) != 2 or not tok[1].isdigit() or outer is not None:
                raise PlaneGraphError(f"line {lineno}: expected a single 'outer <dart>'")
            outer = int(tok[1])
        else:
            raise PlaneGraphError(f"line {lineno}: unknown directive {tok[0]!r}")
    return PlaneGraph(len(rotations), m, tuple(rotations), outer)


def serialize_plane_graph(g: PlaneGraph) -> str:
    out = ["pg v1", f"edges {g.edge_count}"]
    for v, rot in enumerate(g.rotations):
        out.append(" ".join([f"v {v} :", *map(str, rot)]) if rot else f"v {v} :")
    if g.outer is not None:
        out.append(f"outer {g.outer}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# instance generators
# ---------------------------------------------------------------------------


def from_geometry(
    positions: Sequence[tuple[float, float]], edges: Iterable[tuple[int, int]]
) -> PlaneGraph:
    """Rotation system of a straight-line drawing (simple graphs only)."""
    edges = list(edges)
    incident: list[list[tuple[float, int]]] = [[] for _ in positions]
    for e, (u, w) in enumerate(edges):
        for d, (a, b) in ((2 * e, (u, w)), (2 * e + 1, (w, u))):
            ax, ay = positions[a]
            bx, by = positions[b]
            incident[a].append((math.atan2(by - ay, bx - ax), d))
    rots = tuple(tuple(d for _, d in sorted(inc)) for inc in incident)
    return PlaneGraph(len(positions), len(edges), rots)


def _circle(n: int, radius: float = 1.0) -> list[tuple[float, float]]:
    return [
        (radius * math.cos(2 * math.pi * i / n), radius * math.sin(2 * math.pi * i / n))
        for i in range(n)
    ]


def cycle(n: int) -> PlaneGraph:
    if n < 1:
        raise ValueError("cycle needs n >= 1")
    if n == 1:
        return PlaneGraph(1, 1, ((0, 1),))
    if n == 2:
        return PlaneGraph(2, 2, ((0, 2), (3, 1)))
    return from_geometry(_circle(n), [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> PlaneGraph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return from_geometry([(float(i), 0.0) for i in range(n)], [(i, i + 1) for i in range(n - 1)])


def _grid_edges(rows: int, cols: int) -> list[tuple[int, int]]:
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return edges


def _grid_positions(rows: int, cols: int) -> list[tuple[float, float]]:
    return [(float(c), float(r)) for r in range(rows) for c in range(cols)]


def grid(rows: int, cols: int) -> PlaneGraph:
    if rows < 1 or cols < 1:
        raise ValueError("grid needs positive dimensions")
    return from_geometry(_grid_positions(rows, cols), _grid_edges(rows, cols))


def wheel(n: int) -> PlaneGraph:
    """Hub (vertex 0) joined to an ``n``-cycle."""
    if n < 3:
        raise ValueError("wheel needs n >= 3")
    edges = [(0, i) for i in range(1, n + 1)]
    edges += [(i, 1 + i % n) for i in range(1, n + 1)]
    return from_geometry([(0.0, 0.0), *_circle(n)], edges)


def theta(k: int, order: Sequence[int] | None = None) -> PlaneGraph:
    """Two vertices joined by ``k`` parallel edges.

    ``order`` permutes the edges around vertex 0; vertex 1 sees them in the
    reverse cyclic order, which is what keeps the embedding planar.
    """
    if k < 2:
        raise ValueError("theta needs k >= 2")
    order = list(range(k)) if order is None else list(order)
    if sorted(order) != list(range(k)):
        raise ValueError("order must be a permutation of the edges")
    return PlaneGraph(
        2, k, (tuple(2 * e for e in order), tuple(2 * e + 1 for e in reversed(order)))
    )


def complete4() -> PlaneGraph:
    return wheel(3)


def loop_bouquet_nested(k: int) -> PlaneGraph:
    """One vertex with ``k`` loops, each drawn inside the previous one."""
    if k < 1:
        raise ValueError("bouquet needs k >= 1")
    rot = [2 * e for e in range(k)] + [2 * e + 1 for e in reversed(range(k))]
    return PlaneGraph(1, k, (tuple(rot),))


def loop_bouquet_petals(k: int) -> PlaneGraph:
    """One vertex with ``k`` loops side by side."""
    if k < 1:
        raise ValueError("bouquet needs k >= 1")
    return PlaneGraph(1, k, (tuple(range(2 * k)),))


def empty() -> PlaneGraph:
    return PlaneGraph(0, 0, ())


def isolated(n: int = 1) -> PlaneGraph:
    return PlaneGraph(n, 0, ((),) * n)


def random_grid_subgraph(rows: int, cols: int, seed: int, extra: float = 0.5) -> PlaneGraph:
    """Random spanning tree of the grid plus each remaining edge with prob ``extra``."""
    if rows < 1 or cols < 1:
        raise ValueError("grid needs positive dimensions")
    rng = random.Random(seed)
    edges = _grid_edges(rows, cols)
    order = list(range(len(edges)))
    rng.shuffle(order)
    parent = list(range(rows * cols))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    keep = []
    for i in order:
        u, w = edges[i]
        ru, rw = find(u), find(w)
        if ru != rw:
            parent[ru] = rw
            keep.append(i)
        elif rng.random() < extra:
            keep.append(i)
    keep.sort()
    return from_geometry(_grid_positions(rows, cols), [edges[i] for i in keep])


FAMILIES = {
    "cycle": (cycle, 1),
    "path": (path, 1),
    "grid": (grid, 2),
    "wheel": (wheel, 1),
    "theta": (theta, 1),
    "complete4": (complete4, 0),
    "loop_bouquet_nested": (loop_bouquet_nested, 1),
    "loop_bouquet_petals": (loop_bouquet_petals, 1),
    "random_grid_subgraph": (random_grid_subgraph, 3),
    "empty": (empty, 0),
    "isolated": (isolated, 1),
}


def generate(family: str, *args: int) -> PlaneGraph:
    try:
        fn, arity = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    if len(args) != arity:
        raise ValueError(f"{family} takes {arity} integer argument(s), got {len(args)}")
    return fn(*(int(a) for a in args))
