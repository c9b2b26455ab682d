"""Flats (4-regular plane curves) and the medial construction.

A flat with ``n`` crossings has darts ``0 .. 4n-1``; crossing ``c`` owns darts
``4c .. 4c+3`` in counterclockwise order, so ``4c+k`` and ``4c+(k+2)%4`` are
the straight-through pairs.  ``link`` pairs the two ends of every strand
segment.  Faces follow the same convention as plane graphs: the successor of
dart ``d`` is the dart after ``link[d]`` at its crossing, and the face of
``d`` is the region to the right of the segment when walking away from ``d``.

Because a flat may be disconnected, each component records where it sits:
``placement[k] = (outer_face_key, container_key)`` where ``container_key`` is
``-1`` for the unbounded region or the key of a bounded face of another
component.  Face keys are the smallest dart of a face orbit; free circle
``i`` contributes the virtual keys ``4n + 2i`` (inside) and ``4n + 2i + 1``
(outside).  Components are ordered crossing components first (by smallest
dart), then free circles by index.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .plane_graph import NonPlanar, PlaneGraph, check_planar


class FlatError(ValueError):
    """Structurally invalid flat."""


class ShadingImpossible(FlatError):
    pass


def rot_next(d: int) -> int:
    return d - (d & 3) + ((d + 1) & 3)


def rot_prev(d: int) -> int:
    return d - (d & 3) + ((d + 3) & 3)


def opposite(d: int) -> int:
    return d ^ 2


@dataclass(frozen=True)
class MedialOrigin:
    """Where the regions and crossings of ``medial(g)`` came from."""

    graph: PlaneGraph
    vertex_region: tuple[int, ...]
    face_region: tuple[int, ...]

    def crossing_edge(self, c: int) -> int:
        return c


@dataclass(frozen=True)
class Flat:
    link: tuple[int, ...]
    free_circles: int = 0
    placement: tuple[tuple[int, int], ...] | None = None
    origin: MedialOrigin | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "link", tuple(int(d) for d in self.link))
        self._validate_link()
        if self.placement is None:
            object.__setattr__(self, "placement", self._side_by_side())
        else:
            object.__setattr__(
                self, "placement", tuple((int(a), int(b)) for a, b in self.placement)
            )
        self.validate()

    # -- basic tables ------------------------------------------------------

    @property
    def crossing_count(self) -> int:
        return len(self.link) // 4

    @property
    def dart_count(self) -> int:
        return len(self.link)

    def face_next(self, d: int) -> int:
        return rot_next(self.link[d])

    def circle_keys(self, i: int) -> tuple[int, int]:
        """(inside, outside) virtual face keys of free circle ``i``."""
        base = self.dart_count + 2 * i
        return base, base + 1

    @cached_property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        """Face orbits of the crossing map, ordered by smallest dart."""
        seen = [False] * self.dart_count
        out = []
        for start in range(self.dart_count):
            if seen[start]:
                continue
            orbit = []
            d = start
            while not seen[d]:
                seen[d] = True
                orbit.append(d)
                d = self.face_next(d)
            out.append(tuple(orbit))
        return tuple(out)

    @cached_property
    def face_key_of(self) -> tuple[int, ...]:
        table = [0] * self.dart_count
        for orbit in self.faces:
            key = min(orbit)
            for d in orbit:
                table[d] = key
        return tuple(table)

    @cached_property
    def crossing_components(self) -> tuple[tuple[int, ...], ...]:
        """Crossings of each connected piece, ordered by smallest crossing."""
        n = self.crossing_count
        comp = [-1] * n
        out = []
        for start in range(n):
            if comp[start] != -1:
                continue
            comp[start] = len(out)
            members = [start]
            stack = [start]
            while stack:
                c = stack.pop()
                for k in range(4):
                    o = self.link[4 * c + k] >> 2
                    if comp[o] == -1:
                        comp[o] = len(out)
                        members.append(o)
                        stack.append(o)
            out.append(tuple(sorted(members)))
        return tuple(out)

    @cached_property
    def component_faces(self) -> tuple[tuple[int, ...], ...]:
        """Face keys of every component (crossing components, then circles)."""
        by_crossing = {}
        for k, members in enumerate(self.crossing_components):
            for c in members:
                by_crossing[c] = k
        out: list[list[int]] = [[] for _ in self.crossing_components]
        for orbit in self.faces:
            key = min(orbit)
            out[by_crossing[key >> 2]].append(key)
        result = [tuple(sorted(keys)) for keys in out]
        result.extend(self.circle_keys(i) for i in range(self.free_circles))
        return tuple(result)

    @property
    def component_count(self) -> int:
        return len(self.crossing_components) + self.free_circles

    def _side_by_side(self) -> tuple[tuple[int, int], ...]:
        # Default layout: every component sits in the unbounded region with
        # its smallest face (or a circle's outside) unbounded.
        comps = len(self.crossing_components)
        out = []
        for keys in self.component_faces[:comps]:
            out.append((keys[0], -1))
        for i in range(self.free_circles):
            out.append((self.circle_keys(i)[1], -1))
        return tuple(out)

    # -- regions -----------------------------------------------------------

    @cached_property
    def outer_keys(self) -> frozenset[int]:
        return frozenset(outer for outer, _ in self.placement)

    @cached_property
    def enclosing_keys(self) -> tuple[int, ...]:
        """Keys of faces that bound a bounded region, sorted."""
        keys = [k for comp in self.component_faces for k in comp if k not in self.outer_keys]
        return tuple(sorted(keys))

    @cached_property
    def region_of_key(self) -> dict[int, int]:
        """Region id per face key; region 0 is the unbounded region."""
        table = {key: i + 1 for i, key in enumerate(self.enclosing_keys)}
        for outer, container in self.placement:
            table[outer] = 0 if container == -1 else table[container]
        return table

    @property
    def region_count(self) -> int:
        return 1 + len(self.enclosing_keys)

    def region_of_dart(self, d: int) -> int:
        """Region containing the corner that ends at dart ``d``."""
        return self.region_of_key[self.face_key_of[d]]

    def children_of(self, key: int) -> list[int]:
        return [k for k, (_, container) in enumerate(self.placement) if container == key]

    # -- validation --------------------------------------------------------

    def _validate_link(self) -> None:
        link = self.link
        if len(link) % 4:
            raise FlatError("dart count must be a multiple of 4")
        if self.free_circles < 0:
            raise FlatError("negative free circle count")
        for d, e in enumerate(link):
            if not 0 <= e < len(link):
                raise FlatError(f"link[{d}] = {e} out of range")
            if e == d or link[e] != d:
                raise FlatError(f"link is not a fixed-point-free involution at dart {d}")

    def validate(self) -> None:
        self._validate_link()
        comps = self.component_faces
        if len(self.placement) != len(comps):
            raise FlatError(
                f"placement has {len(self.placement)} entries for {len(comps)} components"
            )
        owner = {key: k for k, keys in enumerate(comps) for key in keys}
        outers = set()
        for k, (outer, container) in enumerate(self.placement):
            if owner.get(outer) != k:
                raise FlatError(f"outer face {outer} does not belong to component {k}")
            if k >= len(self.crossing_components) and outer != comps[k][1]:
                raise FlatError("a free circle's outer face must be its outside key")
            outers.add(outer)
        for k, (_, container) in enumerate(self.placement):
            if container == -1:
                continue
            if container not in owner or container in outers or owner[container] == k:
                raise FlatError(f"component {k} has invalid container {container}")
        for k in range(len(comps)):
            seen = set()
            j = k
            while self.placement[j][1] != -1:
                if j in seen:
                    raise FlatError("containment cycle")
                seen.add(j)
                j = owner[self.placement[j][1]]

    # -- output ------------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "crossings": [
                {"id": c, "darts": [4 * c + k for k in range(4)],
                 "links": list(self.link[4 * c: 4 * c + 4])}
                for c in range(self.crossing_count)
            ],
            "free_circles": self.free_circles,
            "unbounded_region": 0,
            "region_count": self.region_count,
            "placement": [list(p) for p in self.placement],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def disjoint_union(*flats: Flat) -> Flat:
    """Side-by-side union; each part keeps its own nesting."""
    link: list[int] = []
    n_total = sum(f.dart_count for f in flats)
    circle_base = 0
    crossing_place: list[tuple[int, int]] = []
    circle_place: list[tuple[int, int]] = []
    dart_off = 0
    for f in flats:
        link.extend(d + dart_off for d in f.link)

        def remap(key: int, f: Flat = f, dart_off: int = dart_off, cb: int = circle_base) -> int:
            if key == -1:
                return -1
            if key < f.dart_count:
                return key + dart_off
            return n_total + 2 * cb + (key - f.dart_count)

        n_cross = len(f.crossing_components)
        for k, (outer, container) in enumerate(f.placement):
            entry = (remap(outer), remap(container))
            (crossing_place if k < n_cross else circle_place).append(entry)
        dart_off += f.dart_count
        circle_base += f.free_circles
    placement = crossing_place + circle_place
    return Flat(tuple(link), circle_base, tuple(placement))


# ---------------------------------------------------------------------------
# medial construction
# ---------------------------------------------------------------------------


def _left(x: int) -> int:
    return 4 * (x >> 1) + 2 * (x & 1)


def _right(x: int) -> int:
    return _left(x) + 1


def medial(g: PlaneGraph) -> Flat:
    """The flat M(g): one crossing per edge, one free circle per isolated vertex.

    Graph dart ``x`` of edge ``e`` contributes crossing darts ``left(x)`` and
    ``right(x)`` (``4e + 2s`` and ``4e + 2s + 1`` with ``s = x & 1``), which
    point into the corners counterclockwise and clockwise of ``x`` at its
    vertex.  The boundary arc through the corner between ``x`` and its
    rotation successor ``x'`` joins ``left(x)`` to ``right(x')``.
    """
    check_planar(g)
    m = g.edge_count
    link = [0] * (4 * m)
    for x in range(2 * m):
        a, b = _left(x), _right(g.rot_next[x])
        link[a] = b
        link[b] = a
    isolated = [v for v in range(g.vertex_count) if g.degree(v) == 0]
    bare = Flat(tuple(link), len(isolated))

    comp_of_crossing = {}
    for k, members in enumerate(bare.crossing_components):
        for c in members:
            comp_of_crossing[c] = k
    outer_of = {}
    for comp in range(g.component_count):
        d = g.outer_dart(comp)
        if d is not None:
            outer_of[comp_of_crossing[d >> 1]] = bare.face_key_of[_left(d ^ 1)]
    placement = [(outer_of[k], -1) for k in range(len(bare.crossing_components))]
    placement += [(bare.circle_keys(i)[1], -1) for i in range(len(isolated))]
    flat = Flat(tuple(link), len(isolated), tuple(placement))

    circle_of = {v: i for i, v in enumerate(isolated)}
    vertex_region = []
    for v in range(g.vertex_count):
        if v in circle_of:
            key = flat.circle_keys(circle_of[v])[0]
        else:
            key = flat.face_key_of[_right(g.rotations[v][0])]
        vertex_region.append(flat.region_of_key[key])
    face_region = tuple(
        flat.region_of_key[flat.face_key_of[_left(f.darts[0] ^ 1)]] for f in g._faces
    )
    origin = MedialOrigin(g, tuple(vertex_region), face_region)
    return Flat(flat.link, flat.free_circles, flat.placement, origin)


# ---------------------------------------------------------------------------
# checkerboard shading
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Shading:
    shaded: tuple[bool, ...]

    def __getitem__(self, region: int) -> bool:
        return self.shaded[region]

    @property
    def shaded_regions(self) -> list[int]:
        return [r for r, s in enumerate(self.shaded) if s]

    @property
    def unshaded_regions(self) -> list[int]:
        return [r for r, s in enumerate(self.shaded) if not s]


def checkerboard(f: Flat) -> Shading:
    """Proper 2-colouring of regions with the unbounded region unshaded."""
    comps = f.component_faces
    owner = {key: k for k, keys in enumerate(comps) for key in keys}
    face_shade: dict[int, bool] = {}
    n_cross = len(f.crossing_components)
    orbit_of = {min(o): o for o in f.faces}

    def depth(k: int) -> int:
        n = 0
        while f.placement[k][1] != -1:
            k = owner[f.placement[k][1]]
            n += 1
        return n

    for k in sorted(range(len(comps)), key=depth):
        outer, container = f.placement[k]
        start = False if container == -1 else face_shade[container]
        if k >= n_cross:
            inside, outside = comps[k]
            face_shade[outside] = start
            face_shade[inside] = not start
            continue
        face_shade[outer] = start
        queue = deque([outer])
        while queue:
            key = queue.popleft()
            for d in orbit_of[key]:
                other = f.face_key_of[f.link[d]]
                want = not face_shade[key]
                if other in face_shade:
                    if face_shade[other] != want:
                        raise ShadingImpossible(f"faces {key} and {other} cannot be 2-coloured")
                else:
                    face_shade[other] = want
                    queue.append(other)

    shaded = [False] * f.region_count
    for key, region in f.region_of_key.items():
        if region:
            shaded[region] = face_shade[key]
        elif face_shade[key]:
            raise ShadingImpossible("unbounded region would be shaded")
    return Shading(tuple(shaded))


__all__ = [
    "Flat",
    "FlatError",
    "MedialOrigin",
    "NonPlanar",
    "Shading",
    "ShadingImpossible",
    "checkerboard",
    "disjoint_union",
    "medial",
    "opposite",
    "rot_next",
    "rot_prev",
]
