"""Straight-ahead tracing and flat Reidemeister moves.

Every move is a rewrite inside a small disk.  Region bookkeeping after a
move is generic: surviving darts keep the region of their corner, darts
created where a strand leaves the disk inherit the region of the boundary arc
they face, regions joined inside the disk are merged, and a face orbit of a
connected piece can only belong to one region (a finger pushed across a face
splits it).  Placement of the pieces is then rebuilt breadth-first from the
unbounded region.
"""

from __future__ import annotations

import random
from collections import defaultdict, deque
from dataclasses import asdict, dataclass, field
from typing import Iterable

from .medial import Flat, FlatError, rot_next, rot_prev

MOVE_KINDS = ("R1_add", "R1_remove", "R2_add", "R2_remove", "R3")


class InvalidSite(ValueError):
    """The requested move does not match the local picture at its site."""


# ---------------------------------------------------------------------------
# tracing
# ---------------------------------------------------------------------------


def components(f: Flat) -> tuple[list[tuple[int, ...]], int]:
    """Strands as dart sequences, plus the component number.

    A strand is walked by entering a crossing at dart ``i``, leaving at the
    opposite dart ``i ^ 2`` and following the link to the next crossing.
    Free circles add to the count but carry no darts.
    """
    seen = [False] * f.dart_count
    strands = []
    for start in range(f.dart_count):
        if seen[start]:
            continue
        strand = []
        d = start
        while not seen[d]:
            out = d ^ 2
            seen[d] = seen[out] = True
            strand.extend((d, out))
            d = f.link[out]
        strands.append(tuple(strand))
    return strands, len(strands) + f.free_circles


def count_components(f: Flat) -> int:
    return components(f)[1]


# ---------------------------------------------------------------------------
# move specification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MoveSpec:
    """A move and its anchor.

    ``face`` is any dart on the monogon, bigon or triangle being removed or
    flipped.  ``R1_add`` takes ``dart`` with ``side`` ``"right"``/``"left"``
    of the segment leaving it, or ``circle`` with ``side``
    ``"inside"``/``"outside"``.  ``R2_add`` pushes the segment leaving
    ``dart`` across the segment leaving ``dart2``; both must have the same
    face on their right.
    """

    kind: str
    face: int | None = None
    dart: int | None = None
    dart2: int | None = None
    circle: int | None = None
    side: str | None = None

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}

    @classmethod
    def from_dict(cls, data: dict) -> "MoveSpec":
        return cls(**data)


# ---------------------------------------------------------------------------
# rewrite engine
# ---------------------------------------------------------------------------


class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict[int, int] = {}

    def find(self, x: int) -> int:
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass
class _Rewrite:
    flat: Flat
    removed: set[int] = field(default_factory=set)
    new_crossings: int = 0
    dropped_circles: set[int] = field(default_factory=set)

    def __post_init__(self) -> None:
        f = self.flat
        self.n = f.crossing_count
        self.L = list(f.link) + [-1] * (4 * self.new_crossings)
        self.seeds: list[tuple[int, int]] = []
        self.merges: list[tuple[int, int]] = []
        self.new_circles: list[tuple[int, int]] = []
        self.next_label = f.region_count

    def new_dart(self, j: int, k: int) -> int:
        return 4 * (self.n + j) + k

    def connect(self, a: int, b: int) -> None:
        self.L[a] = b
        self.L[b] = a

    def label(self, d: int) -> int:
        return self.flat.region_of_dart(d)

    def fresh(self) -> int:
        self.next_label += 1
        return self.next_label - 1

    def remove_through(self, ports: list[int], pairing: dict[int, int]) -> None:
        """Delete the removed crossings, joining strands through ``pairing``.

        ``ports`` lists, counterclockwise around the disk, the removed darts
        whose segments leave the disk; ``pairing`` says which port each
        strand exits through after entering at another.
        """
        f = self.flat
        gone = self.removed
        visited: set[int] = set()
        for d in range(f.dart_count):
            if (d >> 2) in gone or (f.link[d] >> 2) not in gone:
                continue
            y = f.link[d]
            while True:
                y2 = pairing[y]
                visited.update((y, y2))
                w = f.link[y2]
                if (w >> 2) not in gone:
                    self.L[d] = w
                    break
                y = w
        for p in ports:
            if p in visited:
                continue
            y = p
            sides = None
            while y not in visited:
                y2 = pairing[y]
                visited.update((y, y2))
                if sides is None:
                    sides = (self.label(y2), self.label(f.link[y2]))
                y = f.link[y2]
            self.new_circles.append(sides)
        index = {p: j for j, p in enumerate(ports)}
        m = len(ports)
        for start in range(m):
            j = start
            while True:
                k = index[pairing[ports[j]]]
                nxt = (k + 1) % m
                self.merges.append((self.label(ports[start]), self.label(ports[nxt])))
                j = nxt
                if j == start:
                    break

    def finish(self) -> Flat:
        f = self.flat
        n_total = self.n + self.new_crossings
        keep = [c for c in range(n_total) if c not in self.removed]
        new_id = {c: i for i, c in enumerate(keep)}

        def remap(d: int) -> int:
            return 4 * new_id[d >> 2] + (d & 3)

        link = [0] * (4 * len(keep))
        for c in keep:
            for k in range(4):
                d = 4 * c + k
                if self.L[d] < 0 or (self.L[d] >> 2) in self.removed:
                    raise FlatError(f"dangling dart {d} after rewrite")
                link[remap(d)] = remap(self.L[d])

        old_circles = [i for i in range(f.free_circles) if i not in self.dropped_circles]
        circle_sides = [
            (f.region_of_key[f.circle_keys(i)[0]], f.region_of_key[f.circle_keys(i)[1]])
            for i in old_circles
        ]
        circle_sides += self.new_circles
        shape = Flat(tuple(link), len(circle_sides))

        uf = _UnionFind()
        for a, b in self.merges:
            uf.union(a, b)
        face_labels: dict[int, set[int]] = defaultdict(set)
        for c in keep:
            if c < self.n:
                for k in range(4):
                    d = 4 * c + k
                    face_labels[shape.face_key_of[remap(d)]].add(self.label(d))
        for d, lab in self.seeds:
            face_labels[shape.face_key_of[remap(d)]].add(lab)
        for labels in face_labels.values():
            first, *rest = labels
            for other in rest:
                uf.union(first, other)

        n_cross_comp = len(shape.crossing_components)
        comp_faces = shape.component_faces
        label_of: dict[int, int] = {}
        for comp in range(n_cross_comp):
            used: set[int] = set()
            for key in comp_faces[comp]:
                labels = face_labels.get(key)
                lab = uf.find(next(iter(labels))) if labels else uf.find(self.fresh())
                if lab in used:
                    lab = uf.find(self.fresh())
                used.add(lab)
                label_of[key] = lab
        for i, (inside, outside) in enumerate(circle_sides):
            a, b = uf.find(inside), uf.find(outside)
            if a == b:
                raise FlatError("free circle with the same region on both sides")
            label_of[shape.circle_keys(i)[0]] = a
            label_of[shape.circle_keys(i)[1]] = b

        by_label: dict[int, list[tuple[int, int]]] = defaultdict(list)
        for comp, keys in enumerate(comp_faces):
            for key in keys:
                by_label[label_of[key]].append((comp, key))
        root = uf.find(0)
        enclosing: dict[int, tuple[int, int]] = {root: (-1, -1)}
        placement: dict[int, tuple[int, int]] = {}
        queue = deque([root])
        while queue:
            lab = queue.popleft()
            parent_comp, parent_key = enclosing[lab]
            for comp, key in by_label[lab]:
                if comp == parent_comp:
                    continue
                if comp in placement:
                    raise FlatError("component reached from two regions")
                if comp >= n_cross_comp:
                    inside, outside = shape.circle_keys(comp - n_cross_comp)
                    if key == inside:
                        # the side facing the parent region is the outside
                        label_of[inside], label_of[outside] = label_of[outside], label_of[inside]
                    placement[comp] = (outside, parent_key)
                    inner_keys = [inside]
                else:
                    placement[comp] = (key, parent_key)
                    inner_keys = [k for k in comp_faces[comp] if k != key]
                for k in inner_keys:
                    sub = label_of[k]
                    if sub in enclosing:
                        raise FlatError("region enclosed by two faces")
                    enclosing[sub] = (comp, k)
                    queue.append(sub)
        if len(placement) != len(comp_faces):
            raise FlatError("could not place every component after the move")
        return Flat(shape.link, shape.free_circles, tuple(placement[k] for k in range(len(comp_faces))))


# ---------------------------------------------------------------------------
# site checks
# ---------------------------------------------------------------------------


def _face_orbit(f: Flat, d: int) -> tuple[int, ...]:
    if not 0 <= d < f.dart_count:
        raise InvalidSite(f"dart {d} out of range")
    key = f.face_key_of[d]
    for orbit in f.faces:
        if min(orbit) == key:
            start = orbit.index(d)
            return orbit[start:] + orbit[:start]
    raise AssertionError("unreachable")


def _check_empty_disk(f: Flat, orbit: tuple[int, ...], what: str) -> None:
    key = min(orbit)
    if key in f.outer_keys:
        raise InvalidSite(f"{what} at face {key} is the outer face of its component")
    if f.children_of(key):
        raise InvalidSite(f"{what} at face {key} contains other components")


def _polygon_site(f: Flat, move: MoveSpec, size: int, what: str) -> tuple[int, ...]:
    if move.face is None:
        raise InvalidSite(f"{move.kind} needs a face dart")
    orbit = _face_orbit(f, move.face)
    if len(orbit) != size or len({d >> 2 for d in orbit}) != size:
        raise InvalidSite(f"face {min(orbit)} is not a {what} with distinct crossings")
    _check_empty_disk(f, orbit, what)
    return orbit


# ---------------------------------------------------------------------------
# the moves
# ---------------------------------------------------------------------------


def _r1_remove(f: Flat, move: MoveSpec) -> Flat:
    (z,) = _polygon_site(f, move, 1, "monogon")
    rw = _Rewrite(f, removed={z >> 2})
    a, b = rot_next(z), rot_next(rot_next(z))
    rw.remove_through([a, b], {a: b, b: a})
    return rw.finish()


def _r2_remove(f: Flat, move: MoveSpec) -> Flat:
    z1, z2 = _polygon_site(f, move, 2, "bigon")
    rw = _Rewrite(f, removed={z1 >> 2, z2 >> 2})
    p = [rot_next(z1), rot_next(rot_next(z1)), rot_next(z2), rot_next(rot_next(z2))]
    rw.remove_through(p, {p[1]: p[2], p[2]: p[1], p[0]: p[3], p[3]: p[0]})
    return rw.finish()


def _r3(f: Flat, move: MoveSpec) -> Flat:
    z = _polygon_site(f, move, 3, "triangle")
    rw = _Rewrite(f, removed={d >> 2 for d in z}, new_crossings=3)
    s1 = [rot_next(d) for d in z]
    s2 = [rot_next(rot_next(d)) for d in z]
    ports = [s1[0], s2[0], s1[2], s2[2], s1[1], s2[1]]
    pos = {p: j for j, p in enumerate(ports)}
    # piece i runs from s2[i] to s1[i+1]; new crossing j joins pieces j-1 and j
    start = [s2[i] for i in range(3)]
    end = [s1[(i + 1) % 3] for i in range(3)]
    ray: dict[tuple[int, int, str], int] = {}
    for j in range(3):
        rays = [
            (pos[start[j]], (j, "start")),
            (pos[end[j]], (j, "end")),
            (pos[start[j - 1]], ((j - 1) % 3, "start")),
            (pos[end[j - 1]], ((j - 1) % 3, "end")),
        ]
        for k, (_, (piece, way)) in enumerate(sorted(rays)):
            ray[(j, piece, way)] = rw.new_dart(j, k)
    port_dart = {}
    for i in range(3):
        first, second = (i + 1) % 3, i
        port_dart[start[i]] = ray[(first, i, "start")]
        port_dart[end[i]] = ray[(second, i, "end")]
        rw.connect(ray[(first, i, "end")], ray[(second, i, "start")])
    for p in ports:
        partner = f.link[p]
        target = port_dart.get(partner, partner)
        rw.connect(port_dart[p], target)
        rw.seeds.append((port_dart[p], rw.label(p)))
    return rw.finish()


def _r1_add(f: Flat, move: MoveSpec) -> Flat:
    if move.circle is not None:
        if not 0 <= move.circle < f.free_circles:
            raise InvalidSite(f"no free circle {move.circle}")
        if move.side not in ("inside", "outside"):
            raise InvalidSite("R1_add on a circle needs side 'inside' or 'outside'")
        rw = _Rewrite(f, new_crossings=1, dropped_circles={move.circle})
        c = [rw.new_dart(0, k) for k in range(4)]
        rw.connect(c[2], c[3])
        rw.connect(c[0], c[1])
        inside, outside = (f.region_of_key[k] for k in f.circle_keys(move.circle))
        lobe, rest = (inside, outside) if move.side == "outside" else (outside, inside)
        rw.seeds += [(c[1], lobe), (c[0], rest), (c[2], rest)]
        return rw.finish()
    x = move.dart
    if x is None or not 0 <= x < f.dart_count:
        raise InvalidSite("R1_add needs a dart or a circle")
    if move.side not in ("right", "left"):
        raise InvalidSite("R1_add on a segment needs side 'right' or 'left'")
    rw = _Rewrite(f, new_crossings=1)
    c = [rw.new_dart(0, k) for k in range(4)]
    y = f.link[x]
    if move.side == "right":
        rw.connect(c[1], x)
        rw.connect(c[0], y)
        rw.connect(c[2], c[3])
    else:
        rw.connect(c[2], x)
        rw.connect(c[3], y)
        rw.connect(c[0], c[1])
    return rw.finish()


def _r2_add(f: Flat, move: MoveSpec) -> Flat:
    x, y = move.dart, move.dart2
    if x is None or y is None:
        raise InvalidSite("R2_add needs two darts")
    for d in (x, y):
        if not 0 <= d < f.dart_count:
            raise InvalidSite(f"dart {d} out of range")
    if f.face_key_of[x] != f.face_key_of[y]:
        raise InvalidSite("R2_add darts must share the face on their right")
    if y in (x, f.link[x]):
        raise InvalidSite("R2_add needs two distinct segments")
    rw = _Rewrite(f, new_crossings=2)
    a = [rw.new_dart(0, k) for k in range(4)]
    b = [rw.new_dart(1, k) for k in range(4)]
    x2, y2 = f.link[x], f.link[y]
    rw.connect(a[1], x)
    rw.connect(b[1], x2)
    rw.connect(a[3], b[3])
    rw.connect(a[0], b[2])
    rw.connect(b[0], y)
    rw.connect(a[2], y2)
    return rw.finish()


_DISPATCH = {
    "R1_add": _r1_add,
    "R1_remove": _r1_remove,
    "R2_add": _r2_add,
    "R2_remove": _r2_remove,
    "R3": _r3,
}


def apply_move(f: Flat, move: MoveSpec) -> Flat:
    try:
        fn = _DISPATCH[move.kind]
    except KeyError:
        raise InvalidSite(f"unknown move {move.kind!r}") from None
    return fn(f, move)


# ---------------------------------------------------------------------------
# site enumeration and random moves
# ---------------------------------------------------------------------------


def _polygon_sites(f: Flat, size: int) -> list[int]:
    out = []
    for orbit in f.faces:
        key = min(orbit)
        if len(orbit) != size or len({d >> 2 for d in orbit}) != size:
            continue
        if key in f.outer_keys or f.children_of(key):
            continue
        out.append(key)
    out.sort(key=lambda k: (f.region_of_key[k], k))
    return out


def removal_sites(f: Flat) -> list[MoveSpec]:
    """Valid R1_remove, R2_remove and R3 sites, lowest region id first."""
    sites = [MoveSpec("R1_remove", face=k) for k in _polygon_sites(f, 1)]
    sites += [MoveSpec("R2_remove", face=k) for k in _polygon_sites(f, 2)]
    sites += [MoveSpec("R3", face=k) for k in _polygon_sites(f, 3)]
    return sites


def random_move(f: Flat, rng: random.Random) -> MoveSpec | None:
    """A uniformly chosen move kind with a random valid site (None if stuck)."""
    kinds = list(MOVE_KINDS)
    rng.shuffle(kinds)
    for kind in kinds:
        if kind == "R1_add":
            if f.dart_count and (not f.free_circles or rng.random() < 0.8):
                return MoveSpec(kind, dart=rng.randrange(f.dart_count),
                                side=rng.choice(("right", "left")))
            if f.free_circles:
                return MoveSpec(kind, circle=rng.randrange(f.free_circles),
                                side=rng.choice(("inside", "outside")))
        elif kind == "R2_add":
            candidates = [o for o in f.faces if len(o) >= 2]
            rng.shuffle(candidates)
            for orbit in candidates:
                x = rng.choice(orbit)
                others = [y for y in orbit if y != x and y != f.link[x]]
                if others:
                    return MoveSpec(kind, dart=x, dart2=rng.choice(others))
        else:
            size = {"R1_remove": 1, "R2_remove": 2, "R3": 3}[kind]
            sites = _polygon_sites(f, size)
            if sites:
                return MoveSpec(kind, face=rng.choice(sites))
    return None


# ---------------------------------------------------------------------------
# simplifier
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SimplifyResult:
    flat: Flat
    moves: tuple[MoveSpec, ...]
    exhausted: bool

    @property
    def complete(self) -> bool:
        return self.flat.crossing_count == 0


def _state(f: Flat) -> tuple:
    return f.link, f.free_circles, f.placement


def simplify(f: Flat, move_budget: int) -> SimplifyResult:
    """Greedy R1/R2 removal with R3 flips when stuck, within ``move_budget``.

    R3 flips that lead back to an already visited flat are skipped.
    """
    if move_budget < 0:
        raise ValueError("move budget must be non-negative")
    log: list[MoveSpec] = []
    seen = {_state(f)}
    while f.crossing_count and len(log) < move_budget:
        reducing = [s for s in removal_sites(f) if s.kind != "R3"]
        if reducing:
            site = reducing[0]
            f = apply_move(f, site)
        else:
            for site in (s for s in removal_sites(f) if s.kind == "R3"):
                g = apply_move(f, site)
                if _state(g) not in seen:
                    f = g
                    break
            else:
                break
        seen.add(_state(f))
        log.append(site)
    exhausted = bool(f.crossing_count) and len(log) >= move_budget
    return SimplifyResult(f, tuple(log), exhausted)


def move_sequence(f: Flat, moves: Iterable[MoveSpec]) -> Flat:
    for m in moves:
        f = apply_move(f, m)
    return f
