"""Cross-validation of the five component-number methods."""

from __future__ import annotations

import itertools
import random
import re
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterator

from . import plane_graph as pg
from .coloring import mu_coloring, mu_nullity, region_space_dim
from .flat_trace import count_components
from .medial import medial
from .plane_graph import PlaneGraph
from .tutte import DEFAULT_MAX_EDGES, EdgeBudgetExceeded, mu_tutte

METHODS = ("trace", "nullity", "regions", "coloring", "tutte")


@dataclass
class MuReport:
    instance: str
    n_vertices: int
    n_edges: int
    mu_trace: int
    mu_nullity: int
    mu_regions: int
    mu_coloring: int | None
    mu_tutte: int | None
    agree: bool
    elapsed_ms: dict[str, float] | None = field(default=None)

    def values(self) -> list[int]:
        vals = [self.mu_trace, self.mu_nullity, self.mu_regions, self.mu_coloring, self.mu_tutte]
        return [v for v in vals if v is not None]

    def to_dict(self, timings: bool = False) -> dict:
        out = asdict(self)
        if not timings:
            out.pop("elapsed_ms")
        return out


def single_method(method: str, g: PlaneGraph, max_edges: int = DEFAULT_MAX_EDGES) -> int | None:
    if method == "trace":
        return count_components(medial(g))
    if method == "nullity":
        return mu_nullity(g)
    if method == "regions":
        return region_space_dim(medial(g))
    if method == "coloring":
        return mu_coloring(g)
    if method == "tutte":
        return mu_tutte(g, max_edges)
    raise ValueError(f"unknown method {method!r}")


def mu_report(name: str, g: PlaneGraph, max_edges: int = DEFAULT_MAX_EDGES) -> MuReport:
    """Run every method on ``g``; the Tutte value is None past ``max_edges``."""
    times: dict[str, float] = {}
    results: dict[str, int | None] = {}
    for method in METHODS:
        t0 = time.perf_counter()
        try:
            results[method] = single_method(method, g, max_edges)
        except EdgeBudgetExceeded:
            results[method] = None
        times[method] = round(1000 * (time.perf_counter() - t0), 3)
    values = {v for v in results.values() if v is not None}
    return MuReport(
        instance=name,
        n_vertices=g.vertex_count,
        n_edges=g.edge_count,
        mu_trace=results["trace"],
        mu_nullity=results["nullity"],
        mu_regions=results["regions"],
        mu_coloring=results["coloring"],
        mu_tutte=results["tutte"],
        agree=len(values) == 1,
        elapsed_ms=times,
    )


# ---------------------------------------------------------------------------
# family sweeps
# ---------------------------------------------------------------------------

_ALIASES = {
    "cycles": "cycle",
    "paths": "path",
    "grids": "grid",
    "wheels": "wheel",
    "thetas": "theta",
    "bouquet": "bouquet",
    "bouquets": "bouquet",
    "loops": "bouquet",
}


def _int_range(text: str) -> list[int]:
    m = re.fullmatch(r"(\d+)(?:\.\.(\d+))?", text)
    if not m:
        raise ValueError(f"bad range {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2) or lo)
    return list(range(lo, hi + 1))


def _grid_range(text: str) -> list[tuple[int, int]]:
    m = re.fullmatch(r"(\d+)x(\d+)(?:\.\.(\d+)x(\d+))?", text)
    if not m:
        raise ValueError(f"bad grid range {text!r}")
    r0, c0 = int(m.group(1)), int(m.group(2))
    r1, c1 = (int(m.group(3)), int(m.group(4))) if m.group(3) else (r0, c0)
    return [(r, c) for r in range(r0, r1 + 1) for c in range(c0, c1 + 1)]


def parse_families(spec: str) -> list[tuple[str, PlaneGraph]]:
    """Expand e.g. ``cycles:2..12,grids:2x2..5x5,complete4`` into instances."""
    out: list[tuple[str, PlaneGraph]] = []
    for item in filter(None, (s.strip() for s in spec.split(","))):
        name, _, arg = item.partition(":")
        name = _ALIASES.get(name, name)
        if name == "grid":
            for r, c in _grid_range(arg):
                out.append((f"grid {r}x{c}", pg.grid(r, c)))
        elif name == "bouquet":
            for k in _int_range(arg or "1..3"):
                out.append((f"bouquet_nested {k}", pg.loop_bouquet_nested(k)))
                out.append((f"bouquet_petals {k}", pg.loop_bouquet_petals(k)))
        elif name in ("complete4", "empty"):
            out.append((name, pg.generate(name)))
        elif name in ("cycle", "path", "wheel", "theta", "isolated"):
            for n in _int_range(arg):
                out.append((f"{name} {n}", pg.generate(name, n)))
        else:
            raise ValueError(f"unknown family {name!r}")
    return out


def random_instances(count: int, seed: int) -> list[tuple[str, PlaneGraph]]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        r, c, s = rng.randint(2, 6), rng.randint(2, 6), rng.randrange(2**31)
        out.append((f"random_grid_subgraph {r}x{c} seed={s}", pg.random_grid_subgraph(r, c, s)))
    return out


def embedding_variants(name: str, g: PlaneGraph) -> list[tuple[str, PlaneGraph]]:
    """Other planar rotation systems of the same abstract graph."""
    variants = [(f"{name} [mirror]", g.mirror())]
    if name.startswith("theta "):
        k = g.edge_count
        for i, perm in enumerate(itertools.islice(itertools.permutations(range(1, k)), 1, 6)):
            variants.append((f"{name} [order {i}]", pg.theta(k, (0, *perm))))
    elif name.startswith("bouquet_nested "):
        variants.append((f"{name} [petals]", pg.loop_bouquet_petals(g.edge_count)))
    return [(n, v) for n, v in variants if v.rotations != g.rotations]


@dataclass
class CheckResult:
    reports: list[MuReport]
    embedding_pairs: list[tuple[str, str, bool]]

    @property
    def ok(self) -> bool:
        return all(r.agree for r in self.reports) and all(ok for *_, ok in self.embedding_pairs)


def run_check(
    instances: list[tuple[str, PlaneGraph]],
    max_edges: int = DEFAULT_MAX_EDGES,
    progress: Callable[[MuReport], None] | None = None,
) -> CheckResult:
    reports: list[MuReport] = []
    pairs: list[tuple[str, str, bool]] = []
    for name, g in instances:
        base = mu_report(name, g, max_edges)
        reports.append(base)
        if progress:
            progress(base)
        for vname, vg in embedding_variants(name, g):
            rep = mu_report(vname, vg, max_edges)
            reports.append(rep)
            if progress:
                progress(rep)
            pairs.append((name, vname, rep.agree and set(rep.values()) == set(base.values())))
    return CheckResult(reports, pairs)


def iter_default_instances(seed: int = 7, random_count: int = 50) -> Iterator[tuple[str, PlaneGraph]]:
    yield from parse_families(
        "cycles:1..12,paths:1..10,grids:2x2..5x5,wheel:4..8,theta:2..6,complete4,"
        "bouquet:1..4,isolated:1..3,empty"
    )
    yield from random_instances(random_count, seed)
