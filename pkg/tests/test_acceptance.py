"""Acceptance criteria, one test each, with a PASS/FAIL line per criterion."""

from __future__ import annotations

import itertools
import random
import time

import pytest

from medialmu import cli, harness
from medialmu import plane_graph as pg
from medialmu.coloring import (
    NotConservative,
    extend_coloring,
    is_conservative,
    iter_conservative,
    mu_coloring,
    mu_nullity,
    region_space_dim,
)
from medialmu.flat_trace import MoveSpec, apply_move, count_components, random_move, simplify
from medialmu.medial import medial
from medialmu.tutte import tutte_eval_minus1

from instances import acceptance_instances

INSTANCES = acceptance_instances()


@pytest.fixture
def verdict(capsys):
    def emit(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
        assert ok, detail
    return emit


def test_c01_equality_chain(verdict):
    t0 = time.perf_counter()
    bad = []
    for name, g in INSTANCES:
        f = medial(g)
        values = (count_components(f), mu_nullity(g), region_space_dim(f), mu_coloring(g))
        if len(set(values)) != 1:
            bad.append((name, values))
    elapsed = time.perf_counter() - t0
    verdict(1, not bad and elapsed < 60,
            f"{len(INSTANCES)} instances, {len(bad)} disagreements {bad[:3]}, {elapsed:.2f} s (limit 60 s)")


def test_c02_tutte(verdict):
    checked, bad = 0, []
    for name, g in INSTANCES:
        if g.edge_count > 14:
            continue
        mu = count_components(medial(g))
        t = tutte_eval_minus1(g, max_edges=14)
        # per-component product of the rule, which is the rule itself when connected
        parts = [len(c) for c in g.components()]
        components = len(parts)
        expected_abs = 2 ** (mu - components)
        sign = (-1) ** g.edge_count * (-1) ** (mu - components)
        checked += 1
        if t != sign * expected_abs or (components == 1 and abs(t) != 2 ** (mu - 1)):
            bad.append((name, t, mu))
    verdict(2, checked > 0 and not bad, f"{checked} instances with |E| <= 14, mismatches {bad[:3]}")


ANCHORS = [
    ("K3", pg.cycle(3), 1),
    ("C4", pg.cycle(4), 2),
    ("K4", pg.complete4(), 3),
    ("theta 3", pg.theta(3), 1),
    ("single loop", pg.cycle(1), 1),
    ("isolated vertex", pg.isolated(1), 1),
    ("empty", pg.empty(), 0),
] + [(f"C{n}", pg.cycle(n), 2 if n % 2 == 0 else 1) for n in range(1, 13)]


def test_c03_anchors(verdict):
    bad = []
    for name, g, mu in ANCHORS:
        rep = harness.mu_report(name, g)
        if not rep.agree or set(rep.values()) != {mu}:
            bad.append((name, rep.values(), mu))
    verdict(3, not bad, f"{len(ANCHORS)} anchors incl. cycle parity n<=12, wrong: {bad}")


def test_c04_move_invariance(verdict):
    rng = random.Random(2024)
    pool = [(n, medial(g)) for n, g in INSTANCES if g.edge_count <= 40]
    moves = broken = 0
    kinds: dict[str, int] = {}
    while moves < 1500:
        name, f = rng.choice(pool)
        mu = count_components(f)
        for _ in range(25):
            m = random_move(f, rng)
            if m is None:
                break
            f = apply_move(f, m)
            moves += 1
            kinds[m.kind] = kinds.get(m.kind, 0) + 1
            broken += count_components(f) != mu

    trips = trip_bad = 0
    for name, f in pool[:40]:
        n = f.crossing_count
        for d in range(0, f.dart_count, 3):
            side, corner = rng.choice((("right", 3), ("left", 1)))
            h = apply_move(f, MoveSpec("R1_add", dart=d, side=side))
            back = apply_move(h, MoveSpec("R1_remove", face=4 * n + corner))
            trips += 1
            trip_bad += back.crossing_count != n or back != f
            orbit = next(o for o in f.faces if d in o)
            others = [y for y in orbit if y not in (d, f.link[d])]
            if others:
                h = apply_move(f, MoveSpec("R2_add", dart=d, dart2=rng.choice(others)))
                back = apply_move(h, MoveSpec("R2_remove", face=4 * n))
                trips += 1
                trip_bad += back.crossing_count != n or back != f
    verdict(4, moves >= 1000 and not broken and not trip_bad,
            f"{moves} random moves {dict(sorted(kinds.items()))}, {broken} changed mu; "
            f"{trips} R1/R2 round trips, {trip_bad} failed")


def test_c05_simplifier(verdict):
    bad = []
    total = 0
    for name, g in INSTANCES:
        f = medial(g)
        r = simplify(f, 10 * f.crossing_count)
        total += len(r.moves)
        if not r.complete or r.flat.free_circles != count_components(f):
            bad.append((name, r.flat.crossing_count, r.flat.free_circles))
    verdict(5, not bad, f"{len(INSTANCES)} flats, {total} moves in total, failures {bad[:3]}")


def test_c06_extension(verdict):
    kernels = exhaustive = sampled = bad = 0
    rng = random.Random(6)
    for name, g in INSTANCES:
        f = medial(g)
        kernel = list(iter_conservative(g, cap_dim=10))
        for colors in kernel:
            kernels += 1
            try:
                a = extend_coloring(f, colors, order="bfs")
                b = extend_coloring(f, colors, order="dfs")
            except NotConservative:
                bad += 1
                continue
            bad += a != b
        members = set(kernel)
        n = g.vertex_count
        if n <= 12:
            candidates = itertools.product((0, 1), repeat=n)
        else:
            candidates = (tuple(rng.getrandbits(1) for _ in range(n)) for _ in range(256))
        for colors in candidates:
            if colors in members:
                continue
            if n <= 12:
                exhaustive += 1
            else:
                sampled += 1
            assert not is_conservative(g, colors)
            try:
                extend_coloring(f, colors)
            except NotConservative:
                pass
            else:
                bad += 1
    verdict(6, not bad,
            f"{kernels} kernel colourings extended identically via two trees; "
            f"{exhaustive} non-kernel rejected exhaustively (|V| <= 12), {sampled} sampled; {bad} failures")


def test_c07_embedding_independence(verdict):
    pairs = []
    for name, g in INSTANCES:
        for vname, vg in harness.embedding_variants(name, g):
            pairs.append((name, g, vname, vg))
    for k in range(2, 6):
        pairs.append((f"bouquet_nested {k}", pg.loop_bouquet_nested(k),
                      f"bouquet_petals {k}", pg.loop_bouquet_petals(k)))
    structured = [p for p in pairs if "[mirror]" not in p[2]]
    bad = []
    for name, g, vname, vg in pairs:
        assert g.rotations != vg.rotations
        assert sorted(map(sorted, g.edges())) == sorted(map(sorted, vg.edges()))
        a, b = harness.mu_report(name, g), harness.mu_report(vname, vg)
        if not (a.agree and b.agree and set(a.values()) == set(b.values())):
            bad.append((name, vname))
    verdict(7, len(structured) >= 20 and not bad,
            f"{len(pairs)} pairs ({len(structured)} theta-order or loop-nesting pairs), mismatches {bad[:3]}")


def test_c08_additivity(verdict):
    rng = random.Random(8)
    pool = [(n, g) for n, g in INSTANCES if g.edge_count <= 8]
    bad = []
    for _ in range(20):
        (na, a), (nb, b) = rng.sample(pool, 2)
        u = pg.disjoint_union(a, b)
        for m in harness.METHODS:
            if harness.single_method(m, u) != harness.single_method(m, a) + harness.single_method(m, b):
                bad.append((na, nb, m))
    verdict(8, not bad, f"20 random pairs x {len(harness.METHODS)} methods, failures {bad[:3]}")


def test_c09_performance(verdict):
    g = pg.grid(100, 100)
    times, values = [], []
    for _ in range(3):
        t0 = time.perf_counter()
        values.append(mu_nullity(g))
        times.append(time.perf_counter() - t0)
    small = pg.grid(10, 10)
    oracle = count_components(medial(small))
    ok = max(times) < 5 and len(set(values)) == 1 and mu_nullity(small) == oracle
    verdict(9, ok, f"100x100 nullity {values} in {', '.join(f'{t:.2f}' for t in times)} s "
                   f"(limit 5 s); 10x10 nullity {mu_nullity(small)} vs trace {oracle}")


def test_c10_format_and_exit_codes(verdict, monkeypatch, capsys):
    outputs = [g for _, g in INSTANCES]
    outputs += [pg.generate(f, *a) for f, a in [
        ("grid", (1, 1)), ("grid", (7, 3)), ("isolated", (4,)), ("loop_bouquet_nested", (5,)),
        ("loop_bouquet_petals", (5,)), ("random_grid_subgraph", (8, 8, 1)), ("wheel", (12,)),
    ]]
    outputs += [g.mirror() for g in outputs]
    drift = sum(pg.parse_plane_graph(pg.serialize_plane_graph(g)) != g for g in outputs)

    ok_code = cli.main(["check", "--families", "cycles:2..5,theta:2..4,complete4", "--random", "3"])
    bad_input = cli.main(["check", "--families", "cycles:two"])
    monkeypatch.setattr(harness, "mu_nullity", lambda g: -1)
    disagree = cli.main(["check", "--families", "cycles:3"])
    capsys.readouterr()
    codes = (ok_code, disagree, bad_input)
    verdict(10, drift == 0 and codes == (0, 1, 2),
            f"{len(outputs)} generator outputs round-trip ({drift} drifted); check exit codes {codes} (want (0, 1, 2))")
