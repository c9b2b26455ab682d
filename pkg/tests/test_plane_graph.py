import pytest
from hypothesis import given

from medialmu import plane_graph as pg
from medialmu.plane_graph import NonPlanar, PlaneGraph, PlaneGraphError

from instances import plane_graphs


def parse(text: str) -> PlaneGraph:
    return pg.parse_plane_graph(text.replace(" / ", "\n"))


def test_parse_k2():
    g = parse("pg v1 / edges 1 / v 0 : 0 / v 1 : 1")
    assert (g.vertex_count, g.edge_count) == (2, 1)
    assert g.edges() == [(0, 1)]


def test_parse_two_loops_at_one_vertex_is_planar():
    g = parse("pg v1 / edges 2 / v 0 : 0 1 2 3")
    assert len(pg.faces(g)) == 3
    assert g.euler_characteristics() == [2]


def test_parse_rejects_repeated_dart():
    with pytest.raises(PlaneGraphError, match="repeated|missing"):
        parse("pg v1 / edges 1 / v 0 : 0 0")


@pytest.mark.parametrize("text", [
    "",
    "pg v2 / edges 0",
    "pg v1 / edges x",
    "pg v1 / edges 1 / v 0 : 0 1 2",
    "pg v1 / edges 1 / v 0 : 0 / v 2 : 1",
    "pg v1 / edges 1 / v 0 : 0 1 / outer 7",
])
def test_parse_rejects_malformed(text):
    with pytest.raises(PlaneGraphError):
        parse(text)


def test_parse_comments_and_outer():
    g = parse("# a comment / pg v1 / edges 1 / v 0 : 0 / # K2 / v 1 : 1 / outer 1")
    assert g.outer == 1


def test_faces_cycle3():
    fs = pg.faces(pg.cycle(3))
    assert sorted(len(f.darts) for f in fs) == [3, 3]


def test_faces_k2_single_face_of_two_darts():
    (f,) = pg.faces(pg.path(2))
    assert sorted(f.darts) == [0, 1]


def test_faces_empty():
    assert pg.faces(pg.empty()) == []


def test_interleaved_loops_are_toroidal():
    g = parse("pg v1 / edges 2 / v 0 : 0 2 1 3")
    assert len(pg.faces(g)) == 1
    with pytest.raises(NonPlanar) as info:
        pg.check_planar(g)
    assert info.value.characteristic == 0
    assert not pg.is_planar(g)


@pytest.mark.parametrize("g, v, e, f", [
    (pg.cycle(4), 4, 4, 2),
    (pg.theta(3), 2, 3, 3),
    (pg.grid(3, 3), 9, 12, 5),
    (pg.complete4(), 4, 6, 4),
    (pg.wheel(5), 6, 10, 6),
    (pg.cycle(1), 1, 1, 2),
    (pg.cycle(2), 2, 2, 2),
])
def test_generator_counts(g, v, e, f):
    assert (g.vertex_count, g.edge_count, len(pg.faces(g))) == (v, e, f)
    pg.check_planar(g)


def test_mirror_is_planar_and_differs():
    g = pg.wheel(5)
    m = g.mirror()
    assert m.rotations != g.rotations
    assert m.mirror() == g
    pg.check_planar(m)


def test_disjoint_union_shifts_darts():
    g = pg.disjoint_union(pg.path(2), pg.cycle(3))
    assert (g.vertex_count, g.edge_count) == (5, 4)
    assert g.component_count == 2
    pg.check_planar(g)


def test_generate_rejects_bad_arity():
    with pytest.raises(ValueError):
        pg.generate("grid", 3)
    with pytest.raises(ValueError):
        pg.generate("nope")


def test_random_grid_subgraph_is_connected_and_seeded():
    a = pg.random_grid_subgraph(4, 5, 11)
    assert a == pg.random_grid_subgraph(4, 5, 11)
    assert a.component_count == 1
    assert a.edge_count >= 19


def test_degree_counts_loop_twice():
    g = pg.cycle(1)
    assert g.degree(0) == 2
    assert g.neighbors(0) == [0, 0]


def test_outer_dart_hint():
    g = PlaneGraph(3, 3, pg.cycle(3).rotations, outer=1)
    assert g.outer_dart(0) == 1


@given(plane_graphs())
def test_round_trip_is_dart_exact(g):
    assert pg.parse_plane_graph(pg.serialize_plane_graph(g)) == g


@given(plane_graphs())
def test_faces_partition_darts(g):
    seen = [d for f in pg.faces(g) for d in f.darts]
    assert sorted(seen) == list(range(2 * g.edge_count))
    for f in pg.faces(g):
        for i, d in enumerate(f.darts):
            assert g.face_next(d) == f.darts[(i + 1) % len(f.darts)]


@given(plane_graphs())
def test_generated_graphs_are_planar(g):
    assert all(chi == 2 for chi in g.euler_characteristics())


def test_trailing_comment_is_not_a_comment():
    with pytest.raises(PlaneGraphError):
        parse("pg v1 / edges 1 / v 0 : 0 # x / v 1 : 1")
