import json

import pytest
from hypothesis import given

from medialmu import plane_graph as pg
from medialmu.medial import Flat, FlatError, checkerboard, disjoint_union, medial
from medialmu.plane_graph import NonPlanar, PlaneGraph

from instances import plane_graphs, small_named


def test_medial_c4():
    f = medial(pg.cycle(4))
    assert f.crossing_count == 4
    assert len(f.link) // 2 == 8
    assert f.region_count == 6
    s = checkerboard(f)
    assert (len(s.shaded_regions), len(s.unshaded_regions)) == (4, 2)


def test_medial_isolated_vertex_is_one_free_circle():
    f = medial(pg.isolated(1))
    assert (f.crossing_count, f.free_circles, f.region_count) == (0, 1, 2)


def test_medial_k2_is_figure_eight():
    f = medial(pg.path(2))
    assert f.crossing_count == 1
    assert f.region_count == 3
    s = checkerboard(f)
    assert len(s.shaded_regions) == 2
    assert s.unshaded_regions == [0]


def test_checkerboard_k3():
    s = checkerboard(medial(pg.cycle(3)))
    assert (len(s.shaded_regions), len(s.unshaded_regions)) == (3, 2)


def test_checkerboard_free_circle():
    s = checkerboard(Flat((), 1))
    assert s.shaded == (False, True)


def test_medial_rejects_nonplanar():
    g = PlaneGraph(1, 2, ((0, 2, 1, 3),))
    with pytest.raises(NonPlanar):
        medial(g)


@pytest.mark.parametrize("name, g", small_named())
def test_origin_regions_match_shading(name, g):
    f = medial(g)
    s = checkerboard(f)
    assert f.region_count == g.vertex_count + len(pg.faces(g)) + (g.component_count == 0) \
        - max(0, g.component_count - 1) + sum(1 for v in range(g.vertex_count) if g.degree(v) == 0)
    assert all(s[r] for r in f.origin.vertex_region)
    assert not any(s[r] for r in f.origin.face_region)
    assert sorted(set(f.origin.vertex_region)) == sorted(f.origin.vertex_region)


@pytest.mark.parametrize("name, g", small_named())
def test_crossing_corners_follow_the_edge(name, g):
    f = medial(g)
    o = f.origin
    for e in range(g.edge_count):
        a, b = g.endpoints(e)
        assert {f.region_of_dart(4 * e + 1), f.region_of_dart(4 * e + 3)} == {o.vertex_region[a], o.vertex_region[b]}
        sides = {f.region_of_dart(4 * e), f.region_of_dart(4 * e + 2)}
        assert sides <= set(o.face_region)


def test_invalid_link_rejected():
    with pytest.raises(FlatError):
        Flat((1, 0, 2, 3))
    with pytest.raises(FlatError):
        Flat((1, 0, 3))


def test_placement_validation():
    f = medial(pg.path(2))
    with pytest.raises(FlatError):
        Flat(f.link, 0, ((999, -1),))
    with pytest.raises(FlatError):
        Flat(f.link, 1, (f.placement[0], (4, -1)))


def test_nested_placement_is_accepted():
    fig8 = medial(pg.path(2))
    lobe = next(k for k in {min(o) for o in fig8.faces} if k != fig8.placement[0][0])
    f = Flat(fig8.link, 1, (fig8.placement[0], (5, lobe)))
    assert f.region_count == 4
    s = checkerboard(f)
    assert s.shaded.count(True) == 2


def test_to_json_round_trips():
    f = medial(pg.complete4())
    data = json.loads(f.to_json())
    assert len(data["crossings"]) == 6
    assert data["unbounded_region"] == 0
    assert Flat(tuple(x for c in data["crossings"] for x in c["links"]), data["free_circles"],
                tuple(map(tuple, data["placement"]))) == f


def test_disjoint_union_adds_regions():
    a, b = medial(pg.cycle(3)), medial(pg.isolated(2))
    u = disjoint_union(a, b)
    assert u.crossing_count == 3 and u.free_circles == 2
    assert u.region_count == a.region_count + b.region_count - 1


def test_outer_hint_changes_the_outer_face_only():
    g = pg.wheel(4)
    for d in range(2 * g.edge_count):
        f = medial(PlaneGraph(g.vertex_count, g.edge_count, g.rotations, outer=d))
        assert f.link == medial(g).link
        assert f.region_count == medial(g).region_count


@given(plane_graphs())
def test_medial_invariants(g):
    f = medial(g)
    assert f.crossing_count == g.edge_count
    assert f.free_circles == sum(1 for v in range(g.vertex_count) if g.degree(v) == 0)
    s = checkerboard(f)
    assert len(s.shaded_regions) == g.vertex_count
    assert all(s[r] for r in f.origin.vertex_region)
    assert not any(s[r] for r in f.origin.face_region)
