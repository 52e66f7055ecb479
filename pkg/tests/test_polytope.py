import pytest

from cobinv.polytope import (PolytopeError, automorphisms, cube, dodecahedron, facet_orbits,
                             load_polytope)


def test_dodecahedron_counts():
    lat = dodecahedron()
    assert lat.counts == (12, 30, 20)
    assert lat.facet_sizes() == [5] * 12
    assert lat.facets == tuple(str(i) for i in range(1, 13))


def test_cube_counts():
    lat = cube()
    assert lat.counts == (6, 12, 8)
    assert lat.facet_sizes() == [4] * 6
    assert "x+" not in [lat.facets[h] for h in lat.neighbors(lat.facet_index("x-"))]


def test_automorphism_groups():
    assert len(automorphisms(dodecahedron())) == 120
    assert len(automorphisms(cube())) == 48
    assert len(facet_orbits(dodecahedron(), automorphisms(dodecahedron()))) == 1


def test_third_facet():
    lat = cube()
    e = lat.edge_index(lat.facet_index("x-"), lat.facet_index("y-"))
    thirds = {lat.facets[lat.third_facet(v, e)] for v in lat.edge_vertices[e]}
    assert thirds == {"z-", "z+"}


def _tetra():
    return {"facets": ["a", "b", "c", "d"],
            "vertices": [["a", "b", "c"], ["a", "b", "d"], ["a", "c", "d"], ["b", "c", "d"]]}


def test_tetrahedron_loads():
    assert load_polytope(_tetra()).counts == (4, 6, 4)


@pytest.mark.parametrize("mutate,message", [
    (lambda d: d["vertices"].append(["a", "b"]), "not simple"),
    (lambda d: d["vertices"].__setitem__(0, ["a", "a", "b"]), "not simple"),
    (lambda d: d["vertices"].pop(), "endpoint"),
    (lambda d: d["vertices"].append(["a", "b", "zz"]), "unknown facet"),
    (lambda d: d.pop("facets"), "needs"),
])
def test_malformed_polytopes(mutate, message):
    data = _tetra()
    mutate(data)
    with pytest.raises(PolytopeError, match=message):
        load_polytope(data)


def test_two_disjoint_tetrahedra_fail_euler():
    t = _tetra()
    other = [[x + "2" for x in v] for v in t["vertices"]]
    data = {"facets": t["facets"] + [f + "2" for f in t["facets"]], "vertices": t["vertices"] + other}
    with pytest.raises(PolytopeError, match="Euler"):
        load_polytope(data)
