"""Regenerate the shipped polytope files (dodecahedron and cube)."""
import itertools
import json
import math
from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "src" / "cobinv" / "data"


def dodecahedron():
    # facets of the dodecahedron are the vertices of the icosahedron
    phi = (1 + math.sqrt(5)) / 2
    pts = []
    for s, t in itertools.product((-1, 1), repeat=2):
        pts += [(0, s, t * phi), (s, t * phi, 0), (t * phi, 0, s)]
    pts.sort()
    near = lambda i, j: abs(math.dist(pts[i], pts[j]) - 2) < 1e-9
    names = [str(i + 1) for i in range(len(pts))]
    verts = [
        [names[i], names[j], names[k]]
        for i, j, k in itertools.combinations(range(len(pts)), 3)
        if near(i, j) and near(j, k) and near(i, k)
    ]
    return {"name": "dodecahedron", "facets": names, "vertices": verts}


def cube():
    names = ["x-", "x+", "y-", "y+", "z-", "z+"]
    verts = [list(t) for t in itertools.product(names[0:2], names[2:4], names[4:6])]
    return {"name": "cube", "facets": names, "vertices": verts}


if __name__ == "__main__":
    for poly in (dodecahedron(), cube()):
        (DATA / f"{poly['name']}.json").write_text(json.dumps(poly, indent=1) + "\n")
