"""Closed surfaces glued from copies of polygons, as they appear in small covers.

A cell is a copy of a polygon; each side of a cell is glued to the same side
of another copy by the identity map (the two copies meet like mirror images).
Line bundles over the surface are given by a Z/2 transition value per glued
side, and w_1 products are evaluated by the simplicial cup product on the
barycentric subdivision.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable

Cell = Hashable
Side = tuple  # (cell, side key)


class SurfaceError(ValueError):
    pass


class UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        self.add(x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # deterministic representative: the smaller one
            if repr(rb) < repr(ra):
                ra, rb = rb, ra
            self.parent[rb] = ra

    def groups(self) -> list[list]:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return sorted((sorted(g, key=repr) for g in out.values()), key=lambda g: repr(g[0]))


@dataclass(frozen=True)
class CombSurface:
    """cells: the polygon copies.  sides[cell] lists (side key, (corner a, corner b)).
    gluings[(cell, side)] is the cell across that side; crossing_colors records the
    group element crossed there (the color of the neighboring facet)."""

    cells: tuple
    sides: dict
    gluings: dict
    crossing_colors: dict
    label: str = ""

    def side_list(self):
        for c in self.cells:
            for key, corners in self.sides[c]:
                yield c, key, corners


def check_closed(s: CombSurface) -> None:
    for c, key, _ in s.side_list():
        if (c, key) not in s.gluings:
            raise SurfaceError(f"side {key} of cell {c} is not glued")
        other = s.gluings[(c, key)]
        if other == c:
            raise SurfaceError(f"cell {c} is glued to itself along {key}")
        if s.gluings.get((other, key)) != c:
            raise SurfaceError(f"gluing of {c} across {key} is not symmetric")


def _corner_classes(s: CombSurface) -> UnionFind:
    uf = UnionFind()
    for c, key, corners in s.side_list():
        other = s.gluings[(c, key)]
        for v in corners:
            uf.union((c, v), (other, v))
    return uf


def _side_classes(s: CombSurface) -> UnionFind:
    uf = UnionFind()
    for c, key, _ in s.side_list():
        uf.union((c, key), (s.gluings[(c, key)], key))
    return uf


def components(s: CombSurface) -> list[list]:
    uf = UnionFind()
    for c in s.cells:
        uf.add(c)
    for (c, _key), other in s.gluings.items():
        uf.union(c, other)
    return uf.groups()


def surface_topology(s: CombSurface) -> tuple[int, bool]:
    """(Euler characteristic, orientable) of a closed connected cell surface."""
    check_closed(s)
    if len(components(s)) != 1:
        raise SurfaceError("surface is not connected")
    n_vertices = len(_corner_classes(s).groups())
    n_edges = len(_side_classes(s).groups())
    chi = n_vertices - n_edges + len(s.cells)
    # mirror gluings reverse the reference orientation, so orientable <=> bipartite
    color: dict = {}
    orientable = True
    for start in s.cells:
        if start in color:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            c = stack.pop()
            for key, _ in s.sides[c]:
                nb = s.gluings[(c, key)]
                if nb not in color:
                    color[nb] = 1 - color[c]
                    stack.append(nb)
                elif color[nb] == color[c]:
                    orientable = False
    return chi, orientable


Transition = Callable[[Cell, Hashable], int]


class _Subdivision:
    """Barycentric subdivision: vertices are cell centers, side midpoints, and corners."""

    def __init__(self, s: CombSurface):
        check_closed(s)
        self.s = s
        self.corners = _corner_classes(s)
        self.side_uf = _side_classes(s)
        names = set()
        self.triangles = []
        for c, key, corners in s.side_list():
            center = ("center", repr(c))
            mid = ("mid", repr(self.side_uf.find((c, key))))
            for v in corners:
                corner = ("corner", repr(self.corners.find((c, v))))
                self.triangles.append((c, key, v, center, mid, corner))
                names.update((center, mid, corner))
        self.order = {name: i for i, name in enumerate(sorted(names))}


def _sheet_function(sub: _Subdivision, t: Transition):
    """Cellwise sheet labels for the double cover defined by the transition t.

    Returns sheet(c, point) in {0, 1}: whether the copy of point seen from
    cell c (on sheet 0 of c) is the reference lift of that point.
    """
    s = sub.s
    uf = UnionFind()
    for c, key, corners in s.side_list():
        other = s.gluings[(c, key)]
        tv = t(c, key) & 1
        if t(other, key) & 1 != tv:
            raise SurfaceError(f"transition across {key} is not symmetric")
        for sheet in (0, 1):
            uf.union(("side", c, key, sheet), ("side", other, key, sheet ^ tv))
            for v in corners:
                uf.union(("corner", c, v, sheet), ("corner", other, v, sheet ^ tv))
    reference: dict = {}

    def sheet(c, kind: str, key) -> int:
        if kind == "center":
            return 0
        uf_points = sub.side_uf if kind == "side" else sub.corners
        point_class = (kind, uf_points.find((c, key)))
        lift = uf.find((kind, c, key, 0))
        if point_class not in reference:
            reference[point_class] = lift
            other = uf.find((kind, c, key, 1))
            if other == lift:
                raise SurfaceError("transition cocycle is not closed around a vertex")
        return int(lift != reference[point_class])

    return sheet


def cup_evaluate(s: CombSurface, t1: Transition, t2: Transition) -> int:
    """<x1 x2, [S]> for the line-bundle classes x1, x2 with transitions t1, t2."""
    sub = _Subdivision(s)
    sheets = [_sheet_function(sub, t) for t in (t1, t2)]
    cochains: list[dict] = [{}, {}]
    total = 0
    for c, key, v, center, mid, corner in sub.triangles:
        labels = {center: ("center", None), mid: ("side", key), corner: ("corner", v)}
        verts = sorted((center, mid, corner), key=sub.order.__getitem__)
        vals = []
        for sheet, cochain in zip(sheets, cochains):
            level = {x: sheet(c, *labels[x]) for x in verts}
            edge_val = {}
            for a, b in ((verts[0], verts[1]), (verts[1], verts[2])):
                val = level[a] ^ level[b]
                prev = cochain.setdefault((a, b), val)
                if prev != val:
                    raise SurfaceError("cochain disagrees on a shared edge")
                edge_val[(a, b)] = val
            vals.append(edge_val)
        total ^= vals[0][(verts[0], verts[1])] & vals[1][(verts[1], verts[2])]
    return total


def w1_squared(s: CombSurface, t: Transition) -> int:
    return cup_evaluate(s, t, t)


def tangent_transition(_c, _key) -> int:
    return 1


def polygon_cover(n_sides: int, side_colors: list[int], g: int = 0,
                  label: str = "") -> CombSurface:
    """2-D small cover of an n-gon: copies indexed by cosets of <g> in Z_2^3.

    With g = 0 the cells are all group elements spanned by the side colors;
    with g != 0 the cells are cosets of <g>, as for a facet fixed by g.
    """
    span = {0}
    for col in side_colors:
        span |= {x ^ col for x in span}
    if g:
        span |= {x ^ g for x in span}

    def rep(x: int) -> int:
        return min(x, x ^ g) if g else x

    cells = tuple(sorted({rep(x) for x in span}))
    sides, gluings, colors = {}, {}, {}
    for c in cells:
        sides[c] = tuple((i, (i, (i + 1) % n_sides)) for i in range(n_sides))
        for i, col in enumerate(side_colors):
            gluings[(c, i)] = rep(c ^ col)
            colors[(c, i)] = col
    return CombSurface(cells, sides, gluings, colors, label)
