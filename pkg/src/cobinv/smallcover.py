"""Fixed sets of the Z_2^3 action on a small cover of a simple 3-polytope.

The small cover is P x Z_2^3 / ~ with (p, a) ~ (p, b) when a + b lies in the
span of the colors of the facets containing p.  Group elements are ints 0..7
whose bits read [b2, b1, b0].  For g != 0, in the vertex chart g acts by
sign changes along the coordinates whose color appears in g's expansion in
the local color basis, which gives:

* a vertex is an isolated fixed point iff g is the sum of its three colors;
* an edge between F and F' carries a fixed circle iff g = col(F) + col(F');
* a facet F carries a fixed surface iff g = col(F).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .polytope import FaceLattice, automorphisms, facet_orbits
from .profiles import FixedComponent, InvolutionProfile, NormalProfile, Topology
from .surfaces import CombSurface, UnionFind, components, surface_topology, w1_squared

ELEMENTS = tuple(range(1, 8))


class ColoringError(ValueError):
    pass


def bits(g: int) -> tuple[int, int, int]:
    return ((g >> 2) & 1, (g >> 1) & 1, g & 1)


def from_bits(b: Iterable[int]) -> int:
    b2, b1, b0 = (int(x) for x in b)
    if {b2, b1, b0} - {0, 1}:
        raise ColoringError(f"color bits must be 0/1, got {b}")
    return (b2 << 2) | (b1 << 1) | b0


def fmt(g: int) -> str:
    return "({},{},{})".format(*bits(g))


def span(gens: Iterable[int]) -> set[int]:
    out = {0}
    for x in gens:
        out |= {y ^ x for y in out}
    return out


def parity(x: int) -> int:
    return bin(x).count("1") & 1


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int, ...]  # per facet index

    def __getitem__(self, f: int) -> int:
        return self.colors[f]

    def to_json(self, lat: FaceLattice) -> dict:
        return {lat.facets[f]: list(bits(c)) for f, c in enumerate(self.colors)}

    @classmethod
    def from_json(cls, lat: FaceLattice, data: Mapping[str, list[int]]) -> Coloring:
        missing = set(lat.facets) - set(data)
        if missing:
            raise ColoringError(f"coloring misses facets {sorted(missing)}")
        extra = set(data) - set(lat.facets)
        if extra:
            raise ColoringError(f"coloring names unknown facets {sorted(extra)}")
        return cls(tuple(from_bits(data[f]) for f in lat.facets))


def load_coloring(lat: FaceLattice, path: str | Path) -> Coloring:
    return Coloring.from_json(lat, json.loads(Path(path).read_text()))


def degenerate_vertices(lat: FaceLattice, col: Coloring) -> list[int]:
    return [i for i, v in enumerate(lat.vertices) if len(span(col[f] for f in v)) != 8]


def validate_coloring(lat: FaceLattice, col: Coloring) -> bool:
    if len(col.colors) != len(lat.facets):
        raise ColoringError("coloring is not total on facets")
    return not degenerate_vertices(lat, col)


# --- fixed strata ---------------------------------------------------------------


@dataclass(frozen=True)
class Circle:
    edge: int
    cells: tuple[tuple[int, int], ...]  # (edge, coset representative)
    normal_w1: int


@dataclass(frozen=True)
class FixedStrata:
    g: int
    points: tuple[int, ...]           # vertex indices, one fixed point each
    circles: tuple[Circle, ...]
    surfaces: tuple[CombSurface, ...]


def _coset_rep(a: int, subgroup: set[int]) -> int:
    return min(a ^ h for h in subgroup)


def _circle_normal_w1(lat: FaceLattice, col: Coloring, edge: int) -> int:
    """w_1 of the normal plane bundle of the fixed circle over an edge.

    The normal bundle is TM restricted to the circle (the circle itself is
    orientable), and w_1(TM) on a loop counts facet crossings mod 2.  A push-off
    of the circle crosses the third facet at each endpoint once, and closes
    back up by crossing F and/or F' according to the leftover group element.
    """
    f, h = lat.edges[edge]
    v0, v1 = lat.edge_vertices[edge]
    leftover = col[lat.third_facet(v0, edge)] ^ col[lat.third_facet(v1, edge)]
    if leftover == 0:
        weight = 0
    elif leftover in (col[f], col[h]):
        weight = 1
    elif leftover == col[f] ^ col[h]:
        weight = 2
    else:
        raise ColoringError("fixed circle does not close up; coloring is degenerate")
    return weight & 1


def fixed_strata(lat: FaceLattice, col: Coloring, g: int) -> FixedStrata:
    if g == 0 or not 0 < g < 8:
        raise ColoringError("g must be a nonzero element of Z_2^3")
    if not validate_coloring(lat, col):
        raise ColoringError("coloring is degenerate")

    points = tuple(i for i, v in enumerate(lat.vertices)
                   if col[v[0]] ^ col[v[1]] ^ col[v[2]] == g)

    # 1-cells: two cosets of <col F, col F'> per qualifying edge, joined at endpoints
    uf = UnionFind()
    for e, (f, h) in enumerate(lat.edges):
        if col[f] ^ col[h] != g:
            continue
        sub = span((col[f], col[h]))
        for a in range(8):
            uf.add((e, _coset_rep(a, sub)))
        for v in lat.edge_vertices[e]:
            step = col[lat.third_facet(v, e)]
            for a in range(8):
                uf.union((e, _coset_rep(a, sub)), (e, _coset_rep(a ^ step, sub)))
    circles = tuple(
        Circle(group[0][0], tuple(group), _circle_normal_w1(lat, col, group[0][0]))
        for group in uf.groups()
    )

    # 2-cells: four cosets of <g> per facet of color g, glued across each edge
    cells, sides, gluings, crossing = [], {}, {}, {}
    sub_g = {0, g}
    for f in range(len(lat.facets)):
        if col[f] != g:
            continue
        reps = sorted({_coset_rep(a, sub_g) for a in range(8)})
        for r in reps:
            cell = (f, r)
            cells.append(cell)
            sides[cell] = tuple((e, lat.edge_vertices[e]) for e in lat.facet_edges(f))
            for e in lat.facet_edges(f):
                a, b = lat.edges[e]
                mu = col[b if a == f else a]
                gluings[(cell, e)] = (f, _coset_rep(r ^ mu, sub_g))
                crossing[(cell, e)] = mu
    whole = CombSurface(tuple(cells), sides, gluings, crossing)
    surfaces = []
    for comp in components(whole):
        keep = set(comp)
        surfaces.append(CombSurface(
            tuple(comp),
            {c: sides[c] for c in comp},
            {k: v for k, v in gluings.items() if k[0] in keep},
            {k: v for k, v in crossing.items() if k[0] in keep},
            label="facet " + ",".join(sorted({lat.facets[c[0]] for c in comp})),
        ))
    return FixedStrata(g, points, circles, tuple(surfaces))


def normal_transition(s: CombSurface, mask: int):
    """Transition of the normal line bundle: phi(crossed color), phi(x) = parity(x & mask)."""
    def t(cell, key) -> int:
        return parity(s.crossing_colors[(cell, key)] & mask)
    return t


def normal_w1_squared(s: CombSurface, g: int, mask: int | None = None) -> int:
    """<w_1(nu X)^2, [X]> for a fixed surface X of g.

    ``mask`` picks the functional phi(x) = parity(x & mask); it must satisfy
    phi(g) = 1 and the answer does not depend on it.
    """
    mask = (g & -g) if mask is None else mask
    if not parity(g & mask):
        raise ValueError("the functional must be 1 on g")
    return w1_squared(s, normal_transition(s, mask))


# --- census ---------------------------------------------------------------------


@dataclass(frozen=True)
class SurfaceInfo:
    label: str
    euler_char: int
    orientable: bool
    normal_w1_squared: int


@dataclass(frozen=True)
class CensusRow:
    g: int
    facets: tuple[str, ...]
    points: int
    circles: int
    surfaces: int
    surfaces_w1sq: int
    surface_info: tuple[SurfaceInfo, ...]
    profile: InvolutionProfile = field(compare=False)

    def counts(self) -> tuple[int, int, int, int]:
        return (self.points, self.circles, self.surfaces, self.surfaces_w1sq)


def census_row(lat: FaceLattice, col: Coloring, g: int) -> CensusRow:
    strata = fixed_strata(lat, col, g)
    infos, comps = [], []
    for v in strata.points:
        comps.append(FixedComponent(NormalProfile.point(),
                                    "point " + "|".join(lat.facets[f] for f in lat.vertices[v])))
    for c in strata.circles:
        f, h = lat.edges[c.edge]
        comps.append(FixedComponent(NormalProfile(1, {(1,): c.normal_w1}),
                                    f"circle {lat.facets[f]}|{lat.facets[h]}"))
    for s in strata.surfaces:
        chi, orientable = surface_topology(s)
        w1sq = normal_w1_squared(s, g)
        infos.append(SurfaceInfo(s.label, chi, orientable, w1sq))
        # nu X is a line bundle, so w_2(nu X) = 0
        comps.append(FixedComponent(NormalProfile(2, {(1, 1): w1sq, (2,): 0}),
                                    "surface " + s.label, Topology(chi, orientable)))
    profile = InvolutionProfile(3, tuple(comps), euler_parity=0)
    named = tuple(lat.facets[f] for f in range(len(lat.facets)) if col[f] == g)
    return CensusRow(g, named, len(strata.points), len(strata.circles), len(strata.surfaces),
                     sum(i.normal_w1_squared for i in infos), tuple(infos), profile)


def census(lat: FaceLattice, col: Coloring, elements: Iterable[int] = ELEMENTS) -> list[CensusRow]:
    if not validate_coloring(lat, col):
        bad = degenerate_vertices(lat, col)
        raise ColoringError(f"degenerate coloring at vertices {bad}")
    return [census_row(lat, col, g) for g in elements]


def quick_counts(lat: FaceLattice, colors: tuple[int, ...], g: int) -> tuple[int, int, int]:
    pts = sum(1 for a, b, c in lat.vertices if colors[a] ^ colors[b] ^ colors[c] == g)
    circ = sum(1 for a, b in lat.edges if colors[a] ^ colors[b] == g)
    return pts, circ, colors.count(g)


# --- searching for a coloring with prescribed census ------------------------------


Target = Mapping[int, tuple[int, int, int, int]]


def find_numberings(lat: FaceLattice, color_multiset: Iterable[int], target: Target,
                    ) -> list[Coloring]:
    """All colorings with the given multiset whose census equals target, up to Aut(lat).

    Each result is the lexicographically least representative of its orbit;
    the list is sorted.
    """
    multiset = list(color_multiset)
    n = len(lat.facets)
    if len(multiset) != n:
        raise ColoringError(f"multiset has {len(multiset)} colors for {n} facets")
    if any(not 0 < c < 8 for c in multiset):
        raise ColoringError("colors must be nonzero elements of Z_2^3")
    autos = automorphisms(lat)
    remaining = {c: multiset.count(c) for c in set(multiset)}
    rarest = min(sorted(remaining), key=lambda c: remaining[c])

    order: list[int] = []
    closing: list[list[tuple[int, int, int]]] = []
    found: set[tuple[int, ...]] = set()
    colors = [0] * n

    def canonical(cols: tuple[int, ...]) -> tuple[int, ...]:
        # perm maps facet f to perm[f]; relabel so facet perm[f] gets cols[f]
        best = None
        for perm in autos:
            img = [0] * n
            for f in range(n):
                img[perm[f]] = cols[f]
            t = tuple(img)
            if best is None or t < best:
                best = t
        return best

    def matches(cols: tuple[int, ...]) -> bool:
        for g in ELEMENTS:
            want = target.get(g, (0, 0, 0, 0))
            if quick_counts(lat, cols, g) != (want[0], want[1], want[2]):
                return False
        col = Coloring(cols)
        for g in ELEMENTS:
            want = target.get(g, (0, 0, 0, 0))
            if census_row(lat, col, g).counts() != tuple(want):
                return False
        return True

    def extend(i: int):
        if i == n:
            cols = tuple(colors)
            if matches(cols):
                found.add(canonical(cols))
            return
        f = order[i]
        for c in sorted(remaining):
            if not remaining[c]:
                continue
            colors[f] = c
            ok = True
            for v in closing[i]:
                if len(span(colors[x] for x in v)) != 8:
                    ok = False
                    break
            if ok:
                remaining[c] -= 1
                extend(i + 1)
                remaining[c] += 1
            colors[f] = 0

    # every orbit of solutions has a member where some orbit representative takes the rarest color
    for orbit in facet_orbits(lat, autos):
        rep = orbit[0]
        order[:] = _search_order(lat, rep)
        # a vertex constraint is checked once all three of its facets are colored
        pos = {f: i for i, f in enumerate(order)}
        closing[:] = [[] for _ in range(n)]
        for v in lat.vertices:
            closing[max(pos[f] for f in v)].append(v)
        colors[rep] = rarest
        remaining[rarest] -= 1
        extend(1)
        remaining[rarest] += 1
        colors[rep] = 0

    return [Coloring(c) for c in sorted(found)]


def find_numbering(lat: FaceLattice, color_multiset: Iterable[int], target: Target) -> Coloring:
    """The lexicographically least coloring matching the target census, or ColoringError."""
    sols = find_numberings(lat, color_multiset, target)
    if not sols:
        raise ColoringError("no labeling found")
    return sols[0]


def _search_order(lat: FaceLattice, first: int) -> list[int]:
    """Greedy order that closes vertices early: next facet has most colored neighbors."""
    n = len(lat.facets)
    order = [first]
    while len(order) < n:
        placed = set(order)
        best = max((f for f in range(n) if f not in placed),
                    key=lambda f: (sum(h in placed for h in lat.neighbors(f)), -f))
        order.append(best)
    return order


# reference data: the published census of the first dodecahedral small cover

REFERENCE_ROWS: dict[int, dict] = {
    from_bits((0, 0, 1)): {"facets": "1, 7, 10", "counts": (3, 1, 3, 1)},
    from_bits((0, 1, 0)): {"facets": "2, 5", "counts": (2, 4, 2, 1)},
    from_bits((0, 1, 1)): {"facets": "11", "counts": (5, 5, 1, 0)},
    from_bits((1, 0, 0)): {"facets": "3, 4", "counts": (2, 4, 2, 2)},
    from_bits((1, 0, 1)): {"facets": "12", "counts": (1, 7, 1, 1)},
    from_bits((1, 1, 0)): {"facets": "6", "counts": (1, 7, 1, 0)},
    from_bits((1, 1, 1)): {"facets": "8, 9", "counts": (6, 2, 2, 1)},
}


def reference_target() -> dict[int, tuple[int, int, int, int]]:
    return {g: row["counts"] for g, row in REFERENCE_ROWS.items()}


def reference_multiset() -> list[int]:
    out = []
    for g, row in REFERENCE_ROWS.items():
        out += [g] * row["counts"][2]
    return sorted(out)
