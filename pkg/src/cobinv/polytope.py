"""Face lattices of simple 3-polytopes, read from JSON (facets + vertex triples)."""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path


class PolytopeError(ValueError):
    pass


@dataclass(frozen=True)
class FaceLattice:
    name: str
    facets: tuple[str, ...]
    vertices: tuple[tuple[int, int, int], ...]  # sorted facet-index triples
    edges: tuple[tuple[int, int], ...]          # sorted facet-index pairs
    edge_vertices: tuple[tuple[int, int], ...]  # endpoint vertex indices per edge

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.facets), len(self.edges), len(self.vertices)

    def facet_index(self, name: str) -> int:
        return self.facets.index(name)

    def neighbors(self, f: int) -> list[int]:
        return sorted(b if a == f else a for a, b in self.edges if f in (a, b))

    def facet_edges(self, f: int) -> list[int]:
        return [i for i, e in enumerate(self.edges) if f in e]

    def edge_index(self, f: int, h: int) -> int:
        return self.edges.index((min(f, h), max(f, h)))

    def third_facet(self, vertex: int, edge: int) -> int:
        (rest,) = set(self.vertices[vertex]) - set(self.edges[edge])
        return rest

    def facet_sizes(self) -> list[int]:
        return [len(self.facet_edges(f)) for f in range(len(self.facets))]


def build_lattice(name: str, facets: list[str], vertex_triples: list[list[str]]) -> FaceLattice:
    """Derive edges from vertex triples and check every simple-polytope invariant."""
    if len(set(facets)) != len(facets):
        raise PolytopeError("duplicate facet names")
    index = {f: i for i, f in enumerate(facets)}
    verts = []
    for vt in vertex_triples:
        if len(vt) != 3 or len(set(vt)) != len(vt):
            raise PolytopeError(f"not simple: vertex {vt} does not lie in exactly 3 distinct facets")
        try:
            verts.append(tuple(sorted(index[f] for f in vt)))
        except KeyError as exc:
            raise PolytopeError(f"vertex {vt} names an unknown facet {exc}") from None
    if len(set(verts)) != len(verts):
        raise PolytopeError("duplicate vertex")
    incident: dict[tuple[int, int], list[int]] = {}
    for vi, (a, b, c) in enumerate(verts):
        for pair in ((a, b), (a, c), (b, c)):
            incident.setdefault(pair, []).append(vi)
    edges = sorted(incident)
    for e in edges:
        if len(incident[e]) != 2:
            raise PolytopeError(
                f"edge {facets[e[0]]}|{facets[e[1]]} has {len(incident[e])} endpoint vertices, expected 2")
    n_f, n_e, n_v = len(facets), len(edges), len(verts)
    if n_f - n_e + n_v != 2:
        raise PolytopeError(f"Euler relation fails: {n_f} - {n_e} + {n_v} != 2")
    lat = FaceLattice(name, tuple(facets), tuple(verts), tuple(edges),
                      tuple(tuple(incident[e]) for e in edges))
    for f in range(n_f):
        _check_polygon(lat, f)
    return lat


def _check_polygon(lat: FaceLattice, f: int) -> None:
    """The edges of a facet must close up into a single cycle."""
    edges = lat.facet_edges(f)
    if len(edges) < 3:
        raise PolytopeError(f"facet {lat.facets[f]} has fewer than 3 edges")
    adj: dict[int, list[int]] = {}
    for e in edges:
        a, b = lat.edge_vertices[e]
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    if any(len(nb) != 2 for nb in adj.values()):
        raise PolytopeError(f"facet {lat.facets[f]} is not a polygon")
    start = next(iter(adj))
    seen, prev, cur = {start}, None, start
    while True:
        nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
        if nxt == start:
            break
        seen.add(nxt)
        prev, cur = cur, nxt
    if len(seen) != len(adj):
        raise PolytopeError(f"facet {lat.facets[f]} boundary is disconnected")


def load_polytope(source: str | Path | dict) -> FaceLattice:
    if isinstance(source, dict):
        data = source
    else:
        data = json.loads(Path(source).read_text())
    if "facets" not in data or "vertices" not in data:
        raise PolytopeError("polytope file needs 'facets' and 'vertices'")
    return build_lattice(data.get("name", "polytope"), list(data["facets"]), data["vertices"])


def shipped_path(name: str) -> Path:
    return Path(str(resources.files("cobinv") / "data" / name))


def dodecahedron() -> FaceLattice:
    return load_polytope(shipped_path("dodecahedron.json"))


def cube() -> FaceLattice:
    return load_polytope(shipped_path("cube.json"))


def automorphisms(lat: FaceLattice) -> list[tuple[int, ...]]:
    """Facet permutations mapping the vertex set to itself, found by backtracking."""
    n = len(lat.facets)
    nbrs = [set(lat.neighbors(f)) for f in range(n)]
    vset = set(lat.vertices)
    order = _bfs_order(lat)
    out = []

    def extend(pos: int, image: dict[int, int], used: set[int]):
        if pos == n:
            perm = tuple(image[f] for f in range(n))
            if all(tuple(sorted(perm[x] for x in v)) in vset for v in lat.vertices):
                out.append(perm)
            return
        f = order[pos]
        for cand in range(n):
            if cand in used or len(nbrs[cand]) != len(nbrs[f]):
                continue
            ok = True
            for h in nbrs[f]:
                if h in image and image[h] not in nbrs[cand]:
                    ok = False
                    break
            if not ok:
                continue
            for h, img in image.items():
                if h not in nbrs[f] and img in nbrs[cand]:
                    ok = False
                    break
            if ok:
                image[f] = cand
                used.add(cand)
                extend(pos + 1, image, used)
                del image[f]
                used.discard(cand)

    extend(0, {}, set())
    return sorted(out)


def _bfs_order(lat: FaceLattice) -> list[int]:
    order, seen = [0], {0}
    i = 0
    while i < len(order):
        for h in lat.neighbors(order[i]):
            if h not in seen:
                seen.add(h)
                order.append(h)
        i += 1
    for f in range(len(lat.facets)):
        if f not in seen:
            order.append(f)
    return order


def facet_orbits(lat: FaceLattice, autos: list[tuple[int, ...]]) -> list[list[int]]:
    seen: set[int] = set()
    orbits = []
    for f in range(len(lat.facets)):
        if f in seen:
            continue
        orb = sorted({p[f] for p in autos})
        seen.update(orb)
        orbits.append(orb)
    return orbits
