"""The cube-of-grids laminar family where no three vertices hit a neighbourhood.

``G'`` is the surface lattice of the cube ``{0..6}^3`` (six ``7 x 7`` grids
glued along their borders).  ``G`` is its medial graph: one vertex per edge
of ``G'``, and for every lattice vertex ``v`` a cycle ``C_v`` through the
midpoints of its edges.  Two of these cycles meet in exactly one vertex when
their lattice vertices are adjacent.  Every cube corner gets, on each of its
three grids, an extra two-sided cycle that touches the corner cycle at a
private subdivision vertex and walks around the adjacent ``2 x 2`` block.
"""

from __future__ import annotations

from itertools import product

from .io import Instance
from .planar import _trace_walks, build_embedding

__all__ = ["cube_7x7_ecl", "SIZE"]

SIZE = 7
_M = SIZE - 1

Point = tuple[int, int, int]


def _lattice() -> tuple[list[Point], list[tuple[int, int]]]:
    pts = sorted(p for p in product(range(SIZE), repeat=3) if any(c in (0, _M) for c in p))
    index = {p: i for i, p in enumerate(pts)}
    edges = set()
    for p in pts:
        for ax in range(3):
            q = list(p)
            q[ax] += 1
            qt = tuple(q)
            if qt not in index:
                continue
            # both ends on a common face plane
            if any(p[b] == qt[b] and p[b] in (0, _M) for b in range(3) if b != ax):
                edges.add((index[p], index[qt]))
    return pts, sorted(edges)


def _faces() -> list[tuple[int, int]]:
    return [(ax, s) for ax in range(3) for s in (0, _M)]


def _to3d(face: tuple[int, int], i: int, j: int) -> Point:
    ax, s = face
    others = [b for b in range(3) if b != ax]
    p = [0, 0, 0]
    p[ax] = s
    p[others[0]] = i
    p[others[1]] = j
    return tuple(p)  # type: ignore[return-value]


# Red path around the 2x2 block next to local corner (0, 0).  Steps are
# (medial vertex as a lattice edge, square it is reached through); ``None``
# is the subdivision vertex on the corner cycle.  A flag marks squares where
# the path bends and needs an extra vertex.
_RED = [
    (((1, 0), (1, 1)), (0, 0), False),
    (((2, 0), (2, 1)), (1, 0), False),
    (((2, 1), (3, 1)), (2, 0), True),
    (((2, 2), (3, 2)), (2, 1), False),
    (((2, 2), (2, 3)), (2, 2), True),
    (((1, 2), (1, 3)), (1, 2), False),
    (((0, 2), (1, 2)), (0, 2), True),
    (((0, 1), (1, 1)), (0, 1), False),
    (None, (0, 0), False),
]


class _Builder:
    """Mutable rotation system with chord insertion inside faces."""

    def __init__(self, n: int, edges: list[tuple[int, int]], rot: dict[int, list[int]]) -> None:
        self.n = n
        self.edges = edges
        self.rot = rot

    def new_vertex(self) -> int:
        v = self.n
        self.n += 1
        self.rot[v] = []
        return v

    def subdivide(self, e: int) -> int:
        u, v = self.edges[e]
        s = self.new_vertex()
        k = len(self.edges)
        self.edges[e] = (u, s)
        self.edges.append((s, v))
        rv = self.rot[v]
        rv[rv.index(2 * e + 1)] = 2 * k + 1
        self.rot[s] = [2 * e + 1, 2 * k]
        return s

    def _walks(self) -> list[tuple[int, ...]]:
        darts = [d for r in self.rot.values() for d in r]
        return _trace_walks(self.rot, darts)

    def _tail(self, d: int) -> int:
        return self.edges[d >> 1][d & 1]

    def add_path(self, a: int, b: int, square: frozenset[int], inner: int, base: int) -> list[int]:
        """Join ``a`` and ``b`` through the face that contains both and lies inside ``square``.

        Vertices numbered ``base`` or higher were added after the medial graph.
        """
        walk = None
        for w in self._walks():
            vs = {self._tail(d) for d in w}
            if a in vs and b in vs and all(x in square or x >= base for x in vs):
                walk = w
                break
        if walk is None:
            raise RuntimeError("no face holds both path ends")
        out_a = next(d for d in walk if self._tail(d) == a)
        out_b = next(d for d in walk if self._tail(d) == b)
        chain = [a] + [self.new_vertex() for _ in range(inner)] + [b]
        ids = []
        for x, y in zip(chain, chain[1:]):
            ids.append(len(self.edges))
            self.edges.append((x, y))
        first, last = ids[0], ids[-1]
        ra = self.rot[a]
        ra.insert(ra.index(out_a) + 1, 2 * first)
        rb = self.rot[b]
        rb.insert(rb.index(out_b) + 1, 2 * last + 1)
        for t in range(inner):
            self.rot[chain[t + 1]] = [2 * ids[t] + 1, 2 * ids[t + 1]]
        return ids


def cube_7x7_ecl() -> Instance:
    """Medial graph of the cube lattice plus 24 corner cycles.

    ``meta["blue"]``/``meta["red"]`` hold the edge lists of the one-sided
    lattice cycles and of the two-sided corner cycles; ``meta["corners"]``
    lists the blue indices of the eight cube corners.
    """
    pts, lat_edges = _lattice()
    index = {p: i for i, p in enumerate(pts)}
    lat = build_embedding(len(pts), lat_edges)
    lid = {frozenset(e): i for i, e in enumerate(lat_edges)}

    # medial edges: one per consecutive pair of lattice edges around a vertex
    medial: list[tuple[int, int]] = []
    k_at: dict[tuple[int, int], int] = {}
    blue: dict[int, list[int]] = {}
    for v in sorted(lat.vertices):
        r = lat.rotation[v]
        blue[v] = []
        for i, d in enumerate(r):
            nd = r[(i + 1) % len(r)]
            k_at[(v, d)] = len(medial)
            blue[v].append(len(medial))
            medial.append((d >> 1, nd >> 1))

    def prev_dart(v: int, d: int) -> int:
        r = lat.rotation[v]
        return r[(r.index(d) - 1) % len(r)]

    rot: dict[int, list[int]] = {}
    for e, (a, b) in enumerate(lat_edges):
        da, db = 2 * e, 2 * e + 1
        rot[e] = [
            2 * k_at[(b, prev_dart(b, db))] + 1,
            2 * k_at[(a, da)],
            2 * k_at[(a, prev_dart(a, da))] + 1,
            2 * k_at[(b, db)],
        ]

    bld = _Builder(len(lat_edges), list(medial), rot)
    red: list[list[int]] = []
    corners = [index[p] for p in pts if all(c in (0, _M) for c in p)]
    for face in _faces():
        for fx, fy in ((False, False), (True, False), (False, True), (True, True)):

            def loc(i: int, j: int) -> int:
                return index[_to3d(face, _M - i if fx else i, _M - j if fy else j)]

            def mid(p: tuple[int, int], q: tuple[int, int]) -> int:
                return lid[frozenset((loc(*p), loc(*q)))]

            def square(i: int, j: int) -> frozenset[int]:
                return frozenset(mid(*pq) for pq in (((i, j), (i + 1, j)), ((i + 1, j), (i + 1, j + 1)),
                                                     ((i, j + 1), (i + 1, j + 1)), ((i, j), (i, j + 1))))

            # corner cycle edge facing square (0, 0): between the corner's two edges in this grid
            m1, m2 = mid((0, 0), (1, 0)), mid((0, 0), (0, 1))
            corner = loc(0, 0)
            k = next(x for x in blue[corner] if {bld.edges[x][0], bld.edges[x][1]} == {m1, m2})
            p = bld.subdivide(k)
            blue[corner].append(len(bld.edges) - 1)
            cyc: list[int] = []
            cur = p
            for step, sq, bend in _RED:
                nxt = p if step is None else mid(*step)
                cyc += bld.add_path(cur, nxt, square(*sq), 1 if bend else 0, len(lat_edges))
                cur = nxt
            red.append(sorted(cyc))

    g = build_embedding(bld.n, bld.edges, bld.rot)
    blue_lists = [sorted(blue[v]) for v in sorted(blue)]
    meta = {
        "kind": "cube_7x7_ecl",
        "blue": blue_lists,
        "red": red,
        "corners": sorted(corners),
        "lattice_vertices": len(pts),
        "lattice_edges": len(lat_edges),
    }
    return Instance(g, name="cube_7x7_ecl", meta=meta)
