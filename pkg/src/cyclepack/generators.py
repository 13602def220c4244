"""Instance generators: grids, extremal constructions and seeded random planar graphs."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping, Sequence

import networkx as nx
import numpy as np
from scipy.spatial import Delaunay

from .errors import BadParams
from .io import Instance
from .planar import EmbeddedGraph, build_embedding

__all__ = [
    "generate",
    "geometric_rotation",
    "grid",
    "grid_gap",
    "random_demands",
    "random_planar",
    "truncated_dodecahedron",
]


def geometric_rotation(
    positions: Mapping[int, tuple[float, float]], edges: Sequence[tuple[int, int]]
) -> dict[int, list[int]]:
    """Counter-clockwise rotation of a straight-line drawing."""
    rot: dict[int, list[tuple[float, int]]] = {v: [] for v in positions}
    for e, (u, v) in enumerate(edges):
        (x1, y1), (x2, y2) = positions[u], positions[v]
        rot[u].append((math.atan2(y2 - y1, x2 - x1), 2 * e))
        rot[v].append((math.atan2(y1 - y2, x1 - x2), 2 * e + 1))
    return {v: [d for _, d in sorted(lst)] for v, lst in rot.items()}


def _from_drawing(
    positions: Mapping[int, tuple[float, float]],
    edges: Sequence[tuple[int, int]],
    *,
    directed: bool = False,
    infinite_face: int | None = None,
) -> EmbeddedGraph:
    rot = geometric_rotation(positions, edges)
    return build_embedding(
        len(positions), edges, rot, directed=directed, infinite_face=infinite_face, positions=positions
    )


def grid(rows: int, cols: int, *, name: str | None = None) -> Instance:
    """``rows x cols`` grid of vertices; vertex ``r*cols + c``."""
    if rows < 1 or cols < 1:
        raise BadParams("grid needs positive dimensions")
    pos = {r * cols + c: (float(c), float(-r)) for r in range(rows) for c in range(cols)}
    edges = []
    for r in range(rows):
        for c in range(cols - 1):
            edges.append((r * cols + c, r * cols + c + 1))
    for r in range(rows - 1):
        for c in range(cols):
            edges.append((r * cols + c, (r + 1) * cols + c))
    g = _from_drawing(pos, edges)
    g = _outer_face_by_geometry(g)
    return Instance(g, name=name or f"grid_{rows}x{cols}", meta={"kind": "grid", "rows": rows, "cols": cols})


def _outer_face_by_geometry(g: EmbeddedGraph) -> EmbeddedGraph:
    """Re-select the infinite face as the region containing the leftmost-lowest vertex's outside."""
    if not g.positions or not g.edges:
        return g
    # the dart leaving the lowest-leftmost vertex with the largest angle has the outer face on its left
    v0 = min(g.vertices, key=lambda v: (g.positions[v][0], g.positions[v][1]) if g.rotation[v] else (math.inf, 0))
    rot = g.rotation[v0]
    # leftmost vertex: the outer region lies to the west; it is the face left of the dart
    # that comes just before the westward direction in ccw order
    px, py = g.positions[v0]

    def ang(d: int) -> float:
        x, y = g.positions[g.head(d)]
        return math.atan2(y - py, x - px)

    darts = sorted(rot, key=ang)
    d = darts[-1]
    walk_index = next(i for i, w in enumerate(g.walks) if d in w)
    edges = [g.edges[e] for e in sorted(g.edges)]
    return build_embedding(
        len(g.vertices),
        edges,
        {v: list(r) for v, r in g.rotation.items()},
        directed=g.directed,
        infinite_face=walk_index,
        positions=g.positions,
    )


def grid_gap(k: int) -> Instance:
    """Grid with ``k`` columns and ``2k`` rows; demands are the vertical edges between the middle rows."""
    if k < 2:
        raise BadParams("grid_gap needs k >= 2")
    inst = grid(2 * k, k, name=f"grid_gap_{k}")
    g = inst.graph
    top, bottom = k - 1, k
    demand = [e for e, (u, v) in g.edges.items() if {u // k, v // k} == {top, bottom}]
    inst.demand_edges = sorted(demand)
    inst.meta = {"kind": "grid_gap", "k": k, "middle_vertices": sorted(v for v in g.vertices if v // k in (top, bottom))}
    return inst


def truncated_dodecahedron() -> Instance:
    """The truncated dodecahedron with a triangle as infinite face.

    Built by truncating the dodecahedron: vertex ``(v, e)`` sits on original
    vertex ``v`` next to edge ``e``.  The 12 decagons are recorded in ``meta``.
    """
    base = nx.dodecahedral_graph()
    base_edges = sorted(tuple(sorted(e)) for e in base.edges())
    eid = {e: i for i, e in enumerate(base_edges)}
    label: dict[tuple[int, int], int] = {}
    for v in sorted(base.nodes()):
        for w in sorted(base.neighbors(v)):
            label[(v, eid[tuple(sorted((v, w)))])] = len(label)
    edges: list[tuple[int, int]] = []
    for (a, b), i in eid.items():
        edges.append((label[(a, i)], label[(b, i)]))
    for v in sorted(base.nodes()):
        corners = sorted(label[(v, eid[tuple(sorted((v, w)))])] for w in base.neighbors(v))
        for x in range(3):
            for y in range(x + 1, 3):
                edges.append((corners[x], corners[y]))
    g = build_embedding(len(label), edges)
    tri = next(i for i, w in enumerate(g.walks) if len(w) == 3)
    g = build_embedding(len(label), edges, {v: list(r) for v, r in g.rotation.items()}, infinite_face=tri)
    decagons = [sorted(g.face_edges(f)) for f in range(g.num_faces) if len(g.face_edges(f)) == 10]
    return Instance(g, name="truncated_dodecahedron", meta={"kind": "truncated_dodecahedron", "decagons": decagons})


def _rng(seed: int | None) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_planar(
    n: int,
    seed: int | None = 0,
    *,
    keep: float = 0.7,
    directed: bool = False,
    parallel: float = 0.0,
) -> Instance:
    """Seeded random planar graph: Delaunay triangulation of random points, thinned.

    Each triangulation edge survives with probability ``keep``.  With
    ``parallel > 0`` some edges get a second copy drawn as a thin lens (for
    directed graphs the copy points the other way).  Directed graphs orient
    every other edge at random.
    """
    if n < 1:
        raise BadParams("random_planar needs n >= 1")
    if not 0 < keep <= 1:
        raise BadParams("keep must lie in (0, 1]")
    rng = _rng(seed)
    pts = rng.random((n, 2))
    pos = {i: (float(pts[i, 0]), float(pts[i, 1])) for i in range(n)}
    base: set[tuple[int, int]] = set()
    if n == 2:
        base.add((0, 1))
    elif n >= 3:
        tri = Delaunay(pts)
        for simplex in tri.simplices:
            a, b, c = (int(x) for x in simplex)
            for u, v in ((a, b), (b, c), (a, c)):
                base.add((min(u, v), max(u, v)))
    edges: list[tuple[int, int]] = []
    for u, v in sorted(base):
        if rng.random() < keep:
            edges.append((v, u) if directed and rng.random() < 0.5 else (u, v))
    rot = geometric_rotation(pos, edges)
    if parallel > 0:
        extra = []
        for e, (u, v) in enumerate(list(edges)):
            if rng.random() < parallel:
                extra.append((e, (v, u) if directed else (u, v)))
        for e, (a, b) in extra:
            new = len(edges)
            edges.append((a, b))
            u, v = edges[e]
            # the copy bends to the left of u->v: ccw after e at u, ccw before e at v
            du, dv = 2 * e, 2 * e + 1
            nu = 2 * new if a == u else 2 * new + 1
            nv = nu ^ 1
            ru = rot[u]
            ru.insert(ru.index(du) + 1, nu)
            rv = rot[v]
            rv.insert(rv.index(dv), nv)
    g = build_embedding(n, edges, rot, directed=directed, positions=pos)
    return Instance(g, name=f"random_planar_{n}_{seed}", meta={"kind": "random_planar", "n": n, "seed": seed})


def random_demands(m: int, seed: int | None = 0, *, n: int | None = None, keep: float = 0.8) -> Instance:
    """Fully planar demand instance: ``m`` edges of a random planar graph become demands.

    Demand weights are random rationals ``p/q`` with ``1 <= p <= 6``, ``1 <= q <= 3``.
    """
    if m < 1:
        raise BadParams("random_demands needs m >= 1")
    rng = _rng(seed)
    size = n if n is not None else int(rng.integers(max(4, m + 2), max(5, m + 2) + 8))
    inst = random_planar(size, int(rng.integers(0, 2**31)), keep=keep)
    g = inst.graph
    if len(g.edges) < m:
        raise BadParams("not enough edges for the requested demands")
    demand = sorted(int(x) for x in rng.choice(sorted(g.edges), size=m, replace=False))
    weights = {d: Fraction(int(rng.integers(1, 7)), int(rng.integers(1, 4))) for d in demand}
    inst.demand_edges = demand
    inst.demand_weights = weights
    inst.name = f"random_demands_{m}_{seed}"
    inst.meta = {"kind": "random_demands", "m": m, "seed": seed}
    return inst


def generate(kind: str, params: Sequence[int] = (), seed: int | None = 0) -> Instance:
    """Dispatch by generator name (used by the CLI)."""
    from .cube import cube_7x7_ecl

    if kind == "grid":
        rows, cols = (list(params) + [4, 4])[:2] if params else (4, 4)
        return grid(int(rows), int(cols))
    if kind == "grid_gap":
        return grid_gap(int(params[0]) if params else 4)
    if kind == "truncated_dodecahedron":
        return truncated_dodecahedron()
    if kind == "cube_7x7_ecl":
        return cube_7x7_ecl()
    if kind == "random_planar":
        return random_planar(int(params[0]) if params else 12, seed)
    if kind == "random_demands":
        return random_demands(int(params[0]) if params else 3, seed)
    raise BadParams(f"unknown generator {kind!r}")
