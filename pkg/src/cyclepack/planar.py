"""Combinatorial planar embeddings, cycles, interiors and laminar forests.

An :class:`EmbeddedGraph` stores a rotation system over *darts*.  Edge ``e``
with endpoints ``(u, v)`` owns dart ``2*e`` (leaving ``u``) and dart
``2*e + 1`` (leaving ``v``).  The rotation at a vertex lists its outgoing
darts in counter-clockwise order, and the face to the left of dart ``d`` is
traced by ``next(d) = ccw_prev(rev(d))`` at the head of ``d``.

Faces are *regions*: a face may be bounded by several walks when the graph
is disconnected.  One face is designated infinite; the interior of a cycle is
the set of faces separated from it by the cycle.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .errors import InvalidRotation, NonPlanar, NotACycle, NotLaminar

__all__ = [
    "Cycle",
    "CrossingRelation",
    "EmbeddedGraph",
    "LaminarForest",
    "build_embedding",
    "crossing_relation",
    "cycle_from_edges",
    "interior_signature",
    "laminar_forest",
    "outerplanarity_levels",
]


# ---------------------------------------------------------------------------
# Cycles
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Cycle:
    """A simple cycle given by its edges in traversal order.

    ``vertices[i]`` is the vertex at which ``edges[i]`` is entered, so the
    walk is ``vertices[0] -edges[0]-> vertices[1] -> ... -> vertices[0]``.
    Equality and hashing only look at the edge set, which determines a simple
    cycle uniquely.
    """

    edges: tuple[int, ...]
    vertices: tuple[int, ...]

    @cached_property
    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edges)

    @cached_property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @cached_property
    def key(self) -> tuple[int, ...]:
        """Sorted edge ids; the canonical ordering key of a cycle."""
        return tuple(sorted(self.edges))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cycle):
            return NotImplemented
        return self.edge_set == other.edge_set

    def __hash__(self) -> int:
        return hash(self.edge_set)

    def __len__(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        return f"Cycle(edges={self.key})"

    def arc(self, start: int, end: int) -> tuple[int, ...]:
        """Edges met when walking along the cycle from ``start`` to ``end``."""
        i = self.vertices.index(start)
        j = self.vertices.index(end)
        n = len(self.edges)
        out = []
        while i != j:
            out.append(self.edges[i])
            i = (i + 1) % n
        return tuple(out)

    def arc_vertices(self, start: int, end: int) -> tuple[int, ...]:
        """Vertices from ``start`` to ``end`` inclusive along the traversal."""
        i = self.vertices.index(start)
        j = self.vertices.index(end)
        n = len(self.vertices)
        out = [self.vertices[i]]
        while i != j:
            i = (i + 1) % n
            out.append(self.vertices[i])
        return tuple(out)

    def out_edge(self, v: int) -> int:
        """The edge leaving ``v`` in traversal direction."""
        return self.edges[self.vertices.index(v)]

    def reversed(self) -> Cycle:
        n = len(self.edges)
        verts = tuple(self.vertices[(-i) % n] for i in range(n))
        edges = tuple(self.edges[(-i - 1) % n] for i in range(n))
        return Cycle(edges, verts)


def cycle_from_edges(
    edge_map: Mapping[int, tuple[int, int]], edge_ids: Iterable[int]
) -> Cycle:
    """Order an edge set into a :class:`Cycle`, starting from its smallest edge.

    The walk leaves the tail of the smallest edge along that edge.  Raises
    :class:`NotACycle` unless the edges form one simple cycle.
    """
    ids = sorted(set(edge_ids))
    if len(ids) < 2:
        raise NotACycle(f"{len(ids)} edge(s) cannot form a cycle")
    inc: dict[int, list[int]] = {}
    for e in ids:
        if e not in edge_map:
            raise NotACycle(f"edge {e} is not in the graph")
        u, v = edge_map[e]
        if u == v:
            raise NotACycle(f"edge {e} is a loop")
        inc.setdefault(u, []).append(e)
        inc.setdefault(v, []).append(e)
    if any(len(es) != 2 for es in inc.values()):
        raise NotACycle("some vertex does not have degree two")
    first = ids[0]
    start, cur = edge_map[first]
    verts = [start]
    edges = [first]
    prev = first
    while cur != start:
        verts.append(cur)
        a, b = inc[cur]
        nxt = b if a == prev else a
        edges.append(nxt)
        x, y = edge_map[nxt]
        cur = y if x == cur else x
        prev = nxt
    if len(edges) != len(ids):
        raise NotACycle("edge set is a disjoint union of several cycles")
    return Cycle(tuple(edges), tuple(verts))


def is_directed_cycle(edge_map: Mapping[int, tuple[int, int]], cycle: Cycle) -> bool:
    """Whether all edges point the same way around the cycle."""
    n = len(cycle.edges)
    fwd = all(
        edge_map[e] == (cycle.vertices[i], cycle.vertices[(i + 1) % n])
        for i, e in enumerate(cycle.edges)
    )
    if fwd:
        return True
    return all(
        edge_map[e] == (cycle.vertices[(i + 1) % n], cycle.vertices[i])
        for i, e in enumerate(cycle.edges)
    )


def directed_orientation(edge_map: Mapping[int, tuple[int, int]], cycle: Cycle) -> Cycle:
    """Return the traversal of a directed cycle that follows edge directions."""
    e0 = cycle.edges[0]
    if edge_map[e0][0] == cycle.vertices[0]:
        return cycle
    return cycle.reversed()


# ---------------------------------------------------------------------------
# Embedded graphs
# ---------------------------------------------------------------------------


class _UnionFind:
    def __init__(self, items: Iterable[int]) -> None:
        self.parent = {x: x for x in items}

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


def _trace_walks(rotation: Mapping[int, Sequence[int]], darts: Iterable[int]) -> list[tuple[int, ...]]:
    pos: dict[int, tuple[int, int]] = {}
    for v, rot in rotation.items():
        for i, d in enumerate(rot):
            pos[d] = (v, i)
    seen: set[int] = set()
    walks = []
    for d0 in sorted(darts):
        if d0 in seen:
            continue
        walk = []
        d = d0
        while d not in seen:
            seen.add(d)
            walk.append(d)
            v, i = pos[d ^ 1]
            rot = rotation[v]
            d = rot[(i - 1) % len(rot)]
        walks.append(tuple(walk))
    return walks


class EmbeddedGraph:
    """Planar graph with a fixed rotation system and a designated infinite face.

    Instances are immutable.  Build them with :func:`build_embedding`; derive
    subgraphs with :meth:`restrict`, :meth:`delete_vertices` or
    :meth:`delete_edges`, which inherit the embedding and track how faces
    merge so that the infinite face stays the region containing infinity.
    """

    def __init__(
        self,
        vertices: Iterable[int],
        edges: Mapping[int, tuple[int, int]],
        rotation: Mapping[int, Sequence[int]],
        walks: Sequence[tuple[int, ...]],
        walk_groups: Sequence[Sequence[int]],
        infinite_group: int,
        isolated_group: Mapping[int, int],
        *,
        directed: bool = False,
        positions: Mapping[int, tuple[float, float]] | None = None,
    ) -> None:
        self.vertices: frozenset[int] = frozenset(vertices)
        self.edges: dict[int, tuple[int, int]] = dict(sorted(edges.items()))
        self.directed = directed
        self.rotation: dict[int, tuple[int, ...]] = {
            v: tuple(rotation.get(v, ())) for v in sorted(self.vertices)
        }
        self.positions = dict(positions) if positions else None
        self.walks: tuple[tuple[int, ...], ...] = tuple(walks)
        # order faces by smallest dart so numbering is deterministic
        keyed = []
        for gi, group in enumerate(walk_groups):
            darts = [d for w in group for d in self.walks[w]]
            keyed.append((min(darts) if darts else -1, gi))
        keyed.sort()
        remap = {gi: fi for fi, (_, gi) in enumerate(keyed)}
        self.faces: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(walk_groups[gi])) for _, gi in keyed
        )
        self.infinite_face: int = remap[infinite_group]
        self.face_of_dart: dict[int, int] = {}
        for fi, group in enumerate(self.faces):
            for w in group:
                for d in self.walks[w]:
                    self.face_of_dart[d] = fi
        self.isolated_face: dict[int, int] = {v: remap[g] for v, g in isolated_group.items()}
        self._interior_cache: dict[frozenset[int], frozenset[int]] = {}

    # -- basic accessors ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    @property
    def finite_faces(self) -> list[int]:
        return [f for f in range(len(self.faces)) if f != self.infinite_face]

    def tail(self, dart: int) -> int:
        u, v = self.edges[dart >> 1]
        return v if dart & 1 else u

    def head(self, dart: int) -> int:
        u, v = self.edges[dart >> 1]
        return u if dart & 1 else v

    def endpoints(self, e: int) -> tuple[int, int]:
        return self.edges[e]

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    def degree(self, v: int) -> int:
        return len(self.rotation.get(v, ()))

    @cached_property
    def incident(self) -> dict[int, tuple[int, ...]]:
        """Edge ids at each vertex, in rotation order."""
        return {v: tuple(d >> 1 for d in rot) for v, rot in self.rotation.items()}

    def edge_faces(self, e: int) -> tuple[int, int]:
        """Faces to the left of dart ``2e`` and of dart ``2e+1``."""
        return self.face_of_dart[2 * e], self.face_of_dart[2 * e + 1]

    def face_vertices(self, f: int) -> frozenset[int]:
        out = {self.tail(d) for w in self.faces[f] for d in self.walks[w]}
        out.update(v for v, g in self.isolated_face.items() if g == f)
        return frozenset(out)

    def face_edges(self, f: int) -> frozenset[int]:
        return frozenset(d >> 1 for w in self.faces[f] for d in self.walks[w])

    def face_boundary_cycle(self, f: int) -> Cycle | None:
        """The face boundary as a :class:`Cycle` if it is one simple cycle."""
        group = self.faces[f]
        if len(group) != 1:
            return None
        walk = self.walks[group[0]]
        verts = tuple(self.tail(d) for d in walk)
        edges = tuple(d >> 1 for d in walk)
        if len(set(verts)) != len(verts) or len(set(edges)) != len(edges) or len(edges) < 2:
            return None
        return Cycle(edges, verts)

    def components(self) -> list[frozenset[int]]:
        uf = _UnionFind(self.vertices)
        for u, v in self.edges.values():
            uf.union(u, v)
        groups: dict[int, set[int]] = {}
        for v in self.vertices:
            groups.setdefault(uf.find(v), set()).add(v)
        return sorted((frozenset(g) for g in groups.values()), key=min)

    def as_networkx(self) -> nx.MultiGraph:
        g: nx.MultiGraph = nx.MultiDiGraph() if self.directed else nx.MultiGraph()
        g.add_nodes_from(sorted(self.vertices))
        for e, (u, v) in self.edges.items():
            g.add_edge(u, v, key=e)
        return g

    def check_cycle(self, cycle: Cycle) -> None:
        """Raise :class:`NotACycle` if ``cycle`` is not a simple cycle of this graph."""
        ref = cycle_from_edges(self.edges, cycle.edges)
        if ref.vertex_set != cycle.vertex_set:
            raise NotACycle("vertex list does not match the edges")

    def cycle(self, edge_ids: Iterable[int]) -> Cycle:
        return cycle_from_edges(self.edges, edge_ids)

    # -- interiors ---------------------------------------------------------

    def interior(self, cycle: Cycle | Iterable[int]) -> frozenset[int]:
        """Faces on the side of the cycle that does not contain the infinite face."""
        es = cycle.edge_set if isinstance(cycle, Cycle) else frozenset(cycle)
        hit = self._interior_cache.get(es)
        if hit is not None:
            return hit
        if not isinstance(cycle, Cycle):
            cycle_from_edges(self.edges, es)
        elif not es <= self.edges.keys():
            raise NotACycle("cycle uses edges outside the graph")
        adj = self._dual_adjacency
        reached = {self.infinite_face}
        queue = deque(reached)
        while queue:
            f = queue.popleft()
            for g, e in adj[f]:
                if g not in reached and e not in es:
                    reached.add(g)
                    queue.append(g)
        result = frozenset(f for f in range(len(self.faces)) if f not in reached)
        self._interior_cache[es] = result
        return result

    @cached_property
    def _dual_adjacency(self) -> list[list[tuple[int, int]]]:
        adj: list[list[tuple[int, int]]] = [[] for _ in self.faces]
        for e in self.edges:
            a, b = self.edge_faces(e)
            if a != b:
                adj[a].append((b, e))
                adj[b].append((a, e))
        return adj

    def strictly_inside_edge(self, e: int, interior: frozenset[int]) -> bool:
        a, b = self.edge_faces(e)
        return a in interior and b in interior

    def all_faces(self) -> frozenset[int]:
        return frozenset(range(len(self.faces)))

    # -- derived subgraphs -------------------------------------------------

    def restrict(self, keep_edges: Iterable[int], keep_vertices: Iterable[int] | None = None) -> EmbeddedGraph:
        """Subgraph with the inherited embedding (delete-and-inherit)."""
        verts = set(self.vertices if keep_vertices is None else keep_vertices) & self.vertices
        kept = {
            e: uv
            for e in keep_edges
            if e in self.edges and (uv := self.edges[e])[0] in verts and uv[1] in verts
        }
        rotation = {v: tuple(d for d in self.rotation.get(v, ()) if (d >> 1) in kept) for v in verts}
        darts = [d for rot in rotation.values() for d in rot]
        walks = _trace_walks(rotation, darts)
        uf = _UnionFind(range(len(self.faces)))
        for e in self.edges:
            if e not in kept:
                a, b = self.edge_faces(e)
                uf.union(a, b)
        cls_groups: dict[int, list[int]] = {}
        for wi, walk in enumerate(walks):
            cls_groups.setdefault(uf.find(self.face_of_dart[walk[0]]), []).append(wi)
        inf_cls = uf.find(self.infinite_face)
        if not walks:
            groups: list[list[int]] = [[]]
            order = [inf_cls]
        else:
            order = sorted(cls_groups)
            groups = [cls_groups[c] for c in order]
        index = {c: i for i, c in enumerate(order)}
        isolated = {}
        for v in verts:
            if rotation[v]:
                continue
            if self.rotation.get(v):
                c = uf.find(self.face_of_dart[self.rotation[v][0]])
            else:
                c = uf.find(self.isolated_face[v])
            isolated[v] = index.get(c, index[inf_cls] if inf_cls in index else 0)
        inf_index = index.get(inf_cls, 0)
        return EmbeddedGraph(
            verts,
            kept,
            rotation,
            walks,
            groups,
            inf_index,
            isolated,
            directed=self.directed,
            positions={v: p for v, p in self.positions.items() if v in verts} if self.positions else None,
        )

    def delete_vertices(self, vs: Iterable[int]) -> EmbeddedGraph:
        drop = set(vs)
        return self.restrict(self.edges.keys(), self.vertices - drop)

    def delete_edges(self, es: Iterable[int]) -> EmbeddedGraph:
        drop = set(es)
        return self.restrict((e for e in self.edges if e not in drop))

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        return f"EmbeddedGraph({kind}, n={self.n}, m={len(self.edges)}, faces={len(self.faces)})"


def build_embedding(
    n: int | Iterable[int],
    edges: Sequence[tuple[int, int]] | Mapping[int, tuple[int, int]],
    rotation: Mapping[int, Sequence[int]] | Sequence[Sequence[int]] | None = None,
    *,
    directed: bool = False,
    infinite_face: int | None = None,
    positions: Mapping[int, tuple[float, float]] | None = None,
) -> EmbeddedGraph:
    """Build an :class:`EmbeddedGraph`.

    ``n`` is a vertex count (vertices ``0..n-1``) or an explicit vertex set.
    ``rotation`` lists, per vertex, outgoing dart ids in counter-clockwise
    order; when omitted a planar embedding is computed with networkx.  The
    infinite face defaults to a face of maximum boundary length.  Components
    are placed side by side, so the outer walks of all components together
    bound the infinite face.  ``infinite_face`` indexes the face walks ordered
    by smallest dart.
    """
    verts = set(range(n)) if isinstance(n, int) else set(n)
    edge_map = dict(edges) if isinstance(edges, Mapping) else dict(enumerate(edges))
    edge_map = {int(e): (int(u), int(v)) for e, (u, v) in edge_map.items()}
    for e, (u, v) in edge_map.items():
        if u == v:
            raise InvalidRotation(f"edge {e} is a self-loop")
        if u not in verts or v not in verts:
            raise InvalidRotation(f"edge {e} has an endpoint outside the vertex set")
    if rotation is None:
        rot = _networkx_rotation(verts, edge_map)
    else:
        rot = dict(rotation) if isinstance(rotation, Mapping) else dict(enumerate(rotation))
        rot = {int(v): tuple(int(d) for d in ds) for v, ds in rot.items()}
        _validate_rotation(verts, edge_map, rot)
    rot = {v: tuple(rot.get(v, ())) for v in verts}
    darts = [d for ds in rot.values() for d in ds]
    walks = _trace_walks(rot, darts)

    # per-component Euler check
    uf = _UnionFind(verts)
    for u, v in edge_map.values():
        uf.union(u, v)
    comp_walks: dict[int, list[int]] = {}
    for wi, walk in enumerate(walks):
        comp_walks.setdefault(uf.find(edge_map[walk[0] >> 1][0]), []).append(wi)
    comp_v: dict[int, int] = {}
    comp_e: dict[int, int] = {}
    for v in verts:
        if rot[v]:
            comp_v[uf.find(v)] = comp_v.get(uf.find(v), 0) + 1
    for u, _ in edge_map.values():
        comp_e[uf.find(u)] = comp_e.get(uf.find(u), 0) + 1
    for c, ws in comp_walks.items():
        if comp_v[c] - comp_e[c] + len(ws) != 2:
            raise NonPlanar("rotation system violates Euler's formula (genus > 0)")

    if infinite_face is not None and not 0 <= infinite_face < len(walks):
        raise InvalidRotation(f"infinite_face {infinite_face} out of range")
    outer: list[int] = []
    for c, ws in sorted(comp_walks.items(), key=lambda kv: min(kv[1])):
        if infinite_face is not None and infinite_face in ws:
            outer.append(infinite_face)
        else:
            outer.append(max(ws, key=lambda w: (len(walks[w]), -w)))
    if not walks:
        groups: list[list[int]] = [[]]
        inf_group = 0
    else:
        outer_set = set(outer)
        groups = [sorted(outer_set)] + [[w] for w in range(len(walks)) if w not in outer_set]
        inf_group = 0
    isolated = {v: inf_group for v in verts if not rot[v]}
    return EmbeddedGraph(
        verts, edge_map, rot, walks, groups, inf_group, isolated, directed=directed, positions=positions
    )


def _validate_rotation(
    verts: set[int], edge_map: Mapping[int, tuple[int, int]], rot: Mapping[int, Sequence[int]]
) -> None:
    seen: set[int] = set()
    for v, ds in rot.items():
        if v not in verts:
            raise InvalidRotation(f"rotation given for unknown vertex {v}")
        for d in ds:
            e = d >> 1
            if e not in edge_map:
                raise InvalidRotation(f"dart {d} refers to unknown edge {e}")
            u, w = edge_map[e]
            tail = w if d & 1 else u
            if tail != v:
                raise InvalidRotation(f"dart {d} listed at {v} but leaves {tail}")
            if d in seen:
                raise InvalidRotation(f"dart {d} listed twice")
            seen.add(d)
    expected = {2 * e for e in edge_map} | {2 * e + 1 for e in edge_map}
    if seen != expected:
        raise InvalidRotation(f"{len(expected - seen)} edge ends missing from the rotation")


def _networkx_rotation(verts: set[int], edge_map: Mapping[int, tuple[int, int]]) -> dict[int, tuple[int, ...]]:
    """Compute a ccw rotation; each edge is subdivided so parallel edges survive."""
    g = nx.Graph()
    g.add_nodes_from(verts)
    for e, (u, v) in edge_map.items():
        mid = ("e", e)
        g.add_edge(u, mid)
        g.add_edge(mid, v)
    ok, emb = nx.check_planarity(g)
    if not ok:
        raise NonPlanar("graph is not planar")
    rot: dict[int, tuple[int, ...]] = {}
    for v in verts:
        if g.degree(v) == 0:
            rot[v] = ()
            continue
        cw = list(emb.neighbors_cw_order(v))
        darts = []
        for mid in reversed(cw):
            e = mid[1]
            u, _ = edge_map[e]
            darts.append(2 * e if u == v else 2 * e + 1)
        rot[v] = tuple(darts)
    return rot


def interior_signature(cycle: Cycle | Iterable[int], g: EmbeddedGraph) -> frozenset[int]:
    """Faces enclosed by ``cycle``: the side not containing the infinite face."""
    return g.interior(cycle)


# ---------------------------------------------------------------------------
# Crossing relation and laminar forests
# ---------------------------------------------------------------------------


class CrossingRelation(str, Enum):
    DISJOINT = "disjoint_interiors"
    C1_INSIDE_C2 = "c1_inside_c2"
    C2_INSIDE_C1 = "c2_inside_c1"
    CROSSING = "crossing"
    EQUAL = "equal"


def relation_of_sets(s1: frozenset[int], s2: frozenset[int]) -> CrossingRelation:
    if s1 == s2:
        return CrossingRelation.EQUAL
    if not (s1 & s2):
        return CrossingRelation.DISJOINT
    if s1 <= s2:
        return CrossingRelation.C1_INSIDE_C2
    if s2 <= s1:
        return CrossingRelation.C2_INSIDE_C1
    return CrossingRelation.CROSSING


def crossing_relation(c1: Cycle, c2: Cycle, g: EmbeddedGraph) -> CrossingRelation:
    """Classify two cycles by the set relation of their interior signatures."""
    return relation_of_sets(g.interior(c1), g.interior(c2))


def crosses(g: EmbeddedGraph, c1: Cycle, c2: Cycle) -> bool:
    return crossing_relation(c1, c2, g) is CrossingRelation.CROSSING


@dataclass
class LaminarForest:
    """Containment forest of a laminar cycle multiset.

    Node ``i`` stands for ``cycles[i]``; ``parent[i]`` is the index of the
    cycle with the smallest interior strictly containing it (``-1`` for the
    virtual root).  Copies of the same cycle are chained, earlier copy first.
    """

    cycles: list[Cycle]
    signatures: list[frozenset[int]]
    parent: list[int]
    children: list[list[int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.children:
            self.children = [[] for _ in self.cycles]
            for i, p in enumerate(self.parent):
                if p >= 0:
                    self.children[p].append(i)

    @property
    def roots(self) -> list[int]:
        return [i for i, p in enumerate(self.parent) if p < 0]

    def leaves(self) -> list[int]:
        return [i for i, ch in enumerate(self.children) if not ch]

    def depth(self, i: int) -> int:
        d = 0
        while self.parent[i] >= 0:
            i = self.parent[i]
            d += 1
        return d

    def is_ancestor(self, a: int, b: int) -> bool:
        """Whether node ``a`` lies on the path from ``b`` to the root."""
        while b >= 0:
            if b == a:
                return True
            b = self.parent[b]
        return False


def laminar_forest(cycles: Sequence[Cycle], g: EmbeddedGraph) -> LaminarForest:
    """Build the containment forest; raises :class:`NotLaminar` on a crossing pair."""
    sigs = [g.interior(c) for c in cycles]
    n = len(cycles)
    for i in range(n):
        for j in range(i + 1, n):
            if relation_of_sets(sigs[i], sigs[j]) is CrossingRelation.CROSSING:
                raise NotLaminar(f"cycles {i} and {j} cross", (cycles[i], cycles[j]))
    order = sorted(range(n), key=lambda i: (-len(sigs[i]), i))
    parent = [-1] * n
    placed: list[int] = []
    for i in order:
        best = -1
        for j in placed:
            if sigs[i] <= sigs[j] and (best < 0 or len(sigs[j]) <= len(sigs[best])):
                best = j
        parent[i] = best
        placed.append(i)
    return LaminarForest(list(cycles), sigs, parent)


# ---------------------------------------------------------------------------
# Outerplanarity levels
# ---------------------------------------------------------------------------


def outerplanarity_levels(g: EmbeddedGraph) -> dict[int, int]:
    """Peel the graph: level i are the vertices on the infinite face once levels < i are removed."""
    level: dict[int, int] = {}
    cur = g
    i = 1
    while cur.vertices:
        ring = cur.face_vertices(cur.infinite_face)
        if not ring:
            # only possible when no vertex lies in the infinite region
            ring = frozenset(cur.vertices)
        for v in ring:
            level[v] = i
        cur = cur.delete_vertices(ring)
        i += 1
    return level


def max_level(levels: Mapping[int, int]) -> int:
    return max(levels.values(), default=0)


def euler_ok(g: EmbeddedGraph) -> bool:
    """Euler check for the region model: V - E + F = 1 + #components (ignoring isolated vertices)."""
    active = {v for v in g.vertices if g.rotation.get(v)}
    comps = {min(c) for c in g.components() if c & active}
    return len(active) - len(g.edges) + len(g.faces) == 1 + len(comps) or (not g.edges and len(g.faces) == 1)


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def k_from_eps(eps: float) -> int:
    return math.ceil(1 / eps - 1e-12)
