"""Uncrossable cycle families and their weight, support and membership oracles."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import networkx as nx

from . import _graphalg as ga
from .errors import BadParams, NegativeWeight, NoWitness, NotACycle
from .planar import Cycle, EmbeddedGraph, cycle_from_edges, is_directed_cycle

__all__ = [
    "FamilyKind",
    "FamilySpec",
    "make_family",
    "membership",
    "min_weight_cycle",
    "support_oracle",
    "uncross_witness",
    "weight_oracle",
]

Number = int | Fraction


class FamilyKind(str, Enum):
    ALL = "all"
    ALL_DIRECTED = "all-directed"
    GIRTH = "girth"
    GIRTH_DIRECTED = "girth-directed"
    ODD = "odd"
    D_CYCLE = "d-cycle"
    HIT_D = "hit-d"

    @property
    def directed(self) -> bool:
        return self in (FamilyKind.ALL_DIRECTED, FamilyKind.GIRTH_DIRECTED)

    @property
    def uses_demand(self) -> bool:
        return self in (FamilyKind.D_CYCLE, FamilyKind.HIT_D)

    @property
    def is_girth(self) -> bool:
        return self in (FamilyKind.GIRTH, FamilyKind.GIRTH_DIRECTED)


@dataclass(frozen=True, eq=False)
class FamilySpec:
    """A family of cycles in ``graph``.

    For the girth kinds, ``girth`` is frozen at construction time: on derived
    subgraphs (see :meth:`on`) the family still consists of cycles of that
    exact length, so it may become empty.
    """

    kind: FamilyKind
    graph: EmbeddedGraph
    demand: frozenset[int] = frozenset()
    girth: int | None = None
    _adj: dict = field(default_factory=dict, repr=False)

    def on(self, graph: EmbeddedGraph) -> FamilySpec:
        """The same family restricted to a subgraph of the original graph."""
        return FamilySpec(self.kind, graph, self.demand & graph.edges.keys(), self.girth)

    @property
    def directed(self) -> bool:
        return self.kind.directed

    def adjacency(self, directed: bool | None = None) -> dict[int, list[tuple[int, int]]]:
        d = self.directed if directed is None else directed
        if d not in self._adj:
            self._adj[d] = ga.adjacency(self.graph.edges, self.graph.vertices, directed=d)
        return self._adj[d]

    def contains(self, cycle: Cycle) -> bool:
        """Membership predicate for a given simple cycle."""
        edges = self.graph.edges
        if not cycle.edge_set <= edges.keys():
            return False
        k = self.kind
        if k.directed and not is_directed_cycle(edges, cycle):
            return False
        if k.is_girth:
            return self.girth is not None and len(cycle) == self.girth
        if k is FamilyKind.ODD:
            return len(cycle) % 2 == 1
        if k is FamilyKind.D_CYCLE:
            return len(cycle.edge_set & self.demand) == 1
        if k is FamilyKind.HIT_D:
            return bool(cycle.edge_set & self.demand)
        return True


def make_family(
    kind: FamilyKind | str, graph: EmbeddedGraph, demand: Iterable[int] = ()
) -> FamilySpec:
    """Validate and build a :class:`FamilySpec`; computes the girth for girth kinds."""
    kind = FamilyKind(kind)
    dem = frozenset(int(d) for d in demand)
    if kind.directed and not graph.directed:
        raise BadParams(f"family {kind.value} needs a directed graph")
    if not kind.directed and graph.directed:
        raise BadParams(f"family {kind.value} needs an undirected graph")
    if kind.uses_demand:
        if not dem <= graph.edges.keys():
            raise BadParams("demand edges must be edges of the graph")
    elif dem:
        dem = frozenset()
    girth = None
    if kind.is_girth:
        base = FamilySpec(FamilyKind.ALL_DIRECTED if kind.directed else FamilyKind.ALL, graph)
        found = min_weight_cycle(base, {e: 1 for e in graph.edges})
        girth = None if found is None else len(found[1])
    return FamilySpec(kind, graph, dem, girth)


# ---------------------------------------------------------------------------
# Weight oracle
# ---------------------------------------------------------------------------


def _better(cand: tuple[Number, Cycle], best: tuple[Number, Cycle] | None) -> bool:
    if best is None:
        return True
    if cand[0] != best[0]:
        return cand[0] < best[0]
    return cand[1].key < best[1].key


def _edge_closure_search(
    g: EmbeddedGraph,
    adj: Mapping[int, Sequence[tuple[int, int]]],
    weights: Mapping[int, Number],
    items: Iterable[tuple[int, frozenset[int]]],
    lower_bound: Number | None,
) -> tuple[Number, Cycle] | None:
    """Minimum over edges e of w(e) plus a shortest head(e)->tail(e) path avoiding ``skip``."""
    best: tuple[Number, Cycle] | None = None
    for e, skip in items:
        we = weights[e]
        if best is not None and we > best[0]:
            continue
        u, v = g.edges[e]
        res = ga.shortest_path(adj, v, u, weights, skip=skip, bound=None if best is None else best[0] - we)
        if res is None:
            continue
        dist, pedges, pverts = res
        cyc = Cycle((e, *pedges), (u, *pverts[:-1]))
        cand = (we + dist, cyc)
        if _better(cand, best):
            best = cand
            if lower_bound is not None and best[0] <= lower_bound:
                break
    return best


def _odd_cycle_from_walk(edges: Sequence[int], verts: Sequence[int]) -> Cycle:
    """Extract a simple odd cycle from a closed walk of odd length.

    ``verts`` has one more entry than ``edges`` and starts and ends at the
    same vertex.  Even closed sub-walks are cut out; the first odd one that
    closes is a simple cycle.
    """
    path_v: list[int] = [verts[0]]
    path_e: list[int] = []
    pos = {verts[0]: 0}
    for e, x in zip(edges, verts[1:]):
        if x in pos:
            j = pos[x]
            loop_e = path_e[j:] + [e]
            if len(loop_e) % 2 == 1:
                return Cycle(tuple(loop_e), tuple(path_v[j:]))
            for y in path_v[j + 1 :]:
                del pos[y]
            del path_v[j + 1 :]
            del path_e[j:]
        else:
            pos[x] = len(path_v)
            path_v.append(x)
            path_e.append(e)
    raise AssertionError("closed walk of odd length must contain an odd cycle")


def _odd_search(
    g: EmbeddedGraph,
    adj: Mapping[int, Sequence[tuple[int, int]]],
    weights: Mapping[int, Number],
    lower_bound: Number | None,
) -> tuple[Number, Cycle] | None:
    best: tuple[Number, Cycle] | None = None
    for s in sorted(g.vertices):
        if not adj[s]:
            continue
        bound = None if best is None else best[0]
        start, goal = (s, 0), (s, 1)
        dist: dict[tuple[int, int], Number] = {start: 0}
        pred: dict[tuple[int, int], tuple[int, tuple[int, int]]] = {}
        heap: list = [(0, s, 0)]
        done: set[tuple[int, int]] = set()
        found = False
        while heap:
            d, v, p = heapq.heappop(heap)
            st = (v, p)
            if st in done:
                continue
            if bound is not None and d > bound:
                break
            if st == goal:
                found = True
                break
            done.add(st)
            for e, w in adj[v]:
                nst = (w, p ^ 1)
                if nst in done:
                    continue
                nd = d + weights[e]
                if bound is not None and nd > bound:
                    continue
                old = dist.get(nst)
                if old is None or nd < old:
                    dist[nst] = nd
                    pred[nst] = (e, st)
                    heapq.heappush(heap, (nd, w, p ^ 1))
        if not found:
            continue
        wedges: list[int] = []
        wverts: list[int] = [s]
        st = goal
        while st != start:
            e, prev = pred[st]
            wedges.append(e)
            wverts.append(prev[0])
            st = prev
        wedges.reverse()
        wverts.reverse()
        cyc = _odd_cycle_from_walk(wedges, wverts)
        cand = (sum((weights[e] for e in cyc.edges), 0), cyc)
        if _better(cand, best):
            best = cand
            if lower_bound is not None and best[0] <= lower_bound:
                break
    return best


def _check_weights(f: FamilySpec, weights: Mapping[int, Number]) -> None:
    for e in f.graph.edges:
        w = weights[e]
        if w < 0:
            raise NegativeWeight(f"edge {e} has negative weight {w}")


def min_weight_cycle(
    f: FamilySpec,
    weights: Mapping[int, Number],
    *,
    lower_bound: Number | None = None,
    check: bool = True,
) -> tuple[Number, Cycle] | None:
    """Minimum-weight family cycle as ``(weight, cycle)``, or ``None``.

    Ties go to the cycle with the lexicographically smallest sorted edge ids.
    If ``lower_bound`` is given, the search stops at the first cycle whose
    weight is at most that value (used by membership tests).  Directed cycles
    are returned oriented along their edges.
    """
    if check:
        _check_weights(f, weights)
    g = f.graph
    k = f.kind
    if not g.edges:
        return None
    if k.is_girth:
        if f.girth is None:
            return None
        big = 1 + sum(weights[e] for e in g.edges)
        shifted = {e: weights[e] + big for e in g.edges}
        base = FamilySpec(FamilyKind.ALL_DIRECTED if k.directed else FamilyKind.ALL, g)
        lb = None if lower_bound is None else lower_bound + f.girth * big
        res = min_weight_cycle(base, shifted, lower_bound=lb, check=False)
        if res is None or len(res[1]) != f.girth:
            return None
        return res[0] - f.girth * big, res[1]
    if k is FamilyKind.ODD:
        return _odd_search(g, f.adjacency(), weights, lower_bound)
    if k in (FamilyKind.ALL, FamilyKind.ALL_DIRECTED):
        items = ((e, frozenset((e,))) for e in g.edges)
        return _edge_closure_search(g, f.adjacency(), weights, items, lower_bound)
    if k is FamilyKind.D_CYCLE:
        items = ((d, f.demand) for d in sorted(f.demand))
        return _edge_closure_search(g, f.adjacency(), weights, items, lower_bound)
    if k is FamilyKind.HIT_D:
        items = ((d, frozenset((d,))) for d in sorted(f.demand))
        return _edge_closure_search(g, f.adjacency(), weights, items, lower_bound)
    raise AssertionError(k)


def weight_oracle(f: FamilySpec, weights: Mapping[int, Number]) -> Cycle | None:
    """A minimum-weight cycle of the family under nonnegative edge weights."""
    res = min_weight_cycle(f, weights)
    return None if res is None else res[1]


def min_cycle_through_demand(
    f: FamilySpec, weights: Mapping[int, Number], d: int
) -> tuple[Number, Cycle] | None:
    """Cheapest D-cycle whose demand edge is ``d`` (``D_CYCLE`` families only)."""
    if f.kind is not FamilyKind.D_CYCLE:
        raise BadParams("per-demand pricing is only defined for d-cycle families")
    return _edge_closure_search(f.graph, f.adjacency(), weights, [(d, f.demand)], None)


# ---------------------------------------------------------------------------
# Support oracle
# ---------------------------------------------------------------------------


def support_oracle(f: FamilySpec, deleted: Iterable[int] = ()) -> frozenset[int]:
    """Union of the edge sets of all family cycles avoiding ``deleted``."""
    g = f.graph
    drop = set(deleted)
    edges = {e: uv for e, uv in g.edges.items() if e not in drop}
    if not edges:
        return frozenset()
    k = f.kind
    if k is FamilyKind.ALL_DIRECTED:
        dg = nx.DiGraph()
        dg.add_edges_from(edges.values())
        comp = {}
        for i, c in enumerate(nx.strongly_connected_components(dg)):
            for v in c:
                comp[v] = i
        return frozenset(e for e, (u, v) in edges.items() if comp[u] == comp[v])
    if k.is_girth:
        if f.girth is None:
            return frozenset()
        adj = ga.adjacency(edges, g.vertices, directed=k.directed)
        out = set()
        for e, (u, v) in edges.items():
            dist = ga.bfs_distance(adj, v, u, skip={e}, limit=f.girth - 1)
            if dist == f.girth - 1:
                out.add(e)
        return frozenset(out)
    if k is FamilyKind.ALL:
        return frozenset(e for b in ga.blocks(g.vertices, edges) if len(b) > 1 for e in b)
    if k is FamilyKind.ODD:
        return frozenset(
            e for b in ga.blocks(g.vertices, edges) if len(b) > 1 and not ga.is_bipartite_edges(edges, b) for e in b
        )
    dem = f.demand & edges.keys()
    if k is FamilyKind.HIT_D:
        return frozenset(
            e for b in ga.blocks(g.vertices, edges) if len(b) > 1 and dem.intersection(b) for e in b
        )
    if k is FamilyKind.D_CYCLE:
        rest = {e: uv for e, uv in edges.items() if e not in dem}
        out = set()
        for comp in ga.connected_components(g.vertices, rest):
            sub = {e: (u, v) for e, (u, v) in edges.items() if u in comp and v in comp}
            for b in ga.blocks(comp, sub):
                if len(b) > 1 and dem.intersection(b):
                    out.update(b)
        return frozenset(out)
    raise AssertionError(k)


# ---------------------------------------------------------------------------
# Membership and the uncrossing exchange
# ---------------------------------------------------------------------------


def membership(f: FamilySpec, candidate: Iterable[int]) -> Cycle | None:
    """Some family cycle using only edges of ``candidate``, or ``None``.

    Zero weight on the candidate and one elsewhere; one oracle call.
    """
    cand = frozenset(candidate)
    weights = {e: 0 if e in cand else 1 for e in f.graph.edges}
    res = min_weight_cycle(f, weights, lower_bound=0, check=False)
    if res is None or res[0] != 0:
        return None
    return res[1]


def path_endpoints(c: Cycle, path: Sequence[int]) -> tuple[int, int]:
    """Endpoints ``(v, w)`` of a subpath of ``c`` such that walking ``c`` from v reaches w along the path."""
    pset = set(path)
    if not pset or not pset < c.edge_set:
        raise NotACycle("path must be a proper nonempty part of the cycle")
    n = len(c.edges)
    starts = [i for i in range(n) if c.edges[i] in pset and c.edges[i - 1] not in pset]
    if len(starts) != 1:
        raise NotACycle("path edges are not contiguous on the cycle")
    i = starts[0]
    j = i
    while c.edges[j % n] in pset:
        j += 1
    return c.vertices[i], c.vertices[j % n]


def uncross_witness(
    f: FamilySpec, c1: Cycle, c2: Cycle, p2: Sequence[int]
) -> tuple[tuple[int, ...], Cycle]:
    """Exchange step: find a part P1 of c1 with P1+P2 in the family.

    ``p2`` is a subpath of ``c2`` sharing only its endpoints with ``c1``.
    Returns ``(p1, residual)`` where ``residual`` is a family cycle inside
    ``(c1 - P1) + (c2 - P2)``.  Raises :class:`NoWitness` if neither part of
    ``c1`` works.
    """
    v, w = path_endpoints(c2, p2)
    inner = set(c2.arc_vertices(v, w)[1:-1])
    if v not in c1.vertex_set or w not in c1.vertex_set or inner & c1.vertex_set:
        raise NotACycle("p2 must meet c1 exactly in its endpoints")
    p2set = frozenset(p2)
    rest2 = c2.edge_set - p2set
    for p1 in (c1.arc(w, v), c1.arc(v, w)):
        closed = cycle_from_edges(f.graph.edges, p2set | set(p1))
        if not f.contains(closed):
            continue
        residual = membership(f, (c1.edge_set - set(p1)) | rest2)
        if residual is not None:
            return p1, residual
    raise NoWitness(f"no exchange for {c1!r}, {c2!r}, path {tuple(p2)}")
