"""Small graph routines over edge-id multigraphs: shortest paths and blocks."""

from __future__ import annotations

import heapq
from collections import deque
from typing import Iterable, Mapping, Sequence

Adjacency = Mapping[int, Sequence[tuple[int, int]]]


def adjacency(
    edges: Mapping[int, tuple[int, int]],
    vertices: Iterable[int],
    *,
    directed: bool = False,
    allowed: Iterable[int] | None = None,
) -> dict[int, list[tuple[int, int]]]:
    """Map each vertex to ``(edge, neighbour)`` pairs (only forward arcs if directed)."""
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in vertices}
    keep = edges.keys() if allowed is None else allowed
    for e in sorted(keep):
        u, v = edges[e]
        adj[u].append((e, v))
        if not directed:
            adj[v].append((e, u))
    return adj


def shortest_path(
    adj: Adjacency,
    source: int,
    target: int,
    weight: Mapping[int, object],
    *,
    skip: frozenset[int] | set[int] = frozenset(),
    bound: object | None = None,
) -> tuple[object, list[int], list[int]] | None:
    """Dijkstra from ``source`` to ``target`` avoiding edges in ``skip``.

    Returns ``(distance, edges, vertices)`` with ``vertices`` running from
    source to target, or ``None`` if no path of length at most ``bound``
    exists.  Weights must be nonnegative and mutually comparable.
    """
    dist: dict[int, object] = {source: 0}
    pred: dict[int, tuple[int, int]] = {}
    heap: list[tuple[object, int]] = [(0, source)]
    done: set[int] = set()
    while heap:
        d, v = heapq.heappop(heap)
        if v in done:
            continue
        if bound is not None and d > bound:
            return None
        if v == target:
            break
        done.add(v)
        for e, w in adj[v]:
            if e in skip or w in done:
                continue
            nd = d + weight[e]
            if bound is not None and nd > bound:
                continue
            old = dist.get(w)
            if old is None or nd < old:
                dist[w] = nd
                pred[w] = (e, v)
                heapq.heappush(heap, (nd, w))
    else:
        return None
    if target not in dist:
        return None
    edges: list[int] = []
    verts = [target]
    v = target
    while v != source:
        e, p = pred[v]
        edges.append(e)
        verts.append(p)
        v = p
    edges.reverse()
    verts.reverse()
    return dist[target], edges, verts


def bfs_distance(
    adj: Adjacency, source: int, target: int, *, skip: frozenset[int] | set[int] = frozenset(), limit: int | None = None
) -> int | None:
    """Unweighted distance from source to target, or None if farther than ``limit``."""
    if source == target:
        return 0
    seen = {source}
    frontier = [source]
    depth = 0
    while frontier:
        depth += 1
        if limit is not None and depth > limit:
            return None
        nxt = []
        for v in frontier:
            for e, w in adj[v]:
                if e in skip or w in seen:
                    continue
                if w == target:
                    return depth
                seen.add(w)
                nxt.append(w)
        frontier = nxt
    return None


def blocks(vertices: Iterable[int], edges: Mapping[int, tuple[int, int]]) -> list[list[int]]:
    """Biconnected components as edge-id lists; parallel edges are kept apart.

    Iterative Hopcroft-Tarjan.  A bridge forms a block with one edge.
    """
    adj = adjacency(edges, vertices)
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    timer = 0
    out: list[list[int]] = []
    edge_stack: list[int] = []
    for root in sorted(adj):
        if root in disc or not adj[root]:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, pe, it = stack[-1]
            advanced = False
            for e, w in it:
                if e == pe:
                    continue
                if w not in disc:
                    edge_stack.append(e)
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, e, iter(adj[w])))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    edge_stack.append(e)
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            if advanced:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
                if low[v] >= disc[u]:
                    comp = []
                    while True:
                        e = edge_stack.pop()
                        comp.append(e)
                        if e == pe:
                            break
                    out.append(sorted(comp))
    return out


def is_bipartite_edges(edges: Mapping[int, tuple[int, int]], ids: Iterable[int]) -> bool:
    ids = list(ids)
    verts = {x for e in ids for x in edges[e]}
    adj = adjacency(edges, verts, allowed=ids)
    colour: dict[int, int] = {}
    for s in verts:
        if s in colour:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for _, w in adj[v]:
                if w not in colour:
                    colour[w] = colour[v] ^ 1
                    queue.append(w)
                elif colour[w] == colour[v]:
                    return False
    return True


def connected_components(vertices: Iterable[int], edges: Mapping[int, tuple[int, int]]) -> list[set[int]]:
    adj = adjacency(edges, vertices)
    seen: set[int] = set()
    comps = []
    for s in sorted(adj):
        if s in seen:
            continue
        comp = {s}
        seen.add(s)
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for _, w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    queue.append(w)
        comps.append(comp)
    return comps
