"""Exact maximum-weight independent set for small conflict graphs.

Bucket elimination along a min-degree order when the induced width is at
most :data:`WIDTH_LIMIT`, branch and bound with a weighted clique-cover bound
otherwise.  Weights are Python integers, so callers can encode
lexicographic tie-breaking in them.
"""

from __future__ import annotations

from itertools import product
from typing import Sequence

__all__ = ["WIDTH_LIMIT", "elimination_order", "lex_weights", "max_weight_independent_set"]

WIDTH_LIMIT = 12


def lex_weights(n: int) -> list[int]:
    """Weights making the optimum a maximum-cardinality set, lexicographically smallest among those."""
    return [(1 << n) + (1 << (n - 1 - i)) for i in range(n)]


def elimination_order(adj: Sequence[set[int]]) -> tuple[list[int], int]:
    """Min-degree elimination order with fill-in, and its width (largest later-neighbourhood)."""
    work = [set(a) for a in adj]
    alive = set(range(len(adj)))
    order = []
    width = 0
    while alive:
        v = min(alive, key=lambda x: (len(work[x]), x))
        nb = work[v]
        width = max(width, len(nb))
        for a in nb:
            work[a] |= nb
            work[a].discard(a)
            work[a].discard(v)
        alive.discard(v)
        order.append(v)
    return order, width


def _bucket_elimination(adj: Sequence[set[int]], weights: Sequence[int], order: list[int]) -> list[int]:
    pos = {v: i for i, v in enumerate(order)}
    buckets: dict[int, list[tuple[tuple[int, ...], dict[tuple[int, ...], int]]]] = {v: [] for v in order}
    choices: dict[int, tuple[tuple[int, ...], dict[tuple[int, ...], int]]] = {}
    for v in order:
        factors = buckets[v]
        scope: set[int] = {u for u in adj[v] if pos[u] > pos[v]}
        for sc, _ in factors:
            scope.update(sc)
        scope.discard(v)
        s = tuple(sorted(scope, key=pos.__getitem__))
        later_nb = [i for i, u in enumerate(s) if u in adj[v]]
        new_table: dict[tuple[int, ...], int] = {}
        argmax: dict[tuple[int, ...], int] = {}
        # precompute index maps for each factor
        fmaps = []
        for sc, tab in factors:
            fmaps.append(([(-1 if u == v else s.index(u)) for u in sc], tab))
        for a in product((0, 1), repeat=len(s)):
            best_val = None
            best_x = 0
            for xv in (0, 1):
                if xv and any(a[i] for i in later_nb):
                    continue
                val = weights[v] if xv else 0
                for idx, tab in fmaps:
                    val += tab[tuple(xv if i < 0 else a[i] for i in idx)]
                if best_val is None or val > best_val:
                    best_val, best_x = val, xv
            new_table[a] = best_val  # type: ignore[assignment]
            argmax[a] = best_x
        choices[v] = (s, argmax)
        if s:
            buckets[s[0]].append((s, new_table))
    assign: dict[int, int] = {}
    for v in reversed(order):
        s, argmax = choices[v]
        assign[v] = argmax[tuple(assign[u] for u in s)]
    return sorted(v for v, x in assign.items() if x)


def _branch_and_bound(adj: Sequence[set[int]], weights: Sequence[int]) -> list[int]:
    n = len(adj)
    best_val = -1
    best_set: list[int] = []

    def cover_bound(cand: list[int]) -> int:
        cliques: list[list[int]] = []
        for v in cand:
            for cl in cliques:
                if all(u in adj[v] for u in cl):
                    cl.append(v)
                    break
            else:
                cliques.append([v])
        return sum(max(weights[u] for u in cl) for cl in cliques)

    def rec(cand: list[int], val: int, chosen: list[int]) -> None:
        nonlocal best_val, best_set
        if not cand:
            if val > best_val:
                best_val, best_set = val, list(chosen)
            return
        if val + cover_bound(cand) <= best_val:
            return
        v = cand[0]
        rec([u for u in cand[1:] if u not in adj[v]], val + weights[v], chosen + [v])
        rec(cand[1:], val, chosen)

    start = sorted(range(n), key=lambda v: (-weights[v], -len(adj[v]), v))
    rec(start, 0, [])
    return sorted(best_set)


def max_weight_independent_set(
    adj: Sequence[set[int]], weights: Sequence[int], *, method: str = "auto"
) -> list[int]:
    """Exact maximum-weight independent set of a graph on ``0..n-1``.

    ``method`` is ``"auto"``, ``"dp"`` or ``"bb"``; ``auto`` uses the
    elimination DP when the min-degree width is at most :data:`WIDTH_LIMIT`.
    """
    n = len(adj)
    if n == 0:
        return []
    if any(w < 0 for w in weights):
        raise ValueError("weights must be nonnegative")
    if method == "bb":
        return _branch_and_bound(adj, weights)
    order, width = elimination_order(adj)
    if method == "dp" or (method == "auto" and width <= WIDTH_LIMIT):
        return _bucket_elimination(adj, weights, order)
    return _branch_and_bound(adj, weights)
