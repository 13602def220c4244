"""Brute-force ground truth: cycle enumeration, exact packing, transversal and LP."""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import BadParams, Truncated
from .families import FamilyKind, FamilySpec, min_weight_cycle
from .packing import Mode, Packing, elements
from .planar import Cycle, EmbeddedGraph
from .simplex import RevisedSimplex

__all__ = [
    "CycleCatalog",
    "DEFAULT_CAP",
    "cycle_cap",
    "enumerate_cycles",
    "exact_lp",
    "exact_max_packing",
    "exact_min_transversal",
    "min_transversal_by_oracle",
]

DEFAULT_CAP = 10_000


def cycle_cap() -> int:
    """Enumeration cap, overridable with ``CYCLEPACK_CYCLE_CAP``."""
    raw = os.environ.get("CYCLEPACK_CYCLE_CAP")
    return int(raw) if raw else DEFAULT_CAP


@dataclass
class CycleCatalog:
    """All family cycles of a graph (or a prefix of them when ``truncated``)."""

    cycles: list[Cycle]
    truncated: bool
    graph: EmbeddedGraph
    family: FamilySpec

    def __len__(self) -> int:
        return len(self.cycles)

    def require_complete(self) -> None:
        if self.truncated:
            raise Truncated(f"catalog was truncated at {len(self.cycles)} cycles")


def _simple_cycles(g: EmbeddedGraph, directed: bool):
    """Yield every simple cycle once (undirected cycles in one orientation)."""
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in g.vertices}
    for e, (u, v) in g.edges.items():
        adj[u].append((e, v))
        if not directed:
            adj[v].append((e, u))
    for s in sorted(g.vertices):
        path_v = [s]
        path_e: list[int] = []
        on_path = {s}
        stack = [iter(adj[s])]
        while stack:
            advanced = False
            for e, w in stack[-1]:
                if w == s:
                    if e == path_e[-1]:
                        continue
                    if directed or path_e[0] < e:
                        yield Cycle((*path_e, e), tuple(path_v))
                    continue
                if w < s or w in on_path:
                    continue
                path_v.append(w)
                path_e.append(e)
                on_path.add(w)
                stack.append(iter(adj[w]))
                advanced = True
                break
            if not advanced:
                stack.pop()
                if path_e:
                    path_e.pop()
                    on_path.discard(path_v.pop())


def enumerate_cycles(g: EmbeddedGraph, f: FamilySpec, cap: int | None = None) -> CycleCatalog:
    """Backtracking enumeration of the family's simple cycles, sorted by edge key."""
    cap = cycle_cap() if cap is None else cap
    if cap < 1:
        raise BadParams("cap must be at least 1")
    fam = f if f.graph is g else f.on(g)
    out: list[Cycle] = []
    truncated = False
    for c in _simple_cycles(g, fam.directed):
        if fam.contains(c):
            out.append(c)
            if len(out) > cap:
                truncated = True
                out.pop()
                break
    out.sort(key=lambda c: (len(c), c.key))
    return CycleCatalog(out, truncated, g, fam)


# ---------------------------------------------------------------------------
# Exact maximum packing
# ---------------------------------------------------------------------------


def _masks(cycles: Sequence[Cycle], mode: Mode) -> tuple[list[int], list[int]]:
    universe = sorted({x for c in cycles for x in elements(c, mode)})
    index = {x: i for i, x in enumerate(universe)}
    masks = []
    for c in cycles:
        m = 0
        for x in elements(c, mode):
            m |= 1 << index[x]
        masks.append(m)
    return masks, universe


def max_disjoint_sets(masks: Sequence[int]) -> list[int]:
    """Indices of a maximum family of pairwise disjoint bitmasks (branch and bound).

    Branches on the element covered by the fewest remaining sets: the sets
    containing it form a clique, so one of them or none is chosen.  The bound
    is a greedy clique cover by elements, capped by free elements over the
    smallest remaining set size.
    """
    best: list[int] = []
    order = sorted(range(len(masks)), key=lambda i: (bin(masks[i]).count("1"), i))

    def clique_cover(avail: list[int]) -> int:
        count = 0
        rest = avail
        while rest:
            low = rest[0]
            bit = masks[low] & -masks[low]
            count += 1
            rest = [i for i in rest if not masks[i] & bit]
        return count

    def rec(avail: list[int], chosen: list[int]) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if not avail:
            return
        if len(chosen) + clique_cover(avail) <= len(best):
            return
        union = 0
        for i in avail:
            union |= masks[i]
        smallest = min(bin(masks[i]).count("1") for i in avail)
        if len(chosen) + bin(union).count("1") // smallest <= len(best):
            return
        counts: dict[int, int] = {}
        for i in avail:
            m = masks[i]
            while m:
                b = m & -m
                counts[b] = counts.get(b, 0) + 1
                m ^= b
        bit = min(counts, key=lambda b: (counts[b], b.bit_length()))
        holders = [i for i in avail if masks[i] & bit]
        others = [i for i in avail if not masks[i] & bit]
        for i in holders:
            mi = masks[i]
            rec([j for j in others if not masks[j] & mi], chosen + [i])
        rec(others, chosen)

    rec(order, [])
    return sorted(best)


def exact_max_packing(catalog: CycleCatalog, mode: Mode | str) -> Packing:
    """Maximum pairwise disjoint sub-collection of a complete catalog."""
    catalog.require_complete()
    mode = Mode(mode)
    masks, _ = _masks(catalog.cycles, mode)
    chosen = max_disjoint_sets(masks)
    return Packing([catalog.cycles[i] for i in chosen], mode, {"method": "branch-and-bound"})


# ---------------------------------------------------------------------------
# Exact minimum transversal
# ---------------------------------------------------------------------------


def min_hitting_set(masks: Sequence[int], *, limit: int | None = None) -> int | None:
    """Minimum hitting set of nonempty bitmasks, as a bitmask (``None`` if above ``limit``).

    Iterative deepening on the size; each level branches on the elements of
    the smallest unhit set, forbidding elements already tried.  A greedy
    disjoint-set packing gives the lower bound.
    """
    sets = sorted(set(masks), key=lambda m: (bin(m).count("1"), m))
    if not sets:
        return 0
    if any(m == 0 for m in sets):
        raise ValueError("cannot hit an empty set")

    def lower(unhit: list[int], forbidden: int) -> int:
        used = 0
        count = 0
        for m in unhit:
            free = m & ~forbidden
            if not free & used:
                used |= free
                count += 1
        return count

    def search(unhit: list[int], budget: int, forbidden: int) -> int | None:
        if not unhit:
            return 0
        if budget == 0 or lower(unhit, forbidden) > budget:
            return None
        first = min(unhit, key=lambda m: bin(m & ~forbidden).count("1"))
        cand = first & ~forbidden
        tried = forbidden
        while cand:
            bit = cand & -cand
            cand ^= bit
            rest = [m for m in unhit if not m & bit]
            if any(not (m & ~(tried | bit)) for m in rest):
                tried |= bit
                continue
            sub = search(rest, budget - 1, tried)
            if sub is not None:
                return sub | bit
            tried |= bit
        return None

    lo = lower(sets, 0)
    hi = len(sets) if limit is None else min(limit, len(sets))
    for t in range(lo, hi + 1):
        res = search(sets, t, 0)
        if res is not None:
            return res
    return None


def exact_min_transversal(catalog: CycleCatalog, mode: Mode | str) -> frozenset[int]:
    """Minimum set of vertices (or edges) meeting every cycle of a complete catalog."""
    catalog.require_complete()
    mode = Mode(mode)
    masks, universe = _masks(catalog.cycles, mode)
    res = min_hitting_set(masks)
    assert res is not None
    return frozenset(universe[i] for i in range(len(universe)) if res >> i & 1)


def min_transversal_by_oracle(
    g: EmbeddedGraph, f: FamilySpec, mode: Mode | str, *, limit: int | None = None
) -> frozenset[int] | None:
    """Exact minimum transversal without enumeration.

    Iterative deepening: a cheapest family cycle of the remaining graph must
    be hit, so branch on its elements.  Useful where the catalog is too large
    (``None`` if the optimum exceeds ``limit``).
    """
    mode = Mode(mode)
    fam = f if f.graph is g else f.on(g)

    def find(removed: frozenset[int]) -> Cycle | None:
        if mode is Mode.VERTEX:
            sub = g.delete_vertices(removed)
        else:
            sub = g.delete_edges(removed)
        res = min_weight_cycle(fam.on(sub), {e: 1 for e in sub.edges})
        return None if res is None else res[1]

    def search(removed: frozenset[int], budget: int, forbidden: frozenset[int]) -> frozenset[int] | None:
        c = find(removed)
        if c is None:
            return removed
        if budget == 0:
            return None
        tried = set(forbidden)
        for x in sorted(elements(c, mode)):
            if x in tried:
                continue
            res = search(removed | {x}, budget - 1, frozenset(tried))
            if res is not None:
                return res
            tried.add(x)
        return None

    t = 0
    top = limit if limit is not None else (len(g.vertices) if mode is Mode.VERTEX else len(g.edges))
    while t <= top:
        res = search(frozenset(), t, frozenset())
        if res is not None:
            return res
        t += 1
    return None


# ---------------------------------------------------------------------------
# Full-enumeration LP
# ---------------------------------------------------------------------------


def packing_columns(
    cycles: Sequence[Cycle], mode: Mode, rows: Mapping[int, int]
) -> list[dict[int, Fraction]]:
    return [{rows[x]: Fraction(1) for x in elements(c, mode)} for c in cycles]


def exact_lp(
    catalog: CycleCatalog,
    mode: Mode | str,
    weights: Mapping[int, Fraction] | None = None,
) -> Fraction:
    """Value of the packing LP over all catalog columns.

    With ``weights`` (demand edge -> weight), a cycle is worth the total
    weight of its demand edges.
    """
    catalog.require_complete()
    mode = Mode(mode)
    g = catalog.graph
    row_ids = sorted(g.vertices) if mode is Mode.VERTEX else sorted(g.edges)
    rows = {x: i for i, x in enumerate(row_ids)}
    lp = RevisedSimplex([1] * len(row_ids))
    for c, col in zip(catalog.cycles, packing_columns(catalog.cycles, mode, rows)):
        cost = Fraction(1) if weights is None else sum((Fraction(weights.get(e, 0)) for e in c.edges), Fraction(0))
        lp.add_column(col, cost)
    return lp.solve()


def is_d_family(f: FamilySpec) -> bool:
    return f.kind in (FamilyKind.D_CYCLE, FamilyKind.HIT_D)
