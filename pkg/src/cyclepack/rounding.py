"""Rounding laminar LP solutions into disjoint packings.

Vertex mode extracts efficient cycles greedily (a cycle whose whole
neighbourhood in the support is hit by at most five of its vertices).
Edge mode solves the chain LP, halves it and colours the conflict graph.
Weighted vertex mode feeds the efficient-cycle order into fractional local
ratio.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import BoundViolated, ChainViolation, GuaranteeViolation, NotLaminar
from .exact import min_hitting_set
from .lp import FractionalPacking, cycle_weight
from .packing import Mode, Packing, elements
from .planar import Cycle, CrossingRelation, EmbeddedGraph, relation_of_sets
from .simplex import RevisedSimplex

__all__ = [
    "ECL_BOUND",
    "EfficientChoice",
    "Side",
    "efficient_cycle",
    "efficient_cycle_edges",
    "four_color",
    "five_color",
    "neighbour_witness_sets",
    "one_sided",
    "round_edge",
    "round_vertex",
    "round_weighted_vertex",
]

ECL_BOUND = 5


# ---------------------------------------------------------------------------
# Sides and one-sided cycles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Side:
    """The face set ``S(C)`` of a one-sided cycle; ``inner`` tells which side it is."""

    faces: frozenset[int]
    inner: bool


def _check_laminar(g: EmbeddedGraph, cycles: Sequence[Cycle]) -> list[frozenset[int]]:
    sigs = [g.interior(c) for c in cycles]
    for i in range(len(cycles)):
        for j in range(i + 1, len(cycles)):
            if relation_of_sets(sigs[i], sigs[j]) is CrossingRelation.CROSSING:
                raise NotLaminar(f"cycles {i} and {j} cross", (cycles[i], cycles[j]))
    return sigs


def _dedupe(cycles: Sequence[Cycle]) -> list[Cycle]:
    return sorted(set(cycles), key=lambda c: c.key)


def _one_sided_sides(g: EmbeddedGraph, cycles: Sequence[Cycle], sigs: Sequence[frozenset[int]]) -> dict[int, Side]:
    """Index -> side for every one-sided cycle.

    With laminar interiors, the exterior of ``C`` holds a side of every
    member not nested inside ``C``; the interior holds a side exactly of the
    members nested inside.  A lone cycle gets its interior.
    """
    everything = g.all_faces()
    n = len(cycles)
    out: dict[int, Side] = {}
    for i in range(n):
        inside = sum(1 for j in range(n) if j != i and sigs[j] < sigs[i])
        if inside == 0:
            out[i] = Side(sigs[i], True)
        elif inside == n - 1:
            out[i] = Side(everything - sigs[i], False)
    return out


def one_sided(g: EmbeddedGraph, laminar: Sequence[Cycle]) -> list[Cycle]:
    """Cycles of a laminar set with a side containing no side of another member."""
    cycles = _dedupe(laminar)
    sigs = _check_laminar(g, cycles)
    return [cycles[i] for i in sorted(_one_sided_sides(g, cycles, sigs))]


# ---------------------------------------------------------------------------
# Efficient cycles
# ---------------------------------------------------------------------------


@dataclass
class EfficientChoice:
    """A one-sided cycle with witness elements hitting all of its neighbours."""

    cycle: Cycle | None
    witness: frozenset[int]
    per_neighbor: dict[Cycle, frozenset[int]] = field(default_factory=dict)
    neighbours: list[Cycle] = field(default_factory=list)
    method: str = "greedy"
    mode: Mode = Mode.VERTEX

    @property
    def size(self) -> int:
        return len(self.witness)

    def hits_all(self) -> bool:
        """Exhaustive check: every neighbour contains a witness element."""
        return all(not self.witness.isdisjoint(elements(n, self.mode)) for n in self.neighbours)


def _oriented(g: EmbeddedGraph, c: Cycle, side: frozenset[int]) -> Cycle:
    """Traversal of ``c`` with ``side`` on its left."""
    u = c.vertices[0]
    e = c.edges[0]
    dart = 2 * e if g.edges[e][0] == u else 2 * e + 1
    return c if g.face_of_dart[dart] in side else c.reversed()


def _other_side(g: EmbeddedGraph, sig: frozenset[int], s: frozenset[int]) -> frozenset[int]:
    """The side of a cycle (interior ``sig``) disjoint from ``s``."""
    return sig if sig.isdisjoint(s) else g.all_faces() - sig


def _below(g: EmbeddedGraph, sig1: frozenset[int], t2: frozenset[int]) -> bool:
    """``C1 ⊆_C C2``: some side of ``C1`` lies in ``t2``."""
    return sig1 <= t2 or (g.all_faces() - sig1) <= t2


def neighbour_witness_sets(
    g: EmbeddedGraph, laminar: Sequence[Cycle], c: Cycle, side: Side, mode: Mode | str = Mode.VERTEX
) -> tuple[list[Cycle], dict[Cycle, frozenset[int]]]:
    """All neighbours of ``c`` and the candidate sets ``W(c, N)`` of its minimal ones.

    Vertex mode keeps ``w ∈ V(c) ∩ V(N)`` whose outgoing edge on ``c``
    (traversed with ``S(c)`` on the left) is not in ``N``.  Edge mode uses
    ``E(c) ∩ E(N)``: splitting every vertex per incident cycle and
    subdividing every edge leaves only the subdivision vertices shared, and
    their outgoing half-edges are private to ``c``.
    """
    mode = Mode(mode)
    mine = elements(c, mode)
    nbrs = [n for n in laminar if n != c and not mine.isdisjoint(elements(n, mode))]
    if not nbrs:
        return [], {}
    sigs = {n: g.interior(n) for n in nbrs}
    tops = {n: _other_side(g, sigs[n], side.faces) for n in nbrs}
    minimal = []
    for n in nbrs:
        dominated = any(
            m != n and _below(g, sigs[m], tops[n]) and not _below(g, sigs[n], tops[m]) for m in nbrs
        )
        if not dominated:
            minimal.append(n)
    per: dict[Cycle, frozenset[int]] = {}
    if mode is Mode.EDGE:
        for n in minimal:
            per[n] = c.edge_set & n.edge_set
        return nbrs, per
    oc = _oriented(g, c, side.faces)
    for n in minimal:
        per[n] = frozenset(w for w in oc.vertex_set & n.vertex_set if oc.out_edge(w) not in n.edge_set)
        if not per[n]:
            raise GuaranteeViolation(f"empty witness set for neighbour {n!r}")
    return nbrs, per


def _greedy_minimal(sets: Sequence[frozenset[int]]) -> frozenset[int]:
    """Greedy hitting set, then pruned to inclusion-minimality."""
    chosen: list[int] = []
    unhit = [s for s in sets]
    while unhit:
        counts: dict[int, int] = {}
        for s in unhit:
            for x in s:
                counts[x] = counts.get(x, 0) + 1
        best = min(counts, key=lambda x: (-counts[x], x))
        chosen.append(best)
        unhit = [s for s in unhit if best not in s]
    for x in sorted(chosen, reverse=True):
        rest = set(chosen) - {x}
        if all(not rest.isdisjoint(s) for s in sets):
            chosen.remove(x)
    return frozenset(chosen)


def _exact_hitting(sets: Sequence[frozenset[int]], limit: int) -> frozenset[int] | None:
    universe = sorted(set().union(*sets)) if sets else []
    bit = {x: 1 << i for i, x in enumerate(universe)}
    masks = [sum(bit[x] for x in s) for s in sets]
    m = min_hitting_set(masks, limit=limit)
    if m is None:
        return None
    return frozenset(x for x in universe if m & bit[x])


def _choice_for(
    g: EmbeddedGraph, cycles: Sequence[Cycle], i: int, side: Side, mode: Mode, bound: int
) -> EfficientChoice:
    c = cycles[i]
    nbrs, per = neighbour_witness_sets(g, cycles, c, side, mode)
    if not nbrs:
        return EfficientChoice(c, frozenset(), {}, [], "empty", mode)
    sets = [per[n] for n in sorted(per, key=lambda n: n.key)]
    w = _greedy_minimal(sets)
    method = "greedy"
    if len(w) > bound:
        exact = _exact_hitting(sets, bound)
        if exact is not None:
            w, method = exact, "exact"
        else:
            # any vertex of c shared with a neighbour is still a valid witness
            mine = elements(c, mode)
            direct = [elements(n, mode) & mine for n in nbrs]
            exact = _exact_hitting(direct, bound)
            if exact is not None:
                w, method = exact, "exact-shared"
    return EfficientChoice(c, w, per, nbrs, method, mode)


def _efficient(g: EmbeddedGraph, laminar: Sequence[Cycle], mode: Mode, bound: int) -> EfficientChoice:
    cycles = _dedupe(laminar)
    if not cycles:
        raise ValueError("efficient cycle of an empty family")
    sigs = _check_laminar(g, cycles)
    sides = _one_sided_sides(g, cycles, sigs)
    best: EfficientChoice | None = None
    best_key: tuple | None = None
    for i, side in sides.items():
        ch = _choice_for(g, cycles, i, side, mode, bound)
        key = (ch.size, tuple(sorted(sigs[i])))
        if best_key is None or key < best_key:
            best, best_key = ch, key
    if best is None:
        raise GuaranteeViolation("a laminar family without one-sided cycles")
    if best.size > bound:
        raise BoundViolated(f"every one-sided cycle needs more than {bound} witnesses")
    if not best.hits_all():
        raise GuaranteeViolation("witness set misses a neighbour")
    return best


def efficient_cycle(g: EmbeddedGraph, laminar: Sequence[Cycle], *, bound: int = ECL_BOUND) -> EfficientChoice:
    """A one-sided cycle ``C*`` and at most ``bound`` of its vertices meeting every neighbour.

    All one-sided cycles are tried; the smallest witness set wins, ties going
    to the lexicographically smallest interior signature.
    """
    return _efficient(g, laminar, Mode.VERTEX, bound)


def efficient_cycle_edges(g: EmbeddedGraph, laminar: Sequence[Cycle], *, bound: int = ECL_BOUND) -> EfficientChoice:
    """Edge version: at most ``bound`` edges of ``C*`` meeting every edge-neighbour."""
    return _efficient(g, laminar, Mode.EDGE, bound)


# ---------------------------------------------------------------------------
# Vertex rounding
# ---------------------------------------------------------------------------


def round_vertex(g: EmbeddedGraph, x: FractionalPacking) -> Packing:
    """Take an efficient cycle, drop every support cycle touching it, repeat.

    Each step discards LP mass at most ``|W| <= 5``, so the result has at
    least a fifth of the LP value.
    """
    remaining = {c: v for c, v in x.entries.items() if v > 0}
    _check_laminar(g, list(remaining))
    total = sum(remaining.values(), Fraction(0))
    chosen: list[Cycle] = []
    witnesses: list[int] = []
    while remaining:
        ch = efficient_cycle(g, list(remaining))
        star = ch.cycle
        assert star is not None
        gone = [c for c in remaining if not c.vertex_set.isdisjoint(star.vertex_set)]
        mass = sum((remaining[c] for c in gone), Fraction(0))
        if mass > max(ch.size, 1):
            raise BoundViolated(f"step removed LP mass {mass} with {ch.size} witnesses")
        for c in gone:
            del remaining[c]
        chosen.append(star)
        witnesses.append(ch.size)
    out = Packing(chosen, Mode.VERTEX, {"lp": total, "witness_sizes": witnesses, "bound": Fraction(1, ECL_BOUND)})
    if not out.is_disjoint():
        raise GuaranteeViolation("vertex rounding produced overlapping cycles")
    if len(out) * ECL_BOUND < total:
        raise BoundViolated(f"rounded {len(out)} < LP/5 = {total / ECL_BOUND}")
    return out


def round_weighted_vertex(
    g: EmbeddedGraph, x: FractionalPacking, weights: Mapping[int, Fraction] | None = None
) -> Packing:
    """Fractional local ratio over the efficient-cycle order.

    The order ``e_1, ..., e_m`` comes from extracting efficient cycles one at
    a time, so every later closed neighbourhood carries LP mass at most 5.
    """
    wts = weights if weights is not None else x.weights
    remaining = {c: v for c, v in x.entries.items() if v > 0}
    _check_laminar(g, list(remaining))
    order: list[Cycle] = []
    while remaining:
        ch = efficient_cycle(g, list(remaining))
        star = ch.cycle
        assert star is not None
        mass = sum((v for c, v in remaining.items() if not c.vertex_set.isdisjoint(star.vertex_set)), Fraction(0))
        if mass > ECL_BOUND:
            raise BoundViolated(f"closed neighbourhood carries {mass} > {ECL_BOUND}")
        order.append(star)
        del remaining[star]
    xs = {c: x.entries[c] for c in order}
    w = [Fraction(cycle_weight(c, wts)) for c in order]
    orig = list(w)
    stack: list[int] = []
    for i, c in enumerate(order):
        if w[i] <= 0 or xs[c] <= 0:
            continue
        stack.append(i)
        wi = w[i]
        for j in range(i, len(order)):
            if not order[j].vertex_set.isdisjoint(c.vertex_set):
                w[j] -= wi
    chosen: list[Cycle] = []
    used: set[int] = set()
    for i in reversed(stack):
        c = order[i]
        if used.isdisjoint(c.vertex_set):
            chosen.append(c)
            used |= c.vertex_set
    lp_val = sum((orig[i] * xs[c] for i, c in enumerate(order)), Fraction(0))
    got = sum((cycle_weight(c, wts) for c in chosen), Fraction(0))
    if got * ECL_BOUND < lp_val:
        raise BoundViolated(f"weight {got} < LP/5 = {lp_val / ECL_BOUND}")
    return Packing(chosen, Mode.VERTEX, {"lp": lp_val, "weight": got, "order": order})


# ---------------------------------------------------------------------------
# Edge rounding
# ---------------------------------------------------------------------------


def _chains(g: EmbeddedGraph, cycles: Sequence[Cycle]) -> list[list[int]]:
    """The two containment chains per support edge, as lists of cycle indices."""
    sigs = [g.interior(c) for c in cycles]
    by_edge: dict[int, tuple[list[int], list[int]]] = {}
    for i, c in enumerate(cycles):
        for e in c.edges:
            a, _ = g.edge_faces(e)
            pair = by_edge.setdefault(e, ([], []))
            pair[0 if a in sigs[i] else 1].append(i)
    out = []
    for e in sorted(by_edge):
        for chain in by_edge[e]:
            if not chain:
                continue
            chain.sort(key=lambda i: len(sigs[i]))
            for a, b in zip(chain, chain[1:]):
                if not sigs[a] <= sigs[b]:
                    raise ChainViolation(f"cycles through edge {e} do not nest")
            out.append(chain)
    return out


def _chain_lp(cycles: Sequence[Cycle], chains: list[list[int]], w: Sequence[Fraction]) -> list[int]:
    rows = sorted({tuple(ch) for ch in chains})
    lp = RevisedSimplex([Fraction(1)] * len(rows))
    for j in range(len(cycles)):
        col = {r: Fraction(1) for r, ch in enumerate(rows) if j in ch}
        lp.add_column(col, w[j])
    lp.solve()
    sol = lp.primal()
    if any(v.denominator != 1 for v in sol.values()):
        raise GuaranteeViolation("chain LP optimum is not integral")
    return sorted(j for j, v in sol.items() if v == 1)


def four_color(adj: Sequence[set[int]], *, budget: int = 200_000) -> list[int] | None:
    """Proper 4-colouring by DSATUR backtracking, ``None`` when the node budget runs out."""
    n = len(adj)
    color = [-1] * n
    nodes = 0

    def pick() -> int:
        best, key = -1, None
        for v in range(n):
            if color[v] >= 0:
                continue
            sat = len({color[u] for u in adj[v] if color[u] >= 0})
            k = (-sat, -len(adj[v]), v)
            if key is None or k < key:
                best, key = v, k
        return best

    def rec(done: int) -> bool:
        nonlocal nodes
        if done == n:
            return True
        nodes += 1
        if nodes > budget:
            raise TimeoutError
        v = pick()
        banned = {color[u] for u in adj[v]}
        for c in range(4):
            if c in banned:
                continue
            color[v] = c
            if rec(done + 1):
                return True
        color[v] = -1
        return False

    try:
        return list(color) if rec(0) else None
    except TimeoutError:
        return None


def five_color(adj: Sequence[set[int]]) -> list[int]:
    """Smallest-last greedy colouring with Kempe-chain swaps to stay within five colours.

    Planar graphs always succeed with five; other graphs may get more.
    """
    n = len(adj)
    deg = [len(a) for a in adj]
    alive = set(range(n))
    order = []
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        order.append(v)
        alive.discard(v)
        for u in adj[v]:
            if u in alive:
                deg[u] -= 1
    color = [-1] * n

    def kempe(start: int, a: int, b: int) -> set[int]:
        comp = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp and color[y] in (a, b):
                    comp.add(y)
                    stack.append(y)
        return comp

    for v in reversed(order):
        used = {color[u] for u in adj[v] if color[u] >= 0}
        free = [c for c in range(5) if c not in used]
        if free:
            color[v] = free[0]
            continue
        placed = False
        nbrs = [u for u in adj[v] if color[u] >= 0]
        for a in range(5):
            for b in range(a + 1, 5):
                starts = [u for u in nbrs if color[u] == a]
                comps = set()
                for s in starts:
                    comps |= kempe(s, a, b)
                if any(color[u] == b for u in nbrs if u in comps):
                    continue
                for x in comps:
                    color[x] = b if color[x] == a else a
                color[v] = a
                placed = True
                break
            if placed:
                break
        if not placed:
            color[v] = max(color) + 1
    return color


def round_edge(
    g: EmbeddedGraph, x: FractionalPacking, *, budget: int = 200_000, weights: Mapping[int, Fraction] | None = None
) -> Packing:
    """Chain LP, half-integral packing, colour classes of its conflict graph.

    ``info["bound"]`` is 1/4 when a 4-colouring was found within ``budget``
    and 1/5 when the five-colour fallback was used.
    """
    wts = weights if weights is not None else x.weights
    cycles = sorted(x.entries, key=lambda c: c.key)
    _check_laminar(g, cycles)
    chains = _chains(g, cycles)
    w = [Fraction(cycle_weight(c, wts)) for c in cycles]
    half_idx = _chain_lp(cycles, chains, w)
    half = [cycles[j] for j in half_idx]
    lp_val = sum((w[i] * x.entries[c] for i, c in enumerate(cycles)), Fraction(0))
    half_w = sum((w[j] for j in half_idx), Fraction(0))
    if half_w < lp_val:
        raise GuaranteeViolation(f"chain LP value {half_w} below LP value {lp_val}")
    load: dict[int, int] = {}
    for c in half:
        for e in c.edges:
            load[e] = load.get(e, 0) + 1
    if any(v > 2 for v in load.values()):
        raise GuaranteeViolation("half-integral packing overloads an edge")
    adj: list[set[int]] = [set() for _ in half]
    owner: dict[int, list[int]] = {}
    for i, c in enumerate(half):
        for e in c.edges:
            owner.setdefault(e, []).append(i)
    for idx in owner.values():
        for i in idx:
            adj[i].update(j for j in idx if j != i)
    colors = four_color(adj, budget=budget)
    fallback = colors is None
    if colors is None:
        colors = five_color(adj)
    k = max(colors, default=-1) + 1
    if k > 5:
        raise BoundViolated(f"conflict graph needed {k} colours")
    classes: dict[int, list[int]] = {}
    for i, col in enumerate(colors):
        classes.setdefault(col, []).append(i)
    best = max(sorted(classes), key=lambda col: sum((w[half_idx[i]] for i in classes[col]), Fraction(0)), default=None)
    chosen = [half[i] for i in classes[best]] if best is not None else []
    bound = Fraction(1, 5) if fallback else Fraction(1, 4)
    got = sum((cycle_weight(c, wts) for c in chosen), Fraction(0))
    out = Packing(
        chosen,
        Mode.EDGE,
        {"lp": lp_val, "chain_lp": half_w, "half": half, "colors": k, "fallback": fallback, "bound": bound, "weight": got},
    )
    if not out.is_disjoint():
        raise GuaranteeViolation("edge rounding produced overlapping cycles")
    if got < bound * lp_val:
        raise BoundViolated(f"rounded weight {got} < {bound} * {lp_val}")
    return out
