"""Uncrossing: pair splits, laminar multisets and laminar LP supports."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import GuaranteeViolation, LengthNotMinimal, NoUncrossing, NoWitness
from .families import FamilySpec, membership, uncross_witness
from .lp import FractionalPacking
from .planar import Cycle, CrossingRelation, EmbeddedGraph, cycle_from_edges, directed_orientation, relation_of_sets

__all__ = [
    "CrossingPair",
    "crossing_count",
    "crossing_pair",
    "laminarize_lp",
    "scaled_laminar_lp",
    "signature_potential",
    "strong_uncross",
    "uncross_multiset",
    "uncross_pairwise",
]


@dataclass(frozen=True)
class CrossingPair:
    """Two cycles and two common vertices ``v != w``, with the four arcs between them.

    ``a1``/``b1`` are the arcs of ``c1`` from v to w and from w to v in
    traversal order, likewise ``a2``/``b2`` for ``c2``.
    """

    c1: Cycle
    c2: Cycle
    v: int
    w: int
    a1: tuple[int, ...]
    b1: tuple[int, ...]
    a2: tuple[int, ...]
    b2: tuple[int, ...]

    @classmethod
    def split(cls, c1: Cycle, c2: Cycle, v: int, w: int) -> CrossingPair:
        if v == w or not {v, w} <= (c1.vertex_set & c2.vertex_set):
            raise ValueError("v and w must be distinct common vertices")
        return cls(c1, c2, v, w, c1.arc(v, w), c1.arc(w, v), c2.arc(v, w), c2.arc(w, v))


def _sides(g: EmbeddedGraph, c1: Cycle, c2: Cycle) -> list[int]:
    """Per edge of ``c2`` in traversal order: 0 on ``c1``, +1 strictly inside, -1 outside."""
    inside = g.interior(c1)
    out = []
    for e in c2.edges:
        if e in c1.edge_set:
            out.append(0)
        else:
            a, b = g.edge_faces(e)
            out.append(1 if a in inside else -1)
    return out


def _transitions(g: EmbeddedGraph, c1: Cycle, c2: Cycle) -> list[int]:
    """Vertices of ``c2`` where it passes from one side of ``c1`` to the other.

    A shared stretch between the two sides is represented by its first vertex.
    """
    lab = _sides(g, c1, c2)
    n = len(lab)
    start = next((i for i in range(n) if lab[i]), None)
    if start is None:
        return []
    last = lab[start]
    pending: int | None = None
    out = []
    for t in range(1, n + 1):
        i = (start + t) % n
        if lab[i] == 0:
            if pending is None:
                pending = c2.vertices[i]
            continue
        if lab[i] != last:
            out.append(pending if pending is not None else c2.vertices[i])
        pending = None
        last = lab[i]
    return out


def crossing_count(g: EmbeddedGraph, c1: Cycle, c2: Cycle) -> int:
    """Number of points where ``c2`` switches sides of ``c1`` (even; positive iff they cross)."""
    return len(_transitions(g, c1, c2))


def crossing_pair(g: EmbeddedGraph, c1: Cycle, c2: Cycle, *, directed: bool = False) -> CrossingPair | None:
    """Split points for two crossing cycles: the first two side switches of ``c2``."""
    ts = _transitions(g, c1, c2)
    if len(ts) < 2:
        return None
    if directed:
        c1 = directed_orientation(g.edges, c1)
        c2 = directed_orientation(g.edges, c2)
    return CrossingPair.split(c1, c2, ts[0], ts[1])


@dataclass
class _Split:
    c1: Cycle
    c2: Cycle
    conserving: bool
    pairing: int


def _strong_uncross(f: FamilySpec, pair: CrossingPair, prefer_conserving: bool) -> _Split:
    before = Counter(pair.c1.edges) + Counter(pair.c2.edges)
    options = [(pair.a1 + pair.a2, pair.b1 + pair.b2), (pair.a1 + pair.b2, pair.b1 + pair.a2)]
    found: list[_Split] = []
    for idx, (x, y) in enumerate(options):
        cx = membership(f, x)
        if cx is None:
            continue
        cy = membership(f, y)
        if cy is None:
            continue
        split = _Split(cx, cy, Counter(cx.edges) + Counter(cy.edges) == before, idx)
        if split.conserving or not prefer_conserving:
            return split
        found.append(split)
    if found:
        return found[0]
    raise NoUncrossing(f"no pairing works for {pair.c1!r}, {pair.c2!r} at {pair.v}, {pair.w}")


def strong_uncross(f: FamilySpec, pair: CrossingPair) -> tuple[Cycle, Cycle]:
    """Recombine the arcs of a crossing pair into two family cycles.

    Tries ``{A1+A2, B1+B2}`` and ``{A1+B2, B1+A2}``; a pairing whose two
    parts both contain family cycles is used (one that keeps every edge is
    preferred).
    """
    s = _strong_uncross(f, pair, prefer_conserving=True)
    return s.c1, s.c2


# ---------------------------------------------------------------------------
# Multisets
# ---------------------------------------------------------------------------


def _inside_segment(g: EmbeddedGraph, c1: Cycle, c2: Cycle) -> tuple[int, ...] | None:
    """A maximal run of ``c2`` strictly inside ``c1`` whose inner vertices avoid ``c1``."""
    inside = g.interior(c1)
    n = len(c2.edges)
    strict = [e not in c1.edge_set and g.strictly_inside_edge(e, inside) for e in c2.edges]
    if not any(strict):
        return None
    i = strict.index(True)
    # walk back to the run start: the vertex entering edge i must be on c1
    while c2.vertices[i] not in c1.vertex_set:
        i = (i - 1) % n
    seg = []
    j = i
    while True:
        seg.append(c2.edges[j])
        j = (j + 1) % n
        if c2.vertices[j] in c1.vertex_set:
            break
    return tuple(seg)


def uncross_multiset(f: FamilySpec, cycles: Sequence[Cycle]) -> list[Cycle]:
    """Laminar multiset of family cycles of the same size whose coverage is dominated.

    Takes cycles one at a time; while some remaining cycle crosses the
    current one, a piece of it inside the current cycle replaces part of the
    current cycle (shrinking its interior) and the other cycle is replaced by
    the exchange residue.
    """
    g = f.graph
    pending = list(cycles)
    done: list[Cycle] = []
    while pending:
        c1 = pending.pop(0)
        while True:
            sig1 = g.interior(c1)
            idx = next(
                (
                    i
                    for i, c in enumerate(pending)
                    if relation_of_sets(sig1, g.interior(c)) is CrossingRelation.CROSSING
                ),
                None,
            )
            if idx is None:
                break
            c2 = pending[idx]
            if f.directed:
                c1 = directed_orientation(g.edges, c1)
                c2 = directed_orientation(g.edges, c2)
            p2 = _inside_segment(g, c1, c2)
            if p2 is None:
                raise GuaranteeViolation("crossing cycle has no segment inside the other")
            try:
                p1, residual = uncross_witness(f, c1, c2, p2)
            except NoWitness as exc:
                raise NoUncrossing(str(exc)) from exc
            new1 = cycle_from_edges(g.edges, set(p1) | set(p2))
            if not g.interior(new1) < sig1:
                raise GuaranteeViolation("exchange did not shrink the interior")
            pending[idx] = residual
            c1 = new1
        done.append(c1)
    return done


def signature_potential(g: EmbeddedGraph, entries: dict[Cycle, Fraction] | Sequence[Cycle]) -> Fraction:
    """Sum over cycles of ``x_C * |I(C)| * (|F| - |I(C)|)``; uncrossing steps decrease it."""
    total = g.num_faces
    items = entries.items() if isinstance(entries, dict) else ((c, Fraction(1)) for c in entries)
    acc = Fraction(0)
    for c, x in items:
        s = len(g.interior(c))
        acc += x * s * (total - s)
    return acc


def uncross_pairwise(f: FamilySpec, cycles: Sequence[Cycle], *, max_steps: int | None = None) -> tuple[list[Cycle], list[tuple[int, int]]]:
    """Repeated strong uncrossing of crossing pairs in a multiset.

    Returns the final multiset and the trace of the potential
    ``(total edge count, total pairwise crossing count)`` after every step.
    """
    g = f.graph
    cur = list(cycles)

    def potential() -> tuple[int, int]:
        edges = sum(len(c) for c in cur)
        cr = 0
        for i in range(len(cur)):
            for j in range(i + 1, len(cur)):
                cr += crossing_count(g, cur[i], cur[j])
        return edges, cr

    trace = [potential()]
    limit = max_steps if max_steps is not None else 50 * (len(cur) + 1) ** 2 * (len(g.vertices) + 1)
    steps = 0
    while True:
        pair = None
        for i in range(len(cur)):
            for j in range(i + 1, len(cur)):
                if relation_of_sets(g.interior(cur[i]), g.interior(cur[j])) is CrossingRelation.CROSSING:
                    pair = (i, j)
                    break
            if pair:
                break
        if pair is None:
            return cur, trace
        i, j = pair
        cp = crossing_pair(g, cur[i], cur[j], directed=f.directed)
        assert cp is not None
        split = _strong_uncross(f, cp, prefer_conserving=True)
        cur[i], cur[j] = split.c1, split.c2
        trace.append(potential())
        steps += 1
        if steps > limit:
            raise GuaranteeViolation("pairwise uncrossing exceeded its step budget")


# ---------------------------------------------------------------------------
# LP supports
# ---------------------------------------------------------------------------


def laminarize_lp(f: FamilySpec, x: FractionalPacking, *, trace: list | None = None) -> FractionalPacking:
    """Make the support of a value- and length-optimal packing laminar.

    Each step takes a crossing support pair, strongly uncrosses it until the
    two new cycles no longer cross, and moves ``min(x_C1, x_C2)`` onto them.
    Every step must keep the edge multiset; a shortening step means the
    input was not length-minimal (:class:`LengthNotMinimal`).
    """
    g = f.graph
    entries = dict(x.entries)
    objective = x.objective()
    load = x.edge_load()
    faces = g.num_faces
    budget = 4 * (len(entries) + 1) ** 2 * (faces + 1) ** 2
    steps = 0

    def find_pair() -> tuple[Cycle, Cycle] | None:
        supp = sorted(entries, key=lambda c: c.key)
        sigs = [g.interior(c) for c in supp]
        for i in range(len(supp)):
            for j in range(i + 1, len(supp)):
                if relation_of_sets(sigs[i], sigs[j]) is CrossingRelation.CROSSING:
                    return supp[i], supp[j]
        return None

    while True:
        pair = find_pair()
        if pair is None:
            break
        c1, c2 = pair
        a, b = c1, c2
        inner = 0
        while relation_of_sets(g.interior(a), g.interior(b)) is CrossingRelation.CROSSING:
            cp = crossing_pair(g, a, b, directed=f.directed)
            assert cp is not None
            split = _strong_uncross(f, cp, prefer_conserving=True)
            if not split.conserving:
                raise LengthNotMinimal("an uncrossing step shortened the support")
            a, b = split.c1, split.c2
            inner += 1
            if inner > budget:
                raise GuaranteeViolation("pair uncrossing exceeded its step budget")
        delta = min(entries[c1], entries[c2])
        pot_before = signature_potential(g, entries)
        for c in (c1, c2):
            entries[c] -= delta
            if entries[c] == 0:
                del entries[c]
        for c in (a, b):
            entries[c] = entries.get(c, Fraction(0)) + delta
        steps += 1
        if trace is not None:
            trace.append(
                {
                    "step": steps,
                    "removed": [c1, c2],
                    "added": [a, b],
                    "delta": delta,
                    "potential": signature_potential(g, entries),
                    "potential_before": pot_before,
                }
            )
        if steps > budget:
            raise GuaranteeViolation("laminarization exceeded its step budget")
    out = FractionalPacking(entries, x.mode, x.value, x.weights, dict(x.info))
    out.info["laminarize_steps"] = steps
    if out.objective() != objective:
        raise GuaranteeViolation("laminarization changed the objective")
    if out.edge_load() != {e: v for e, v in load.items() if v}:
        raise GuaranteeViolation("laminarization changed edge coverage")
    return out


def scaled_laminar_lp(f: FamilySpec, x: FractionalPacking, eps: Fraction | float) -> FractionalPacking:
    """Near-optimal laminar solution by scaling to a multiset and uncrossing it.

    With ``K`` support cycles, ``C`` gets ``floor(K x_C / (eps LP))`` copies;
    the laminar multiset, scaled back, keeps at least ``(1 - eps) LP``.
    Not used by the exact pipeline, which calls :func:`laminarize_lp`.
    """
    e = Fraction(str(eps)) if isinstance(eps, float) else Fraction(eps)
    if e <= 0:
        raise ValueError("eps must be positive")
    lp = x.objective()
    if lp == 0:
        return FractionalPacking({}, x.mode, Fraction(0), x.weights, {"eps": e})
    k = len(x.entries)
    scale = Fraction(k) / (e * lp)
    multiset: list[Cycle] = []
    for c in x.support:
        multiset.extend([c] * math.floor(scale * x.entries[c]))
    laminar = uncross_multiset(f, multiset)
    counts = Counter(laminar)
    entries = {c: Fraction(z) / scale for c, z in counts.items()}
    out = FractionalPacking(entries, x.mode, Fraction(0), x.weights, {"eps": e, "copies": len(multiset), "lp": lp})
    out.value = out.objective()
    return out
