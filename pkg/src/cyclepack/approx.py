"""Combinatorial packing: face-minimal cycles, layered bands and residual recursion."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .errors import BadParams, GuaranteeViolation
from .families import FamilySpec, membership, support_oracle
from .mis import lex_weights, max_weight_independent_set
from .packing import Mode, Packing, elements
from .planar import Cycle, EmbeddedGraph, outerplanarity_levels

__all__ = ["approx_pack", "baker_pack", "exact_pack_band", "face_minimal_cycles", "k_for_eps"]


def k_for_eps(eps: float | Fraction) -> int:
    """Band width ``k = ceil(1/eps)``; eps must lie strictly between 0 and 1/3."""
    e = Fraction(eps) if not isinstance(eps, float) else Fraction(str(eps))
    if not 0 < e < Fraction(1, 3):
        raise BadParams(f"eps must lie in (0, 1/3), got {eps}")
    return math.ceil(1 / e)


def face_minimal_cycles(g: EmbeddedGraph, f: FamilySpec) -> list[Cycle]:
    """Face-minimal family cycles: finite face boundaries after pruning to the support.

    Cycles come in face order of the pruned graph.
    """
    fam = f if f.graph is g else f.on(g)
    support = support_oracle(fam)
    if not support:
        return []
    h = g.restrict(support)
    fh = fam.on(h)
    out = []
    for fi in h.finite_faces:
        c = h.face_boundary_cycle(fi)
        if c is None:
            continue
        found = membership(fh, c.edge_set)
        if found is not None:
            out.append(found)
    return out


def _conflict_adjacency(cycles: Sequence[Cycle], mode: Mode) -> list[set[int]]:
    owners: dict[int, list[int]] = {}
    for i, c in enumerate(cycles):
        for x in elements(c, mode):
            owners.setdefault(x, []).append(i)
    adj: list[set[int]] = [set() for _ in cycles]
    for idx in owners.values():
        for i in idx:
            adj[i].update(idx)
    for i in range(len(cycles)):
        adj[i].discard(i)
    return adj


def _exact_indices(cycles: Sequence[Cycle], mode: Mode) -> list[int]:
    adj = _conflict_adjacency(cycles, mode)
    return max_weight_independent_set(adj, lex_weights(len(cycles)))


def exact_pack_band(cmin: Sequence[Cycle], band: EmbeddedGraph, mode: Mode | str) -> Packing:
    """Maximum disjoint sub-collection of the face-minimal cycles lying inside ``band``."""
    mode = Mode(mode)
    inside = [c for c in cmin if c.edge_set <= band.edges.keys()]
    chosen = _exact_indices(inside, mode)
    return Packing([inside[i] for i in chosen], mode)


def baker_pack(
    cmin: Sequence[Cycle], g: EmbeddedGraph, eps: float | Fraction, mode: Mode | str
) -> Packing:
    """Near-optimal disjoint sub-collection of ``cmin`` via shifted level bands.

    The graph is pruned to the edges of ``cmin`` and peeled into
    outerplanarity levels.  Band ``i`` holds the cycles whose vertices all
    have levels in ``[i, i+k-1]``; bands whose start is congruent mod ``k``
    are vertex-disjoint, so their exact solutions combine.  The best of the
    ``k`` combinations wins; ties go to the lexicographically smallest index
    set into ``cmin``.
    """
    mode = Mode(mode)
    k = k_for_eps(eps)
    if not cmin:
        return Packing([], mode, {"k": k, "levels": 0})
    h = g.restrict({e for c in cmin for e in c.edges})
    level = outerplanarity_levels(h)
    top = max(level[v] for c in cmin for v in c.vertices)
    span = [(min(level[v] for v in c.vertices), max(level[v] for v in c.vertices)) for c in cmin]
    band_sol: dict[int, list[int]] = {}
    for i in range(2 - k, top + 1):
        members = [j for j, (lo, hi) in enumerate(span) if i <= lo and hi <= i + k - 1]
        if not members:
            band_sol[i] = []
            continue
        local = _exact_indices([cmin[j] for j in members], mode)
        band_sol[i] = [members[t] for t in local]
    best: list[int] | None = None
    best_r = 0
    for r in range(1, k + 1):
        picked: set[int] = set()
        for i, sol in band_sol.items():
            if (i - r) % k == 0:
                picked.update(sol)
        cand = sorted(picked)
        if best is None or len(cand) > len(best) or (len(cand) == len(best) and cand < best):
            best, best_r = cand, r
    assert best is not None
    chosen = [cmin[j] for j in best]
    return Packing(chosen, mode, {"k": k, "levels": top, "shift": best_r, "indices": best})


def approx_pack(g: EmbeddedGraph, f: FamilySpec, eps: float | Fraction, mode: Mode | str) -> Packing:
    """Pack face-minimal cycles with :func:`baker_pack`, delete what they use, repeat.

    Vertex mode deletes the vertices of the chosen cycles, edge mode only
    their edges.  The residual graph inherits the embedding.
    """
    mode = Mode(mode)
    k_for_eps(eps)
    fam = f if f.graph is g else f.on(g)
    cur = g
    out: list[Cycle] = []
    rounds: list[int] = []
    while True:
        cf = fam.on(cur)
        cmin = face_minimal_cycles(cur, cf)
        if not cmin:
            if support_oracle(cf):
                raise GuaranteeViolation("family is nonempty but has no face-minimal cycle")
            break
        layer = baker_pack(cmin, cur, eps, mode)
        if not layer.cycles:
            raise GuaranteeViolation("band packing returned nothing for a nonempty face-minimal set")
        out.extend(layer.cycles)
        rounds.append(len(layer.cycles))
        used = set()
        for c in layer.cycles:
            used |= elements(c, mode)
        cur = cur.delete_vertices(used) if mode is Mode.VERTEX else cur.delete_edges(used)
    return Packing(out, mode, {"rounds": rounds})
