"""Shared builders for the property and acceptance suites."""

from __future__ import annotations

import random
from typing import Sequence

from cyclepack.exact import enumerate_cycles
from cyclepack.families import FamilySpec, make_family
from cyclepack.generators import random_planar
from cyclepack.lp import refine_min_length, solve_packing_lp
from cyclepack.packing import elements
from cyclepack.planar import Cycle, EmbeddedGraph
from cyclepack.uncross import laminarize_lp

UNDIRECTED = ("all", "girth", "odd", "d-cycle", "hit-d")
DIRECTED = ("all-directed", "girth-directed")
ALL_KINDS = UNDIRECTED + DIRECTED


def family_on(g: EmbeddedGraph, kind: str, seed: int = 0) -> FamilySpec:
    ids = sorted(g.edges)
    dem = ids[seed % 3 :: 3] if ids else []
    return make_family(kind, g, dem)


def random_graph(kind: str, n: int, seed: int) -> EmbeddedGraph:
    directed = kind in DIRECTED
    return random_planar(n, seed, directed=directed, parallel=0.2 if directed else 0.0).graph


def random_laminar(g: EmbeddedGraph, f: FamilySpec, rng: random.Random, size: int, cap: int = 600) -> list[Cycle]:
    """Random family cycles added one by one while they cross nothing chosen so far."""
    cycles = enumerate_cycles(g, f, cap=cap).cycles
    order = list(cycles)
    rng.shuffle(order)
    chosen: list[Cycle] = []
    sigs: list[frozenset[int]] = []
    for c in order:
        s = g.interior(c)
        if all(s <= t or t <= s or not (s & t) for t in sigs):
            chosen.append(c)
            sigs.append(s)
            if len(chosen) == size:
                break
    return chosen


def laminar_support(g: EmbeddedGraph, f: FamilySpec, mode: str, weights=None):
    fp, _ = solve_packing_lp(g, f, mode, weights)
    r = refine_min_length(g, f, mode, fp.value, weights, seed=fp)
    return fp, laminarize_lp(f, r)


def verify_witness(choice, laminar: Sequence[Cycle], mode: str) -> bool:
    """Exhaustive check from scratch: W lies on C* and meets every cycle touching C*."""
    star = choice.cycle
    mine = elements(star, mode)
    if not choice.witness <= mine:
        return False
    for c in set(laminar):
        if c == star or mine.isdisjoint(elements(c, mode)):
            continue
        if choice.witness.isdisjoint(elements(c, mode)):
            return False
    return True


def min_hitting(sets: Sequence[frozenset[int]], limit: int) -> int | None:
    """Size of a smallest hitting set if at most ``limit``, by branching on a smallest unhit set."""

    def rec(chosen: frozenset[int], budget: int) -> bool:
        unhit = [s for s in sets if s.isdisjoint(chosen)]
        if not unhit:
            return True
        if budget == 0:
            return False
        pick = min(unhit, key=len)
        return any(rec(chosen | {x}, budget - 1) for x in sorted(pick))

    for k in range(limit + 1):
        if rec(frozenset(), k):
            return k
    return None
