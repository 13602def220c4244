"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

from __future__ import annotations

import random
import time
from fractions import Fraction
from itertools import combinations

import networkx as nx
import pytest

from conftest import k4
from cyclepack.approx import approx_pack, baker_pack, face_minimal_cycles, k_for_eps
from cyclepack.cube import cube_7x7_ecl
from cyclepack.errors import CyclePackError, LengthNotMinimal
from cyclepack.exact import (
    enumerate_cycles,
    exact_lp,
    exact_max_packing,
    exact_min_transversal,
    min_transversal_by_oracle,
)
from cyclepack.families import make_family, membership, min_weight_cycle, uncross_witness
from cyclepack.generators import grid, grid_gap, random_demands, truncated_dodecahedron
from cyclepack.lp import refine_min_length, solve_packing_lp
from cyclepack.packing import elements
from cyclepack.planar import directed_orientation, laminar_forest, outerplanarity_levels
from cyclepack.rounding import efficient_cycle, efficient_cycle_edges, round_edge, round_vertex, round_weighted_vertex
from cyclepack.uncross import CrossingPair, laminarize_lp, strong_uncross
from cyclepack.lp import FractionalPacking
from helpers import ALL_KINDS, DIRECTED, family_on, min_hitting, random_graph, random_laminar, verify_witness

EPS = Fraction(1, 10)


def report(capsys, number: int, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"\n[acceptance] criterion {number:>2} {'PASS' if ok else 'FAIL'}: {detail}")


# ---------------------------------------------------------------------------
# Shared desk corpus
# ---------------------------------------------------------------------------

SEEDS = range(12)


def _desk_instances():
    """(name, graph, family) for every family on seeded random planar graphs plus fixed shapes."""
    out = []
    for kind in ALL_KINDS:
        for s in SEEDS:
            n = 5 + s % 10
            g = random_graph(kind, n, 1000 + s)
            out.append((f"{kind}/random_{n}_{1000 + s}", g, family_on(g, kind, s)))
    for name, g in (("k4", k4()), ("grid4x4", grid(4, 4).graph), ("grid3x5", grid(3, 5).graph)):
        for kind in ("all", "odd", "girth", "d-cycle", "hit-d"):
            out.append((f"{kind}/{name}", g, family_on(g, kind, 1)))
    return out


@pytest.fixture(scope="module")
def desk():
    """Desk instances with their catalogs, LP optima and laminar supports in both modes."""
    rows = []
    for name, g, f in _desk_instances():
        cat = enumerate_cycles(g, f, cap=10_000)
        entry = {"name": name, "g": g, "f": f, "cat": cat}
        for mode in ("vertex", "edge"):
            fp, dual = solve_packing_lp(g, f, mode)
            r = refine_min_length(g, f, mode, fp.value, seed=fp)
            trace: list = []
            lam = laminarize_lp(f, r, trace=trace)
            entry[mode] = {"fp": fp, "dual": dual, "refined": r, "lam": lam, "trace": trace}
        rows.append(entry)
    return rows


# ---------------------------------------------------------------------------
# 1. Uncrossability
# ---------------------------------------------------------------------------


def _triples(f, cat, rng, limit):
    """Valid (C1, C2, P2): P2 a subpath of C2 meeting C1 exactly in its two ends."""
    g = f.graph
    cycles = cat.cycles
    out = []
    if len(cycles) < 2:
        return out
    for _ in range(40 * limit):
        c1, c2 = rng.sample(cycles, 2)
        if len(c1.vertex_set & c2.vertex_set) < 2:
            continue
        if f.directed:
            c1, c2 = directed_orientation(g.edges, c1), directed_orientation(g.edges, c2)
        n = len(c2.edges)
        on = [i for i in range(n) if c2.vertices[i] in c1.vertex_set]
        for t, i in enumerate(on):
            j = on[(t + 1) % len(on)]
            seg = []
            k = i
            while True:
                seg.append(c2.edges[k])
                k = (k + 1) % n
                if k == j:
                    break
            if set(seg) & c1.edge_set or set(seg) == c2.edge_set:
                continue
            out.append((c1, c2, tuple(seg)))
            break
        if len(out) >= limit:
            break
    return out


def test_criterion_01_uncrossability(capsys):
    start = time.perf_counter()
    instances = triples = 0
    failures = []
    for kind in ALL_KINDS:
        for s in range(200):
            n = 4 + s % 13
            g = random_graph(kind, n, s)
            f = family_on(g, kind, s)
            cat = enumerate_cycles(g, f, cap=5000)
            rng = random.Random(s)
            for c1, c2, p2 in _triples(f, cat, rng, 50):
                triples += 1
                try:
                    p1, residual = uncross_witness(f, c1, c2, p2)
                except CyclePackError as exc:
                    failures.append((kind, s, repr(exc)))
                    continue
                closed = set(p1) | set(p2)
                rest = (c1.edge_set - set(p1)) | (c2.edge_set - set(p2))
                if not (f.contains(g.cycle(closed)) and f.contains(residual) and residual.edge_set <= rest):
                    failures.append((kind, s, "bad witness"))
            instances += 1
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 120
    report(capsys, 1, ok, f"{instances} instances, {triples} triples, {len(failures)} failures, {elapsed:.1f}s (< 120s)")
    assert not failures, failures[:5]
    assert elapsed < 120


# ---------------------------------------------------------------------------
# 2. Strong uncrossing
# ---------------------------------------------------------------------------


def test_criterion_02_strong_uncrossing(capsys):
    rng = random.Random(2)
    done = 0
    failures = []
    s = 0
    while done < 500:
        kind = ALL_KINDS[s % len(ALL_KINDS)]
        g = random_graph(kind, 5 + s % 10, 5000 + s)
        f = family_on(g, kind, s)
        s += 1
        cycles = enumerate_cycles(g, f, cap=2000).cycles
        pairs = [(a, b) for i, a in enumerate(cycles) for b in cycles[i + 1 :] if len(a.vertex_set & b.vertex_set) >= 2]
        for a, b in rng.sample(pairs, min(5, len(pairs))):
            if f.directed:
                a, b = directed_orientation(g.edges, a), directed_orientation(g.edges, b)
            v, w = rng.sample(sorted(a.vertex_set & b.vertex_set), 2)
            pair = CrossingPair.split(a, b, v, w)
            options = [(pair.a1 + pair.a2, pair.b1 + pair.b2), (pair.a1 + pair.b2, pair.b1 + pair.a2)]
            # independent route: some pairing has both parts containing a family cycle
            expect = any(membership(f, x) is not None and membership(f, y) is not None for x, y in options)
            try:
                x, y = strong_uncross(f, pair)
                good = f.contains(x) and f.contains(y) and any(
                    x.edge_set <= set(p) and y.edge_set <= set(q) for p, q in options
                )
            except CyclePackError:
                good = False
            if not (good and expect):
                failures.append((kind, s, a, b, v, w))
            done += 1
            if done >= 500:
                break
    report(capsys, 2, not failures, f"{done} pairs sharing >= 2 vertices, {len(failures)} failures")
    assert not failures, failures[:3]


# ---------------------------------------------------------------------------
# 3. Efficient Cycle Lemma
# ---------------------------------------------------------------------------


def test_criterion_03_efficient_cycle_lemma(desk, capsys):
    checked = 0
    failures = []
    worst = 0
    for row in desk:
        g = row["g"]
        for mode, finder in (("vertex", efficient_cycle), ("edge", efficient_cycle_edges)):
            lam = row[mode]["lam"].support
            if not lam:
                continue
            ch = finder(g, lam)
            checked += 1
            worst = max(worst, ch.size)
            if ch.size > 5 or not verify_witness(ch, lam, mode):
                failures.append((row["name"], mode))
    rng = random.Random(3)
    for t in range(500):
        kind = ALL_KINDS[t % len(ALL_KINDS)]
        g = random_graph(kind, 5 + t % 12, 9000 + t)
        f = family_on(g, kind, t)
        lam = random_laminar(g, f, rng, rng.randint(2, 14))
        if not lam:
            lam = [g.face_boundary_cycle(x) for x in g.finite_faces if g.face_boundary_cycle(x) is not None][:1]
        if not lam:
            continue
        for mode, finder in (("vertex", efficient_cycle), ("edge", efficient_cycle_edges)):
            ch = finder(g, lam)
            checked += 1
            worst = max(worst, ch.size)
            if ch.size > 5 or not verify_witness(ch, lam, mode):
                failures.append((kind, t, mode))
    # tightness on the truncated dodecahedron: exact minimum over all one-sided cycles
    inst = truncated_dodecahedron()
    dg = inst.graph
    dec = [dg.cycle(ids) for ids in inst.meta["decagons"]]
    need = []
    for c in dec:
        nbrs = [d.vertex_set & c.vertex_set for d in dec if d != c and d.vertex_set & c.vertex_set]
        need.append(min_hitting(nbrs, 10))
    dodeca_min = min(need)
    dodeca_ok = dodeca_min == 5 and efficient_cycle(dg, dec).size == 5
    # cube lattice: no three vertices hit any closed neighbourhood
    cube = cube_7x7_ecl()
    cg = cube.graph
    fam = [cg.cycle(ids) for ids in cube.meta["blue"] + cube.meta["red"]]
    laminar_forest(fam, cg)
    cube_hit = sum(
        1 for c in fam if min_hitting([d.vertex_set for d in fam if d.vertex_set & c.vertex_set], 3) is not None
    )
    ok = not failures and dodeca_ok and cube_hit == 0
    report(
        capsys,
        3,
        ok,
        f"{checked} laminar families, max |W| = {worst}, {len(failures)} failures; "
        f"dodecahedron min |W| = {dodeca_min}; cube: {cube_hit} of {len(fam)} neighbourhoods hit by 3 vertices",
    )
    assert not failures, failures[:5]
    assert dodeca_ok and cube_hit == 0


# ---------------------------------------------------------------------------
# 4. Combinatorial guarantee
# ---------------------------------------------------------------------------


def test_criterion_04_combinatorial(desk, capsys):
    start = time.perf_counter()
    runs = 0
    failures = []
    worst = None
    for row in desk:
        cat = row["cat"]
        if cat.truncated:
            continue
        for mode in ("vertex", "edge"):
            opt = exact_max_packing(cat, mode).size
            p = approx_pack(row["g"], row["f"], EPS, mode)
            runs += 1
            valid = p.is_disjoint() and all(row["f"].contains(c) for c in p.cycles)
            if not valid or p.size < (Fraction(1, 3) - EPS) * opt:
                failures.append((row["name"], mode, p.size, opt))
            if opt:
                r = Fraction(p.size, opt)
                worst = r if worst is None else min(worst, r)
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 300
    report(capsys, 4, ok, f"{runs} runs, worst ratio {worst}, bound 7/30, {elapsed:.1f}s (< 300s)")
    assert not failures, failures[:5]
    assert elapsed < 300


# ---------------------------------------------------------------------------
# 5. LP correctness
# ---------------------------------------------------------------------------


def test_criterion_05_lp_values(desk, capsys):
    compared = 0
    failures = []
    for row in desk:
        if row["cat"].truncated:
            continue
        for mode in ("vertex", "edge"):
            compared += 1
            if row[mode]["fp"].value != exact_lp(row["cat"], mode):
                failures.append((row["name"], mode))
    g = k4()
    k4_value = solve_packing_lp(g, make_family("all", g), "vertex")[0].value
    ok = not failures and k4_value == Fraction(4, 3)
    report(capsys, 5, ok, f"{compared} exact comparisons, {len(failures)} mismatches; K4 vertex LP = {k4_value}")
    assert not failures
    assert k4_value == Fraction(4, 3)


# ---------------------------------------------------------------------------
# 6. Laminarization
# ---------------------------------------------------------------------------


def test_criterion_06_laminarization(desk, capsys):
    runs = steps = 0
    failures = []
    for row in desk:
        for mode in ("vertex", "edge"):
            d = row[mode]
            lam, r = d["lam"], d["refined"]
            runs += 1
            ok = lam.objective() == r.objective() == d["fp"].value and lam.is_feasible() or not lam.entries
            try:
                laminar_forest(lam.support, row["g"])
            except CyclePackError:
                ok = False
            for st in d["trace"]:
                steps += 1
                before = sorted(e for c in st["removed"] for e in c.edges)
                after = sorted(e for c in st["added"] for e in c.edges)
                ok = ok and before == after
            ok = ok and lam.edge_load() == r.edge_load()
            if not ok:
                failures.append((row["name"], mode))
    # supplementary inputs with deliberately crossing supports
    rng = random.Random(6)
    crossing_runs = skipped = 0
    for t in range(200):
        g = grid(4, 4).graph if t % 2 else random_graph("all", 10, 6000 + t)
        f = make_family("all", g)
        cycles = enumerate_cycles(g, f, cap=2000).cycles
        if len(cycles) < 2:
            continue
        pick = list({c: None for c in rng.sample(cycles, min(len(cycles), rng.randint(2, 4)))})
        x = FractionalPacking({c: Fraction(1, len(pick)) for c in pick}, "edge", Fraction(1))
        trace = []
        try:
            lam = laminarize_lp(f, x, trace=trace)
        except LengthNotMinimal:
            skipped += 1
            continue
        crossing_runs += 1
        ok = lam.objective() == x.objective() and lam.edge_load() == x.edge_load()
        for st in trace:
            steps += 1
            ok = ok and sorted(e for c in st["removed"] for e in c.edges) == sorted(e for c in st["added"] for e in c.edges)
        try:
            laminar_forest(lam.support, g)
        except CyclePackError:
            ok = False
        if not ok:
            failures.append(("crossing", t))
    report(
        capsys,
        6,
        not failures,
        f"{runs} LP supports and {crossing_runs} crossing inputs ({skipped} not length-minimal), "
        f"{steps} uncrossing steps, {len(failures)} failures",
    )
    assert not failures


# ---------------------------------------------------------------------------
# 7. Vertex rounding
# ---------------------------------------------------------------------------


def test_criterion_07_round_vertex(desk, capsys):
    runs = 0
    failures = []
    worst = None
    inputs = [(row["name"], row["g"], row["f"], row["vertex"]["lam"]) for row in desk]
    rng = random.Random(7)
    for t in range(100):
        kind = ALL_KINDS[t % len(ALL_KINDS)]
        g = random_graph(kind, 6 + t % 10, 7000 + t)
        f = family_on(g, kind, t)
        lam = random_laminar(g, f, rng, rng.randint(1, 12))
        if not lam:
            continue
        raw = {c: Fraction(rng.randint(1, 6), rng.randint(1, 6)) for c in lam}
        load = {}
        for c, v in raw.items():
            for x in c.vertex_set:
                load[x] = load.get(x, 0) + v
        scale = max(load.values())
        x = {c: v / scale for c, v in raw.items()}
        inputs.append((f"laminar/{kind}/{t}", g, f, FractionalPacking(x, "vertex", sum(x.values()))))
    for name, g, f, lam in inputs:
        p = round_vertex(g, lam)
        runs += 1
        val = lam.objective() if lam.weights is None else sum(lam.entries.values())
        if not p.is_disjoint() or 5 * p.size < val:
            failures.append(name)
        if val:
            r = p.size / val
            worst = r if worst is None else min(worst, r)
    report(capsys, 7, not failures, f"{runs} laminar inputs, worst |packing|/LP = {worst}, bound 1/5")
    assert not failures


# ---------------------------------------------------------------------------
# 8. Edge rounding
# ---------------------------------------------------------------------------


def test_criterion_08_round_edge(desk, capsys):
    runs = fallbacks = 0
    failures = []
    worst = None
    for row in desk:
        lam = row["edge"]["lam"]
        p = round_edge(row["g"], lam)
        runs += 1
        fallbacks += bool(p.info["fallback"])
        bound = Fraction(1, 5) if p.info["fallback"] else Fraction(1, 4)
        if not p.is_disjoint() or p.size < bound * lam.value or p.info["chain_lp"] < lam.value:
            failures.append(row["name"])
        if lam.value:
            r = p.size / lam.value
            worst = r if worst is None else min(worst, r)
    report(
        capsys,
        8,
        not failures,
        f"{runs} instances, chain LP integral on all, {fallbacks} five-colour fallbacks, worst ratio {worst}",
    )
    assert not failures


# ---------------------------------------------------------------------------
# 9. Weighted rounding
# ---------------------------------------------------------------------------


def test_criterion_09_weighted(capsys):
    failures = []
    worst = None
    for seed in range(100):
        inst = random_demands(1 + seed % 5, seed)
        g = inst.graph
        f = make_family("d-cycle", g, inst.demand_edges)
        fp, _ = solve_packing_lp(g, f, "vertex", inst.demand_weights)
        r = refine_min_length(g, f, "vertex", fp.value, inst.demand_weights, seed=fp)
        lam = laminarize_lp(f, r)
        p = round_weighted_vertex(g, lam)
        got = sum((Fraction(inst.demand_weights[d]) for c in p.cycles for d in c.edge_set & f.demand), Fraction(0))
        if not p.is_disjoint() or 5 * got < fp.value or got != p.info["weight"]:
            failures.append(seed)
        if fp.value:
            ratio = got / fp.value
            worst = ratio if worst is None else min(worst, ratio)
    report(capsys, 9, not failures, f"100 weighted paths instances, worst weight/LP = {worst}, bound 1/5")
    assert not failures


# ---------------------------------------------------------------------------
# 10. Erdos-Posa ratio
# ---------------------------------------------------------------------------


def test_criterion_10_erdos_posa(desk, capsys):
    runs = 0
    failures = []
    worst = Fraction(0)
    for row in desk:
        cat = row["cat"]
        if cat.truncated or len(cat) > 3000:
            continue
        t = len(exact_min_transversal(cat, "vertex"))
        p = exact_max_packing(cat, "vertex").size
        runs += 1
        if t > 12 * p:
            failures.append(row["name"])
        if p:
            worst = max(worst, Fraction(t, p))
    inst = grid_gap(4)
    g = inst.graph
    f = make_family("hit-d", g, inst.demand_edges)
    integral = len(min_transversal_by_oracle(g, f, "vertex"))
    # independent route for the lower bound: with any two vertices removed a demand edge stays on a cycle
    h = nx.Graph(list(g.edges.values()))
    survives = True
    for removed in combinations(sorted(g.vertices), 2):
        rest = h.copy()
        rest.remove_nodes_from(removed)
        alive = False
        for d in inst.demand_edges:
            u, v = g.edges[d]
            if u in rest and v in rest:
                rest.remove_edge(u, v)
                alive = alive or nx.has_path(rest, u, v)
                rest.add_edge(u, v)
        survives = survives and alive
    mid = set(inst.meta["middle_vertices"])
    x = {v: Fraction(1, 4) if v in mid else Fraction(0) for v in g.vertices}
    value = sum(x.values())
    # feasibility by two routes: cheapest cycle under vertex prices, and full enumeration
    prices = {e: (x[u] + x[v]) / 2 for e, (u, v) in g.edges.items()}
    cheapest = min_weight_cycle(f, prices)[0]
    cat = enumerate_cycles(g, f, cap=200_000)
    enum_ok = not cat.truncated and all(sum(x[v] for v in c.vertex_set) >= 1 for c in cat.cycles)
    gap_ok = integral >= 3 and survives and value == 2 and cheapest >= 1 and enum_ok
    ok = not failures and gap_ok
    report(
        capsys,
        10,
        ok,
        f"{runs} instances, worst transversal/packing = {worst} (<= 12); grid_gap(4): transversal {integral}, "
        f"x_v = 1/4 feasible over {len(cat)} cycles, value {value}",
    )
    assert not failures
    assert gap_ok


# ---------------------------------------------------------------------------
# 11. Baker exactness
# ---------------------------------------------------------------------------


def _mis_size(sets):
    comp = nx.Graph()
    comp.add_nodes_from(range(len(sets)))
    comp.add_edges_from((i, j) for i, j in combinations(range(len(sets)), 2) if not (sets[i] & sets[j]))
    for v in comp:
        comp.nodes[v]["w"] = 1
    return nx.max_weight_clique(comp, weight="w")[1] if sets else 0


def test_criterion_11_baker_exact(desk, capsys):
    k = k_for_eps(EPS)
    runs = 0
    failures = []
    for row in desk:
        g, f = row["g"], row["f"]
        cm = face_minimal_cycles(g, f)
        if not cm:
            continue
        h = g.restrict({e for c in cm for e in c.edges})
        if max(outerplanarity_levels(h).values()) > k:
            continue
        for mode in ("vertex", "edge"):
            p = baker_pack(cm, g, EPS, mode)
            runs += 1
            if p.size != _mis_size([elements(c, mode) for c in cm]) or not p.is_disjoint():
                failures.append((row["name"], mode))
    report(capsys, 11, not failures and runs > 0, f"{runs} runs within {k} levels, {len(failures)} mismatches")
    assert not failures and runs > 0
