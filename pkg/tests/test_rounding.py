from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import disjoint_triangles, drawn, edge_cycle, k4, two_triangles_sharing_edge
from cyclepack.cube import cube_7x7_ecl
from cyclepack.errors import NotLaminar
from cyclepack.families import make_family
from cyclepack.generators import grid, random_demands, random_planar, truncated_dodecahedron
from cyclepack.lp import FractionalPacking, solve_packing_lp
from cyclepack.planar import euler_ok, laminar_forest
from cyclepack.rounding import (
    efficient_cycle,
    efficient_cycle_edges,
    five_color,
    four_color,
    one_sided,
    round_edge,
    round_vertex,
    round_weighted_vertex,
)
from helpers import UNDIRECTED, family_on, laminar_support, min_hitting, random_laminar, verify_witness


def _nest_4x4():
    g = grid(4, 4).graph
    outer = g.face_boundary_cycle(g.infinite_face)
    top = edge_cycle(g, [0, 1, 2, 3, 7, 6, 5, 4])
    left_sq = edge_cycle(g, [0, 1, 5, 4])
    right_sq = edge_cycle(g, [2, 3, 7, 6])
    bottom = edge_cycle(g, [8, 9, 10, 11, 15, 14, 13, 12])
    return g, outer, top, left_sq, right_sq, bottom


# ---------------------------------------------------------------------------
# One-sided cycles
# ---------------------------------------------------------------------------


def test_disjoint_interiors_all_one_sided():
    g = grid(3, 3).graph
    sq = [g.face_boundary_cycle(f) for f in g.finite_faces]
    assert set(one_sided(g, sq)) == set(sq)


def test_chain_of_three():
    g, outer, top, left_sq, _, _ = _nest_4x4()
    assert set(one_sided(g, [outer, top, left_sq])) == {outer, left_sq}


def test_nesting_leaves_plus_outermost():
    g, outer, top, left_sq, right_sq, bottom = _nest_4x4()
    cycles = [outer, top, left_sq, right_sq, bottom]
    forest = laminar_forest(cycles, g)
    leaves = {cycles[i] for i in forest.leaves()}
    assert set(one_sided(g, cycles)) == leaves | {outer}
    assert top not in one_sided(g, cycles)


def test_crossing_input_rejected():
    g = grid(3, 3).graph
    with pytest.raises(NotLaminar):
        one_sided(g, [edge_cycle(g, [0, 1, 2, 5, 4, 3]), edge_cycle(g, [0, 1, 4, 7, 6, 3])])


# ---------------------------------------------------------------------------
# Efficient cycles
# ---------------------------------------------------------------------------


def test_singleton_has_empty_witness():
    g = k4()
    c = edge_cycle(g, [0, 1, 2])
    ch = efficient_cycle(g, [c])
    assert ch.cycle == c and ch.witness == frozenset()


def test_truncated_dodecahedron_needs_five():
    inst = truncated_dodecahedron()
    g = inst.graph
    assert (g.n, len(g.edges)) == (60, 90)
    dec = [g.cycle(ids) for ids in inst.meta["decagons"]]
    assert len(dec) == 12
    assert set(one_sided(g, dec)) == set(dec)
    ch = efficient_cycle(g, dec)
    assert ch.size == 5 and verify_witness(ch, dec, "vertex")
    for c in dec:
        nbrs = [d.vertex_set & c.vertex_set for d in dec if d != c and d.vertex_set & c.vertex_set]
        assert len(nbrs) == 5
        # no four vertices of c meet all five neighbours
        assert all(any(not (set(x) & s) for s in nbrs) for x in combinations(sorted(c.vertex_set), 4))


def test_edge_version_examples():
    g = two_triangles_sharing_edge()
    a, b = edge_cycle(g, [0, 1, 2]), edge_cycle(g, [0, 1, 3])
    ch = efficient_cycle_edges(g, [a, b])
    assert ch.witness == {0}
    g2 = grid(3, 3).graph
    sq = [g2.face_boundary_cycle(f) for f in g2.finite_faces]
    corners = [sq[0], sq[-1]] if sq[0].edge_set.isdisjoint(sq[-1].edge_set) else sq[:1]
    assert efficient_cycle_edges(g2, corners).witness == frozenset()


@given(st.sampled_from(UNDIRECTED), st.integers(4, 13), st.integers(0, 10_000), st.integers(2, 12))
def test_efficient_cycle_on_random_laminar_families(kind, n, seed, size):
    g = random_planar(n, seed).graph
    f = family_on(g, kind, seed)
    lam = random_laminar(g, f, random.Random(seed), size)
    assume(lam)
    for finder, mode in ((efficient_cycle, "vertex"), (efficient_cycle_edges, "edge")):
        ch = finder(g, lam)
        assert ch.size <= 5
        assert verify_witness(ch, lam, mode)
        assert ch.cycle in one_sided(g, lam)


# ---------------------------------------------------------------------------
# The cube lattice instance
# ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def cube():
    inst = cube_7x7_ecl()
    g = inst.graph
    blue = [g.cycle(ids) for ids in inst.meta["blue"]]
    red = [g.cycle(ids) for ids in inst.meta["red"]]
    return inst, g, blue, red


def test_cube_structure(cube):
    inst, g, blue, red = cube
    assert euler_ok(g)
    assert len(blue) == inst.meta["lattice_vertices"] == 218
    assert len(red) == 24
    laminar_forest(blue + red, g)
    # blue cycles meet in one vertex exactly along lattice edges: 432 touching pairs
    touching = sum(1 for a, b in combinations(blue, 2) if a.vertex_set & b.vertex_set)
    assert touching == inst.meta["lattice_edges"] == 432
    assert all(len(a.vertex_set & b.vertex_set) <= 1 for a, b in combinations(blue, 2))
    lat = nx.Graph()
    lat.add_edges_from((i, j) for i, j in combinations(range(len(blue)), 2) if blue[i].vertex_set & blue[j].vertex_set)
    # the lattice is the cube surface: planar, 3-connected, with 8 corners of degree 3
    assert sorted(d for _, d in lat.degree() if d == 3) == [3] * 8
    assert sorted(v for v, d in lat.degree() if d == 3) == inst.meta["corners"]


def test_cube_no_three_vertices_hit_a_neighbourhood(cube):
    _, g, blue, red = cube
    fam = blue + red
    for c in fam:
        closed = [d.vertex_set for d in fam if d.vertex_set & c.vertex_set]
        assert min_hitting(closed, 3) is None


def test_cube_corner_neighbourhoods(cube):
    inst, g, blue, red = cube
    fam = blue + red
    for i in inst.meta["corners"]:
        c = blue[i]
        nb = [d for d in fam if d != c and d.vertex_set & c.vertex_set]
        assert sum(1 for d in nb if d in blue) == 3
        assert sum(1 for d in nb if d in red) == 3


def test_cube_efficient_cycle(cube):
    _, g, blue, red = cube
    ch = efficient_cycle(g, blue + red)
    assert ch.size <= 5 and verify_witness(ch, blue + red, "vertex")


# ---------------------------------------------------------------------------
# Vertex rounding
# ---------------------------------------------------------------------------


def test_single_cycle_rounds_to_itself():
    g = k4()
    c = edge_cycle(g, [0, 1, 2])
    p = round_vertex(g, FractionalPacking({c: Fraction(1)}, "vertex", Fraction(1)))
    assert p.cycles == [c]


def test_k4_rounds_to_one():
    g = k4()
    _, lam = laminar_support(g, make_family("all", g), "vertex")
    assert lam.value == Fraction(4, 3)
    assert round_vertex(g, lam).size == 1


def test_nine_disjoint_squares():
    pos, edges = {}, []
    for i in range(3):
        for j in range(3):
            b = 4 * (3 * i + j)
            x, y = 3.0 * j, 3.0 * i
            pos.update({b: (x, y), b + 1: (x + 1, y), b + 2: (x + 1, y + 1), b + 3: (x, y + 1)})
            edges += [(b, b + 1), (b + 1, b + 2), (b + 2, b + 3), (b + 3, b)]
    g = drawn(pos, edges)
    sq = [edge_cycle(g, [b, b + 1, b + 2, b + 3]) for b in range(0, 36, 4)]
    p = round_vertex(g, FractionalPacking({c: Fraction(1) for c in sq}, "vertex", Fraction(9)))
    assert p.size == 9


@given(st.sampled_from(UNDIRECTED), st.integers(4, 13), st.integers(0, 10_000))
def test_round_vertex_bound(kind, n, seed):
    g = random_planar(n, seed).graph
    f = family_on(g, kind, seed)
    fp, lam = laminar_support(g, f, "vertex")
    p = round_vertex(g, lam)
    assert p.is_disjoint() and all(f.contains(c) for c in p.cycles)
    assert 5 * p.size >= fp.value


# ---------------------------------------------------------------------------
# Edge rounding
# ---------------------------------------------------------------------------


def test_edge_disjoint_support_is_kept():
    g = disjoint_triangles(3)
    cyc = [edge_cycle(g, [3 * i, 3 * i + 1, 3 * i + 2]) for i in range(3)]
    p = round_edge(g, FractionalPacking({c: Fraction(1) for c in cyc}, "edge", Fraction(3)))
    assert p.size == 3 and p.info["colors"] == 1


def test_two_cycles_sharing_one_edge():
    g = two_triangles_sharing_edge()
    a, b = edge_cycle(g, [0, 1, 2]), edge_cycle(g, [0, 1, 3])
    p = round_edge(g, FractionalPacking({a: Fraction(1, 2), b: Fraction(1, 2)}, "edge", Fraction(1)))
    assert p.size == 1 and p.info["bound"] == Fraction(1, 4)


@given(st.sampled_from(UNDIRECTED), st.integers(4, 13), st.integers(0, 10_000))
def test_round_edge_bound(kind, n, seed):
    g = random_planar(n, seed).graph
    f = family_on(g, kind, seed)
    fp, lam = laminar_support(g, f, "edge")
    p = round_edge(g, lam)
    assert p.is_disjoint() and all(f.contains(c) for c in p.cycles)
    assert p.info["chain_lp"] >= fp.value
    bound = Fraction(1, 5) if p.info["fallback"] else Fraction(1, 4)
    assert p.size >= bound * fp.value


@given(st.integers(1, 12), st.integers(0, 10_000))
def test_colourings_are_proper(n, seed):
    g = random_planar(n, seed, keep=1.0).graph
    adj = [set() for _ in range(n)]
    for u, v in g.edges.values():
        adj[u].add(v)
        adj[v].add(u)
    four = four_color(adj)
    assert four is not None and max(four, default=0) < 4
    five = five_color(adj)
    assert max(five, default=0) < 5
    for col in (four, five):
        assert all(col[u] != col[v] for u, v in g.edges.values())


def test_four_colour_budget_exhaustion():
    k5 = [set(range(5)) - {i} for i in range(5)]
    assert four_color(k5) is None
    assert four_color(k5, budget=1) is None


# ---------------------------------------------------------------------------
# Weighted rounding
# ---------------------------------------------------------------------------


def _bowtie():
    """Triangles 0-1-2 and 2-3-4 meeting at vertex 2; demands 0-1 and 3-4."""
    pos = {0: (0.0, 0.0), 1: (0.0, 2.0), 2: (1.0, 1.0), 3: (2.0, 2.0), 4: (2.0, 0.0)}
    return drawn(pos, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])


def test_heavy_demand_wins():
    g = _bowtie()
    f = make_family("d-cycle", g, [0, 4])
    w = {0: Fraction(3), 4: Fraction(1)}
    fp, lam = laminar_support(g, f, "vertex", w)
    assert fp.value == 3
    p = round_weighted_vertex(g, lam)
    assert p.info["weight"] == 3
    assert 0 in p.cycles[0].edge_set


def test_single_demand_single_path():
    g = _bowtie()
    f = make_family("d-cycle", g, [0])
    fp, lam = laminar_support(g, f, "vertex", {0: Fraction(5, 2)})
    p = round_weighted_vertex(g, lam)
    assert p.info["weight"] == Fraction(5, 2) == fp.value


@given(st.integers(1, 5), st.integers(0, 10_000))
def test_weighted_bound(m, seed):
    inst = random_demands(m, seed)
    g = inst.graph
    f = make_family("d-cycle", g, inst.demand_edges)
    fp, lam = laminar_support(g, f, "vertex", inst.demand_weights)
    p = round_weighted_vertex(g, lam)
    assert p.is_disjoint()
    assert 5 * p.info["weight"] >= fp.value


@given(st.integers(4, 12), st.integers(0, 10_000))
def test_unit_weights_match_unweighted_guarantee(n, seed):
    g = random_planar(n, seed).graph
    f = family_on(g, "d-cycle", seed)
    fp, lam = laminar_support(g, f, "vertex", {d: Fraction(1) for d in f.demand})
    p = round_weighted_vertex(g, lam)
    assert 5 * p.size >= fp.value
    unweighted, _ = solve_packing_lp(g, f, "vertex")
    assert unweighted.value == fp.value
