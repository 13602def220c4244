"""Packing LPs by column generation, priced with the family weight oracle."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import BadParams, OracleFailure, ValueMismatch
from .families import FamilyKind, FamilySpec, min_cycle_through_demand, min_weight_cycle
from .packing import Mode, elements
from .planar import Cycle, EmbeddedGraph
from .simplex import RevisedSimplex

__all__ = [
    "DualSolution",
    "FractionalPacking",
    "cycle_weight",
    "refine_min_length",
    "solve_packing_lp",
]


@dataclass
class FractionalPacking:
    """Exact fractional packing ``x``: cycle -> positive rational."""

    entries: dict[Cycle, Fraction]
    mode: Mode
    value: Fraction
    weights: dict[int, Fraction] | None = None
    info: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.mode = Mode(self.mode)
        self.entries = {c: Fraction(x) for c, x in self.entries.items() if x != 0}

    @property
    def support(self) -> list[Cycle]:
        return sorted(self.entries, key=lambda c: c.key)

    def objective(self) -> Fraction:
        return sum((cycle_weight(c, self.weights) * x for c, x in self.entries.items()), Fraction(0))

    def total_length(self) -> Fraction:
        return sum((len(c) * x for c, x in self.entries.items()), Fraction(0))

    def load(self) -> dict[int, Fraction]:
        """Total value on each vertex (or edge)."""
        out: dict[int, Fraction] = {}
        for c, x in self.entries.items():
            for el in elements(c, self.mode):
                out[el] = out.get(el, Fraction(0)) + x
        return out

    def edge_load(self) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for c, x in self.entries.items():
            for e in c.edges:
                out[e] = out.get(e, Fraction(0)) + x
        return out

    def is_feasible(self) -> bool:
        return all(x > 0 for x in self.entries.values()) and all(v <= 1 for v in self.load().values())


@dataclass
class DualSolution:
    y: dict[int, Fraction]
    objective: Fraction


def cycle_weight(c: Cycle, weights: Mapping[int, Fraction] | None) -> Fraction:
    """Weight of a cycle: 1 when unweighted, else the weight of its demand edges."""
    if weights is None:
        return Fraction(1)
    return sum((Fraction(weights[e]) for e in c.edges if e in weights), Fraction(0))


def _rows(g: EmbeddedGraph, mode: Mode) -> list[int]:
    return sorted(g.vertices) if mode is Mode.VERTEX else sorted(g.edges)


def _edge_prices(g: EmbeddedGraph, mode: Mode, y: Mapping[int, Fraction], extra: int = 0) -> dict[int, Fraction]:
    if mode is Mode.VERTEX:
        return {e: (y[u] + y[v]) / 2 + extra for e, (u, v) in g.edges.items()}
    return {e: y[e] + extra for e in g.edges}


def _normalise_weights(f: FamilySpec, weights: Mapping[int, Fraction] | None) -> dict[int, Fraction] | None:
    if weights is None:
        return None
    if f.kind is not FamilyKind.D_CYCLE:
        raise BadParams("weighted packing LPs are defined for d-cycle families")
    out = {d: Fraction(weights.get(d, 1)) for d in f.demand}
    if any(w < 0 for w in out.values()):
        raise BadParams("demand weights must be nonnegative")
    return out


class _Master:
    """Restricted master LP with one column per known cycle."""

    def __init__(self, g: EmbeddedGraph, mode: Mode, rows: list[int], extra_eq: Fraction | None = None) -> None:
        self.g = g
        self.mode = mode
        self.rows = rows
        self.row_of = {x: i for i, x in enumerate(rows)}
        rhs: list[Fraction] = [Fraction(1)] * len(rows)
        eq = [False] * len(rows)
        if extra_eq is not None:
            rhs.append(Fraction(extra_eq))
            eq.append(True)
        self.lp = RevisedSimplex(rhs, eq)
        self.cols: list[Cycle] = []
        self.index: dict[Cycle, int] = {}
        self.has_eq = extra_eq is not None

    def add(self, c: Cycle, cost: Fraction, eq_coef: Fraction | None = None) -> bool:
        if c in self.index:
            return False
        col = {self.row_of[x]: Fraction(1) for x in elements(c, self.mode)}
        if self.has_eq:
            col[len(self.rows)] = Fraction(eq_coef if eq_coef is not None else 1)
        self.index[c] = self.lp.add_column(col, cost)
        self.cols.append(c)
        return True

    def solution(self) -> dict[Cycle, Fraction]:
        return {self.cols[j]: x for j, x in self.lp.primal().items()}

    def duals(self) -> dict[int, Fraction]:
        return {x: self.lp.duals[i] for i, x in enumerate(self.rows)}


def solve_packing_lp(
    g: EmbeddedGraph,
    f: FamilySpec,
    mode: Mode | str,
    weights: Mapping[int, Fraction] | None = None,
    *,
    max_rounds: int = 100_000,
) -> tuple[FractionalPacking, DualSolution]:
    """Optimal packing LP and its dual by column generation.

    Vertex mode prices edge ``vw`` at ``(y_v + y_w)/2``, so a cycle costs
    ``y(V(C))``; edge mode prices edge ``e`` at ``y_e``.  Unweighted
    generation stops once the cheapest family cycle costs at least 1.  With
    demand ``weights`` (d-cycle families) each demand edge is priced
    separately and a cycle enters while ``w(C) - y(C) > 0``.
    """
    mode = Mode(mode)
    fam = f if f.graph is g else f.on(g)
    wts = _normalise_weights(fam, weights)
    master = _Master(g, mode, _rows(g, mode))
    rounds = 0
    while True:
        master.lp.solve()
        rounds += 1
        if rounds > max_rounds:
            raise OracleFailure("column generation did not converge")
        y = master.duals()
        prices = _edge_prices(g, mode, y)
        added = False
        if wts is None:
            res = min_weight_cycle(fam, prices)
            if res is not None and res[0] < 1:
                if not master.add(res[1], Fraction(1)):
                    raise OracleFailure("oracle returned a column that is already priced out")
                added = True
        else:
            for d in sorted(wts):
                if wts[d] <= 0:
                    continue
                res = min_cycle_through_demand(fam, prices, d)
                if res is not None and wts[d] - res[0] > 0:
                    if master.add(res[1], wts[d]):
                        added = True
                    else:
                        raise OracleFailure("oracle returned a column that is already priced out")
        if not added:
            break
    x = master.solution()
    value = master.lp.value
    y = master.duals()
    dual_obj = sum(y.values(), Fraction(0))
    if dual_obj != value:
        raise OracleFailure(f"duality gap {value} vs {dual_obj}")
    fp = FractionalPacking(
        x, mode, value, wts, {"columns": list(master.cols), "rounds": rounds, "pivots": master.lp.pivots}
    )
    return fp, DualSolution(y, dual_obj)


def refine_min_length(
    g: EmbeddedGraph,
    f: FamilySpec,
    mode: Mode | str,
    opt_value: Fraction,
    weights: Mapping[int, Fraction] | None = None,
    *,
    seed: FractionalPacking | None = None,
) -> FractionalPacking:
    """Among packings of value ``opt_value``, one of minimum total cycle length.

    Adds the row ``sum w(C) x_C = opt_value`` and maximises ``-sum |C| x_C``.
    Pricing adds 1 to every edge price, so a cycle costs ``y(C) + |C|``.
    Raises :class:`ValueMismatch` when ``opt_value`` exceeds the LP optimum.
    """
    mode = Mode(mode)
    fam = f if f.graph is g else f.on(g)
    wts = _normalise_weights(fam, weights)
    opt_value = Fraction(opt_value)
    if seed is None:
        seed, _ = solve_packing_lp(g, fam, mode, wts)
    if opt_value > seed.value or opt_value < 0:
        raise ValueMismatch(f"value {opt_value} is not attainable (LP optimum {seed.value})")
    master = _Master(g, mode, _rows(g, mode), extra_eq=opt_value)
    for c in seed.info.get("columns", seed.support):
        master.add(c, Fraction(-len(c)), cycle_weight(c, wts))
    while True:
        master.lp.solve()
        y = master.duals()
        z = master.lp.duals[len(master.rows)]
        prices = _edge_prices(g, mode, y, extra=1)
        added = False
        if wts is None:
            res = min_weight_cycle(fam, prices)
            if res is not None and res[0] + z < 0:
                if not master.add(res[1], Fraction(-len(res[1])), Fraction(1)):
                    raise OracleFailure("length pricing repeated a column")
                added = True
        else:
            for d in sorted(wts):
                res = min_cycle_through_demand(fam, prices, d)
                if res is not None and res[0] + z * wts[d] < 0:
                    if master.add(res[1], Fraction(-len(res[1])), wts[d]):
                        added = True
                    else:
                        raise OracleFailure("length pricing repeated a column")
        if not added:
            break
    x = master.solution()
    fp = FractionalPacking(x, mode, opt_value, wts, {"length": -master.lp.value, "columns": list(master.cols)})
    if fp.objective() != opt_value:
        raise ValueMismatch("refined packing lost value")
    return fp
