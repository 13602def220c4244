"""Exact rational revised simplex with Bland's rule.

Solves ``max c.x`` subject to ``A x <= b`` / ``A x = b`` row by row,
``x >= 0`` and ``b >= 0``.  Columns are sparse ``{row: coefficient}`` maps
and may be appended between solves, which keeps the current basis (warm
start for column generation).  Equality rows get artificial variables that
are removed by a phase-one solve.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import ValueMismatch

__all__ = ["MasterResult", "RevisedSimplex", "Unbounded", "solve_restricted_master"]

_STRUCT, _SLACK, _ART = 0, 1, 2
VarKey = tuple[int, int]


class Unbounded(AssertionError):
    """The LP has no finite optimum (never happens for packing LPs)."""


class Infeasible(ValueMismatch):
    """Phase one ended with positive artificial mass."""


class RevisedSimplex:
    """Revised simplex over :class:`fractions.Fraction` with an explicit basis inverse."""

    def __init__(self, rhs: Sequence[Fraction | int], equality: Sequence[bool] | None = None) -> None:
        self.m = len(rhs)
        self.b = [Fraction(x) for x in rhs]
        if any(x < 0 for x in self.b):
            raise ValueError("right-hand sides must be nonnegative")
        self.eq = list(equality) if equality is not None else [False] * self.m
        self.cols: list[dict[int, Fraction]] = []
        self.costs: list[Fraction] = []
        self.basis: list[VarKey] = [(_ART, i) if self.eq[i] else (_SLACK, i) for i in range(self.m)]
        self.binv: list[list[Fraction]] = [
            [Fraction(1) if i == j else Fraction(0) for j in range(self.m)] for i in range(self.m)
        ]
        self.xb: list[Fraction] = list(self.b)
        self._phase1_done = not any(self.eq)
        self.pivots = 0
        self.duals: list[Fraction] = [Fraction(0)] * self.m

    # -- model building ----------------------------------------------------

    def add_column(self, coeffs: Mapping[int, Fraction | int], cost: Fraction | int) -> int:
        col = {int(r): Fraction(a) for r, a in coeffs.items() if a != 0}
        for r in col:
            if not 0 <= r < self.m:
                raise IndexError(f"row {r} out of range")
        self.cols.append(col)
        self.costs.append(Fraction(cost))
        return len(self.cols) - 1

    def _column(self, key: VarKey) -> dict[int, Fraction]:
        kind, i = key
        if kind == _STRUCT:
            return self.cols[i]
        return {i: Fraction(1)}

    # -- solving -------------------------------------------------------------

    def _cost(self, key: VarKey, phase: int) -> Fraction:
        kind, i = key
        if phase == 1:
            return Fraction(-1) if kind == _ART else Fraction(0)
        return self.costs[i] if kind == _STRUCT else Fraction(0)

    def _run(self, phase: int) -> None:
        m = self.m
        while True:
            cb = [self._cost(k, phase) for k in self.basis]
            pi = [Fraction(0)] * m
            for r in range(m):
                c = cb[r]
                if c:
                    row = self.binv[r]
                    for i in range(m):
                        if row[i]:
                            pi[i] += c * row[i]
            self.duals = pi
            basic = set(self.basis)
            entering: VarKey | None = None
            for j, col in enumerate(self.cols):
                key = (_STRUCT, j)
                if key in basic:
                    continue
                d = self._cost(key, phase) - sum(pi[r] * a for r, a in col.items())
                if d > 0:
                    entering = key
                    break
            if entering is None:
                for i in range(m):
                    if self.eq[i]:
                        continue
                    key = (_SLACK, i)
                    if key not in basic and -pi[i] > 0:
                        entering = key
                        break
            if entering is None:
                return
            col = self._column(entering)
            u = [sum(self.binv[r][i] * a for i, a in col.items()) for r in range(m)]
            leave = -1
            best: Fraction | None = None
            for r in range(m):
                if self.basis[r][0] == _ART and phase == 2 and u[r] != 0:
                    t = Fraction(0)
                elif u[r] > 0:
                    t = self.xb[r] / u[r]
                else:
                    continue
                if best is None or t < best or (t == best and self.basis[r] < self.basis[leave]):
                    best, leave = t, r
            if leave < 0:
                raise Unbounded("packing LP cannot be unbounded")
            self._pivot(leave, entering, u)

    def _pivot(self, r: int, entering: VarKey, u: list[Fraction]) -> None:
        piv = u[r]
        row_r = [x / piv for x in self.binv[r]]
        self.binv[r] = row_r
        self.xb[r] = self.xb[r] / piv
        nz = [(j, x) for j, x in enumerate(row_r) if x]
        for i in range(self.m):
            if i == r or not u[i]:
                continue
            f = u[i]
            row = self.binv[i]
            for j, x in nz:
                row[j] -= f * x
            self.xb[i] -= f * self.xb[r]
        self.basis[r] = entering
        self.pivots += 1

    def _drive_out_artificials(self) -> None:
        for r in range(self.m):
            if self.basis[r][0] != _ART:
                continue
            basic = set(self.basis)
            for j, col in enumerate(self.cols):
                if (_STRUCT, j) in basic:
                    continue
                ur = sum(self.binv[r][i] * a for i, a in col.items())
                if ur != 0:
                    u = [sum(self.binv[q][i] * a for i, a in col.items()) for q in range(self.m)]
                    self._pivot(r, (_STRUCT, j), u)
                    break
            else:
                for i in range(self.m):
                    if self.eq[i] or (_SLACK, i) in basic:
                        continue
                    if self.binv[r][i] != 0:
                        u = [self.binv[q][i] for q in range(self.m)]
                        self._pivot(r, (_SLACK, i), u)
                        break

    def solve(self) -> Fraction:
        """Optimise from the current basis and return the objective value."""
        if not self._phase1_done:
            self._run(1)
            infeas = sum((self.xb[r] for r in range(self.m) if self.basis[r][0] == _ART), Fraction(0))
            if infeas > 0:
                raise Infeasible("equality constraints cannot be met")
            self._drive_out_artificials()
            self._phase1_done = True
        self._run(2)
        return self.value

    # -- solution access -----------------------------------------------------

    @property
    def value(self) -> Fraction:
        return sum(
            (self.costs[i] * self.xb[r] for r, (k, i) in enumerate(self.basis) if k == _STRUCT),
            Fraction(0),
        )

    def primal(self) -> dict[int, Fraction]:
        """Nonzero structural values."""
        return {i: self.xb[r] for r, (k, i) in enumerate(self.basis) if k == _STRUCT and self.xb[r] != 0}

    def reduced_cost(self, j: int) -> Fraction:
        return self.costs[j] - sum(self.duals[r] * a for r, a in self.cols[j].items())


@dataclass
class MasterResult:
    value: Fraction
    x: dict[int, Fraction]
    duals: list[Fraction]
    basis: list[VarKey]
    solver: RevisedSimplex


def solve_restricted_master(
    columns: Sequence[Mapping[int, Fraction | int]],
    rhs: Sequence[Fraction | int],
    objective: Sequence[Fraction | int],
    equality: Sequence[bool] | None = None,
) -> MasterResult:
    """Solve ``max objective.x`` over the given sparse columns exactly."""
    lp = RevisedSimplex(rhs, equality)
    for col, c in zip(columns, objective, strict=True):
        lp.add_column(col, c)
    val = lp.solve()
    return MasterResult(val, lp.primal(), list(lp.duals), list(lp.basis), lp)
