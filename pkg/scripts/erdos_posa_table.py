"""Transversal versus packing on desk instances, plus the grid-gap integrality example.

    python scripts/erdos_posa_table.py --seeds 30
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from fractions import Fraction

from cyclepack.exact import enumerate_cycles, exact_lp, exact_max_packing, exact_min_transversal, min_transversal_by_oracle
from cyclepack.families import make_family
from cyclepack.generators import grid_gap, random_planar


@dataclass(frozen=True)
class TableSetup:
    seeds: int = 20
    n_min: int = 6
    n_max: int = 14
    families: tuple[str, ...] = ("all", "odd", "hit-d", "d-cycle")
    cap: int = 3000


def desk_rows(setup: TableSetup):
    for fam in setup.families:
        worst = Fraction(0)
        count = 0
        for s in range(setup.seeds):
            g = random_planar(setup.n_min + s % (setup.n_max - setup.n_min + 1), s).graph
            f = make_family(fam, g, sorted(g.edges)[::3])
            cat = enumerate_cycles(g, f, cap=setup.cap)
            if cat.truncated or not cat.cycles:
                continue
            t = len(exact_min_transversal(cat, "vertex"))
            p = exact_max_packing(cat, "vertex").size
            worst = max(worst, Fraction(t, p))
            count += 1
        yield fam, count, worst


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=TableSetup.seeds)
    setup = TableSetup(seeds=ap.parse_args().seeds)
    print(f"{'family':<10} {'instances':>9} {'max tau/nu':>11}")
    for fam, count, worst in desk_rows(setup):
        print(f"{fam:<10} {count:>9} {str(worst):>11}")
    print()
    print(f"{'k':>2} {'transversal':>11} {'LP packing':>11} {'x_v = 1/4 value':>16}")
    for k in (2, 3, 4):
        inst = grid_gap(k)
        g = inst.graph
        f = make_family("hit-d", g, inst.demand_edges)
        tau = len(min_transversal_by_oracle(g, f, "vertex"))
        cat = enumerate_cycles(g, f, cap=200_000)
        lp = exact_lp(cat, "vertex") if not cat.truncated else "—"
        print(f"{k:>2} {tau:>11} {str(lp):>11} {str(Fraction(2 * k, 4)):>16}")


if __name__ == "__main__":
    main()
