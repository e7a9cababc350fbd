"""Print dimension tables of the A- and L-flavored operads, with enumeration cross-checks.

    python3 scripts/dimension_tables.py --max-n 10 --enumerate-up-to 6
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from hoalg import operad_sigma as sy
from hoalg import series
from hoalg import trees as tr


@dataclass(frozen=True)
class TableConfig:
    bounds: tuple = (2, 3, 4, tr.INF)
    max_n: int = 10
    enumerate_up_to: int = 6


def run(cfg: TableConfig) -> bool:
    ok = True
    for flavor in ("a", "l"):
        for m in cfg.bounds:
            table = series.dim_table(flavor, m, cfg.max_n)
            print(f"\nflavor {flavor}, m = {m}")
            print(f"{'n':>3} {'dim':>22} {'enumerated':>12}")
            for row in table.entries:
                n, dim = row[0], row[1]
                shown = ""
                if n <= cfg.enumerate_up_to:
                    t0 = time.perf_counter()
                    count = tr.count_admissible(n, m) if flavor == "a" else len(sy.basis_sym(n, m))
                    ok &= count == dim
                    shown = f"{count} ({time.perf_counter() - t0:.2f}s)"
                print(f"{n:>3} {dim:>22} {shown:>12}")
            rep = series.verify_functional_equation(flavor, m, cfg.max_n)
            ok &= rep.ok
            print(f"functional equation to t^{cfg.max_n}: {'ok' if rep.ok else 'FAILED'}")
    return ok


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-n", type=int, default=TableConfig.max_n)
    p.add_argument("--enumerate-up-to", type=int, default=TableConfig.enumerate_up_to)
    a = p.parse_args()
    ok = run(TableConfig(max_n=a.max_n, enumerate_up_to=a.enumerate_up_to))
    print("\nall tables consistent" if ok else "\nMISMATCH found")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
