"""Compare two sign rules for the differential of the dg operad.

The unscaled rule (-1)^((b+1)(i+1)+b) squares to zero only in low arity;
scaling by (-1)^(n+1) repairs it.  Prints, per arity, whether d(d(xi_n))
vanishes under each rule.

    python3 scripts/dg_sign_check.py --max-n 7
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from unittest import mock

from hoalg import operad_nsigma as ns
from hoalg import signs
from hoalg import trees as tr


@dataclass(frozen=True)
class SignConfig:
    max_n: int = 7


def dd_vanishes(n: int) -> bool:
    x = ns.element(tr.corolla(n), tr.INF)
    return ns.dg_differential(ns.dg_differential(x)).is_zero()


def run(cfg: SignConfig) -> bool:
    print(f"{'n':>3}  {'scaled rule':>12}  {'unscaled rule':>14}")
    ok = True
    for n in range(2, cfg.max_n + 1):
        good = dd_vanishes(n)
        with mock.patch.object(ns, "dg_coefficient", signs.dg_sign):
            plain = dd_vanishes(n)
        ok &= good
        print(f"{n:>3}  {'dd = 0' if good else 'dd != 0':>12}  {'dd = 0' if plain else 'dd != 0':>14}")
    return ok


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-n", type=int, default=SignConfig.max_n)
    return 0 if run(SignConfig(p.parse_args().max_n)) else 1


if __name__ == "__main__":
    raise SystemExit(main())
