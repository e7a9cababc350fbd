"""Filtration dimensions of enveloping algebras against the straightening basis.

Covers abelian algebras on odd generators, a central extension and its
abelianization, and a commutativity witness in the associated graded.

    python3 scripts/pbw_desk_check.py --max-degree 4
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from hoalg import enveloping as env
from hoalg.free_algebras import GradedSpace


@dataclass(frozen=True)
class PbwConfig:
    max_degree: int = 4
    max_odd_generators: int = 2
    m: int = 2


def central_extension(m: int) -> env.LmStructure:
    space = GradedSpace(("x", "y", "z"), (1, 1, 2))
    return env.LmStructure(space, m, {2: {("x", "y"): {"z": 1}}})


def run(cfg: PbwConfig) -> bool:
    ok = True
    for k in range(1, cfg.max_odd_generators + 1):
        L = env.LmStructure(GradedSpace.simple([1] * k), cfg.m)
        rep = env.pbw_compare(L, cfg.m, cfg.max_degree, strict_odd_only=True)
        ok &= rep.ok
        print(f"\nabelian, {k} odd generator(s), m = {cfg.m}")
        for q, g, s, match in rep.rows:
            print(f"  q={q}: dim G = {g:>5}  |S| = {s:>5}  {'ok' if match else 'MISMATCH'}")
        for w in rep.notes:
            print(f"  note: {w}")

    L = central_extension(cfg.m)
    same, a, b = env.graded_dims_match(L, L.abelianization(), cfg.m, cfg.max_degree)
    ok &= same
    print(f"\nl2(x, y) = z: {a}\nabelianization: {b}\n{'same table' if same else 'DIFFERENT'}")

    w = env.commutativity_witness(env.LmStructure(GradedSpace.simple([1, 1]), cfg.m), cfg.m, min(cfg.max_degree, 3))
    print("\ncommutativity in the associated graded (two odd generators):")
    for pair, commutes in w["generator_pairs"].items():
        print(f"  {pair}: {'commute' if commutes else 'do not commute'}")
    if w["composite"]:
        c = w["composite"]
        print(f"  {c['a']} with {c['b']}: {'commute' if c['commutes'] else 'do not commute'}")
    return ok


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-degree", type=int, default=PbwConfig.max_degree)
    p.add_argument("--max-odd-generators", type=int, default=PbwConfig.max_odd_generators)
    a = p.parse_args()
    return 0 if run(PbwConfig(a.max_degree, a.max_odd_generators)) else 1


if __name__ == "__main__":
    raise SystemExit(main())
