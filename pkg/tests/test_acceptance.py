"""Acceptance suite: one check per criterion, each reported as a PASS/FAIL line.

Run under pytest (the lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import math
import random
import sys
import time

import pytest

from hoalg import enveloping as env
from hoalg import free_algebras as fa
from hoalg import operad_nsigma as ns
from hoalg import operad_sigma as sy
from hoalg import series
from hoalg import trees as tr
from hoalg.free_algebras import FreeAlgebra, GradedSpace
from hoalg.trees import INF

RESULTS: dict[int, tuple[bool, str]] = {}


def odd_double_factorial(k: int) -> int:
    """k!! for odd k >= -1, with (-1)!! = 1."""
    return math.prod(range(k, 0, -2)) if k > 0 else 1


def _timed(limit: float | None):
    start = time.perf_counter()

    def finish(ok: bool, detail: str) -> tuple[bool, str]:
        took = time.perf_counter() - start
        if limit is not None and took > limit:
            return False, f"{detail}; took {took:.1f}s, limit {limit:.0f}s"
        return ok, f"{detail} ({took:.1f}s)"

    return finish


# -------------------------------------------------------------- criteria


def basis_matches_series():
    finish = _timed(60)
    bad = []
    for m in (2, 3, 4, INF):
        r = series.r_sequence(m, 8)
        for n in range(1, 9):
            got = len(ns.basis(n, m))
            if got != 2**n * r[n - 1]:
                bad.append((str(m), n, got, 2**n * r[n - 1]))
    return finish(not bad, f"basis sizes vs 2^n r_n, n<=8, m in 2,3,4,inf; mismatches {bad}")


def a_closed_form_binary():
    finish = _timed(None)
    bad = []
    for n in range(2, 11):
        want = 2 ** (2 * n - 1) * odd_double_factorial(2 * n - 3)
        assert want % math.factorial(n) == 0
        want //= math.factorial(n)
        got = tr.count_admissible(n, 2)
        if got != want:
            bad.append((n, got, want))
    return finish(not bad, f"admissible binary trees vs 2^(2n-1)(2n-3)!!/n!, n=2..10; mismatches {bad}")


def l_closed_form_binary():
    finish = _timed(None)
    bad = []
    for n in range(1, 8):
        want = 2**n * odd_double_factorial(2 * n - 3)
        got = len(sy.basis_sym(n, 2))
        if got != want:
            bad.append((n, got, want))
    return finish(not bad, f"labeled binary basis vs 2^n(2n-3)!!, n<=7; mismatches {bad}")


def functional_equations():
    finish = _timed(None)
    bad = []
    for flavor in ("a", "l"):
        for m in (2, 3, INF):
            rep = series.verify_functional_equation(flavor, m, 12)
            if not rep.ok:
                bad.append((flavor, str(m)))
    return finish(not bad, f"both flavors, m in 2,3,inf, to t^12; failures {bad}")


def normalizer_sound_and_confluent():
    finish = _timed(None)
    bad = []
    for m in range(1, 7):
        for n in range(1, m + 1):
            if not ns.normalize(ns.phi_relation(n, m)).is_zero():
                bad.append(("relation", n, m))
    rng = random.Random(20240501)
    for n in range(1, 8):
        for _ in range(200):
            t = tr.random_tree(n, INF, rng, unary_prob=0.35)
            x = ns.element(t, INF, rng.choice([1, -1, 2]))
            reference = ns.normalize(x)
            a = ns.normalize_stepwise(x, random.Random(rng.getrandbits(32)))
            b = ns.normalize_stepwise(x, random.Random(rng.getrandbits(32)))
            if not (a == b == reference):
                bad.append(("order", tr.format_tree(t)))
    return finish(not bad, f"relations vanish for n<=m<=6; 200 random-order trials per n<=7; failures {bad[:3]}")


def dg_squares_to_zero():
    finish = _timed(30)
    bad = []
    for n in range(2, 7):
        x = ns.element(tr.corolla(n), INF)
        if not ns.dg_differential(ns.dg_differential(x)).is_zero():
            bad.append(("corolla", n))
    rng = random.Random(7)
    composites = 0
    while composites < 100:
        t = tr.random_tree(rng.randint(3, 7), 6, rng, unary_prob=0.0)
        if tr.n_vertices(t) < 2:
            continue
        composites += 1
        if not ns.dg_differential(ns.dg_differential(ns.element(t, 6))).is_zero():
            bad.append(("tree", tr.format_tree(t)))
    return finish(not bad, f"dd on corollas n<=6 and 100 composite trees; failures {bad[:3]}")


def _random_word(alg, rng, max_n=2):
    n = rng.randint(1, max_n)
    return alg.element({rng.choice(alg.basis(n)): rng.choice([1, -1, 3])})


def free_algebra_axioms():
    finish = _timed(None)
    bad = []
    rng = random.Random(11)
    for degrees in ([0], [1], [0, 1], [2, 1]):
        X = GradedSpace.simple(degrees)
        for m in (2, 3, 4):
            a_alg = FreeAlgebra(X, m, "a")
            l_alg = FreeAlgebra(X, m, "l")
            for _ in range(4):
                for n in range(1, m + 1):
                    args = [_random_word(a_alg, rng) for _ in range(n)]
                    if not fa.am_axiom(a_alg, args).is_zero():
                        bad.append(("A", degrees, m, n))
                    args = [_random_word(l_alg, rng) for _ in range(n)]
                    if not fa.lm_axiom(l_alg, args).is_zero():
                        bad.append(("L", degrees, m, n))
                    for p in range(1, n):
                        if not fa.antisymmetry_defect(l_alg, args, p).is_zero():
                            bad.append(("antisym", degrees, m, n, p))
    return finish(not bad, f"A and L axioms plus antisymmetry, m<=4, dim X<=2; failures {bad[:3]}")


def free_algebra_dimensions():
    finish = _timed(None)
    bad = []
    for m in (2, 3, INF):
        r = series.r_sequence(m, 6)
        for degrees in ([0], [1, 0]):
            X = GradedSpace.simple(degrees)
            for n in range(1, 7):
                if len(fa.free_basis(X, n, m)) != (2 * len(degrees)) ** n * r[n - 1]:
                    bad.append(("marks", str(m), degrees, n))
        V = GradedSpace(("a", "b"), (1, 0), ((0, 0), (1, 0)))
        dg = FreeAlgebra(V, m, model="dg")
        for n in range(1, 7):
            if len(dg.basis(n)) != V.dim**n * r[n - 1]:
                bad.append(("dg", str(m), n))
    return finish(not bad, f"free bases vs (2 dim X)^n b_n and (dim V)^n b_n, n<=6; mismatches {bad}")


def induced_differential_formula():
    finish = _timed(None)
    bad = []
    flat = GradedSpace(("x", "y", "z"), (0, 1, 2), ((0,) * 3,) * 3)
    alg = FreeAlgebra(flat, 3, model="dg")
    x, y, z = alg.generators()
    lhs = fa.induced_differential(alg.mu(3, [x, y, z]))
    rhs = alg.mu(2, [alg.mu(2, [x, y]), z]) - alg.mu(2, [x, alg.mu(2, [y, z])])
    if lhs != rhs:
        bad.append(("formula", str(lhs)))
    curved = GradedSpace(("a", "b", "c"), (2, 1, 1), ((0, 0, 0), (1, 0, 0), (0, 0, 0)))
    checked = 0
    for space in (flat, curved):
        A = FreeAlgebra(space, 3, model="dg")
        for n in range(1, 5):
            for key in A.basis(n):
                checked += 1
                if not fa.induced_differential(fa.induced_differential(A.element({key: 1}))).is_zero():
                    bad.append(("dd", space.names, n))
    return finish(not bad, f"three-letter formula and dd=0 on {checked} words up to length 4, m=3; failures {bad[:3]}")


def pbw_desk_scale():
    finish = _timed(300)
    bad = []
    rows = []
    for degrees in ([1], [1, 1]):
        L = env.LmStructure(GradedSpace.simple(degrees), 2)
        rep = env.pbw_compare(L, 2, 4, strict_odd_only=True)
        for q, g, _, _ in rep.rows:
            enumerated = len(env.s_m_basis(L.space, q, 2))
            rows.append((len(degrees), q, g, enumerated))
            if g != enumerated:
                bad.append((len(degrees), q, g, enumerated))
    return finish(not bad, f"(generators, q, dim G, |S|) = {rows}")


def pbw_invariance():
    finish = _timed(None)
    space = GradedSpace(("x", "y", "z"), (1, 1, 2))
    L = env.LmStructure(space, 2, {2: {("x", "y"): {"z": 1}}})
    ok, a, b = env.graded_dims_match(L, L.abelianization(), 2, 4)
    ok = ok and not L.is_abelian()
    return finish(ok, f"l2(x, y) = z with x, y odd: {a} vs abelian {b}")


CRITERIA = {
    1: basis_matches_series,
    2: a_closed_form_binary,
    3: l_closed_form_binary,
    4: functional_equations,
    5: normalizer_sound_and_confluent,
    6: dg_squares_to_zero,
    7: free_algebra_axioms,
    8: free_algebra_dimensions,
    9: induced_differential_formula,
    10: pbw_desk_scale,
    11: pbw_invariance,
}


def run(k: int) -> tuple[bool, str]:
    try:
        RESULTS[k] = CRITERIA[k]()
    except Exception as e:  # noqa: BLE001
        RESULTS[k] = (False, f"raised {type(e).__name__}: {e}")
    return RESULTS[k]


def report_lines() -> list[str]:
    return [f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}" for k, (ok, detail) in sorted(RESULTS.items())]


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    ok, detail = run(k)
    assert ok, detail


if __name__ == "__main__":
    for k in sorted(CRITERIA):
        ok, detail = run(k)
        print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}", flush=True)
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
