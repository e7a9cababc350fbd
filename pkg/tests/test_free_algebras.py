import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hoalg import free_algebras as fa
from hoalg import series
from hoalg import trees as tr
from hoalg.free_algebras import FreeAlgebra, GradedSpace
from hoalg.trees import INF, LEG, Leg, Vertex


def gens(alg):
    return alg.generators()


# ------------------------------------------------------------- graded spaces


def test_graded_space_validation():
    GradedSpace(("x", "y"), (1, 0), ((0, 0), (1, 0)))
    with pytest.raises(ValueError):
        GradedSpace(("x", "x"), (1, 1))
    with pytest.raises(ValueError):
        GradedSpace(("x",), (1.5,))
    with pytest.raises(ValueError):
        GradedSpace(("x", "y"), (1, 1), ((0, 0), (1, 0)))  # keeps degree
    with pytest.raises(ValueError):
        GradedSpace(("x", "y"), (1, 0), ((0, 0),))
    with pytest.raises(ValueError):
        GradedSpace(("x", "y", "z"), (2, 1, 0), ((0, 0, 0), (1, 0, 0), (0, 1, 0)))  # d^2 != 0
    with pytest.raises(ValueError):
        GradedSpace(("x", "y"), (1, 0), ((0, 0), (0.5, 0)))


def test_graded_space_json_round_trip(tmp_path):
    V = GradedSpace(("x", "y"), (1, 0), ((0, 0), ("1/2", 0)))
    p = tmp_path / "v.json"
    p.write_text(json.dumps(V.to_dict()))
    assert GradedSpace.load(p) == V
    assert V.d(0) == {1: 0.5}
    for bad in ['{"generators": []}', "[1]", '{"generators": [{"name": "x"}]}', "{"]:
        with pytest.raises(ValueError):
            GradedSpace.from_json(bad)


# --------------------------------------------------------------------- bases


def test_free_basis_examples():
    X = GradedSpace.simple([0])
    assert len(fa.free_basis(X, 2, 2)) == 4
    assert len(fa.free_basis(X, 3, 2)) == 16
    assert len(fa.free_basis(X, 3, INF)) == 8 * 3
    with pytest.raises(ValueError):
        fa.free_basis(X, 0, 2)


@pytest.mark.parametrize("m", [2, 3, INF])
@pytest.mark.parametrize("degrees", [[0], [1], [0, 1]])
def test_free_basis_sizes(m, degrees):
    X = GradedSpace.simple(degrees)
    for n in range(1, 5):
        r = series.r_sequence(m, n)[-1]
        assert len(fa.free_basis(X, n, m)) == (2 * len(degrees)) ** n * r


def test_dg_model_basis_size():
    V = GradedSpace.simple([1, 0], ((0, 0), (1, 0)))
    for n in range(1, 5):
        assert len(fa.free_basis(V, n, 3, model="dg")) == 2**n * series.r_sequence(3, n)[-1]


@pytest.mark.parametrize("degrees", [[1], [0], [0, 1], [1, 1], [2, 1]])
@pytest.mark.parametrize("m", [2, 3])
def test_l_basis_matches_coinvariant_count(degrees, m):
    X = GradedSpace.simple(degrees)
    for n in range(1, 4):
        assert len(fa.free_basis(X, n, m, flavor="l")) == fa.orbit_count_oracle(X, n, m)


def test_l_basis_small_case():
    # one odd generator y: l2(y, y) survives, l2(dy, dy) (dy even) does not
    X = GradedSpace(("y",), (1,))
    alg = FreeAlgebra(X, 2, "l")
    names = {alg.format_key(k) for k in alg.basis(2)}
    assert "l2(y, y)" in names and "l2(dy, dy)" not in names
    assert len(names) == fa.orbit_count_oracle(X, 2, 2) == 2  # l2(y, y) and l2(y, dy)


# ------------------------------------------------------------ operations


def test_mu_examples():
    X = GradedSpace(("x", "y"), (1, 0))
    alg = FreeAlgebra(X, 3)
    x, y = gens(alg)
    assert alg.mu(1, [alg.mu(1, [x])]).is_zero()
    p = alg.mu(2, [x, y])
    assert p.pairs() == [(tr.corolla(2), (0, 1), 1)]
    # Leibniz rule with the Koszul sign of x (odd)
    lhs = alg.mu(1, [p])
    rhs = alg.mu(2, [alg.mu(1, [x]), y]) - alg.mu(2, [x, alg.mu(1, [y])])
    assert lhs == rhs
    assert str(alg.mu(2, [x, y])) == "m2(x, y)"
    with pytest.raises(ValueError):
        alg.mu(4, [x, x, x, x])
    with pytest.raises(ValueError):
        alg.ell(2, [x, y])


def test_module_level_wrappers():
    alg = FreeAlgebra(GradedSpace.simple([0]), 2)
    x = alg.generator("x1")
    assert fa.mu(2, [x, x], m=2) == alg.mu(2, [x, x])
    with pytest.raises(ValueError):
        fa.mu(2, [x, x], m=3)
    lalg = FreeAlgebra(GradedSpace.simple([1]), 2, "l")
    y = lalg.generator(0)
    assert fa.ell(1, [fa.ell(1, [y])]).is_zero()


def random_basis_element(alg, rng, max_n=2):
    n = rng.randint(1, max_n)
    key = rng.choice(alg.basis(n))
    return alg.element({key: rng.choice([1, -1, 2])})


@pytest.mark.parametrize("m", [2, 3, 4])
@pytest.mark.parametrize("degrees", [[0, 1], [2, -1]])
def test_am_axioms_hold(m, degrees):
    alg = FreeAlgebra(GradedSpace.simple(degrees), m)
    rng = random.Random(m)
    for _ in range(8):
        for n in range(1, m + 1):
            args = [random_basis_element(alg, rng) for _ in range(n)]
            assert fa.am_axiom(alg, args).is_zero()


@pytest.mark.parametrize("m", [2, 3, 4])
@pytest.mark.parametrize("degrees", [[0, 1], [1, 1]])
def test_lm_axioms_hold(m, degrees):
    alg = FreeAlgebra(GradedSpace.simple(degrees), m, "l")
    rng = random.Random(10 + m)
    for _ in range(6):
        for n in range(1, m + 1):
            args = [random_basis_element(alg, rng) for _ in range(n)]
            assert fa.lm_axiom(alg, args).is_zero()
            for p in range(1, n):
                assert fa.antisymmetry_defect(alg, args, p).is_zero()


def test_bracket_antisymmetry_example():
    alg = FreeAlgebra(GradedSpace(("x", "y"), (0, 1)), 2, "l")
    x, y = gens(alg)
    assert alg.ell(2, [x, y]) == -alg.ell(2, [y, x])
    assert alg.ell(2, [y, y]) != alg.zero()
    assert alg.ell(2, [x, x]).is_zero()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(["a", "l"]))
def test_external_degree_is_additive(seed, flavor):
    rng = random.Random(seed)
    alg = FreeAlgebra(GradedSpace.simple([0, 1]), 3, flavor)
    k = rng.randint(2, 3)
    args = [random_basis_element(alg, rng) for _ in range(k)]
    out = alg.op(k, args)
    expected = sum(a.external_degree for a in args)
    assert all(alg.external_degree(key) == expected for key in out.terms)
    if out:
        assert out.degree == sum(a.degree for a in args) + k - 2


# ----------------------------------------------------------------- dg model


def test_induced_differential_on_acyclic_word():
    V = GradedSpace(("x", "y", "z"), (0, 0, 0), ((0,) * 3,) * 3)
    alg = FreeAlgebra(V, 3, model="dg")
    x, y, z = gens(alg)
    top = alg.mu(3, [x, y, z])
    expected = alg.mu(2, [alg.mu(2, [x, y]), z]) - alg.mu(2, [x, alg.mu(2, [y, z])])
    assert fa.induced_differential(top) == expected
    assert alg.mu(1, [top]) == expected


def test_induced_differential_requirements():
    alg = FreeAlgebra(GradedSpace.simple([0]), 2)
    with pytest.raises(ValueError):
        fa.induced_differential(alg.generator(0))
    with pytest.raises(ValueError):
        FreeAlgebra(GradedSpace.simple([0]), 2, model="dg")


def test_induced_differential_squares_to_zero_and_matches_mu1():
    V = GradedSpace(("a", "b", "c"), (2, 1, 1), ((0, 0, 0), (1, 0, 0), (0, 0, 0)))
    alg = FreeAlgebra(V, 3, model="dg")
    for n in range(1, 4):
        for key in alg.basis(n):
            e = alg.element({key: 1})
            d = fa.induced_differential(e)
            assert d == alg.mu(1, [e])
            assert fa.induced_differential(d).is_zero()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_conversion_to_dg_model_is_a_homomorphism(seed):
    rng = random.Random(seed)
    V = GradedSpace(("a", "b"), (1, 0), ((0, 0), (1, 0)))
    marks = FreeAlgebra(V, 3)
    dg = FreeAlgebra(V, 3, model="dg")
    k = rng.randint(1, 3)
    args = [random_basis_element(marks, rng) for _ in range(k)]
    lhs = fa.to_dg_model(marks.mu(k, args), dg)
    rhs = dg.mu(k, [fa.to_dg_model(a, dg) for a in args])
    assert lhs == rhs


def test_dg_model_dimension_formula():
    V = GradedSpace(("a", "b"), (1, 0), ((0, 0), (1, 0)))
    alg = FreeAlgebra(V, 2, model="dg")
    for n in range(1, 5):
        assert len(alg.basis(n)) == 2**n * series.r_sequence(2, n)[-1]


# ---------------------------------------------------------- unit, relative


def test_unital_rules():
    alg = fa.unital_extend(FreeAlgebra(GradedSpace(("x",), (1,)), 3))
    one, x = alg.unit(), alg.generator("x")
    assert alg.mu(2, [one, one]) == one
    assert alg.mu(2, [one, x]) == x == alg.mu(2, [x, one])
    assert alg.mu(1, [one]).is_zero()
    assert alg.mu(3, [x, one, x]).is_zero()
    with pytest.raises(ValueError):
        FreeAlgebra(GradedSpace.simple([0]), 2).unit()
    with pytest.raises(ValueError):
        FreeAlgebra(GradedSpace.simple([0]), 2, "l", unital=True)


def test_relative_free_n0_one_is_the_dg_model():
    V = GradedSpace(("a", "b"), (1, 0), ((0, 0), (1, 0)))
    rel = fa.relative_free(V, 3, 1)
    dg = FreeAlgebra(V, 3, model="dg")
    a, b = gens(rel)
    a2, b2 = gens(dg)
    assert str(rel.mu(1, [rel.mu(3, [a, b, a])])) == str(dg.mu(1, [dg.mu(3, [a2, b2, a2])]))
    # without a differential, n0 = 1 gives the purely operadic one
    plain = fa.relative_free(GradedSpace.simple([0, 0]), 3, 1)
    x, y = gens(plain)
    top = plain.mu(3, [x, y, x])
    assert plain.mu(1, [top]) == plain.mu(2, [plain.mu(2, [x, y]), x]) - plain.mu(2, [x, plain.mu(2, [y, x])])


def test_relative_free_evaluates_given_products():
    V = GradedSpace(("e",), (0,))
    alg = fa.relative_free(V, 3, 2, {2: {("e", "e"): {"e": 1}}})
    e = alg.generator("e")
    assert alg.mu(2, [e, e]) == e
    assert alg.mu(2, [alg.mu(2, [e, e]), e]) == e
    t = alg.mu(3, [e, e, e])
    assert t.pairs() == [(tr.corolla(3), (0, 0, 0), 1)]
    # d(m3(e,e,e)) = (ee)e - e(ee) = e - e
    assert alg.mu(1, [t]).is_zero()


def test_relative_free_rejects_bad_structures():
    V = GradedSpace(("x", "y"), (1, 0), ((0, 0), (1, 0)))
    with pytest.raises(ValueError):
        # d(x y) = 0 but (dx) y = y y = y
        fa.relative_free(V, 3, 2, {2: {("y", "y"): {"y": 1}}})
    with pytest.raises(ValueError):
        fa.relative_free(V, 3, 2, {2: {("x", "x"): {"y": 1}}})  # degree mismatch
    with pytest.raises(ValueError):
        fa.relative_free(V, 3, 4)
    with pytest.raises(ValueError):
        fa.relative_free(V, 3, 2, {3: {}})


def test_pairs_and_formatting():
    alg = FreeAlgebra(GradedSpace(("x",), (1,)), 2)
    x = alg.generator("x")
    dx = alg.mu(1, [x])
    assert str(dx) == "dx"
    assert str(alg.mu(2, [dx, x]) * 2) == "2*m2(dx, x)"
    assert dx.pairs() == [(tr.BAR_LEG, (0,), 1)]
    assert alg.mu(2, [x, x]).degree == 2
    assert {d for d in (alg.mu(2, [x, x]) + dx).homogeneous_parts()} == {2, 0}
    assert isinstance(LEG, Leg) and isinstance(tr.corolla(2), Vertex)
