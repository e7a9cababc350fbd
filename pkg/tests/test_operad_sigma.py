import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hoalg import operad_sigma as sy
from hoalg import series
from hoalg import trees as tr
from hoalg.signs import compose, inverse
from hoalg.trees import INF, Leg, Vertex

L = sy.parse_labeled


def el(text, m):
    return sy.parse_sym_element(text, m)


def random_labeled(rng, n, m, unary_prob=0.3):
    t = tr.random_tree(n, m, rng, unary_prob=unary_prob)
    labels = list(range(1, n + 1))
    rng.shuffle(labels)
    return tr.label_legs(t, labels)


# ------------------------------------------------------------ canonical form


def test_canonicalize_examples():
    assert sy.canonicalize(L("z2(1, 2)")) == (L("z2(1, 2)"), 1)
    assert sy.canonicalize(L("z2(2, 1)")) == (L("z2(1, 2)"), -1)
    # swapping two degree-1 subtrees: sgn = -1, Koszul factor -1
    t, s = sy.canonicalize(L("z2(z3(4, 5, 6), z3(1, 2, 3))"))
    assert t == L("z2(z3(1, 2, 3), z3(4, 5, 6))") and s == 1
    # an odd marked leaf against an even plain one: only sgn contributes
    assert sy.canonicalize(L("z2(u(2), 1)")) == (L("z2(1, u(2))"), -1)
    # two odd marked leaves: sgn and Koszul factor cancel
    assert sy.canonicalize(L("z2(u(2), u(1))")) == (L("z2(u(1), u(2))"), 1)


def test_canonicalize_errors():
    with pytest.raises(ValueError):
        sy.canonicalize(L("z2(1, 1)"))
    with pytest.raises(ValueError):
        sy.canonicalize(tr.corolla(2))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 7))
def test_canonicalize_is_a_sign_consistent_projection(seed, n):
    rng = random.Random(seed)
    t = random_labeled(rng, n, INF)
    c, s = sy.canonicalize(t)
    assert sy.is_canonical(c) and s in (1, -1)
    assert sy.canonicalize(c) == (c, 1)
    assert sorted(tr.labels(c)) == list(range(1, n + 1))
    assert tr.degree(c) == tr.degree(t)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 6))
def test_relabel_round_trip_signs_cancel(seed, n):
    rng = random.Random(seed)
    t = sy.canonicalize(random_labeled(rng, n, 3, 0.0))[0]
    sigma = list(range(1, n + 1))
    rng.shuffle(sigma)
    there, s1 = sy.canonicalize(tr.relabel(t, lambda lab: sigma[lab - 1]))
    back, s2 = sy.canonicalize(tr.relabel(there, lambda lab: inverse(sigma)[lab - 1]))
    assert back == t and s1 * s2 == 1


# -------------------------------------------------------------------- action


def test_action_examples():
    z2 = sy.normalize_sym(el("z2(1, 2)", 2))
    assert sy.act((1, 2), z2) == z2
    assert sy.act((2, 1), z2) == -z2
    with pytest.raises(ValueError):
        sy.act((1, 1), z2)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 5))
def test_action_composes(seed, n):
    rng = random.Random(seed)
    x = sy.normalize_sym(random_labeled(rng, n, 3), 3)
    sigma, tau = (tuple(rng.sample(range(1, n + 1), n)) for _ in range(2))
    assert sy.act(sigma, sy.act(tau, x)) == sy.act(compose(sigma, tau), x)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 5), st.sampled_from([2, 3, INF]))
def test_normalization_is_equivariant(seed, n, m):
    rng = random.Random(seed)
    x = sy.sym_element(random_labeled(rng, n, m, 0.4), m)
    sigma = tuple(rng.sample(range(1, n + 1), n))
    assert sy.normalize_sym(sy.act(sigma, x)) == sy.act(sigma, sy.normalize_sym(x))


# ----------------------------------------------------------------- relations


def test_jacobiator_one():
    # i = j = 1: the exponent i(j-1) is 0
    assert sy.jacobiator(1, 1) == el("u(u(1))", 1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_jacobiator_term_counts(n):
    x = sy.jacobiator(n, n)
    assert len(x) == sum(math.comb(n, i) for i in range(1, n + 1))


def test_jacobiator_two():
    assert sy.jacobiator(2, 2) == el("u(z2(1, 2)) - z2(u(1), 2) + z2(u(2), 1)", 2)


def test_jacobiator_errors():
    with pytest.raises(ValueError):
        sy.jacobiator(3, 2)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_jacobiators_vanish(m):
    for n in range(1, m + 1):
        assert sy.normalize_sym(sy.jacobiator(n, m)).is_zero()


def test_normalize_examples():
    t = sy.basis_sym(3, 2)[7]
    assert sy.normalize_sym(t, 2) == sy.sym_element(t, 2)
    assert sy.normalize_sym(el("u(z2(1, 2))", 2)) == el("z2(u(1), 2) + z2(1, u(2))", 2)
    assert sy.normalize_sym(el("u(u(z2(1, 2)))", 2)).is_zero()
    assert sy.normalize_sym(el("z2(2, 1)", 2)) == -sy.normalize_sym(el("z2(1, 2)", 2))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 6))
def test_normal_forms_are_canonical_and_admissible(seed, n):
    rng = random.Random(seed)
    x = sy.normalize_sym(random_labeled(rng, n, 3, 0.4), 3)
    for t in x:
        assert tr.is_admissible(t) and sy.is_canonical(t)


# --------------------------------------------------------------------- basis


def test_basis_examples():
    assert len(sy.basis_sym(1, 2)) == 2
    assert len(sy.basis_sym(2, 2)) == 4
    assert len(sy.basis_sym(3, 2)) == 24


@pytest.mark.parametrize("m", [2, 3, INF])
def test_basis_counts_match_series(m):
    for n in range(1, 6):
        b = sy.basis_sym(n, m)
        assert len(b) == len(set(b)) == series.dim_l(m, n) == sy.count_basis_sym(n, m)
        assert all(sy.is_canonical(t) and tr.is_admissible(t) for t in b)


def test_basis_is_a_transversal_of_labelled_orderings():
    # every admissible planar shape with every labelling canonicalizes into the basis
    basis = set(sy.basis_sym(3, 3))
    seen = set()
    for shape in tr.admissible_trees(3, 3):
        for labels in itertools.permutations([1, 2, 3]):
            seen.add(sy.canonicalize(tr.label_legs(shape, labels))[0])
    assert seen == basis


# --------------------------------------------------------------- term syntax


def test_labeled_syntax_round_trip():
    t = L("z3(1, z2(3,2), u(4))")
    assert t == Vertex((Leg("o", 1), Vertex((Leg("o", 3), Leg("o", 2))), Leg("*", 4)))
    assert L(sy.format_labeled(t)) == t
    assert sy.format_labeled(L("u(z2(1, 2))")) == "u(z2(1, 2))"


@pytest.mark.parametrize("bad", ["z3(1, 2)", "z2(1, 2", "z2(1, 2))", "q", "z3(1, 2, 3)"])
def test_labeled_syntax_errors(bad):
    with pytest.raises(tr.ParseError):
        L(bad, 2)
