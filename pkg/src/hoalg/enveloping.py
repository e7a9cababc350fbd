"""Symmetrization, the universal enveloping A(m)-algebra and the PBW comparison.

U_m(L) is the free unital A(m)-algebra on the complex (L, l_1) divided by
the ideal generated by

    e_n sum_sigma chi(sigma) mu_n(x_sigma(1), ..., x_sigma(n)) - l_n(x_1, ..., x_n),   2 <= n <= m,

with e_n = symmetrization_sign(n), the same factor the symmetrization
functor uses (so that U_m stays its left adjoint).

We work in the dg model of the free algebra, where mu_1 on a generator
already equals l_1, so only n >= 2 needs explicit relations.  Everything is
truncated at external degree N; the ideal is spanned by closing the
relations under every mu_k insertion whose top external degree stays <= N.
Columns are ordered highest external degree first, so an echelon row with
pivot in degree <= p lies in the filtration level F_{<=p}.
"""

from __future__ import annotations

import itertools
import json
import math
import warnings
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import trees as tr
from .exactlin import Echelon, Indexer
from .free_algebras import (
    UNIT,
    AlgebraElement,
    FreeAlgebra,
    GradedSpace,
    _check_structure_axioms,
    _frac,
    _parse_structure,
    free_basis_keys,
)
from .linear import acc
from .signs import chi, jacobi_sign, symmetrization_sign, unshuffles
from .trees import PLAIN, Leg, Tree, Vertex


def _perms(k: int):
    return [tuple(p) for p in itertools.permutations(range(1, k + 1))]


# ---------------------------------------------------------------- L(m) data


@dataclass
class LmStructure:
    """A finite-dimensional L(m)-algebra given by structure constants.

    ``brackets[k][word] = {generator: coefficient}`` for 2 <= k <= m, stored
    for every ordering of the word; l_1 is the space's differential (zero if
    absent).
    """

    space: GradedSpace
    m: object
    brackets: dict = field(default_factory=dict)

    def __post_init__(self):
        self.m = tr.check_bound(self.m)
        self.brackets = _complete_antisymmetric(self.space, self.m, self.brackets)
        _check_jacobi(self)

    @property
    def degrees(self) -> tuple:
        return self.space.degrees

    def l1(self, j: int) -> dict:
        return self.space.d(j) if self.space.has_differential else {}

    def bracket(self, k: int, word: Sequence[int]) -> dict:
        if k == 1:
            return self.l1(word[0])
        return dict(self.brackets.get(k, {}).get(tuple(word), {}))

    def is_abelian(self) -> bool:
        no_d = not self.space.has_differential or not any(any(r) for r in self.space.differential)
        return no_d and not any(self.brackets.values())

    def all_odd(self) -> bool:
        return all(d & 1 for d in self.space.degrees)

    def abelianization(self) -> "LmStructure":
        """Same graded space, every structure map zero."""
        return LmStructure(GradedSpace(self.space.names, self.space.degrees), self.m, {})

    @classmethod
    def from_dict(cls, obj: Mapping) -> "LmStructure":
        space = GradedSpace.from_dict(obj)
        m = obj.get("m", 2)
        raw: dict = {}
        for k, entries in (obj.get("brackets") or {}).items():
            k = int(k)
            table = raw.setdefault(k, {})
            for e in entries:
                if not isinstance(e, Mapping) or "args" not in e or "value" not in e:
                    raise ValueError(f"bracket entry needs 'args' and 'value': {e!r}")
                word = tuple(space.index(a) for a in e["args"])
                if len(word) != k:
                    raise ValueError(f"bracket entry {e['args']} has the wrong length for l_{k}")
                value = {space.index(g): _frac(c) for g, c in e["value"].items()}
                if word in table and table[word] != value:
                    raise ValueError(f"conflicting entries for l_{k}{tuple(e['args'])}")
                table[word] = value
        return cls(space, m, raw)

    @classmethod
    def from_json(cls, text: str) -> "LmStructure":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            raise ValueError(f"invalid JSON: {e}") from None
        return cls.from_dict(obj)

    @classmethod
    def load(cls, path) -> "LmStructure":
        with open(path) as fh:
            return cls.from_json(fh.read())

    def to_dict(self) -> dict:
        out = self.space.to_dict()
        out["m"] = str(self.m) if self.m is tr.INF else self.m
        names = self.space.names
        br = {}
        for k, table in sorted(self.brackets.items()):
            rows = []
            for word, val in sorted(table.items()):
                if list(word) != sorted(word) or not val:
                    continue
                rows.append({
                    "args": [names[i] for i in word],
                    "value": {names[i]: (str(c) if c.denominator != 1 else int(c)) for i, c in sorted(val.items())},
                })
            if rows:
                br[str(k)] = rows
        out["brackets"] = br
        return out


def _complete_antisymmetric(space: GradedSpace, m, raw: Mapping) -> dict:
    """Fill in l_k on every ordering of each given word via l_k(x_sigma) = chi(sigma) l_k(x)."""
    degs = space.degrees
    out: dict = {}
    for k, table in raw.items():
        k = int(k)
        if k < 2 or k > m:
            raise ValueError(f"bracket arity {k} outside 2..{m}")
        full = out.setdefault(k, {})
        for word, value in table.items():
            word = tuple(space.index(a) for a in word)
            value = {space.index(g): _frac(c) for g, c in value.items() if _frac(c)}
            want = sum(degs[a] for a in word) + k - 2
            for g in value:
                if degs[g] != want:
                    raise ValueError(
                        f"l_{k}{tuple(space.names[a] for a in word)} must have degree {want}, "
                        f"but {space.names[g]} has degree {degs[g]}"
                    )
            wd = [degs[a] for a in word]
            for sigma in _perms(k):
                w2 = tuple(word[p - 1] for p in sigma)
                s = chi(sigma, wd)
                v2 = {g: s * c for g, c in value.items()}
                if w2 in full and full[w2] != v2:
                    raise ValueError(f"brackets are not antisymmetric on {tuple(space.names[a] for a in word)}")
                full[w2] = v2
    return {k: {w: v for w, v in t.items() if v} for k, t in out.items()}


def _apply_bracket(L: LmStructure, k: int, combos: Sequence[dict]) -> dict:
    """l_k on linear combinations of generators (dicts index -> coef)."""
    out: dict = {}
    for pick in itertools.product(*(c.items() for c in combos)):
        coef = 1
        for _, c in pick:
            coef *= c
        for g, cg in L.bracket(k, [p[0] for p in pick]).items():
            acc(out, g, coef * cg)
    return out


def _check_jacobi(L: LmStructure) -> None:
    degs = L.space.degrees
    kmax = max([1] + [k for k, t in L.brackets.items() if t])
    # with m infinite only finitely many brackets are nonzero
    top = L.m if L.m is not tr.INF else 2 * kmax - 1
    for n in range(1, top + 1):
        for word in itertools.product(range(L.space.dim), repeat=n):
            wd = [degs[a] for a in word]
            total: dict = {}
            for i in range(1, n + 1):
                j = n + 1 - i
                for sigma in unshuffles(i, n):
                    inner = L.bracket(i, [word[p - 1] for p in sigma[:i]])
                    if not inner:
                        continue
                    rest = [{word[p - 1]: 1} for p in sigma[i:]]
                    outer = _apply_bracket(L, j, [inner] + rest)
                    s = chi(sigma, wd) * jacobi_sign(i, j)
                    for g, c in outer.items():
                        acc(total, g, s * c)
            if total:
                names = tuple(L.space.names[a] for a in word)
                raise ValueError(f"generalized Jacobi identity fails in arity {n} on {names}")


# ---------------------------------------------------------- symmetrization


@dataclass
class AmStructure:
    """A(m)-algebra structure constants; ``products[k][word] = {generator: coefficient}``, mu_1 = differential."""

    space: GradedSpace
    m: object
    products: dict = field(default_factory=dict)

    def __post_init__(self):
        self.m = tr.check_bound(self.m)
        if self.m is tr.INF:
            raise ValueError("structure constants need a finite m")
        tables = _parse_structure(self.space, self.m, {k: v for k, v in self.products.items() if int(k) >= 2})
        if self.space.has_differential:
            tables[1] = {(j,): self.space.d(j) for j in range(self.space.dim) if self.space.d(j)}
        for k in range(1, self.m + 1):
            tables.setdefault(k, {})
        _check_structure_axioms(self.space, self.m, tables, self.m)
        self.products = tables

    def product(self, k: int, word: Sequence[int]) -> dict:
        return dict(self.products.get(k, {}).get(tuple(word), {}))


def symmetrize(A: AmStructure, m=None) -> LmStructure:
    """l_n(v) = e_n sum_sigma chi(sigma) mu_n(v_sigma) for n >= 2, l_1 = mu_1, e_n = symmetrization_sign(n)."""
    if not isinstance(A, AmStructure):
        raise TypeError("symmetrize needs an AmStructure")
    m = A.m if m is None else tr.check_bound(m)
    if m != A.m:
        raise ValueError("bound mismatch")
    degs = A.space.degrees
    brackets: dict = {}
    for n in range(2, m + 1):
        table = {}
        e = symmetrization_sign(n)
        for word in itertools.combinations_with_replacement(range(A.space.dim), n):
            wd = [degs[a] for a in word]
            val: dict = {}
            for sigma in _perms(n):
                for g, c in A.product(n, [word[p - 1] for p in sigma]).items():
                    acc(val, g, e * chi(sigma, wd) * c)
            if val:
                table[word] = val
        brackets[n] = table
    return LmStructure(A.space, m, brackets)


# ------------------------------------------------------------- enveloping


def enveloping_algebra(L: LmStructure, m=None) -> FreeAlgebra:
    """The free unital A(m)-algebra on (L, l_1), dg model."""
    m = L.m if m is None else tr.check_bound(m)
    sp = L.space
    D = sp.differential if sp.has_differential else tuple((0,) * sp.dim for _ in range(sp.dim))
    space = GradedSpace(sp.names, sp.degrees, D)
    return FreeAlgebra(space, m, "a", "dg", unital=True)


def _symmetrized_product(alg: FreeAlgebra, word: Sequence[int]) -> dict:
    degs = alg.space.degrees
    wd = [degs[a] for a in word]
    e = symmetrization_sign(len(word))
    out: dict = {}
    for sigma in _perms(len(word)):
        t = Vertex(Leg(PLAIN, word[p - 1]) for p in sigma)
        acc(out, t, e * chi(sigma, wd))
    return out


def enveloping_relations(L: LmStructure, n: int, alg: FreeAlgebra | None = None) -> list[AlgebraElement]:
    """e_n sum_sigma chi(sigma) mu_n(x_sigma) - l_n(x), one per multiset of n generators."""
    alg = alg or enveloping_algebra(L)
    if not isinstance(n, int) or n < 2:
        raise ValueError("relations start at n = 2; mu_1 = l_1 holds in the dg model already")
    if n > alg.m:
        raise ValueError(f"n={n} exceeds m={alg.m}")
    out = []
    for word in itertools.combinations_with_replacement(range(L.space.dim), n):
        rel = _symmetrized_product(alg, word)
        for g, c in L.bracket(n, word).items():
            acc(rel, Leg(PLAIN, g), -c)
        out.append(AlgebraElement(alg, rel))
    return out


@dataclass
class FiltrationReport:
    m: object
    N: int
    P: int
    u_dims: list  # dim U_{m,p}, p = 0..P
    g_dims: list  # dim G^q, q = 0..P
    s_counts: list | None = None  # |S^q|, q = 0..P
    match: bool | None = None
    warnings: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "m": str(self.m),
            "N": self.N,
            "P": self.P,
            "u_dims": self.u_dims,
            "g_dims": self.g_dims,
            "s_counts": self.s_counts,
            "match": self.match,
            "warnings": self.warnings,
        }


class _Truncation:
    """The ideal I of U_m(L) intersected with external degree <= N, in echelon form."""

    def __init__(self, L: LmStructure, m, N: int):
        self.L = L
        self.alg = enveloping_algebra(L, m)
        self.N = N
        self.by_degree = {d: free_basis_keys(self.alg, d) for d in range(1, N + 1)}
        self.index = Indexer()
        for d in range(N, 0, -1):
            for k in self.by_degree[d]:
                self.index(k)
        self.index(UNIT)
        self.col_degree = [self.alg.external_degree(k) for k in self.index.keys]
        self.ech = Echelon()
        self._close()

    def _top(self, row: Mapping) -> int:
        return max(self.alg.external_degree(k) for k in row)

    def _add(self, combo: Mapping, queue: deque) -> None:
        got = self.ech.add(self.index.vector(combo, strict=True))
        if got is not None:
            queue.append({self.index.keys[c]: v for c, v in got.items()})

    def _close(self) -> None:
        queue: deque = deque()
        alg, N = self.alg, self.N
        top_k = N if alg.m is tr.INF else min(alg.m, N)
        for n in range(2, top_k + 1):
            for rel in enveloping_relations(self.L, n, alg):
                if rel:
                    self._add(rel.terms, queue)
        while queue:
            row = queue.popleft()
            r = AlgebraElement(alg, row)
            room = N - self._top(row)
            self._add(alg.mu(1, [r]).terms, queue)
            for k in range(2, top_k + 1):
                # the other k-1 slots hold basis elements of total degree <= room
                for sizes in _size_tuples(k - 1, room):
                    pools = [self.by_degree[s] for s in sizes]
                    for others in itertools.product(*pools):
                        others_el = [AlgebraElement(alg, {o: 1}) for o in others]
                        for slot in range(k):
                            args = others_el[:slot] + [r] + others_el[slot:]
                            self._add(alg.mu(k, args).terms, queue)

    def ideal_dim_upto(self, p: int) -> int:
        return sum(1 for c in self.ech.rows if self.col_degree[c] <= p)

    def in_ideal_plus_lower(self, combo: Mapping, q: int) -> bool:
        """Is ``combo`` in I + F_{<=q-1}, i.e. zero in the associated graded?"""
        rem = self.ech.reduce(self.index.vector(combo, strict=True))
        return all(self.col_degree[c] < q for c in rem)


def _size_tuples(count: int, room: int):
    """Tuples of ``count`` positive sizes with sum <= room."""
    if count == 0:
        yield ()
        return
    for s in range(1, room - count + 2):
        for rest in _size_tuples(count - 1, room - s):
            yield (s,) + rest


def filtration_dims(L: LmStructure, m=None, N: int = 3, P: int | None = None,
                    with_s_counts: bool = True) -> FiltrationReport:
    """dims of U_{m,p} and G^q up to external degree N."""
    m = L.m if m is None else tr.check_bound(m)
    if not isinstance(N, int) or N < 0:
        raise ValueError("N must be a nonnegative integer")
    P = N if P is None else P
    if not 0 <= P <= N:
        raise ValueError("need 0 <= P <= N")
    notes = []
    if N < 2:
        msg = f"cap N={N} is below every relation; the report is that of the free algebra"
        warnings.warn(msg)
        notes.append(msg)
    trunc = _Truncation(L, m, N) if N >= 1 else None
    u_dims = []
    total = 1  # the unit
    for p in range(0, P + 1):
        if p >= 1:
            total += len(trunc.by_degree[p])
        u_dims.append(total - (trunc.ideal_dim_upto(p) if trunc else 0))
    g_dims = [u_dims[0]] + [u_dims[q] - u_dims[q - 1] for q in range(1, P + 1)]
    s_counts = None
    match = None
    if with_s_counts:
        s_counts = [1] + [len(s_m_basis(L.space, q, m)) for q in range(1, P + 1)]
        match = s_counts == g_dims
    return FiltrationReport(m, N, P, u_dims, g_dims, s_counts, match, notes)


# -------------------------------------------------------------- S_m basis


def _is_descending(labels: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(labels, labels[1:]))


def _input_vertices(t: Tree, path=()):
    if isinstance(t, Leg):
        return
    if all(isinstance(c, Leg) for c in t):
        yield path, t
        return
    for i, c in enumerate(t):
        yield from _input_vertices(c, path + (i,))


def is_straight(t: Tree) -> bool:
    """No input vertex carries a weakly descending label sequence."""
    return all(not _is_descending([c.label for c in v]) for _, v in _input_vertices(t))


def _dim_of(V) -> int:
    if isinstance(V, GradedSpace):
        return V.dim
    if isinstance(V, int):
        return V
    return len(V)


def s_m_basis(V, n: int, m) -> list[Tree]:
    """Reduced planar n-trees with legs labeled by generator indices, straight at every input vertex."""
    m = tr.check_bound(m)
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    dim = _dim_of(V)
    out = []
    for shape in tr.enumerate_planar(n, m):
        for word in itertools.product(range(dim), repeat=n):
            t = tr.label_legs(shape, word)
            if is_straight(t):
                out.append(t)
    return out


def _replace(t: Tree, path: tuple, new: Tree) -> Tree:
    if not path:
        return new
    kids = list(t)
    kids[path[0]] = _replace(kids[path[0]], path[1:], new)
    return Vertex(kids)


def _straighten_tree(t: Tree, degs: Sequence[int]) -> dict:
    for path, v in _input_vertices(t):
        labels = [c.label for c in v]
        if not _is_descending(labels):
            continue
        k = len(labels)
        wd = [degs[a] for a in labels]
        # group the full symmetrization by the arrangement it produces
        coef: dict = {}
        for sigma in _perms(k):
            arr = tuple(labels[p - 1] for p in sigma)
            acc(coef, arr, chi(sigma, wd))
        own = coef.pop(tuple(labels), 0)
        if not own:
            raise ValueError(
                f"the symmetrization relation does not involve {labels}: repeated even-degree letters"
            )
        out: dict = {}
        for arr, c in coef.items():
            t2 = _replace(t, path, Vertex(Leg(PLAIN, a) for a in arr))
            for u, cu in _straighten_tree(t2, degs).items():
                acc(out, u, -Fraction(c, 1) / own * cu)
        return out
    return {t: 1}


def straighten(x, V) -> dict:
    """Rewrite into the span of :func:`s_m_basis` modulo full symmetrization at input vertices.

    ``x`` is a dg-model element or a ``{decorated tree: coefficient}`` dict;
    ``V`` supplies generator degrees.
    """
    degs = V.degrees if isinstance(V, GradedSpace) else tuple(V)
    terms = x.terms if isinstance(x, AlgebraElement) else x
    out: dict = {}
    for t, c in terms.items():
        if t == UNIT:
            acc(out, UNIT, c)
            continue
        if not tr.is_reduced(t):
            raise ValueError("straighten works on reduced decorated trees")
        for u, cu in _straighten_tree(t, degs).items():
            acc(out, u, c * cu)
    return {k: Fraction(v) for k, v in out.items()}


# -------------------------------------------------------------- PBW


@dataclass
class PbwReport:
    m: object
    N: int
    rows: list  # (q, dim G^q, |S^q|, match)
    asserted: bool
    ok: bool
    notes: list = field(default_factory=list)
    filtration: FiltrationReport | None = None

    def as_dict(self) -> dict:
        return {
            "m": str(self.m),
            "N": self.N,
            "rows": [{"q": q, "dim_G": g, "s_count": s, "match": mt} for q, g, s, mt in self.rows],
            "asserted": self.asserted,
            "ok": self.ok,
            "notes": self.notes,
            "filtration": self.filtration.as_dict() if self.filtration else None,
        }


def pbw_compare(L: LmStructure, m=None, N: int = 3, strict_odd_only: bool = False) -> PbwReport:
    """Compare dim G^q with the straightening count |S^q| for q <= N."""
    m = L.m if m is None else tr.check_bound(m)
    notes = []
    odd = L.all_odd()
    if not odd:
        if strict_odd_only:
            raise ValueError("--strict-odd-only: the generating space has even-degree generators")
        notes.append("even-degree generators present: the comparison is reported, not asserted")
    rep = filtration_dims(L, m, N)
    rows = [(q, rep.g_dims[q], rep.s_counts[q], rep.g_dims[q] == rep.s_counts[q]) for q in range(1, N + 1)]
    ok = all(r[3] for r in rows)
    return PbwReport(m, N, rows, odd, ok if odd else True, notes + rep.warnings, rep)


def graded_dims_match(L1: LmStructure, L2: LmStructure, m=None, N: int = 3) -> tuple[bool, list, list]:
    """Whether two L(m)-algebras have the same dim G^q table up to N."""
    a = filtration_dims(L1, m, N, with_s_counts=False).g_dims
    b = filtration_dims(L2, m, N, with_s_counts=False).g_dims
    return a == b, a, b


# -------------------------------------------------------- commutativity


def commutes_in_graded(L: LmStructure, a: Tree, b: Tree, m=None, N: int | None = None) -> bool:
    """Is mu_2(a, b) - (-1)^(|a||b|) mu_2(b, a) zero in G*_m(L)?  ``a``, ``b`` are decorated trees."""
    m = L.m if m is None else tr.check_bound(m)
    alg = enveloping_algebra(L, m)
    q = tr.n_legs(a) + tr.n_legs(b)
    N = q if N is None else N
    if q > N:
        raise ValueError("the product exceeds the cap N")
    trunc = _Truncation(L, m, N)
    da, db = alg.internal_degree(a), alg.internal_degree(b)
    sign = -1 if (da * db) & 1 else 1
    combo: dict = {}
    for k, c in alg.nf.vertex_nf((a, b)).items():
        acc(combo, k, c)
    for k, c in alg.nf.vertex_nf((b, a)).items():
        acc(combo, k, -sign * c)
    return trunc.in_ideal_plus_lower(combo, q)


def commutativity_witness(L: LmStructure, m=None, N: int = 3) -> dict:
    """Generator pairs commute in G*; report whether a composite pair does too."""
    m = L.m if m is None else tr.check_bound(m)
    gens = [Leg(PLAIN, i) for i in range(L.space.dim)]
    pairs = {}
    for a, b in itertools.combinations_with_replacement(gens, 2):
        pairs[(L.space.names[a.label], L.space.names[b.label])] = commutes_in_graded(L, a, b, m, N)
    composite = None
    if N >= 3 and L.space.dim >= 1:
        x = gens[0]
        y = gens[-1]
        ab = Vertex((x, y))
        composite = {
            "a": f"m2({L.space.names[x.label]}, {L.space.names[y.label]})",
            "b": L.space.names[x.label],
            "commutes": commutes_in_graded(L, ab, x, m, N),
        }
    return {"generator_pairs": pairs, "composite": composite}


def expected_s_count_formula(dim: int, n: int, m) -> int:
    """|S^n| by inclusion over input vertices, independent of :func:`s_m_basis`.

    A planar shape with input vertices of arities k_1..k_r and the remaining
    legs free contributes dim^(free) * prod (dim^k - C(dim + k - 1, k)),
    since C(dim+k-1, k) labelings of a k-vertex are weakly descending.
    """
    total = 0
    for shape in tr.enumerate_planar(n, m):
        ks = [len(v) for _, v in _input_vertices(shape)]
        free = n - sum(ks)
        prod = dim**free
        for k in ks:
            prod *= dim**k - math.comb(dim + k - 1, k)
        total += prod
    return total
