"""Free A(m)- and L(m)-algebras on graded spaces.

An element is a combination of *decorated trees*: admissible trees whose
legs carry generator indices.  A decorated tree is read as the nested
expression it draws, e.g. ``((x y) z)`` is mu_2(mu_2(x, y), z), so the
structure maps are pure grafting followed by normalization, and all signs
come from the rewriting rules evaluated on internal degrees.  The pair
``(shape, word)`` of :func:`free_basis` is the same data split apart.

Two models of the free algebra on a complex (V, d) are available:

* ``model="marks"``: the free algebra on {x, dx}; a ``BAR`` leg is the
  formal letter dx and mu_1 acts on the tree only.
* ``model="dg"``: the quotient where mu_1 on a generator is d_V.  Trees stay
  reduced; :func:`induced_differential` computes mu_1 there through the
  tree differential instead of by rewriting.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import trees as tr
from .exactlin import quotient_dim
from .linear import LinComb, acc, format_coefficient
from .operad_nsigma import PlanarNormalizer, _dg_tree
from .operad_sigma import SymNormalizer, SymOperadElement, act, basis_sym, structure_key
from .signs import axiom_sign, chi, jacobi_sign, power, unshuffles
from .trees import BAR, PLAIN, Leg, Tree, Vertex

UNIT = "1"


# ------------------------------------------------------------- graded spaces


def _frac(v) -> Fraction:
    if isinstance(v, bool):
        raise ValueError("boolean is not a coefficient")
    if isinstance(v, float):
        raise ValueError(f"coefficients must be exact (int or 'p/q'), got float {v}")
    return Fraction(v)


@dataclass(frozen=True)
class GradedSpace:
    """Finite-dimensional graded space with an optional square-zero differential.

    ``differential[i][j]`` is the coefficient of generator i in d(generator j).
    """

    names: tuple
    degrees: tuple
    differential: tuple | None = None

    def __post_init__(self):
        if len(self.names) != len(self.degrees):
            raise ValueError("need one degree per generator")
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be distinct")
        for d in self.degrees:
            if isinstance(d, bool) or not isinstance(d, int):
                raise ValueError(f"degrees must be integers, got {d!r}")
        if self.differential is not None:
            n = len(self.names)
            D = tuple(tuple(_frac(v) for v in row) for row in self.differential)
            if len(D) != n or any(len(row) != n for row in D):
                raise ValueError(f"differential must be a {n}x{n} matrix")
            object.__setattr__(self, "differential", D)
            for i in range(n):
                for j in range(n):
                    if D[i][j] and self.degrees[i] != self.degrees[j] - 1:
                        raise ValueError(
                            f"differential does not lower degree by one: {self.names[j]} -> {self.names[i]}"
                        )
            for i in range(n):
                for j in range(n):
                    if sum(D[i][k] * D[k][j] for k in range(n)):
                        raise ValueError("differential does not square to zero")

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def has_differential(self) -> bool:
        return self.differential is not None

    def index(self, name) -> int:
        if isinstance(name, int):
            if not 0 <= name < self.dim:
                raise ValueError(f"generator index {name} out of range")
            return name
        try:
            return self.names.index(name)
        except ValueError:
            raise ValueError(f"unknown generator {name!r}") from None

    def d(self, j: int) -> dict:
        """d(generator j) as ``{i: coefficient}``."""
        if self.differential is None:
            raise ValueError("space has no differential")
        return {i: self.differential[i][j] for i in range(self.dim) if self.differential[i][j]}

    @classmethod
    def from_dict(cls, obj: Mapping) -> "GradedSpace":
        if not isinstance(obj, Mapping) or "generators" not in obj:
            raise ValueError("space description needs a 'generators' list")
        gens = obj["generators"]
        if not isinstance(gens, list) or not gens:
            raise ValueError("'generators' must be a nonempty list")
        names, degs = [], []
        for g in gens:
            if not isinstance(g, Mapping) or "name" not in g or "degree" not in g:
                raise ValueError(f"bad generator entry {g!r}")
            names.append(str(g["name"]))
            degs.append(g["degree"])
        D = obj.get("differential")
        return cls(tuple(names), tuple(degs), None if D is None else tuple(tuple(r) for r in D))

    @classmethod
    def from_json(cls, text: str) -> "GradedSpace":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            raise ValueError(f"invalid JSON: {e}") from None
        return cls.from_dict(obj)

    @classmethod
    def load(cls, path) -> "GradedSpace":
        with open(path) as fh:
            return cls.from_json(fh.read())

    @classmethod
    def simple(cls, degrees: Sequence[int], differential=None) -> "GradedSpace":
        names = tuple(f"x{i + 1}" for i in range(len(degrees)))
        return cls(names, tuple(degrees), differential)

    def to_dict(self) -> dict:
        out = {"generators": [{"name": n, "degree": d} for n, d in zip(self.names, self.degrees)]}
        if self.differential is not None:
            out["differential"] = [[str(v) if v.denominator != 1 else int(v) for v in row] for row in self.differential]
        return out


# ------------------------------------------------------------------- algebra


class FreeAlgebra:
    """Free A(m)- (``flavor="a"``) or L(m)-algebra (``flavor="l"``) on a graded space."""

    def __init__(self, space: GradedSpace, m, flavor: str = "a", model: str = "marks",
                 unital: bool = False, structure: Mapping | None = None):
        self.space = space
        self.m = tr.check_bound(m)
        self.flavor = flavor.lower()
        if self.flavor not in ("a", "l"):
            raise ValueError(f"flavor must be 'a' or 'l', got {flavor!r}")
        if model not in ("marks", "dg"):
            raise ValueError(f"model must be 'marks' or 'dg', got {model!r}")
        if model == "dg" and not space.has_differential:
            raise ValueError("the dg model needs a space with a differential")
        if unital and self.flavor != "a":
            raise ValueError("unital extension is only defined for the A flavor")
        self.model = model
        self.unital = unital
        self.structure = dict(structure or {})
        degs = space.degrees

        def leaf_degree(leg):
            return degs[leg.label]

        d_leaf = None
        if model == "dg":
            d_leaf = self._d_leaf_dg
        hook = self._structure_hook if self.structure else None
        if self.flavor == "a":
            self.nf = PlanarNormalizer(leaf_degree, d_leaf, hook)
        else:
            self.nf = SymNormalizer(leaf_degree, d_leaf, hook, key=structure_key)

    # -- rewrite hooks

    def _d_leaf_dg(self, leg: Leg) -> dict:
        if leg.mark != PLAIN:
            return {}
        return {Leg(PLAIN, i): c for i, c in self.space.d(leg.label).items()}

    def _structure_hook(self, kids: tuple):
        k = len(kids)
        table = self.structure.get(k)
        if table is None or not all(isinstance(c, Leg) and c.mark == PLAIN for c in kids):
            return None
        word = tuple(c.label for c in kids)
        return {Leg(PLAIN, i): c for i, c in table.get(word, {}).items() if c}

    # -- construction

    def __repr__(self):
        extra = ", unital" if self.unital else ""
        rel = f", relative to arities <= {max(self.structure)}" if self.structure else ""
        return f"FreeAlgebra({self.flavor.upper()}, m={self.m}, dim={self.space.dim}, {self.model}{extra}{rel})"

    def element(self, terms=None) -> "AlgebraElement":
        return AlgebraElement(self, terms)

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def unit(self) -> "AlgebraElement":
        if not self.unital:
            raise ValueError("algebra is not unital")
        return AlgebraElement(self, {UNIT: 1})

    def generator(self, name) -> "AlgebraElement":
        return AlgebraElement(self, {Leg(PLAIN, self.space.index(name)): 1})

    def generators(self) -> list["AlgebraElement"]:
        return [self.generator(i) for i in range(self.space.dim)]

    def pair(self, shape: Tree, word: Sequence, coefficient=1) -> "AlgebraElement":
        """The element given by a tree shape and a word of generators, normalized."""
        word = [self.space.index(w) for w in word]
        t = tr.label_legs(shape, word) if len(word) == tr.n_legs(shape) else None
        if t is None:
            raise ValueError("word length must equal the number of legs")
        return AlgebraElement(self, {k: coefficient * c for k, c in self.nf.nf(t).items()})

    # -- degrees

    def internal_degree(self, key) -> int:
        if key == UNIT:
            return 0
        return self.nf.degree(key)

    @staticmethod
    def external_degree(key) -> int:
        if key == UNIT:
            return 0
        return tr.n_legs(key)

    # -- operations

    def _operation(self, k: int, args: Sequence["AlgebraElement"]) -> "AlgebraElement":
        if not isinstance(k, int) or k < 1:
            raise ValueError(f"operation arity must be a positive integer, got {k!r}")
        if k > self.m:
            raise ValueError(f"arity {k} exceeds m={self.m}")
        if len(args) != k:
            raise ValueError(f"expected {k} arguments, got {len(args)}")
        for a in args:
            if not isinstance(a, AlgebraElement) or a.algebra is not self:
                raise ValueError("arguments must be elements of this algebra")
        out: dict = {}
        for pick in itertools.product(*(a.terms.items() for a in args)):
            keys = tuple(p[0] for p in pick)
            c = 1
            for p in pick:
                c *= p[1]
            if UNIT in keys:
                res = self._unit_rule(keys)
            else:
                res = self.nf.vertex_nf(keys)
            for u, cu in res.items():
                acc(out, u, c * cu)
        return AlgebraElement(self, out)

    @staticmethod
    def _unit_rule(keys: tuple) -> dict:
        # mu_2(a, 1) = mu_2(1, a) = a, every other operation kills the unit
        if len(keys) != 2:
            return {}
        a, b = keys
        return {b if a == UNIT else a: 1}

    def mu(self, k: int, args: Sequence["AlgebraElement"]) -> "AlgebraElement":
        if self.flavor != "a":
            raise ValueError("mu is the A-flavor structure map; use ell")
        return self._operation(k, args)

    def ell(self, k: int, args: Sequence["AlgebraElement"]) -> "AlgebraElement":
        if self.flavor != "l":
            raise ValueError("ell is the L-flavor structure map; use mu")
        return self._operation(k, args)

    def op(self, k: int, args: Sequence["AlgebraElement"]) -> "AlgebraElement":
        return self._operation(k, args)

    def basis(self, n: int) -> list[Tree]:
        """Decorated normal trees of external degree n."""
        return free_basis_keys(self, n)

    def format_key(self, key) -> str:
        if key == UNIT:
            return "1"
        names = self.space.names
        letter = "m" if self.flavor == "a" else "l"

        def walk(t):
            if isinstance(t, Leg):
                return ("d" if t.mark == BAR else "") + names[t.label]
            if len(t) == 1:
                return f"{letter}1({walk(t[0])})"
            return f"{letter}{len(t)}(" + ", ".join(walk(c) for c in t) + ")"

        return walk(key)


class AlgebraElement(LinComb):
    """Combination of decorated normal trees (and possibly the unit)."""

    __slots__ = ("algebra",)

    def __init__(self, algebra: FreeAlgebra, terms=None):
        super().__init__(terms)
        self.algebra = algebra

    def _like(self, terms):
        return AlgebraElement(self.algebra, terms)

    def _compatible(self, other):
        super()._compatible(other)
        if other.algebra is not self.algebra:
            raise ValueError("elements of different algebras")

    @property
    def external_degree(self) -> int:
        degs = {self.algebra.external_degree(k) for k in self.terms}
        if len(degs) != 1:
            raise ValueError("element is zero or not homogeneous in external degree")
        return degs.pop()

    @property
    def degree(self) -> int:
        """Internal degree (the element must be homogeneous)."""
        degs = {self.algebra.internal_degree(k) for k in self.terms}
        if len(degs) != 1:
            raise ValueError("element is zero or not homogeneous in internal degree")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len({self.algebra.internal_degree(k) for k in self.terms}) <= 1

    def homogeneous_parts(self) -> dict[int, "AlgebraElement"]:
        parts: dict = {}
        for k, c in self.terms.items():
            parts.setdefault(self.algebra.internal_degree(k), {})[k] = c
        return {d: AlgebraElement(self.algebra, t) for d, t in parts.items()}

    def pairs(self) -> list[tuple[Tree, tuple, Fraction]]:
        """(shape, word, coefficient) triples; the unit appears as (None, (), c)."""
        out = []
        for k, c in self.terms.items():
            if k == UNIT:
                out.append((None, (), c))
            else:
                out.append((tr.strip_labels(k), tuple(tr.labels(k)), c))
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        fmt = self.algebra.format_key
        pieces = []
        for k, c in sorted(self.terms.items(), key=lambda kv: fmt(kv[0])):
            sep, mag = format_coefficient(Fraction(c), not pieces)
            pieces.append(sep + ("" if mag == "1" else mag + "*") + fmt(k))
        return "".join(pieces)

    def __repr__(self):
        return f"AlgebraElement({self})"


# ---------------------------------------------------------- module functions


def mu(k: int, args: Sequence[AlgebraElement], m=None) -> AlgebraElement:
    if not args:
        raise ValueError("mu needs at least one argument")
    alg = args[0].algebra
    if m is not None and tr.check_bound(m) != alg.m:
        raise ValueError(f"bound m={m} does not match the algebra's m={alg.m}")
    return alg.mu(k, args)


def ell(k: int, args: Sequence[AlgebraElement], m=None) -> AlgebraElement:
    if not args:
        raise ValueError("ell needs at least one argument")
    alg = args[0].algebra
    if m is not None and tr.check_bound(m) != alg.m:
        raise ValueError(f"bound m={m} does not match the algebra's m={alg.m}")
    return alg.ell(k, args)


def _words(dim: int, n: int):
    return itertools.product(range(dim), repeat=n)


def free_basis(X: GradedSpace, n: int, m, flavor: str = "a", model: str = "marks") -> list[tuple[Tree, tuple]]:
    """Basis pairs (shape, word) of the external-degree-n part.

    A flavor: every admissible shape (reduced shapes in the dg model) with
    every word.  L flavor: one pair per orbit, given by a decorated tree
    whose children are sorted (see :func:`free_basis_keys`).
    """
    alg = FreeAlgebra(X, m, flavor, model)
    if flavor == "a" and not alg.structure:
        # shape times word: skip building the decorated trees
        _check_external(n)
        return [(s, w) for s in _a_shapes(alg, n) for w in _words(X.dim, n)]
    return [(tr.strip_labels(t), tuple(tr.labels(t))) for t in free_basis_keys(alg, n)]


def _check_external(n) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"external degree must be a positive integer, got {n!r}")


def _a_shapes(alg: "FreeAlgebra", n: int) -> list[Tree]:
    return tr.enumerate_planar(n, alg.m) if alg.model == "dg" else tr.admissible_trees(n, alg.m)


def free_basis_keys(alg: FreeAlgebra, n: int) -> list[Tree]:
    _check_external(n)
    dim = alg.space.dim
    leaf_marks = (PLAIN,) if alg.model == "dg" else (PLAIN, BAR)
    if alg.structure:
        raise ValueError("basis enumeration is not available for relative free algebras")
    if alg.flavor == "a":
        return [tr.label_legs(s, w) for s in _a_shapes(alg, n) for w in _words(dim, n)]
    return _sym_decorated(n, alg.m, dim, leaf_marks, alg.nf)


def _sym_decorated(n: int, m, dim: int, marks: tuple, nf: SymNormalizer) -> list[Tree]:
    """Decorated trees with sorted children, dropping those forced to vanish."""
    by_size: dict[int, list] = {}
    for size in range(1, n + 1):
        if size == 1:
            level = [Leg(mk, i) for i in range(dim) for mk in marks]
        else:
            level = []
            pool = sorted(
                ((t, s) for s in range(1, size) for t in by_size[s]),
                key=lambda ts: structure_key(ts[0]),
            )
            for k in tr.arities_upto(size, m):
                level.extend(Vertex(kids) for kids in _sorted_choices(pool, k, size, nf))
        level.sort(key=structure_key)
        by_size[size] = level
    return by_size[n]


def _sorted_choices(pool: list, k: int, total: int, nf: SymNormalizer, start: int = 0):
    # non-decreasing k-multisets from pool with sizes summing to total; equal
    # neighbours are allowed only for odd total degree
    if k == 0:
        if total == 0:
            yield ()
        return
    for idx in range(start, len(pool)):
        t, s = pool[idx]
        if s > total - (k - 1):
            continue
        for rest in _sorted_choices(pool, k - 1, total - s, nf, idx):
            if rest and rest[0] == t and not nf.degree(t) & 1:
                continue
            yield (t,) + rest


def orbit_count_oracle(X: GradedSpace, n: int, m) -> int:
    """dim of L_m(n) (x)_{S_n} X^{(x)n} computed as coinvariants by linear algebra."""
    shapes = basis_sym(n, m)
    index: dict = {}
    for t in shapes:
        for w in _words(X.dim, n):
            index[(t, w)] = len(index)
    rows = []
    degs = X.degrees
    for t in shapes:
        el = SymOperadElement(n, m, {t: 1}, check=False)
        for p in range(1, n):
            tau = list(range(1, n + 1))
            tau[p - 1], tau[p] = tau[p], tau[p - 1]
            moved = act(tau, el)
            for w in _words(X.dim, n):
                # the letter on leaf l travels with the leaf
                w2 = list(w)
                w2[p - 1], w2[p] = w2[p], w2[p - 1]
                eps = power(degs[w[p - 1]] * degs[w[p]])
                row = {index[(t, w)]: -eps}
                for t2, c in moved.terms.items():
                    col = index[(t2, tuple(w2))]
                    row[col] = row.get(col, 0) + c
                rows.append({k: v for k, v in row.items() if v})
    return quotient_dim(len(index), rows)


# ------------------------------------------------------------ dg model


def _kappa(t: Tree, degs: Sequence[int]) -> int:
    """Sign exponent between the nested reading and the tree (x) word reading."""
    total = 0

    def walk(s):
        nonlocal total
        if isinstance(s, Leg):
            return (0, degs[s.label])
        seen_letters = 0
        tdeg = len(s) - 2
        ldeg = 0
        for c in s:
            ct, cl = walk(c)
            total += ct * seen_letters
            seen_letters += cl
            tdeg += ct
            ldeg += cl
        return (tdeg, ldeg)

    walk(t)
    return total


def induced_differential(x: AlgebraElement, m=None) -> AlgebraElement:
    """d(T (x) w) = dT (x) w + (-1)^|T| sum_i (+-) T (x) (w with d on letter i).

    Computed in the tree (x) word reading and converted back; agrees with
    mu_1 of the dg model, which reaches the same answer by rewriting.
    """
    alg = x.algebra
    if alg.flavor != "a":
        raise ValueError("induced_differential is defined for the A flavor")
    if not alg.space.has_differential:
        raise ValueError("space has no differential")
    if alg.model != "dg":
        raise ValueError("induced_differential works in the dg model (reduced trees)")
    if m is not None and tr.check_bound(m) != alg.m:
        raise ValueError("bound mismatch")
    degs = alg.space.degrees
    out: dict = {}
    for key, c in x.terms.items():
        if key == UNIT:
            continue
        if not tr.is_reduced(key):
            raise ValueError("induced_differential needs reduced support trees")
        shape = tr.strip_labels(key)
        word = tr.labels(key)
        c0 = c * power(_kappa(key, degs))
        for u, cu in _dg_tree(shape, alg.m).items():
            t2 = tr.label_legs(u, word)
            acc(out, t2, c0 * cu * power(_kappa(t2, degs)))
        sign = power(tr.degree(shape))
        before = 0
        for i, letter in enumerate(word):
            for y, cy in alg.space.d(letter).items():
                w2 = list(word)
                w2[i] = y
                t2 = tr.label_legs(shape, w2)
                acc(out, t2, c0 * sign * power(before) * cy * power(_kappa(t2, degs)))
            before += degs[letter]
    return AlgebraElement(alg, out)


def to_dg_model(x: AlgebraElement, target: FreeAlgebra | None = None) -> AlgebraElement:
    """Send the marks model to the dg model by evaluating every formal dx as d_V x."""
    alg = x.algebra
    if alg.model != "marks":
        raise ValueError("element is not in the marks model")
    if target is None:
        target = FreeAlgebra(alg.space, alg.m, alg.flavor, "dg")
    if target.space != alg.space or target.m != alg.m or target.flavor != alg.flavor:
        raise ValueError("target algebra does not match")
    out: dict = {}
    for k, c in x.terms.items():
        if k == UNIT:
            acc(out, UNIT, c)
            continue
        for u, cu in target.nf.nf(k).items():
            acc(out, u, c * cu)
    return AlgebraElement(target, out)


# --------------------------------------------------- unital and relative


def unital_extend(alg: FreeAlgebra) -> FreeAlgebra:
    """The same free algebra with a unit adjoined."""
    return FreeAlgebra(alg.space, alg.m, alg.flavor, alg.model, unital=True, structure=alg.structure)


def _parse_structure(space: GradedSpace, n0: int, structure: Mapping) -> dict:
    """Normalize structure tables to {k: {word: {i: Fraction}}} and check degrees."""
    out: dict = {}
    for k, table in structure.items():
        k = int(k)
        if not 1 <= k <= n0:
            raise ValueError(f"structure map of arity {k} outside 1..{n0}")
        clean: dict = {}
        for word, image in table.items():
            if isinstance(word, str):
                word = tuple(word.split(",")) if "," in word else (word,) if k == 1 else tuple(word)
            w = tuple(space.index(a) for a in word)
            if len(w) != k:
                raise ValueError(f"structure entry {word!r} has the wrong length for arity {k}")
            img = {}
            for target, coef in image.items():
                i = space.index(target)
                cf = _frac(coef)
                if cf:
                    want = sum(space.degrees[a] for a in w) + k - 2
                    if space.degrees[i] != want:
                        raise ValueError(
                            f"m_{k}{tuple(space.names[a] for a in w)} must have degree {want}, "
                            f"but {space.names[i]} has degree {space.degrees[i]}"
                        )
                    img[i] = cf
            if img:
                clean[w] = img
        out[k] = clean
    return out


def _check_structure_axioms(space: GradedSpace, n0: int, tables: dict, upto: int) -> None:
    """Phi_n on all generator words for n <= min(n0, upto), evaluated in the structure."""
    degs = space.degrees

    def apply(k, word_combo):
        # word_combo: {word tuple: coef}; apply m_k to words of length k
        res: dict = {}
        for w, c in word_combo.items():
            for i, ci in tables.get(k, {}).get(w, {}).items():
                acc(res, i, c * ci)
        return res

    for n in range(1, min(n0, upto) + 1):
        for word in itertools.product(range(space.dim), repeat=n):
            total: dict = {}
            for lam in range(n):
                for k in range(1, n - lam + 1):
                    sign = axiom_sign(k, lam, [degs[a] for a in word])
                    inner = apply(k, {word[lam : lam + k]: 1})
                    for i, ci in inner.items():
                        w2 = word[:lam] + (i,) + word[lam + k :]
                        for o, co in apply(n - k + 1, {w2: 1}).items():
                            acc(total, o, sign * ci * co)
            if total:
                names = tuple(space.names[a] for a in word)
                raise ValueError(f"structure violates the arity-{n} axiom on {names}")


def relative_free(space: GradedSpace, m, n0: int, structure: Mapping | None = None,
                  check_upto: int | None = None) -> FreeAlgebra:
    """Free A(m)-algebra relative to a given A(n0)-structure on the generators.

    ``structure`` maps k (1..n0) to ``{word: {generator: coefficient}}``; a
    missing k is the zero map, and for k = 1 the space's differential is
    used when present.  Words are tuples of names (or indices).
    """
    m = tr.check_bound(m)
    if not isinstance(n0, int) or n0 < 1 or n0 > m:
        raise ValueError(f"need 1 <= n0 <= m, got n0={n0}")
    structure = dict(structure or {})
    if 1 not in structure and space.has_differential:
        structure[1] = {(j,): {i: c for i, c in space.d(j).items()} for j in range(space.dim)}
    tables = _parse_structure(space, n0, structure)
    for k in range(1, n0 + 1):
        tables.setdefault(k, {})
    _check_structure_axioms(space, n0, tables, n0 if check_upto is None else check_upto)
    D = [[Fraction(0)] * space.dim for _ in range(space.dim)]
    for (j,), img in tables[1].items():
        for i, c in img.items():
            D[i][j] = c
    dg_space = GradedSpace(space.names, space.degrees, tuple(tuple(r) for r in D))
    higher = {k: v for k, v in tables.items() if k >= 2}
    return FreeAlgebra(dg_space, m, "a", "dg", structure=higher)


# ------------------------------------------------------------- axioms


def am_axiom(alg: FreeAlgebra, args: Sequence[AlgebraElement]) -> AlgebraElement:
    """sum_{lam,k} (-1)^omega mu_{n-k+1}(a_1..a_lam, mu_k(..), ..); zero in an A(m)-algebra."""
    n = len(args)
    degs = [a.degree for a in args]
    total = alg.zero()
    for lam in range(n):
        for k in range(1, n - lam + 1):
            inner = alg.op(k, list(args[lam : lam + k]))
            outer = alg.op(n - k + 1, list(args[:lam]) + [inner] + list(args[lam + k :]))
            total = total + axiom_sign(k, lam, degs) * outer
    return total


def lm_axiom(alg: FreeAlgebra, args: Sequence[AlgebraElement]) -> AlgebraElement:
    """sum chi(sigma) (-1)^(i(j-1)) l_j(l_i(a_sigma..), ..) over unshuffles; zero in an L(m)-algebra."""
    n = len(args)
    degs = [a.degree for a in args]
    total = alg.zero()
    for i in range(1, n + 1):
        j = n + 1 - i
        for sigma in unshuffles(i, n):
            inner = alg.op(i, [args[p - 1] for p in sigma[:i]])
            outer = alg.op(j, [inner] + [args[p - 1] for p in sigma[i:]])
            total = total + (chi(sigma, degs) * jacobi_sign(i, j)) * outer
    return total


def antisymmetry_defect(alg: FreeAlgebra, args: Sequence[AlgebraElement], p: int) -> AlgebraElement:
    """l_k(.., a_p, a_{p+1}, ..) - chi(tau) l_k(.., a_{p+1}, a_p, ..) with tau the swap; zero when antisymmetric."""
    k = len(args)
    degs = [a.degree for a in args]
    tau = list(range(1, k + 1))
    tau[p - 1], tau[p] = tau[p], tau[p - 1]
    swapped = [args[q - 1] for q in tau]
    return alg.op(k, list(args)) - chi(tau, degs) * alg.op(k, swapped)


__all__ = [
    "UNIT",
    "GradedSpace",
    "FreeAlgebra",
    "AlgebraElement",
    "mu",
    "ell",
    "free_basis",
    "free_basis_keys",
    "orbit_count_oracle",
    "induced_differential",
    "to_dg_model",
    "unital_extend",
    "relative_free",
    "am_axiom",
    "lm_axiom",
    "antisymmetry_defect",
]
