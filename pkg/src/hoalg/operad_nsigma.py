"""The A(m) operad: free non-symmetric operad on xi_1..xi_m modulo the relations Phi_n.

Elements of the quotient are stored directly as combinations of admissible
trees (the normal form); there is no coset type.  The rewriting engine
:class:`PlanarNormalizer` works bottom-up: children are normalized first,
then a unary vertex sitting on a normal tree is pushed toward the inputs with
the solved relation

    xi_1 o_1 xi_j = (-1)^(j+1) * sum_{(lam,k) != (0,j)} phi_sign(lam,k) xi_{j-k+1} o_{lam+1} xi_k

until it lands on a leg.  The same engine, with different leaf rules,
drives the free algebras in :mod:`hoalg.free_algebras`.
"""

from __future__ import annotations

import itertools
import random
import re
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from . import trees as tr
from .linear import LinComb, acc, format_coefficient
from .signs import dg_sign, phi_sign, power
from .trees import BAR, BAR_LEG, LEG, PLAIN, Leg, Tree, Vertex

ONE = 1


def mark_leaf(leg: Leg) -> dict:
    """Leaf rule of the free operad: xi_1 on a leg marks it, twice gives zero."""
    if leg.mark == PLAIN:
        return {Leg(BAR, leg.label): ONE}
    return {}


class PlanarNormalizer:
    """Normal forms for planar trees whose legs may carry graded letters.

    ``leaf_degree(leg)`` is the degree of the letter on a plain leg (0 at the
    operad level); a ``BAR`` leg counts one less.  ``d_leaf(leg)`` says what
    a unary vertex does to a leg.  ``vertex_hook(kids)`` may return a
    replacement combination for a vertex of arity >= 2 (used to evaluate
    structure maps of a relative free algebra) or None to keep it.
    """

    def __init__(
        self,
        leaf_degree: Callable[[Leg], int] | None = None,
        d_leaf: Callable[[Leg], dict] | None = None,
        vertex_hook: Callable[[tuple], dict | None] | None = None,
    ):
        self.leaf_degree = leaf_degree or (lambda leg: 0)
        self.d_leaf = d_leaf or mark_leaf
        self.vertex_hook = vertex_hook
        self._d_cache: dict = {}

    def degree(self, t: Tree) -> int:
        """Internal degree: vertex degrees plus letter degrees."""
        if isinstance(t, Leg):
            return self.leaf_degree(t) - (1 if t.mark == BAR else 0)
        return len(t) - 2 + sum(self.degree(c) for c in t)

    def nf(self, t: Tree) -> dict:
        if isinstance(t, Leg):
            if t.mark == BAR:
                return self.d_leaf(Leg(PLAIN, t.label))
            return {t: ONE}
        forms = [self.nf(c) for c in t]
        if any(not f for f in forms):
            return {}
        out: dict = {}
        for pick in itertools.product(*(f.items() for f in forms)):
            c = ONE
            for _, ci in pick:
                c = c * ci
            for u, cu in self.vertex_nf(tuple(k for k, _ in pick)).items():
                acc(out, u, c * cu)
        return out

    def nf_combination(self, terms: Mapping) -> dict:
        out: dict = {}
        for t, c in terms.items():
            for u, cu in self.nf(t).items():
                acc(out, u, c * cu)
        return out

    def vertex_nf(self, kids: tuple) -> dict:
        """Normal form of a vertex whose children are already normal."""
        if len(kids) == 1:
            return self.apply_d(kids[0])
        if self.vertex_hook is not None:
            got = self.vertex_hook(kids)
            if got is not None:
                return got
        return {Vertex(kids): ONE}

    def apply_d(self, t: Tree) -> dict:
        """Normal form of a unary vertex placed under the normal tree ``t``."""
        if isinstance(t, Leg):
            return self.d_leaf(t)
        got = self._d_cache.get(t)
        if got is not None:
            return got
        S = tuple(t)
        j = len(S)
        prefix = [0]
        for s in S:
            prefix.append(prefix[-1] + self.degree(s))
        out: dict = {}
        base = power(j + 1)
        for lam in range(j):
            for k in range(1, j - lam + 1):
                if lam == 0 and k == j:
                    continue
                c = base * phi_sign(lam, k) * power(k * prefix[lam])
                if k == 1:
                    inner = self.apply_d(S[lam])
                else:
                    inner = self.vertex_nf(S[lam : lam + k])
                for s, c1 in inner.items():
                    for u, c2 in self.vertex_nf(S[:lam] + (s,) + S[lam + k :]).items():
                        acc(out, u, c * c1 * c2)
        self._d_cache[t] = out
        return out


_OPERAD_NF = PlanarNormalizer()


# ------------------------------------------------------------------ elements


def _check_m(m):
    return tr.check_bound(m)


class RawElement(LinComb):
    """Element of the free operad F_m(n): any planar n-trees, arities <= m."""

    __slots__ = ("arity", "m")

    def __init__(self, arity: int, m, terms=None, check: bool = True):
        super().__init__(terms)
        self.arity = arity
        self.m = _check_m(m)
        if check:
            for t in self.terms:
                self._check_tree(t)

    def _check_tree(self, t):
        if not isinstance(t, (Leg, Vertex)):
            raise TypeError(f"not a tree: {t!r}")
        if tr.n_legs(t) != self.arity:
            raise ValueError(f"tree {tr.format_tree(t)} does not have {self.arity} inputs")
        if not tr.within_bound(t, self.m):
            raise ValueError(f"tree {tr.format_tree(t)} has a vertex of arity > {self.m}")

    def _like(self, terms):
        return type(self)(self.arity, self.m, terms, check=False)

    def _compatible(self, other):
        super()._compatible(other)
        if other.arity != self.arity or other.m != self.m:
            raise ValueError("arity or bound mismatch")

    def __repr__(self):
        return f"{type(self).__name__}(arity={self.arity}, m={self.m}, {format_element(self)!r})"

    def __str__(self):
        return format_element(self)


class NsOperadElement(RawElement):
    """Element of A_m(n), stored in the admissible basis."""

    __slots__ = ()

    def _check_tree(self, t):
        super()._check_tree(t)
        if not tr.is_admissible(t) or tr.compact(t) != t:
            raise ValueError(f"tree {tr.format_tree(t)} is not in admissible compact form")


def element(t: Tree, m, coefficient=1) -> RawElement:
    """The single tree ``t`` as a raw element."""
    return RawElement(tr.n_legs(t), m, {t: coefficient})


def xi(k: int, m) -> RawElement:
    """The generator xi_k as a corolla (k = 1 gives the unary vertex on one leg)."""
    m = _check_m(m)
    if not 1 <= k <= m:
        raise ValueError(f"need 1 <= k <= m, got k={k}, m={m}")
    return element(BAR_LEG if k == 1 else tr.corolla(k), m)


def normalize(x, m=None) -> NsOperadElement:
    """Admissible normal form of a raw element (or of a single tree)."""
    if isinstance(x, (Leg, Vertex)):
        if m is None:
            raise ValueError("a bare tree needs an arity bound m")
        x = element(x, m)
    if not isinstance(x, RawElement):
        raise TypeError(f"cannot normalize {type(x).__name__}")
    return NsOperadElement(x.arity, x.m, _OPERAD_NF.nf_combination(x.terms), check=False)


def phi_relation(n: int, m) -> RawElement:
    """Phi_n = sum_{lam,k} phi_sign(lam,k) xi_{n-k+1} o_{lam+1} xi_k as a raw element."""
    m = _check_m(m)
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if n > m:
        raise ValueError(f"relation Phi_{n} needs n <= m = {m}")
    out: dict = {}
    for lam in range(n):
        for k in range(1, n - lam + 1):
            inner = Vertex([LEG] * k)
            kids = [LEG] * lam + [inner] + [LEG] * (n - lam - k)
            acc(out, Vertex(kids), phi_sign(lam, k))
    return RawElement(n, m, out)


def degree_after_leg(t: Tree, i: int) -> int:
    """Total degree of the vertices met after leg ``i`` in a preorder walk (marked legs count -1)."""
    seen = tot = 0
    stack = [tr.expand_marks(t)]
    while stack:
        u = stack.pop()
        if isinstance(u, Leg):
            seen += 1
            continue
        if seen >= i:
            tot += len(u) - 2
        stack.extend(reversed(u))
    return tot


def circle(x: RawElement, i: int, y: RawElement) -> NsOperadElement:
    """Normalized partial composition x o_i y.

    The inserted tree's degree is moved past every vertex of ``x`` that
    follows leg ``i``, which is what makes the product well defined on
    normal forms.
    """
    if x.m != y.m:
        raise ValueError("circle needs equal arity bounds")
    if not 1 <= i <= x.arity:
        raise ValueError(f"circle index {i} out of range 1..{x.arity}")
    out: dict = {}
    for s, cs in x.terms.items():
        for t, ct in y.terms.items():
            sign = power(tr.degree(t) * degree_after_leg(s, i))
            for u, cu in _OPERAD_NF.nf(tr.graft(s, i, t)).items():
                acc(out, u, sign * cs * ct * cu)
    return NsOperadElement(x.arity + y.arity - 1, x.m, out, check=False)


def basis(n: int, m) -> list[Tree]:
    """The admissible trees: a basis of A_m(n), in canonical order."""
    return tr.admissible_trees(n, m)


# ----------------------------------------------------- stepwise rewriting


def _redexes(t: Tree, path=()) -> list[tuple]:
    """Paths to unary vertices whose child is not a plain leg."""
    if isinstance(t, Leg):
        return []
    out = []
    if len(t) == 1 and not (isinstance(t[0], Leg) and t[0].mark == PLAIN):
        out.append(path)
    for idx, c in enumerate(t):
        out.extend(_redexes(c, path + (idx,)))
    return out


def _replace(t: Tree, path: tuple, new: Tree) -> Tree:
    if not path:
        return new
    kids = list(t)
    kids[path[0]] = _replace(kids[path[0]], path[1:], new)
    return Vertex(kids)


def _subtree(t: Tree, path: tuple) -> Tree:
    for p in path:
        t = t[p]
    return t


def rewrite_at(t: Tree, path: tuple) -> dict:
    """One application of the solved relation at the unary vertex ``path``."""
    u = _subtree(t, path)
    if not (isinstance(u, Vertex) and len(u) == 1):
        raise ValueError("path does not point at a unary vertex")
    child = u[0]
    if isinstance(child, Leg):
        if child.mark == BAR:
            return {}
        raise ValueError("unary vertex on a plain leg is already admissible")
    S = tuple(child)
    j = len(S)
    if j == 1:
        return {}
    prefix = [0]
    for s in S:
        prefix.append(prefix[-1] + tr.degree(s))
    out: dict = {}
    for lam in range(j):
        for k in range(1, j - lam + 1):
            if lam == 0 and k == j:
                continue
            c = power(j + 1) * phi_sign(lam, k) * power(k * prefix[lam])
            mid = Vertex((S[lam],)) if k == 1 else Vertex(S[lam : lam + k])
            acc(out, _replace(t, path, Vertex(S[:lam] + (mid,) + S[lam + k :])), c)
    return out


def normalize_stepwise(x: RawElement, rng: random.Random | None = None) -> NsOperadElement:
    """Normal form by repeated single rewrites; redexes are picked at random
    when ``rng`` is given and innermost-leftmost otherwise."""
    terms = {tr.expand_marks(t): c for t, c in x.terms.items()}
    done: dict = {}
    while terms:
        t = next(iter(terms)) if rng is None else rng.choice(list(terms))
        c = terms.pop(t)
        spots = _redexes(t)
        if not spots:
            acc(done, tr.compact(t), c)
            continue
        path = rng.choice(spots) if rng is not None else max(spots, key=lambda p: (len(p), [-q for q in p]))
        for u, cu in rewrite_at(t, path).items():
            acc(terms, u, c * cu)
    return NsOperadElement(x.arity, x.m, done, check=False)


# ------------------------------------------------------------- dg variant


def dg_coefficient(a: int, b: int, i: int) -> int:
    """Coefficient of xi_a o_i xi_b in d(xi_n), n = a + b - 1.

    Equal to ``dg_sign(a, b, i)`` for odd n; for even n the extra factor
    (-1)^(n+1) is what makes d square to zero.
    """
    n = a + b - 1
    return power(n + 1) * dg_sign(a, b, i)


def dg_corolla(n: int, m) -> dict:
    """d(xi_n) as ``{tree: coefficient}``."""
    m = _check_m(m)
    out: dict = {}
    for b in range(2, n):
        a = n + 1 - b
        if a < 2 or a > m or b > m:
            continue
        for i in range(1, a + 1):
            kids = [LEG] * (i - 1) + [Vertex([LEG] * b)] + [LEG] * (a - i)
            acc(out, Vertex(kids), dg_coefficient(a, b, i))
    return out


def _dg_tree(t: Tree, m) -> dict:
    if isinstance(t, Leg):
        return {}
    S = tuple(t)
    n = len(S)
    out: dict = {}
    prefix = [0]
    for s in S:
        prefix.append(prefix[-1] + tr.degree(s))
    # the root vertex
    for b in range(2, n):
        a = n + 1 - b
        if a > m or b > m:
            continue
        for i in range(1, a + 1):
            kids = S[: i - 1] + (Vertex(S[i - 1 : i - 1 + b]),) + S[i - 1 + b :]
            c = dg_coefficient(a, b, i) * power((b - 2) * prefix[i - 1])
            acc(out, Vertex(kids), c)
    # vertices of the children, in preorder
    for idx, s in enumerate(S):
        sign = power(n - 2 + prefix[idx])
        for u, cu in _dg_tree(s, m).items():
            acc(out, Vertex(S[:idx] + (u,) + S[idx + 1 :]), sign * cu)
    return out


def dg_differential(x, m=None) -> RawElement:
    """The degree -1 derivation d on the reduced free operad on xi_2..xi_m."""
    if isinstance(x, (Leg, Vertex)):
        if m is None:
            raise ValueError("a bare tree needs an arity bound m")
        x = element(x, m)
    m = x.m if m is None else _check_m(m)
    out: dict = {}
    for t, c in x.terms.items():
        if not tr.is_reduced(t):
            raise ValueError(f"dg_differential needs reduced trees, got {tr.format_tree(t)}")
        for u, cu in _dg_tree(t, m).items():
            acc(out, u, c * cu)
    return RawElement(x.arity, m, out, check=False)


# ------------------------------------------------------------- term syntax

_TERM = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*")


def _split_terms(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and "".join(cur).strip():
            parts.append("".join(cur))
            cur = []
        cur.append(ch)
    if "".join(cur).strip():
        parts.append("".join(cur))
    return parts


def parse_terms(text: str, tree_parser: Callable[[str], object]) -> list[tuple[Fraction, object]]:
    """Split ``c1 * T1 + c2 * T2 - ...`` into (coefficient, parsed tree) pairs."""
    if not text.strip():
        raise tr.ParseError("empty expression", 0, text)
    out = []
    for part in _split_terms(text):
        mt = _TERM.match(part)
        sign = -1 if mt.group(1) == "-" else 1
        rest = part[mt.end() :]
        coef = Fraction(1)
        if mt.group(2) is not None:
            coef = Fraction(mt.group(2))
            rest = rest.lstrip()
            if rest.startswith("*"):
                rest = rest[1:]
        if not rest.strip():
            if mt.group(2) is None or part.rstrip().endswith("*"):
                raise tr.ParseError("term without a tree", text.find(part), text)
            # a bare number is a labeled leg, not a coefficient
            coef, rest = Fraction(1), mt.group(2)
        out.append((sign * coef, tree_parser(rest.strip())))
    return out


def parse_element(text: str, m, normal: bool = False) -> RawElement:
    """Read a raw element written as ``c1 * T1 + c2 * T2`` with ``u(T)`` for unary nodes."""
    m = _check_m(m)
    pairs = parse_terms(text, lambda s: tr.parse_tree(s, m))
    arities = {tr.n_legs(t) for _, t in pairs}
    if len(arities) != 1:
        raise ValueError("terms have different numbers of inputs")
    out: dict = {}
    for c, t in pairs:
        acc(out, t, c)
    x = RawElement(arities.pop(), m, out)
    return normalize(x) if normal else x


def format_element(x: Iterable | LinComb, fmt: Callable[[Tree], str] = tr.format_tree) -> str:
    terms = x.terms if isinstance(x, LinComb) else x
    if not terms:
        return "0"
    pieces = []
    for t, c in sorted(terms.items(), key=lambda kv: fmt(kv[0])):
        sep, mag = format_coefficient(Fraction(c), not pieces)
        pieces.append(sep + ("" if mag == "1" else mag + " * ") + fmt(t))
    return "".join(pieces)
