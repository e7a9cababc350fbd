"""The L(m) operad: labeled non-planar trees modulo the homotopy Jacobi relations.

A labeled planar tree stands for its class under reordering children, where
reordering the children of a vertex by sigma costs chi(sigma) computed on
the children's internal degrees.  Stored representatives sort children by
a key: the minimal leaf label at the operad level, or a full structural key
in the free algebras where letters may repeat.
"""

from __future__ import annotations

import itertools
import math
import re
from functools import lru_cache
from typing import Callable

from . import trees as tr
from .linear import LinComb, acc
from .operad_nsigma import PlanarNormalizer, format_element, mark_leaf, parse_terms
from .signs import chi, jacobi_sign, sorting_permutation, unshuffles
from .trees import BAR, PLAIN, Leg, Tree, Vertex


def min_label(t: Tree):
    if isinstance(t, Leg):
        return t.label
    return min(min_label(c) for c in t)


def structure_key(t: Tree):
    """Total order on letter-decorated trees; equal keys mean equal trees."""
    if isinstance(t, Leg):
        return (0, t.label, t.mark == BAR)
    return (1, len(t), tuple(structure_key(c) for c in t))


class SymNormalizer(PlanarNormalizer):
    """Normal forms for labeled trees up to graded reordering of children."""

    def __init__(self, leaf_degree=None, d_leaf=None, vertex_hook=None, key: Callable = min_label):
        super().__init__(leaf_degree, d_leaf or mark_leaf, vertex_hook)
        self.key = key

    def sort_children(self, kids: tuple) -> tuple[tuple, int]:
        """(sorted children, sign); sign 0 when two equal even children force zero."""
        keys = [self.key(k) for k in kids]
        perm = sorting_permutation(keys)
        out = tuple(kids[p - 1] for p in perm)
        degs = [self.degree(k) for k in kids]
        sign = chi(perm, degs)
        for a in range(len(out) - 1):
            if keys[perm[a] - 1] == keys[perm[a + 1] - 1] and not self.degree(out[a]) & 1:
                return out, 0
        return out, sign

    def vertex_nf(self, kids: tuple) -> dict:
        if len(kids) == 1:
            return self.apply_d(kids[0])
        if self.vertex_hook is not None:
            got = self.vertex_hook(kids)
            if got is not None:
                return got
        srt, sign = self.sort_children(kids)
        if not sign:
            return {}
        return {Vertex(srt): sign}

    def apply_d(self, t: Tree) -> dict:
        """zeta_1 on a normal tree, from the Jacobi relation solved for zeta_1 o zeta_j."""
        if isinstance(t, Leg):
            return self.d_leaf(t)
        got = self._d_cache.get(t)
        if got is not None:
            return got
        S = tuple(t)
        j = len(S)
        degs = [self.degree(s) for s in S]
        out: dict = {}
        for i in range(1, j):
            jj = j + 1 - i
            for sigma in unshuffles(i, j):
                c = -chi(sigma, degs) * jacobi_sign(i, jj)
                block = tuple(S[p - 1] for p in sigma[:i])
                rest = tuple(S[p - 1] for p in sigma[i:])
                inner = self.apply_d(block[0]) if i == 1 else self.vertex_nf(block)
                for s, c1 in inner.items():
                    for u, c2 in self.vertex_nf((s,) + rest).items():
                        acc(out, u, c * c1 * c2)
        self._d_cache[t] = out
        return out


_SYM_NF = SymNormalizer()


def _operad_degree(t: Tree) -> int:
    return tr.degree(t)


def canonicalize(t: Tree) -> tuple[Tree, int]:
    """Canonical representative (children by ascending minimal label) and the sign relating them."""
    labs = tr.labels(t)
    if any(lab is None for lab in labs):
        raise ValueError("canonicalize needs labeled legs")
    if len(set(labs)) != len(labs):
        raise ValueError(f"duplicate leaf labels {labs}")
    return _canon(t)


def _canon(t: Tree) -> tuple[Tree, int]:
    if isinstance(t, Leg):
        return t, 1
    sign = 1
    kids = []
    for c in t:
        k, s = _canon(c)
        kids.append(k)
        sign *= s
    if len(kids) == 1:
        return Vertex(kids), sign
    perm = sorting_permutation([min_label(k) for k in kids])
    sign *= chi(perm, [_operad_degree(k) for k in kids])
    return Vertex(kids[p - 1] for p in perm), sign


def is_canonical(t: Tree) -> bool:
    if isinstance(t, Leg):
        return True
    if len(t) > 1:
        keys = [min_label(c) for c in t]
        if keys != sorted(keys):
            return False
    return all(is_canonical(c) for c in t)


# ------------------------------------------------------------------ elements


class RawSymElement(LinComb):
    """Element of the free Sigma-operad: labeled trees with labels 1..n, any order."""

    __slots__ = ("arity", "m")

    def __init__(self, arity: int, m, terms=None, check: bool = True):
        super().__init__(terms)
        self.arity = arity
        self.m = tr.check_bound(m)
        if check:
            for t in self.terms:
                self._check_tree(t)

    def _check_tree(self, t):
        if not isinstance(t, (Leg, Vertex)):
            raise TypeError(f"not a tree: {t!r}")
        if sorted(tr.labels(t)) != list(range(1, self.arity + 1)):
            raise ValueError(f"leaf labels of {format_labeled(t)} are not a permutation of 1..{self.arity}")
        if not tr.within_bound(t, self.m):
            raise ValueError(f"tree {format_labeled(t)} has a vertex of arity > {self.m}")

    def _like(self, terms):
        return type(self)(self.arity, self.m, terms, check=False)

    def _compatible(self, other):
        super()._compatible(other)
        if other.arity != self.arity or other.m != self.m:
            raise ValueError("arity or bound mismatch")

    def __str__(self):
        return format_element(self, format_labeled)

    def __repr__(self):
        return f"{type(self).__name__}(arity={self.arity}, m={self.m}, {str(self)!r})"


class SymOperadElement(RawSymElement):
    """Element of L_m(n): admissible canonical labeled trees."""

    __slots__ = ()

    def _check_tree(self, t):
        super()._check_tree(t)
        if not tr.is_admissible(t) or tr.compact(t) != t or not is_canonical(t):
            raise ValueError(f"tree {format_labeled(t)} is not an admissible canonical representative")


def sym_element(t: Tree, m, coefficient=1) -> RawSymElement:
    return RawSymElement(tr.n_legs(t), m, {t: coefficient})


def normalize_sym(x, m=None) -> SymOperadElement:
    """Admissible canonical normal form."""
    if isinstance(x, (Leg, Vertex)):
        if m is None:
            raise ValueError("a bare tree needs an arity bound m")
        x = sym_element(x, m)
    if not isinstance(x, RawSymElement):
        raise TypeError(f"cannot normalize {type(x).__name__}")
    return SymOperadElement(x.arity, x.m, _SYM_NF.nf_combination(x.terms), check=False)


def act(sigma, x: RawSymElement):
    """Relabel every leaf l as sigma(l) and re-canonicalize."""
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, x.arity + 1)):
        raise ValueError(f"{sigma!r} is not a permutation of 1..{x.arity}")
    out: dict = {}
    for t, c in x.terms.items():
        u = tr.relabel(t, lambda lab: sigma[lab - 1])
        if isinstance(x, SymOperadElement):
            u, s = canonicalize(u)
            acc(out, u, c * s)
        else:
            acc(out, u, c)
    return x._like(out)


def jacobiator(n: int, m) -> RawSymElement:
    """sum_{i+j=n+1} sum_sigma chi(sigma) (-1)^(i(j-1)) zeta_j(zeta_i(...), ...)."""
    m = tr.check_bound(m)
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if n > m:
        raise ValueError(f"Jacobi relation of arity {n} needs n <= m = {m}")
    out: dict = {}
    zeros = [0] * n
    for i in range(1, n + 1):
        j = n + 1 - i
        for sigma in unshuffles(i, n):
            inner = Vertex(Leg(PLAIN, lab) for lab in sigma[:i])
            t = tr.compact(Vertex((inner,) + tuple(Leg(PLAIN, lab) for lab in sigma[i:])))
            acc(out, t, chi(sigma, zeros) * jacobi_sign(i, j))
    return RawSymElement(n, m, out)


# --------------------------------------------------------------------- basis


def _set_partitions(items: tuple, k: int):
    """Partitions of the sorted tuple ``items`` into k blocks, blocks ordered by minimum."""
    if k == 1:
        yield (items,)
        return
    first, rest = items[0], items[1:]
    # the block containing the smallest element comes first
    for size in range(0, len(rest) - k + 2):
        for others in itertools.combinations(rest, size):
            block = (first,) + others
            remaining = tuple(x for x in rest if x not in others)
            for tail in _set_partitions(remaining, k - 1):
                yield (block,) + tail


@lru_cache(maxsize=4096)
def _canonical_trees(labels: tuple, m) -> tuple:
    """Admissible canonical trees on a sorted label tuple (cached per label set)."""
    n = len(labels)
    if n == 1:
        lab = labels[0]
        return (Leg(PLAIN, lab), Leg(BAR, lab))
    out = []
    for k in tr.arities_upto(n, m):
        for blocks in _set_partitions(labels, k):
            for kids in itertools.product(*(_canonical_trees(b, m) for b in blocks)):
                out.append(Vertex(kids))
    return tuple(out)


def basis_sym(n: int, m) -> list[Tree]:
    """Admissible canonical labeled n-trees, a basis of L_m(n)."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    m = tr.check_bound(m)
    out = list(_canonical_trees(tuple(range(1, n + 1)), m))
    _canonical_trees.cache_clear()
    return out


def count_basis_sym(n: int, m) -> int:
    """|basis_sym(n, m)| without materializing the trees."""
    m = tr.check_bound(m)

    @lru_cache(maxsize=None)
    def count(size: int) -> int:
        if size == 1:
            return 2
        return sum(_partition_weight(size, k, count) for k in tr.arities_upto(size, m))

    return count(n)


def _partition_weight(size: int, k: int, count) -> int:
    # sum over set partitions of a size-set into k blocks of prod count(|block|)
    @lru_cache(maxsize=None)
    def w(s: int, blocks: int) -> int:
        if blocks == 0:
            return 1 if s == 0 else 0
        total = 0
        for b in range(1, s - blocks + 2):
            total += math.comb(s - 1, b - 1) * count(b) * w(s - b, blocks - 1)
        return total

    return w(size, k)


# --------------------------------------------------------------- term syntax

_TOKEN = re.compile(r"\s*(z\d+|u|\d+|\(|\)|,)")


def format_labeled(t: Tree) -> str:
    """``z3(1, z2(3,2), u(4))`` style; a BAR leg ``l`` prints as ``u(l)``."""
    if isinstance(t, Leg):
        return f"u({t.label})" if t.mark == BAR else str(t.label)
    if len(t) == 1:
        return "u(" + format_labeled(t[0]) + ")"
    return f"z{len(t)}(" + ", ".join(format_labeled(c) for c in t) + ")"


def parse_labeled(text: str, m=None) -> Tree:
    """Inverse of :func:`format_labeled`; ``u(l)`` on a label becomes a BAR leg."""
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise tr.ParseError(f"unexpected {text[pos:].strip()[0]!r}", pos, text)
        toks.append((mt.group(1), mt.start(1)))
        pos = mt.end()
    it = [0]

    def peek():
        return toks[it[0]] if it[0] < len(toks) else ("", len(text))

    def take(expected=None):
        tok = peek()
        if expected is not None and tok[0] != expected:
            raise tr.ParseError(f"expected {expected!r}, got {tok[0] or 'end of input'!r}", tok[1], text)
        it[0] += 1
        return tok

    def node():
        tok, at = take()
        if tok.isdigit():
            return Leg(PLAIN, int(tok))
        if tok == "u":
            take("(")
            inner = node()
            take(")")
            return tr.unary(inner)
        if tok.startswith("z"):
            k = int(tok[1:])
            take("(")
            kids = [node()]
            while peek()[0] == ",":
                take(",")
                kids.append(node())
            take(")")
            if k < 1 or len(kids) != k:
                raise tr.ParseError(f"{tok} has {len(kids)} children", at, text)
            if m is not None and k > m:
                raise tr.ParseError(f"{tok} exceeds m={m}", at, text)
            return Vertex(kids) if k > 1 else tr.unary(kids[0])
        raise tr.ParseError(f"unexpected {tok or 'end of input'!r}", at, text)

    t = node()
    if it[0] != len(toks):
        raise tr.ParseError("trailing input", peek()[1], text)
    return t


def parse_sym_element(text: str, m, normal: bool = False) -> RawSymElement:
    m = tr.check_bound(m)
    pairs = parse_terms(text, lambda s: parse_labeled(s, m))
    arities = {tr.n_legs(t) for _, t in pairs}
    if len(arities) != 1:
        raise ValueError("terms have different numbers of inputs")
    out: dict = {}
    for c, t in pairs:
        acc(out, t, c)
    x = RawSymElement(arities.pop(), m, out)
    return normalize_sym(x) if normal else x
