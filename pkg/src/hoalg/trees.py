"""Rooted trees: the term carrier for every operad and algebra in the package.

A tree is either a :class:`Leg` (an input leg) or a :class:`Vertex` holding an
ordered, nonempty tuple of subtrees.  The root edge is implicit, so the bare
leg is the 1-tree with no vertices.

Two spellings of a unary vertex sitting directly on an input leg coexist:

* compact: the leg carries the ``BAR`` mark (this is how admissible trees,
  and everything produced by the normalizers, are stored);
* explicit: ``Vertex((Leg(),))``.

:func:`compact` and :func:`expand_marks` convert between them losslessly, and
every predicate here accepts both.

Legs optionally carry an integer ``label``.  Operads over the symmetric
groups use it for leaf labels 1..n; free algebras use it for generator
indices.
"""

from __future__ import annotations

import itertools
import json
import random
from typing import Iterator, NamedTuple, Sequence, Union

PLAIN = "o"
BAR = "*"


class _Unbounded:
    """Arity bound for A(oo)/L(oo): compares greater than every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("hoalg.INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __reduce__(self):
        return (_Unbounded, ())


INF = _Unbounded()

Bound = Union[int, _Unbounded]


def parse_bound(value) -> Bound:
    """Read an arity bound from an int or from the strings 'inf'/'oo'/'∞'."""
    if value is INF:
        return INF
    if isinstance(value, str):
        v = value.strip().lower()
        if v in ("inf", "oo", "infinity", "∞"):
            return INF
        value = int(v)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"arity bound must be a positive integer or 'inf', got {value!r}")
    if value < 1:
        raise ValueError(f"arity bound must be >= 1, got {value}")
    return value


def check_bound(m) -> Bound:
    return parse_bound(m)


def arities_upto(n: int, m: Bound, start: int = 2) -> range:
    """Vertex arities ``start..min(n, m)``."""
    top = n if m is INF else min(n, m)
    return range(start, top + 1)


class Leg(NamedTuple):
    mark: str = PLAIN
    label: int | None = None

    def __repr__(self):
        if self.label is None:
            return self.mark
        return f"{self.mark}{self.label}"


class Vertex(tuple):
    """A vertex together with its ordered subtrees (``len(v)`` is its arity)."""

    __slots__ = ()

    def __new__(cls, children=()):
        return super().__new__(cls, children)

    @property
    def children(self) -> tuple:
        return tuple(self)

    def __repr__(self):
        return "V" + tuple.__repr__(self)


Tree = Union[Leg, Vertex]

LEG = Leg()
BAR_LEG = Leg(BAR)


def is_leg(t) -> bool:
    return isinstance(t, Leg)


def corolla(k: int, labels: Sequence[int] | None = None) -> Vertex:
    if k < 1:
        raise ValueError("a corolla needs at least one input")
    if labels is None:
        return Vertex([LEG] * k)
    if len(labels) != k:
        raise ValueError("label count does not match corolla arity")
    return Vertex(Leg(PLAIN, lab) for lab in labels)


def unary(t: Tree) -> Tree:
    """Put a unary vertex under ``t`` (compact spelling when ``t`` is a plain leg)."""
    if isinstance(t, Leg) and t.mark == PLAIN:
        return Leg(BAR, t.label)
    return Vertex((t,))


def compact(t: Tree) -> Tree:
    """Replace explicit unary vertices over plain legs by ``BAR`` marks."""
    if isinstance(t, Leg):
        return t
    kids = tuple(compact(c) for c in t)
    if len(kids) == 1:
        return unary(kids[0])
    return Vertex(kids)


def expand_marks(t: Tree) -> Tree:
    """Inverse of :func:`compact`: every ``BAR`` leg becomes an explicit unary vertex."""
    if isinstance(t, Leg):
        if t.mark == BAR:
            return Vertex((Leg(PLAIN, t.label),))
        return t
    return Vertex(expand_marks(c) for c in t)


def legs(t: Tree) -> list[Leg]:
    """Input legs in planar (left-to-right) order."""
    out: list[Leg] = []

    def walk(s):
        if isinstance(s, Leg):
            out.append(s)
        else:
            for c in s:
                walk(c)

    walk(t)
    return out


def n_legs(t: Tree) -> int:
    if isinstance(t, Leg):
        return 1
    return sum(n_legs(c) for c in t)


def vertex_arities(t: Tree) -> list[int]:
    """Arities of all vertices in preorder; a ``BAR`` leg counts as a unary vertex."""
    out: list[int] = []

    def walk(s):
        if isinstance(s, Leg):
            if s.mark == BAR:
                out.append(1)
            return
        out.append(len(s))
        for c in s:
            walk(c)

    walk(t)
    return out


def degree(t: Tree) -> int:
    """Sum over vertices of (arity - 2)."""
    if isinstance(t, Leg):
        return -1 if t.mark == BAR else 0
    d = len(t) - 2
    for c in t:
        d += degree(c)
    return d


def n_vertices(t: Tree) -> int:
    return len(vertex_arities(t))


def max_arity(t: Tree) -> int:
    ar = vertex_arities(t)
    return max(ar) if ar else 0


def within_bound(t: Tree, m: Bound) -> bool:
    return max_arity(t) <= m


def is_reduced(t: Tree) -> bool:
    return all(a >= 2 for a in vertex_arities(t))


def is_admissible(t: Tree) -> bool:
    """True iff every unary vertex is an input vertex (its input is a leg of the tree)."""
    if isinstance(t, Leg):
        return True
    if len(t) == 1:
        c = t[0]
        return isinstance(c, Leg) and c.mark == PLAIN
    return all(is_admissible(c) for c in t)


def is_input_vertex(v: Tree) -> bool:
    return isinstance(v, Vertex) and all(isinstance(c, Leg) for c in v)


def labels(t: Tree) -> list:
    return [leg.label for leg in legs(t)]


def relabel(t: Tree, mapping) -> Tree:
    """Apply ``mapping`` (callable or dict) to every leg label."""
    f = mapping if callable(mapping) else mapping.__getitem__
    if isinstance(t, Leg):
        return Leg(t.mark, f(t.label))
    return Vertex(relabel(c, f) for c in t)


def label_legs(t: Tree, labs: Sequence) -> Tree:
    """Assign ``labs`` to the legs in planar order."""
    it = iter(labs)

    def walk(s):
        if isinstance(s, Leg):
            return Leg(s.mark, next(it))
        return Vertex(walk(c) for c in s)

    out = walk(t)
    if next(it, None) is not None:
        raise ValueError("more labels than legs")
    return out


def strip_labels(t: Tree) -> Tree:
    return relabel(t, lambda _: None)


# ---------------------------------------------------------------- grafting


def graft(T: Tree, i: int, S: Tree) -> Tree:
    """Replace the ``i``-th input leg of ``T`` (1-based, planar order) by ``S``.

    Grafting onto a ``BAR`` leg keeps the unary vertex, which then sits on
    top of ``S``.
    """
    a = n_legs(T)
    if not 1 <= i <= a:
        raise ValueError(f"graft index {i} out of range 1..{a}")
    counter = [0]

    def walk(s):
        if isinstance(s, Leg):
            counter[0] += 1
            if counter[0] == i:
                return unary(S) if s.mark == BAR else S
            return s
        out = []
        for c in s:
            if counter[0] >= i:
                out.append(c)
            else:
                out.append(walk(c))
        return Vertex(out)

    return walk(T)


def compose(T: Tree, subtrees: Sequence[Tree]) -> Tree:
    """Full composition T(S_1, ..., S_a): graft S_j at the j-th leg of T."""
    if len(subtrees) != n_legs(T):
        raise ValueError("need one subtree per leg")
    it = iter(subtrees)

    def walk(s):
        if isinstance(s, Leg):
            S = next(it)
            return unary(S) if s.mark == BAR else S
        return Vertex(walk(c) for c in s)

    return walk(T)


# ------------------------------------------------------------- enumeration


def compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Ordered compositions of ``n`` into ``k`` positive parts, lexicographic."""
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in compositions(n - first, k - 1):
            yield (first,) + rest


def _keyed(n: int, m: Bound, leaves: tuple, memo: dict) -> list:
    """(vertex count, serialization, tree) triples for every n-tree built from ``leaves``."""
    got = memo.get(n)
    if got is not None:
        return got
    if n == 1:
        out = [(0 if lf.mark == PLAIN else 1, lf.mark, lf) for lf in leaves]
    else:
        out = []
        for k in arities_upto(n, m):
            for comp in compositions(n, k):
                for kids in itertools.product(*(_keyed(p, m, leaves, memo) for p in comp)):
                    out.append((
                        1 + sum(c[0] for c in kids),
                        "(" + "".join(c[1] for c in kids) + ")",
                        Vertex(c[2] for c in kids),
                    ))
    memo[n] = out
    return out


def _sorted_trees(n: int, m: Bound, leaves: tuple) -> list:
    items = _keyed(n, m, leaves, {})
    items.sort(key=lambda e: (e[0], e[1]))
    return [e[2] for e in items]


def _with_unary(n: int, m: Bound, budget: int) -> list:
    """Planar n-trees with at most ``budget`` unary vertices (explicit spelling)."""
    out = []
    if n == 1:
        out.append(LEG)
    for k in arities_upto(n, m, start=2):
        for comp in compositions(n, k):
            # distribute the budget over the children
            for kids in _kids_with_budget(comp, m, budget):
                out.append(Vertex(kids))
    if budget >= 1 and m >= 1:
        for t in _with_unary(n, m, budget - 1):
            if _unary_count(t) <= budget - 1:
                out.append(Vertex((t,)))
    return out


def _kids_with_budget(comp, m, budget):
    if not comp:
        yield ()
        return
    head, rest = comp[0], comp[1:]
    for t in _with_unary(head, m, budget):
        used = _unary_count(t)
        for tail in _kids_with_budget(rest, m, budget - used):
            yield (t,) + tail


def _unary_count(t: Tree) -> int:
    return sum(1 for a in vertex_arities(t) if a == 1)


def canonical_key(t: Tree) -> tuple:
    return (n_vertices(t), format_tree(t))


def enumerate_planar(n: int, m, allow_unary: bool = False, max_unary: int | None = None) -> list[Tree]:
    """Planar rooted n-trees with every vertex arity <= m.

    With ``allow_unary=False`` only reduced trees are returned.  Unary
    vertices make the set infinite, so ``allow_unary=True`` needs a cap
    ``max_unary`` on their number; those trees use explicit unary vertices.
    The result is sorted by (vertex count, serialization).
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    m = check_bound(m)
    if not allow_unary:
        return _sorted_trees(n, m, (LEG,))
    else:
        if max_unary is None or max_unary < 0:
            raise ValueError("allow_unary=True requires a nonnegative max_unary")
        trees = list(dict.fromkeys(_with_unary(n, m, max_unary)))
    trees.sort(key=canonical_key)
    return trees


def admissible_trees(n: int, m) -> list[Tree]:
    """Admissible n-trees (compact spelling), canonical order."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    m = check_bound(m)
    return _sorted_trees(n, m, (LEG, BAR_LEG))


def iter_admissible(n: int, m) -> Iterator[Tree]:
    """Admissible n-trees one at a time, in no particular order.

    Only subtrees with fewer than ``n`` legs are kept in memory, so this
    reaches arities where the full sorted list would not fit.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    m = check_bound(m)
    memo: dict[int, list] = {1: [LEG, BAR_LEG]}

    def smaller(p: int) -> list:
        if p not in memo:
            memo[p] = [Vertex(kids) for kids in _children(p)]
        return memo[p]

    def _children(p: int):
        for k in arities_upto(p, m):
            for comp in compositions(p, k):
                yield from itertools.product(*(smaller(q) for q in comp))

    if n == 1:
        yield from memo[1]
        return
    for kids in _children(n):
        yield Vertex(kids)


def count_admissible(n: int, m) -> int:
    """Number of admissible n-trees, counted by walking :func:`iter_admissible`."""
    return sum(1 for _ in iter_admissible(n, m))


def random_tree(n: int, m, rng: random.Random, unary_prob: float = 0.3, max_depth_unary: int = 3) -> Tree:
    """A random planar n-tree; each subtree gets up to ``max_depth_unary``
    explicit unary vertices stacked under it, each with probability ``unary_prob``."""
    m = check_bound(m)

    def build(k):
        if k == 1:
            t = Vertex((LEG,)) if rng.random() < unary_prob else LEG
        else:
            choices = list(arities_upto(k, m))
            a = rng.choice(choices)
            cuts = sorted(rng.sample(range(1, k), a - 1))
            parts = [b - c for b, c in zip(cuts + [k], [0] + cuts)]
            t = Vertex(build(p) for p in parts)
        for _ in range(max_depth_unary):
            if rng.random() < unary_prob:
                t = Vertex((t,))
            else:
                break
        return t

    return build(n)


# --------------------------------------------------------------- text forms


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{msg} at position {pos}" + (f" in {text!r}" if text else ""))


def format_tree(t: Tree) -> str:
    """Bracket serialization; explicit unary vertices are written ``u(...)``."""
    if isinstance(t, Leg):
        return t.mark
    if len(t) == 1:
        return "u(" + format_tree(t[0]) + ")"
    return "(" + "".join(format_tree(c) for c in t) + ")"


def format_bracketing(t: Tree) -> str:
    """Bracketing string of an admissible tree over the alphabet {o, *}."""
    if not is_admissible(t):
        raise ValueError("format_bracketing needs an admissible tree")
    return format_tree(compact(t))


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            got = self.peek() or "end of input"
            raise ParseError(f"expected {ch!r}, got {got!r}", self.pos, self.text)
        self.pos += 1

    def at_end(self) -> bool:
        return self.peek() == ""


def _parse(r: _Reader, m, allow_unary: bool) -> Tree:
    ch = r.peek()
    start = r.pos
    if ch == PLAIN:
        r.pos += 1
        return LEG
    if ch == BAR:
        r.pos += 1
        return BAR_LEG
    if ch == "u" and allow_unary:
        r.pos += 1
        r.take("(")
        inner = _parse(r, m, allow_unary)
        r.take(")")
        return Vertex((inner,))
    if ch == "(":
        r.pos += 1
        kids = []
        while r.peek() not in (")", ""):
            kids.append(_parse(r, m, allow_unary))
        r.take(")")
        if len(kids) < 2:
            raise ParseError("bracket group must contain at least 2 terms", start, r.text)
        if m is not None and len(kids) > m:
            raise ParseError(f"bracket group of size {len(kids)} exceeds m={m}", start, r.text)
        return Vertex(kids)
    got = ch or "end of input"
    raise ParseError(f"unexpected {got!r}", r.pos, r.text)


def parse_bracketing(s: str, m=None) -> Tree:
    """Parse a bracketing over {o, *} into a (compact) admissible tree."""
    if m is not None:
        m = check_bound(m)
    r = _Reader(s)
    t = _parse(r, m, allow_unary=False)
    if not r.at_end():
        raise ParseError("trailing input", r.pos, s)
    return t


def parse_tree(s: str, m=None) -> Tree:
    """Like :func:`parse_bracketing` but also accepts explicit unary nodes ``u(T)``."""
    if m is not None:
        m = check_bound(m)
    r = _Reader(s)
    t = _parse(r, m, allow_unary=True)
    if not r.at_end():
        raise ParseError("trailing input", r.pos, s)
    if m is not None and not within_bound(t, m):
        raise ParseError(f"tree exceeds arity bound m={m}", 0, s)
    return t


def to_json(t: Tree):
    """Nested arrays with "o"/"*" at the leaves; explicit unary vertices are 1-element arrays."""
    if isinstance(t, Leg):
        return t.mark
    return [to_json(c) for c in t]


def from_json(obj) -> Tree:
    if isinstance(obj, str):
        if obj == PLAIN:
            return LEG
        if obj == BAR:
            return BAR_LEG
        raise ValueError(f"bad leaf {obj!r}")
    if isinstance(obj, list) and obj:
        return Vertex(from_json(c) for c in obj)
    raise ValueError(f"bad tree json {obj!r}")


def dumps(t: Tree) -> str:
    return json.dumps(to_json(t), separators=(",", ":"))
