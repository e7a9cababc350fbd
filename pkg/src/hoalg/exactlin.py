"""Exact sparse row reduction over the rationals.

Vectors are dicts ``{column: Fraction}`` (or iterables of ``(column, value)``
pairs) with no stored zeros.  Pivots are the lowest nonzero column, so a
caller controls which coordinates get eliminated first by the order in which
it numbers its basis.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Mapping


def as_sparse(row) -> dict[int, Fraction]:
    items = row.items() if isinstance(row, Mapping) else row
    out: dict[int, Fraction] = {}
    for c, v in items:
        if not isinstance(c, int) or c < 0:
            raise ValueError(f"column index must be a nonnegative int, got {c!r}")
        v = Fraction(v)
        if v:
            out[c] = out.get(c, Fraction(0)) + v
            if not out[c]:
                del out[c]
    return out


def to_sorted_pairs(row: Mapping[int, Fraction]) -> list[tuple[int, Fraction]]:
    return sorted(row.items())


class Echelon:
    """Incrementally maintained echelon basis; every stored row has leading entry 1."""

    def __init__(self):
        self.rows: dict[int, dict[int, Fraction]] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row) -> dict[int, Fraction]:
        """Remainder of ``row`` after eliminating every known pivot column."""
        v = as_sparse(row)
        heap = list(v)
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            if c not in v:
                continue
            piv = self.rows.get(c)
            if piv is None:
                continue
            f = v[c]
            for cc, pv in piv.items():
                nv = v.get(cc, 0) - f * pv
                if nv:
                    if cc not in v:
                        heapq.heappush(heap, cc)
                    v[cc] = nv
                else:
                    v.pop(cc, None)
        return v

    def add(self, row) -> dict[int, Fraction] | None:
        """Insert ``row``; returns the new normalized pivot row, or None if dependent."""
        v = self.reduce(row)
        if not v:
            return None
        c = min(v)
        lead = v[c]
        if lead != 1:
            v = {k: x / lead for k, x in v.items()}
        self.rows[c] = v
        return v

    def contains(self, row) -> bool:
        return not self.reduce(row)

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def reduced_rows(self) -> list[list[tuple[int, Fraction]]]:
        """Fully reduced row echelon form, ordered by pivot column."""
        order = self.pivots()
        done: dict[int, dict[int, Fraction]] = {}
        for c in reversed(order):
            r = dict(self.rows[c])
            for cc in [k for k in r if k != c and k in done]:
                f = r.pop(cc)
                for k, x in done[cc].items():
                    if k == cc:
                        continue
                    nv = r.get(k, 0) - f * x
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
            done[c] = r
        return [to_sorted_pairs(done[c]) for c in order]


def rank_and_basis(rows: Iterable) -> tuple[int, list[list[tuple[int, Fraction]]]]:
    """Rank and reduced row echelon basis of the span of ``rows``."""
    e = Echelon()
    for r in rows:
        e.add(r)
    return e.rank, e.reduced_rows()


def rank(rows: Iterable) -> int:
    e = Echelon()
    for r in rows:
        e.add(r)
    return e.rank


def quotient_dim(ambient_dim: int, relation_rows: Iterable) -> int:
    """Dimension of a span of ``ambient_dim`` coordinates modulo the given relations."""
    rows = [as_sparse(r) for r in relation_rows]
    for r in rows:
        if r and max(r) >= ambient_dim:
            raise ValueError("relation uses a column outside the ambient space")
    return ambient_dim - rank(rows)


class Indexer:
    """Assigns consecutive column numbers to hashable basis keys."""

    def __init__(self, keys: Iterable = ()):
        self.index: dict = {}
        self.keys: list = []
        for k in keys:
            self(k)

    def __call__(self, key) -> int:
        i = self.index.get(key)
        if i is None:
            i = len(self.keys)
            self.index[key] = i
            self.keys.append(key)
        return i

    def __len__(self):
        return len(self.keys)

    def vector(self, combo: Mapping, strict: bool = False) -> dict[int, Fraction]:
        """Coordinates of a ``{key: coefficient}`` combination."""
        out = {}
        for k, v in combo.items():
            if strict and k not in self.index:
                raise KeyError(k)
            if v:
                out[self(k)] = Fraction(v)
        return out
