"""Finitely supported linear combinations with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping


def acc(out: dict, key, c) -> None:
    """out[key] += c, dropping the entry when it cancels."""
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def clean(terms) -> dict:
    """Merge ``terms`` (mapping or pairs) into a dict of nonzero Fractions."""
    items = terms.items() if isinstance(terms, Mapping) else (terms or ())
    out: dict = {}
    for k, c in items:
        if c:
            acc(out, k, c)
    return {k: Fraction(c) for k, c in out.items()}


def _related(a, b) -> bool:
    return isinstance(a, type(b)) or isinstance(b, type(a))


class LinComb:
    """Immutable-by-convention ``{key: Fraction}`` with vector-space operations.

    Subclasses carrying extra metadata override :meth:`_like` and
    :meth:`_compatible`.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = clean(terms)

    def _like(self, terms) -> "LinComb":
        return type(self)(terms)

    def _compatible(self, other) -> None:
        if not _related(self, other):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")

    def __add__(self, other):
        self._compatible(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            acc(out, k, c)
        # a normal form plus a raw element is only a raw element
        base = other if isinstance(self, type(other)) else self
        return base._like(out)

    def __neg__(self):
        return self._like({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, LinComb):
            return NotImplemented
        s = Fraction(scalar)
        return self._like({k: s * c for k, c in self.terms.items()} if s else {})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, LinComb):
            return _related(self, other) and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def items(self):
        return self.terms.items()

    def coefficient(self, key) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms


def format_coefficient(c: Fraction, first: bool) -> tuple[str, str]:
    """(separator, magnitude text) for printing ``c`` inside a sum."""
    sep = ("-" if c < 0 else "") if first else (" - " if c < 0 else " + ")
    a = abs(c)
    return sep, (str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}")


def linear_extend(f, terms: Mapping) -> dict:
    """Apply ``f: key -> {key: coef}`` linearly to a combination."""
    out: dict = {}
    for k, c in terms.items():
        for k2, c2 in f(k).items():
            acc(out, k2, c * c2)
    return out

