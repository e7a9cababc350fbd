"""Dimension sequences of the A(m) and L(m) operads and their generating functions.

All arithmetic is exact (``fractions.Fraction``).  Truncated power series
are plain lists ``[a_0, a_1, ..., a_N]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .trees import INF, check_bound

DEFAULT_N = 12


def _js(n: int, m) -> range:
    top = n if m is INF else min(m, n)
    return range(2, top + 1)


@lru_cache(maxsize=None)
def _r_table(m, N: int) -> tuple[int, ...]:
    # powers[j][n] = sum over i_1+..+i_j = n of r_{i_1}..r_{i_j}
    r = [0] * (N + 1)
    jmax = N if m is INF else min(m, N)
    powers = [[0] * (N + 1) for _ in range(jmax + 1)]
    for n in range(1, N + 1):
        for j in range(2, jmax + 1):
            if j > n:
                break
            powers[j][n] = sum(r[i] * powers[j - 1][n - i] for i in range(1, n - j + 2))
        r[n] = 1 if n == 1 else sum(powers[j][n] for j in _js(n, m))
        powers[1][n] = r[n]
    return tuple(r[1:])


def r_sequence(m, N: int) -> list[int]:
    """[r_1, ..., r_N]: planar reduced n-trees with vertex arities <= m."""
    m = check_bound(m)
    if N < 1:
        raise ValueError("N must be >= 1")
    return list(_r_table(m, N))


def dim_a(m, n: int) -> int:
    """dim of the arity-n component of the A(m) operad: 2^n r_n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return 2**n * r_sequence(m, n)[-1]


@lru_cache(maxsize=None)
def _c_table(m, N: int) -> tuple[Fraction, ...]:
    c = [Fraction(0)] * (N + 1)
    jmax = N if m is INF else min(m, N)
    powers = [[Fraction(0)] * (N + 1) for _ in range(jmax + 1)]
    for n in range(1, N + 1):
        for j in range(2, jmax + 1):
            if j > n:
                break
            powers[j][n] = sum((c[i] * powers[j - 1][n - i] for i in range(1, n - j + 2)), Fraction(0))
        if n == 1:
            c[n] = Fraction(2)
        else:
            c[n] = sum((powers[j][n] / math.factorial(j) for j in _js(n, m)), Fraction(0))
        powers[1][n] = c[n]
    return tuple(c[1:])


def l_coefficients(m, N: int) -> list[Fraction]:
    """[c_1, ..., c_N], the coefficients of the exponential generating function."""
    m = check_bound(m)
    return list(_c_table(m, N))


def dim_l(m, n: int) -> int:
    """dim of the arity-n component of the L(m) operad: n! c_n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    v = l_coefficients(m, n)[-1] * math.factorial(n)
    if v.denominator != 1:
        raise ArithmeticError(f"non-integral dimension {v} for m={m}, n={n}")
    return int(v)


def double_factorial(k: int) -> int:
    """k!! for odd k >= -1 (with (-1)!! = 1)."""
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def dim_a_closed_m2(n: int) -> Fraction:
    """2^(2n-1) (2n-3)!! / n!, valid for n >= 2."""
    return Fraction(2 ** (2 * n - 1) * double_factorial(2 * n - 3), math.factorial(n))


def dim_l_closed_m2(n: int) -> int:
    return 2**n * double_factorial(2 * n - 3)


@dataclass
class DimTable:
    flavor: str
    m: object
    entries: list = field(default_factory=list)  # (n, dim) or (n, dim, dim/n!)

    def as_dict(self) -> dict:
        rows = []
        for e in self.entries:
            row = {"n": e[0], "dim": e[1]}
            if len(e) > 2:
                row["dim_over_factorial"] = str(e[2])
            rows.append(row)
        return {"flavor": self.flavor, "m": str(self.m), "rows": rows}

    def as_csv(self) -> str:
        lines = ["n,dim" + (",dim_over_factorial" if self.flavor == "l" else "")]
        for e in self.entries:
            lines.append(",".join(str(x) for x in e))
        return "\n".join(lines) + "\n"


def dim_table(flavor: str, m, N: int) -> DimTable:
    m = check_bound(m)
    flavor = flavor.lower()
    if flavor == "a":
        return DimTable("a", m, [(n, dim_a(m, n)) for n in range(1, N + 1)])
    if flavor == "l":
        cs = l_coefficients(m, N)
        return DimTable("l", m, [(n, dim_l(m, n), cs[n - 1]) for n in range(1, N + 1)])
    raise ValueError(f"flavor must be 'a' or 'l', got {flavor!r}")


# ------------------------------------------------------- truncated series


def mul(a: list, b: list, N: int) -> list:
    out = [Fraction(0)] * (N + 1)
    for i, x in enumerate(a[: N + 1]):
        if not x:
            continue
        for j, y in enumerate(b[: N + 1 - i]):
            if y:
                out[i + j] += x * y
    return out


def add(*series: list, N: int) -> list:
    out = [Fraction(0)] * (N + 1)
    for s in series:
        for i, x in enumerate(s[: N + 1]):
            out[i] += x
    return out


def scale(c, a: list) -> list:
    return [Fraction(c) * x for x in a]


def sqrt_one_minus(k: int, N: int) -> list:
    """Coefficients of sqrt(1 - k t) up to t^N (binomial series)."""
    out = []
    coef = Fraction(1)
    half = Fraction(1, 2)
    for j in range(N + 1):
        out.append(coef * (-k) ** j)
        coef = coef * (half - j) / (j + 1)
    return out


def exp_series(a: list, N: int) -> list:
    """exp(a) for a series with zero constant term."""
    if a and a[0]:
        raise ValueError("exp_series needs a zero constant term")
    out = [Fraction(0)] * (N + 1)
    out[0] = Fraction(1)
    term = out[:]
    for k in range(1, N + 1):
        term = scale(Fraction(1, k), mul(term, a, N))
        out = add(out, term, N=N)
    return out


def a_series(m, N: int) -> list:
    """phi(t) = sum dim_a(m, n) t^n, as a list with phi[0] = 0."""
    return [Fraction(0)] + [Fraction(2**n * r) for n, r in enumerate(r_sequence(m, N), start=1)]


def l_series(m, N: int) -> list:
    """omega(t) = sum dim_l(m, n) / n! t^n."""
    return [Fraction(0)] + l_coefficients(m, N)


@dataclass
class SeriesReport:
    flavor: str
    m: object
    N: int
    coefficients: list
    residual: list
    closed_form_ok: bool | None = None
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(self.residual) and self.closed_form_ok is not False

    def as_dict(self) -> dict:
        return {
            "flavor": self.flavor,
            "m": str(self.m),
            "N": self.N,
            "coefficients": [str(c) for c in self.coefficients],
            "residual": [str(c) for c in self.residual],
            "closed_form_ok": self.closed_form_ok,
            "ok": self.ok,
            "notes": self.notes,
        }


def verify_functional_equation(flavor: str, m, N: int = DEFAULT_N) -> SeriesReport:
    """Check the generating-function equation coefficient-wise up to t^N.

    A: phi - 2t = phi^2 (1 + phi + ... + phi^(m-2)); for m = oo the
    rearranged 2 phi^2 - phi (1 + 2t) + 2t = 0.
    L: omega - 2t = omega^2 (1/2! + omega/3! + ... + omega^(m-2)/m!); for
    m = oo, 2 omega - 2t + 1 = exp(omega).
    """
    m = check_bound(m)
    flavor = flavor.lower()
    t = [Fraction(0), Fraction(1)] + [Fraction(0)] * (N - 1)
    notes = []
    closed = None
    if flavor == "a":
        f = a_series(m, N)
        if m is INF:
            lhs = add(scale(2, mul(f, f, N)), scale(-1, mul(f, add([Fraction(1)], scale(2, t), N=N), N)), scale(2, t), N=N)
            residual = lhs
        else:
            rhs = [Fraction(0)] * (N + 1)
            power = mul(f, f, N)
            for _ in range(2, m + 1):
                rhs = add(rhs, power, N=N)
                power = mul(power, f, N)
            residual = add(f, scale(-2, t), scale(-1, rhs), N=N)
        if m == 1:
            closed = f == [Fraction(0), Fraction(2)] + [Fraction(0)] * (N - 1)
            notes.append("phi = 2t")
        elif m == 2:
            expected = scale(Fraction(-1, 2), sqrt_one_minus(8, N))
            expected[0] += Fraction(1, 2)
            closed = expected == f
            notes.append("phi = (1 - sqrt(1 - 8t))/2")
    elif flavor == "l":
        f = l_series(m, N)
        if m is INF:
            residual = add(scale(2, f), scale(-2, t), [Fraction(1)], scale(-1, exp_series(f, N)), N=N)
        else:
            rhs = [Fraction(0)] * (N + 1)
            power = mul(f, f, N)
            for j in range(2, m + 1):
                rhs = add(rhs, scale(Fraction(1, math.factorial(j)), power), N=N)
                power = mul(power, f, N)
            residual = add(f, scale(-2, t), scale(-1, rhs), N=N)
        if m == 2:
            expected = scale(-1, sqrt_one_minus(4, N))
            expected[0] += 1
            closed = expected == f
            notes.append("omega = 1 - sqrt(1 - 4t)")
    else:
        raise ValueError(f"flavor must be 'a' or 'l', got {flavor!r}")
    return SeriesReport(flavor, m, N, f[1:], residual, closed, notes)
