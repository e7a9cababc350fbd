"""Sign conventions.

Permutations are tuples in one-line notation over 1..n: ``sigma[p-1]`` is the
element placed at position p, so ``v_sigma(1) (x) ... (x) v_sigma(n)`` is the
rearranged tensor.  Signs are the ints +1/-1 and every exponent is reduced
mod 2 before use.  Only parities of degrees matter, and degrees may be
negative.
"""

from __future__ import annotations

import itertools
from typing import Sequence

Permutation = tuple


def _check_perm(sigma: Sequence[int]) -> tuple:
    s = tuple(sigma)
    if sorted(s) != list(range(1, len(s) + 1)):
        raise ValueError(f"{s!r} is not a permutation of 1..{len(s)}")
    return s


def power(e: int) -> int:
    """(-1)**e for any integer e."""
    return -1 if e & 1 else 1


def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def compose(sigma, tau) -> Permutation:
    """(sigma tau)(i) = sigma(tau(i))."""
    sigma, tau = _check_perm(sigma), _check_perm(tau)
    if len(sigma) != len(tau):
        raise ValueError("permutations of different sizes")
    return tuple(sigma[t - 1] for t in tau)


def inverse(sigma) -> Permutation:
    sigma = _check_perm(sigma)
    inv = [0] * len(sigma)
    for p, s in enumerate(sigma, start=1):
        inv[s - 1] = p
    return tuple(inv)


def sgn(sigma) -> int:
    sigma = _check_perm(sigma)
    seen = [False] * len(sigma)
    parity = 0
    for i in range(len(sigma)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = sigma[j] - 1
            length += 1
        parity += length - 1
    return power(parity)


def koszul_sign(sigma, degrees: Sequence[int]) -> int:
    """Koszul sign of rearranging graded symbols v_1..v_n into v_sigma(1)..v_sigma(n).

    Product of (-1)^(d_i d_j) over pairs i < j that sigma puts in the
    opposite order; ``degrees[i-1]`` is the degree of v_i.
    """
    sigma = _check_perm(sigma)
    if len(degrees) != len(sigma):
        raise ValueError("need one degree per permuted symbol")
    odd = [d & 1 for d in degrees]
    e = 0
    for p in range(len(sigma)):
        a = sigma[p]
        if not odd[a - 1]:
            continue
        for q in range(p + 1, len(sigma)):
            b = sigma[q]
            if b < a and odd[b - 1]:
                e += 1
    return power(e)


def chi(sigma, degrees: Sequence[int]) -> int:
    """sgn(sigma) times the Koszul sign."""
    return sgn(sigma) * koszul_sign(sigma, degrees)


def permute(sigma, items: Sequence) -> list:
    """The rearrangement (items[sigma(1)-1], ..., items[sigma(n)-1])."""
    sigma = _check_perm(sigma)
    if len(items) != len(sigma):
        raise ValueError("length mismatch")
    return [items[s - 1] for s in sigma]


def unshuffles(i: int, n: int) -> list[Permutation]:
    """All sigma in S_n increasing on positions 1..i and on i+1..n, lexicographic."""
    if not (isinstance(i, int) and isinstance(n, int)) or not 1 <= i <= n:
        raise ValueError(f"need 1 <= i <= n, got i={i}, n={n}")
    out = []
    for first in itertools.combinations(range(1, n + 1), i):
        rest = [x for x in range(1, n + 1) if x not in first]
        out.append(tuple(first) + tuple(rest))
    return out


def sorting_permutation(keys: Sequence) -> Permutation:
    """The sigma with keys[sigma(1)-1] <= keys[sigma(2)-1] <= ... (stable)."""
    order = sorted(range(len(keys)), key=lambda p: keys[p])
    return tuple(p + 1 for p in order)


def phi_sign(lam: int, k: int) -> int:
    """Coefficient sign of xi_{n-k+1} o_{lam+1} xi_k in the relation Phi_n."""
    if lam < 0 or k < 1:
        raise ValueError("need lam >= 0 and k >= 1")
    return power(lam * (k + 1) + k)


def axiom_sign(k: int, lam: int, arg_degrees: Sequence[int]) -> int:
    """(-1)^omega with omega = k + lam + k*lam + k(|a_1| + ... + |a_lam|)."""
    if lam < 0 or len(arg_degrees) < lam:
        raise ValueError("need at least lam argument degrees")
    return power(k + lam + k * lam + k * sum(arg_degrees[:lam]))


def jacobi_sign(i: int, j: int) -> int:
    """(-1)^(i(j-1)), the sign of the l_j(l_i(...), ...) term."""
    return power(i * (j - 1))


def symmetrization_sign(n: int) -> int:
    """(-1)^((n-1)(n-2)/2), the factor in l_n = sign * sum_sigma chi(sigma) mu_n(v_sigma).

    With the A(m) axiom sign and the Jacobi sign (-1)^(i(j-1)) used here,
    this factor is what makes the symmetrization of an A(m)-algebra satisfy
    the generalized Jacobi identity (l_3 and l_4 flip, l_2 does not).
    """
    if n < 1:
        raise ValueError("need n >= 1")
    return power((n - 1) * (n - 2) // 2)


def dg_sign(a: int, b: int, i: int) -> int:
    """(-1)^((b+1)(i+1)+b), the unscaled sign of the xi_a o_i xi_b term of d(xi_n).

    On its own this rule stops squaring to zero from arity 5 on;
    :func:`hoalg.operad_nsigma.dg_coefficient` scales it by (-1)^(n+1),
    which is what the differential uses.
    """
    return power((b + 1) * (i + 1) + b)
