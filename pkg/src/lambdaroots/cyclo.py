"""Exact arithmetic with sums of roots of unity.

A sum over L-th roots of unity is held as an integer count vector indexed
by the exponent.  Reducing the vector modulo the L-th cyclotomic
polynomial gives canonical coordinates in the power basis of Q(zeta_L):
the sum is rational exactly when every coordinate except the constant one
vanishes.  Cyclotomic polynomials are computed by exact division, so the
whole pipeline is integer-only.
"""

from __future__ import annotations

from functools import lru_cache

from .arith import divisors


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Exact division of integer polynomials with monic divisor (low-to-high coeffs)."""
    num = list(num)
    dd = len(den) - 1
    assert den[-1] == 1, "divisor must be monic"
    quot = [0] * max(len(num) - dd, 1)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j, b in enumerate(den):
                num[i - dd + j] -= c * b
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    if n == 1:
        return (-1, 1)
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in divisors(n):
        if d < n:
            num, rem = _poly_divmod(num, list(cyclotomic_poly(d)))
            assert rem == [0], f"inexact cyclotomic division at n={n}, d={d}"
    return tuple(num)


@lru_cache(maxsize=256)
def reduction_rows(L: int) -> tuple[tuple[int, ...], ...]:
    """Row j holds the coordinates of zeta_L**j in the power basis mod Phi_L.

    Shape L x deg(Phi_L).  Multiplying a count vector by this matrix reduces
    it to canonical coordinates.
    """
    phi = cyclotomic_poly(L)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    rows.append(tuple(cur))
    for _ in range(L - 1):
        lead = cur[-1]
        nxt = [0] + cur[:-1]
        if lead:
            for i in range(deg):
                nxt[i] -= lead * phi[i]
        cur = nxt
        rows.append(tuple(cur))
    return tuple(rows)


def reduce_counts(counts: list[int], L: int) -> list[int]:
    """Canonical coordinates of sum_t counts[t] * zeta_L**t."""
    rows = reduction_rows(L)
    deg = len(rows[0])
    out = [0] * deg
    for t, c in enumerate(counts):
        if c:
            row = rows[t]
            for i in range(deg):
                out[i] += c * row[i]
    return out


def rational_value(counts: list[int], L: int) -> int:
    """The integer value of a count vector known to be rational; raises otherwise."""
    out = reduce_counts(counts, L)
    if any(out[1:]):
        raise ArithmeticError("root-of-unity sum is not rational")
    return out[0]


def max_abs_row_entry(L: int) -> int:
    return max(max(abs(c) for c in row) for row in reduction_rows(L))
