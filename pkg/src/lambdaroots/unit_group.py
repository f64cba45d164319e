"""Structure of the unit group mod n and the count of maximal-order residues.

A residue a with gcd(a, n) = 1 is a lambda-primitive root mod n when its
multiplicative order equals the Carmichael value lambda(n).  R(n) counts
them; it has a closed form in terms of the number of cyclic factors whose
q-part is maximal, and an enumeration fallback used as an oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .arith import (
    FactoredInt,
    IntLike,
    as_factored,
    carmichael_lambda,
    euler_phi,
    factorize,
    lambda_prime_power,
    rad,
)

BRUTE_FORCE_BOUND = 10**6


@dataclass(frozen=True)
class UnitGroupStructure:
    """Cyclic decomposition of the unit group mod n.

    ``cyclic_orders`` lists one cyclic factor per odd prime power (its
    Carmichael value) and the split [2, 2**(e-2)] for a 2-power with
    e >= 3.  The product is phi(n), the lcm is lambda(n), and ``delta``
    maps each prime q dividing lambda(n) to the number of cyclic factors
    whose q-adic valuation is maximal.
    """

    n: FactoredInt
    cyclic_orders: tuple[int, ...]
    lam: int
    delta: dict[int, int]


@dataclass(frozen=True)
class LambdaRootCount:
    n: FactoredInt
    r_closed: int
    r_brute: Optional[int] = None

    def __post_init__(self):
        if self.r_brute is not None and self.r_brute != self.r_closed:
            raise ValueError(
                f"closed form {self.r_closed} != enumeration {self.r_brute} for n={self.n.value}"
            )


def cyclic_orders_of(n: FactoredInt) -> tuple[int, ...]:
    orders = []
    for p, e in n.factors:
        if p == 2:
            if e == 2:
                orders.append(2)
            elif e >= 3:
                orders.extend([2, 2 ** (e - 2)])
            # e == 1 contributes the trivial group
        else:
            orders.append(lambda_prime_power(p, e))
    return tuple(orders)


def decompose(n: IntLike) -> UnitGroupStructure:
    f = as_factored(n)
    orders = cyclic_orders_of(f)
    lam = 1
    for m in orders:
        lam = math.lcm(lam, m)
    delta = {}
    for q, _ in factorize(lam).factors:
        vq = _valuation(lam, q)
        delta[q] = sum(1 for m in orders if _valuation(m, q) == vq)
    return UnitGroupStructure(n=f, cyclic_orders=orders, lam=lam, delta=delta)


def _valuation(m: int, q: int) -> int:
    v = 0
    while m % q == 0:
        m //= q
        v += 1
    return v


def r_count(n: IntLike) -> int:
    """Closed-form count of lambda-primitive roots, in exact integer arithmetic.

    R(n) = phi(n) * prod over primes q | phi(n) of (1 - q**(-delta_q)).
    Every prime dividing phi(n) also divides lambda(n) (each cyclic order
    divides the lcm), so the product ranges over the keys of delta.
    """
    struct = decompose(n)
    phi = euler_phi(struct.n)
    # phi and lambda share prime support; a prime of phi missing from delta
    # would make the closed form ill-defined.
    for q, _ in factorize(phi).factors:
        if q not in struct.delta:
            raise AssertionError(f"prime {q} divides phi({struct.n.value}) but not lambda")
    num, den = phi, 1
    for q, d in struct.delta.items():
        num *= q**d - 1
        den *= q**d
    quot, rem = divmod(num, den)
    if rem:
        raise AssertionError(f"non-integral R({struct.n.value})")
    return quot


def _stripped_exponents(lam: int) -> tuple[int, ...]:
    """Exponents lambda / q for each prime q | lambda, used by the order test."""
    return tuple(lam // q for q, _ in factorize(lam).factors)


def is_lambda_primitive_root(a: int, n: IntLike) -> bool:
    """Indicator of a being a maximal-order residue mod n (False for non-units)."""
    f = as_factored(n)
    nv = f.value
    if math.gcd(a, nv) != 1:
        return False
    lam = carmichael_lambda(f)
    return all(pow(a, c, nv) != 1 for c in _stripped_exponents(lam))


def r_count_bruteforce(n: IntLike) -> int:
    """Count maximal-order residues by direct enumeration of 1..n."""
    f = as_factored(n)
    nv = f.value
    if nv > BRUTE_FORCE_BOUND:
        raise ValueError(f"enumeration bound {BRUTE_FORCE_BOUND} exceeded: n={nv}")
    if nv == 1:
        return 1
    lam = carmichael_lambda(f)
    cofs = _stripped_exponents(lam)
    g = math.gcd
    count = 0
    for a in range(1, nv + 1):
        if g(a, nv) == 1 and all(pow(a, c, nv) != 1 for c in cofs):
            count += 1
    return count


def count_roots(n: IntLike, brute: bool = True) -> LambdaRootCount:
    f = as_factored(n)
    closed = r_count(f)
    bf = None
    if brute and f.value <= BRUTE_FORCE_BOUND:
        bf = r_count_bruteforce(f)
    return LambdaRootCount(n=f, r_closed=closed, r_brute=bf)


def e_subgroup_exponent(n: IntLike) -> int:
    """Exponent killing the subgroup E(n): lambda(n) / rad(lambda(n)).

    rad is taken of lambda(n), not of n itself; lambda(n)/rad(n) is not an
    integer in general (n = 5 gives 4/5).
    """
    lam = carmichael_lambda(as_factored(n))
    return lam // rad(lam)


def e_membership(a: int, n: IntLike) -> bool:
    """Whether a lies in E(n) = units killed by lambda(n)/rad(lambda(n))."""
    f = as_factored(n)
    nv = f.value
    if math.gcd(a, nv) != 1:
        raise ValueError(f"a={a} is not a unit mod {nv}")
    exp = e_subgroup_exponent(f)
    return pow(a, exp, nv) == 1 % nv


def e_subgroup(n: IntLike) -> list[int]:
    """Elements of E(n) in 1..n, by enumeration (small n only)."""
    f = as_factored(n)
    nv = f.value
    if nv > BRUTE_FORCE_BOUND:
        raise ValueError(f"enumeration bound {BRUTE_FORCE_BOUND} exceeded: n={nv}")
    exp = e_subgroup_exponent(f)
    return [a for a in range(1, nv + 1) if math.gcd(a, nv) == 1 and pow(a, exp, nv) == 1 % nv]
