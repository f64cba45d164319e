"""Factorization and the multiplicative functions everything else consumes.

All functions are pure and deterministic.  Integers are factored by trial
division up to a fixed bound, a deterministic Miller-Rabin test (base set
valid below 2**64), and deterministic Pollard rho for the rare large
cofactor.  Public operations accept either a plain int or an already
factored value, so range sweeps can factor each n exactly once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterable, Union

_TRIAL_BOUND = 10**6
_MAX_INPUT = 2**63

# Deterministic witness set for n < 3.3 * 10**24, far above the 2**63 input cap.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class FactoredInt:
    """A positive integer together with its prime-power factorization.

    ``factors`` is ordered by increasing prime; ``value == prod(p**e)``;
    the empty factorization means value 1.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.value < 1:
            raise ValueError(f"positive integer required, got {self.value}")
        prod = 1
        prev = 0
        for p, e in self.factors:
            if p <= prev:
                raise ValueError("factors must have strictly increasing primes")
            if e < 1:
                raise ValueError("exponents must be >= 1")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            prod *= p**e
            prev = p
        if prod != self.value:
            raise ValueError(f"factors multiply to {prod}, not {self.value}")

    def __int__(self) -> int:
        return self.value


IntLike = Union[int, FactoredInt]


@dataclass(frozen=True)
class MultiplicativeProfile:
    """phi, lambda, rad, omega and mu of one integer, all from one factorization."""

    n: FactoredInt
    phi: int
    lam: int
    rad: int
    omega: int
    mu: int


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test (valid for all n < 3.3e24)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """Deterministic Pollard rho (Brent cycle): returns a nontrivial factor of composite odd n."""
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1  # deterministic restart with the next polynomial


def _factor_large(n: int, out: list[int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out.append(n)
        return
    d = _pollard_rho(n)
    _factor_large(d, out)
    _factor_large(n // d, out)


@lru_cache(maxsize=1 << 16)
def factorize(n: int) -> FactoredInt:
    """Factor n >= 1 into its unique prime-power decomposition."""
    if not isinstance(n, int):
        raise TypeError(f"integer required, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"positive integer required, got {n}")
    if n > _MAX_INPUT:
        raise ValueError(f"input {n} exceeds the 2**63 factorization bound")
    m = n
    factors: list[tuple[int, int]] = []
    d = 2
    while d * d <= m and d <= _TRIAL_BOUND:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            factors.append((d, e))
        d += 1 if d == 2 else 2
    if m > 1:
        large: list[int] = []
        _factor_large(m, large)
        counts: dict[int, int] = {}
        for p in large:
            counts[p] = counts.get(p, 0) + 1
        factors.extend(sorted(counts.items()))
        factors.sort()
    return FactoredInt(n, tuple(factors))


def as_factored(n: IntLike) -> FactoredInt:
    """Coerce an int or FactoredInt to FactoredInt."""
    if isinstance(n, FactoredInt):
        return n
    return factorize(n)


def lambda_prime_power(p: int, e: int) -> int:
    """Carmichael value of a single prime power."""
    if p == 2:
        if e <= 2:
            return 2 ** (e - 1)
        return 2 ** (e - 2)
    return p ** (e - 1) * (p - 1)


def carmichael_lambda(n: IntLike) -> int:
    """Universal exponent of the unit group mod n.

    Evaluated as lcm over prime powers, with the halved power of two for
    2**e, e >= 3, and value 1 at n = 1.
    """
    f = as_factored(n)
    lam = 1
    for p, e in f.factors:
        lam = math.lcm(lam, lambda_prime_power(p, e))
    return lam


def euler_phi(n: IntLike) -> int:
    f = as_factored(n)
    out = 1
    for p, e in f.factors:
        out *= p ** (e - 1) * (p - 1)
    return out


def rad(n: IntLike) -> int:
    """Squarefree kernel: product of the distinct primes dividing n."""
    f = as_factored(n)
    out = 1
    for p, _ in f.factors:
        out *= p
    return out


def mobius(n: IntLike) -> int:
    f = as_factored(n)
    if any(e >= 2 for _, e in f.factors):
        return 0
    return -1 if len(f.factors) % 2 else 1


def omega(n: IntLike) -> int:
    """Number of distinct prime divisors."""
    return len(as_factored(n).factors)


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def profile(n: IntLike) -> MultiplicativeProfile:
    f = as_factored(n)
    return MultiplicativeProfile(
        n=f,
        phi=euler_phi(f),
        lam=carmichael_lambda(f),
        rad=rad(f),
        omega=omega(f),
        mu=mobius(f),
    )


def multiplicative_order(a: int, n: IntLike) -> int:
    """Smallest t >= 1 with a**t == 1 mod n.

    Starts from the Carmichael value and strips prime factors, so the cost
    is a handful of modular exponentiations rather than a linear scan.
    """
    f = as_factored(n)
    nv = f.value
    if math.gcd(a, nv) != 1:
        raise ValueError(f"a={a} is not a unit mod {nv}")
    if nv == 1:
        return 1
    lam = carmichael_lambda(f)
    t = lam
    for q, _ in factorize(lam).factors:
        while t % q == 0 and pow(a, t // q, nv) == 1:
            t //= q
    return t


def divisors(n: IntLike) -> list[int]:
    """All positive divisors, sorted."""
    f = as_factored(n)
    ds = [1]
    for p, e in f.factors:
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def smallest_prime_factors(limit: int) -> list[int]:
    """Sieve of smallest prime factors for 0..limit (spf[0] = spf[1] = 0)."""
    spf = list(range(limit + 1))
    if limit >= 1:
        spf[1] = 0
    if limit >= 0:
        spf[0] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == p:
            for m in range(p * p, limit + 1, p):
                if spf[m] == m:
                    spf[m] = p
    return spf


def factored_range(limit: int) -> list[FactoredInt]:
    """FactoredInt for every n in 1..limit, via one spf sieve pass.

    Index i of the result holds n = i + 1.
    """
    if limit < 1:
        return []
    spf = smallest_prime_factors(limit)
    out = []
    for n in range(1, limit + 1):
        m = n
        factors = []
        while m > 1:
            p = spf[m]
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
        out.append(FactoredInt(n, tuple(factors)))
    return out


def primes_upto(limit: int) -> list[int]:
    """Primes <= limit by a plain sieve."""
    if limit < 2:
        return []
    sieve = bytearray(b"\x01") * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = b"\x00" * len(range(p * p, limit + 1, p))
    return [i for i, v in enumerate(sieve) if v]


def lcm_all(values: Iterable[int]) -> int:
    return reduce(math.lcm, values, 1)
