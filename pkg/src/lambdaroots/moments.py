"""Counting functions, moment sums, and their exact algebraic decompositions.

Everything that feeds an identity check is accumulated in exact rational
arithmetic; the usual trick is to scale by L = lcm(1..x) so the inner
loops stay in plain integers.  Floating point appears only in the
diagnostic ratios attached to a report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .arith import IntLike, as_factored, euler_phi, factorize, factored_range, primes_upto
from .characters import b_sum, coprime_count, indicator_values_via_characters
from .parallel import split_range, parallel_map
from .unit_group import r_count

MOMENT_BUDGET = 10**8  # order evaluations allowed for one second-moment call
SIGMA1_DIRECT_BOUND = 2000
DIAGNOSTIC_MIN_X = 16  # loglog x exceeds 1 from here on, so logloglog is positive


@dataclass(frozen=True)
class MomentConfig:
    x: int
    y: int
    include_n_equals_1: bool = True

    def __post_init__(self):
        if self.x < 1 or self.y < 1:
            raise ValueError("x and y must be >= 1")


@dataclass(frozen=True)
class SweepReport:
    config: MomentConfig
    mean: Fraction
    second_moment: Fraction
    sigma1: Fraction
    phi_phi_sum: int
    diagnostics: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.second_moment < 0 or self.sigma1 < 0:
            raise AssertionError("moment sums must be nonnegative")

    def to_json_dict(self) -> dict:
        return {
            "x": self.config.x,
            "y": self.config.y,
            "mean_num": str(self.mean.numerator),
            "mean_den": str(self.mean.denominator),
            "m2_num": str(self.second_moment.numerator),
            "m2_den": str(self.second_moment.denominator),
            "sigma1_num": str(self.sigma1.numerator),
            "sigma1_den": str(self.sigma1.denominator),
            "phi_phi_sum": self.phi_phi_sum,
            "diagnostics": self.diagnostics,
        }

    CSV_FIELDS = (
        "x",
        "y",
        "mean_num",
        "mean_den",
        "m2_num",
        "m2_den",
        "sigma1_num",
        "sigma1_den",
        "phi_phi_sum",
        "diagnostics",
    )


@lru_cache(maxsize=8)
def _indicator_table(x: int) -> list[tuple[int, tuple[int, ...]]]:
    """(n, stripped exponents of lambda(n)) for n = 1..x; drives fast t_a tests."""
    out = []
    for f in factored_range(x):
        lam = 1
        for p, e in f.factors:
            lam = math.lcm(lam, (2 ** (e - 2) if e >= 3 else 2 ** (e - 1)) if p == 2 else p ** (e - 1) * (p - 1))
        cofs = tuple(lam // q for q, _ in factorize(lam).factors)
        out.append((f.value, cofs))
    return out


def _t_value(a: int, nv: int, cofs: tuple[int, ...]) -> int:
    if math.gcd(a, nv) != 1:
        return 0
    for c in cofs:
        if pow(a, c, nv) == 1:
            return 0
    return 1


def n_count(a: int, x: int) -> int:
    """N_a(x): moduli n <= x for which a has maximal multiplicative order.

    n = 1 always counts (trivial group); n = 2 counts for odd a.
    """
    if a < 1 or x < 1:
        raise ValueError("a and x must be >= 1")
    return sum(_t_value(a, nv, cofs) for nv, cofs in _indicator_table(x))


def p_count(a: int, x: int) -> int:
    """P_a(x): primes p <= x with p not dividing a and a a primitive root mod p."""
    if a < 1:
        raise ValueError("a must be >= 1")
    count = 0
    for p in primes_upto(x):
        if a % p == 0:
            continue
        cofs = tuple((p - 1) // q for q, _ in factorize(p - 1).factors)
        if all(pow(a, c, p) != 1 for c in cofs):
            count += 1
    return count


@lru_cache(maxsize=32)
def _r_values(x: int) -> tuple[int, ...]:
    return tuple(r_count(f) for f in factored_range(x))


def mean_sum(x: int, include_n_equals_1: bool = True) -> Fraction:
    """Exact sum over n <= x of R(n)/n."""
    if x < 1:
        raise ValueError("x must be >= 1")
    L = math.lcm(*range(1, x + 1))
    rv = _r_values(x)
    start = 0 if include_n_equals_1 else 1
    s = sum(rv[n - 1] * (L // n) for n in range(start + 1, x + 1))
    return Fraction(s, L)


def _m2_partial(args: tuple[int, int, int, int, int]) -> int:
    """Scaled partial sum of (N_a(x)*D - M)**2 over a contiguous a-range."""
    x, a_lo, a_hi, big_m, big_d = args
    table = _indicator_table(x)
    total = 0
    for a in range(a_lo, a_hi + 1):
        na = sum(_t_value(a, nv, cofs) for nv, cofs in table)
        diff = na * big_d - big_m
        total += diff * diff
    return total


def second_moment(config: MomentConfig, workers: int = 1) -> Fraction:
    """(1/y) * sum over a <= y of (N_a(x) - mean)**2, exact.

    Sharded over the a-range; partial integer sums merge in shard order, so
    the result is identical for any worker count.
    """
    x, y = config.x, config.y
    if x * y > MOMENT_BUDGET:
        raise ValueError(f"budget exceeded: x*y = {x * y} > {MOMENT_BUDGET}")
    m = mean_sum(x)  # dropping n=1 shifts N_a and the mean equally
    big_d, big_m = m.denominator, m.numerator
    shards = split_range(1, y, max(workers, 1) * 4)
    parts = parallel_map(_m2_partial, [(x, lo, hi, big_m, big_d) for lo, hi in shards], workers)
    return Fraction(sum(parts), y * big_d * big_d)


def sigma1_direct(x: int) -> Fraction:
    """Double sum over n1, n2 <= x of R(n1)R(n2)/(n1 n2) ((g/phi(g)) - 1), g = gcd.

    Coprime pairs vanish; the rest is accumulated over the common
    denominator lcm(1..x)**3.
    """
    if x < 1:
        raise ValueError("x must be >= 1")
    if x > SIGMA1_DIRECT_BOUND:
        raise ValueError(f"direct double sum bound {SIGMA1_DIRECT_BOUND} exceeded: x={x}")
    L = math.lcm(*range(1, x + 1))
    rv = _r_values(x)
    w = [0] + [rv[n - 1] * (L // n) for n in range(1, x + 1)]
    phis = _phi_table(x)
    gfact = [0] + [(g - phis[g]) * (L // phis[g]) for g in range(1, x + 1)]
    total = 0
    for n1 in range(2, x + 1):
        wn1 = w[n1]
        # off-diagonal pairs counted twice by symmetry
        row = 0
        for n2 in range(2, n1):
            g = math.gcd(n1, n2)
            if g > 1:
                row += w[n2] * gfact[g]
        total += 2 * wn1 * row + wn1 * wn1 * gfact[n1]
    return Fraction(total, L**3)


def sigma1_gcd_form(x: int) -> Fraction:
    """Resummed form: pull out d = gcd and sum over coprime cofactor pairs.

    sum over d <= x, coprime k1, k2 <= x/d of
    R(d k1) R(d k2) / (k1 k2) * (1/(d phi(d)) - 1/d**2).
    """
    if x < 1:
        raise ValueError("x must be >= 1")
    L = math.lcm(*range(1, x + 1))
    rv = _r_values(x)
    phis = _phi_table(x)
    total = 0
    for d in range(2, x + 1):
        m = x // d
        # w[k] = R(dk) * (L // k)
        w = [0] + [rv[d * k - 1] * (L // k) for k in range(1, m + 1)]
        inner = w[1] * w[1]  # the only coprime diagonal pair is (1, 1)
        for k1 in range(2, m + 1):
            row = 0
            for k2 in range(1, k1):
                if math.gcd(k1, k2) == 1:
                    row += w[k2]
            inner += 2 * w[k1] * row
        scale = (d - phis[d]) * (L // d) ** 2 * (L // phis[d])
        total += inner * scale
    return Fraction(total, L**5)


@lru_cache(maxsize=32)
def _phi_table(x: int) -> list[int]:
    """phi(n) for n = 0..x (index 0 unused)."""
    phis = [0] * (x + 1)
    for f in factored_range(x):
        phis[f.value] = euler_phi(f)
    return phis


def phi_phi_sum(x: int) -> int:
    """Sum over n <= x of phi(phi(n))."""
    if x < 1:
        raise ValueError("x must be >= 1")
    phis = _phi_table(x)
    return sum(phis[phis[n]] for n in range(1, x + 1))


def phi_phi_mean(x: int) -> Fraction:
    """Exact sum over n <= x of phi(phi(n))/n."""
    if x < 1:
        raise ValueError("x must be >= 1")
    phis = _phi_table(x)
    L = math.lcm(*range(1, x + 1))
    s = sum(phis[phis[n]] * (L // n) for n in range(1, x + 1))
    return Fraction(s, L)


def corollary_density(d: IntLike) -> Fraction:
    """The d-dependent density factor (1/d) * prod over p | d of 1/(1 + 1/p)."""
    f = as_factored(d)
    out = Fraction(1, f.value)
    for p, _ in f.factors:
        out *= Fraction(p, p + 1)
    return out


# ---------------------------------------------------------------------------
# Exact second-moment decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SecondMomentSplit:
    """Exact pieces of sum_{a<=y} (N_a(x) - mean)**2 = y*sigma1 + sigma2 + error.

    ``sigma2`` is the both-characters sum evaluated through the actual
    character tables; ``error`` collects the exact principal-character
    count corrections that the asymptotic argument absorbs into big-O.
    """

    x: int
    y: int
    sigma1_term: Fraction
    sigma2: Fraction
    error: Fraction
    total: Fraction

    @property
    def balanced(self) -> bool:
        return self.total == self.sigma1_term + self.sigma2 + self.error


def _phi_ratio(primes: set[int]) -> Fraction:
    out = Fraction(1)
    for p in primes:
        out *= Fraction(p - 1, p)
    return out


def _coprime_count_primes(y: int, primes: set[int]) -> int:
    total = 0
    ps = sorted(primes)
    for mask in range(1 << len(ps)):
        d = 1
        bits = 0
        for i, p in enumerate(ps):
            if mask >> i & 1:
                d *= p
                bits += 1
        total += (-1) ** bits * (y // d)
    return total


def second_moment_split(x: int, y: int) -> SecondMomentSplit:
    """Compute the exact decomposition of the centered second moment.

    All three right-hand pieces are evaluated independently of the
    left-hand side: sigma1 from its arithmetic double sum, sigma2 from the
    full character tables, and the error term from exact coprime counts
    plus B(x, y).
    """
    m = mean_sum(x)
    residues = list(range(1, y + 1))
    # A(a) = sum over n of the full character expansion value at a
    a_vals = [Fraction(0)] * y
    for nv in range(1, x + 1):
        vals = indicator_values_via_characters(nv, residues)
        for j in range(y):
            a_vals[j] += vals[j]
    prime_sets = [set()] + [set(p for p, _ in factorize(nv).factors) for nv in range(1, x + 1)]
    rv = _r_values(x)
    rphi = [Fraction(0)] + [Fraction(rv[nv - 1], euler_phi(factorize(nv))) for nv in range(1, x + 1)]
    pr_vals = []
    for a in range(1, y + 1):
        pr = Fraction(0)
        for nv in range(1, x + 1):
            if math.gcd(a, nv) == 1:
                pr += rphi[nv]
        pr_vals.append(pr)
    sigma2 = sum((av * av - pv * pv for av, pv in zip(a_vals, pr_vals)), Fraction(0))

    # principal-count corrections
    d1 = Fraction(0)
    for nv in range(1, x + 1):
        exact = coprime_count(y, factorize(nv))
        d1 += rphi[nv] * (Fraction(exact) - y * _phi_ratio(prime_sets[nv]))
    d2 = Fraction(0)
    for n1 in range(1, x + 1):
        for n2 in range(1, x + 1):
            primes = prime_sets[n1] | prime_sets[n2]
            exact = _coprime_count_primes(y, primes)
            d2 += rphi[n1] * rphi[n2] * (Fraction(exact) - y * _phi_ratio(primes))
    error = d2 - 2 * m * (d1 + b_sum(x, y))

    total = y * second_moment(MomentConfig(x=x, y=y))
    sigma1_term = y * sigma1_direct(x)
    return SecondMomentSplit(
        x=x, y=y, sigma1_term=sigma1_term, sigma2=sigma2, error=error, total=total
    )


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


def logloglog(x: float) -> Optional[float]:
    if x < DIAGNOSTIC_MIN_X:
        return None
    return math.log(math.log(math.log(x)))


def diagnostics_for(
    x: int, mean: Fraction, m2: Fraction, phi_phi: int
) -> dict[str, float]:
    """Floating ratios against the conjectural growth shapes; empty below x = 16."""
    lll = logloglog(x)
    if lll is None:
        return {}
    from .constants import theorem32_constant_float

    out = {
        "mean_times_lll_over_x": float(mean) * lll / x,
        "m2_times_lll_sq_over_x_sq": float(m2) * lll * lll / (x * x),
        "phi_phi_over_pollack_shape": phi_phi / (theorem32_constant_float() * x * x / lll),
    }
    return out


def build_report(config: MomentConfig, workers: int = 1) -> SweepReport:
    mean = mean_sum(config.x, config.include_n_equals_1)
    m2 = second_moment(config, workers=workers)
    sigma1 = sigma1_gcd_form(config.x)
    pps = phi_phi_sum(config.x)
    diags = diagnostics_for(config.x, mean, m2, pps)
    return SweepReport(
        config=config,
        mean=mean,
        second_moment=m2,
        sigma1=sigma1,
        phi_phi_sum=pps,
        diagnostics=diags,
    )
