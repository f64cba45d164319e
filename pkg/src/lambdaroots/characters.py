"""The character group mod n at enumeration scale, and its exact sums.

Characters are exponent vectors against fixed generators of the cyclic
factors of the unit group: one generator per odd prime power, and the
pair (-1, 5) for a 2-power 2**e with e >= 3.  Values are roots of unity
zeta_L**t with L = lambda(n), handled exactly: sums of values become
integer count vectors over exponents and are reduced modulo the L-th
cyclotomic polynomial (see cyclo), so identity checks never touch
floating point unless explicitly asked to.

A character is *elementary* when it is trivial on the subgroup E(n) of
units killed by lambda(n)/rad(lambda(n)).  The coefficient c(chi) is the
average of chi over the lambda-primitive roots; it is supported on the
elementary characters and is rational (the reduction asserts this rather
than assuming it).
"""

from __future__ import annotations

import cmath

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from .arith import (
    FactoredInt,
    IntLike,
    as_factored,
    divisors,
    euler_phi,
    factorize,
    mobius,
    rad,
)
from .cyclo import max_abs_row_entry, reduction_rows
from .unit_group import (
    decompose,
    e_subgroup_exponent,
    is_lambda_primitive_root,
    r_count,
)

CHARACTER_GROUP_BOUND = 5000
B_SUM_BOUND = 500


@dataclass(frozen=True)
class Character:
    """One character mod n, as an exponent vector against the group's generators."""

    modulus: FactoredInt
    exponents: tuple[int, ...]
    order: int
    is_elementary: bool
    group: "CharacterGroup" = field(repr=False, compare=False)

    def value_exponent(self, a: int) -> Optional[int]:
        """t with chi(a) = zeta_L**t, or None when a is not a unit."""
        g = self.group
        idx = g.dlog_index.get(a % self.modulus.value)
        if idx is None:
            return None
        vec = g.exponent_matrix[idx]
        return int(sum(k * w * x for k, w, x in zip(self.exponents, g.weights, vec)) % g.value_modulus)

    def value(self, a: int) -> complex:
        t = self.value_exponent(a)
        if t is None:
            return 0j
        return cmath.exp(2j * cmath.pi * t / self.group.value_modulus)

    @property
    def is_principal(self) -> bool:
        return all(k == 0 for k in self.exponents)


@dataclass(frozen=True)
class CharacterCoefficient:
    chi: Character
    c: Fraction
    c_bar: Fraction

    def __post_init__(self):
        if abs(self.c) > self.c_bar:
            raise AssertionError(f"|c| = {abs(self.c)} exceeds bound {self.c_bar}")
        if not self.chi.is_elementary and self.c != 0:
            raise AssertionError("nonzero coefficient on a non-elementary character")


class CharacterGroup:
    """Full dual of the unit group mod n, with generators and a dlog table.

    Exponent vectors, character orders, and elementary flags live in numpy
    arrays (one row per character, in mixed-radix order with the first
    cyclic factor varying slowest); Character objects are materialized on
    first access.
    """

    def __init__(self, n: FactoredInt):
        nv = n.value
        if nv > CHARACTER_GROUP_BOUND:
            raise ValueError(f"character group bound {CHARACTER_GROUP_BOUND} exceeded: n={nv}")
        self.n = n
        struct = decompose(n)
        self.cyclic_orders = struct.cyclic_orders
        self.lam = struct.lam
        self.delta = struct.delta
        self.phi = euler_phi(n)
        self.generators = _generators(n)
        assert len(self.generators) == len(self.cyclic_orders)
        # value exponents live mod L = lambda(n); factor i maps into L/m_i steps
        self.value_modulus = self.lam
        self.weights = tuple(self.lam // m for m in self.cyclic_orders)
        e_exp = e_subgroup_exponent(n)
        self._e_steps = tuple(m // math.gcd(m, e_exp) for m in self.cyclic_orders)
        self._dlog_cache: Optional[dict[int, tuple[int, ...]]] = None
        self._char_cache: Optional[list[Character]] = None
        self._coeff_cache: Optional[list[Fraction]] = None
        self._build_tables()

    def _build_tables(self) -> None:
        """Vectorized mixed-radix enumeration; the first cyclic factor varies slowest."""
        nv = self.n.value
        ms = self.cyclic_orders
        orders = np.ones(1, dtype=np.int64)
        elem = np.ones(1, dtype=bool)
        residues = np.full(1, 1 % nv, dtype=np.int64)
        cols = []
        after = self.phi
        before = 1
        for m, s, g in zip(ms, self._e_steps, self.generators):
            after //= m
            k = np.arange(m, dtype=np.int64)
            cols.append(np.tile(np.repeat(k, after), before))
            before *= m
            orders = np.lcm.outer(orders, m // np.gcd(k, m)).ravel()
            elem = np.logical_and.outer(elem, (k * s) % m == 0).ravel()
            powers = np.empty(m, dtype=np.int64)
            acc = 1 % nv
            for e in range(m):
                powers[e] = acc
                acc = acc * g % nv
            residues = (residues[:, None] * powers[None, :]).ravel() % nv
        self.exponent_matrix = (
            np.stack(cols, axis=1) if ms else np.zeros((1, 0), dtype=np.int64)
        )
        self.order_array = orders
        self.elementary_mask = elem
        self.dlog_index = dict(zip(residues.tolist(), range(self.phi)))
        if len(self.dlog_index) != self.phi:
            raise AssertionError(f"generators do not span the unit group mod {nv}")

    @property
    def dlog(self) -> dict[int, tuple[int, ...]]:
        """Residue -> exponent tuple against the generators."""
        if self._dlog_cache is None:
            rows = self.exponent_matrix.tolist()
            self._dlog_cache = {a: tuple(rows[i]) for a, i in self.dlog_index.items()}
        return self._dlog_cache

    @property
    def characters(self) -> list[Character]:
        if self._char_cache is None:
            rows = self.exponent_matrix.tolist()
            orders = self.order_array.tolist()
            elems = self.elementary_mask.tolist()
            self._char_cache = [
                Character(
                    modulus=self.n,
                    exponents=tuple(row),
                    order=o,
                    is_elementary=el,
                    group=self,
                )
                for row, o, el in zip(rows, orders, elems)
            ]
        return self._char_cache

    @property
    def principal(self) -> Character:
        return self.characters[0]

    def coefficients(self) -> list[Fraction]:
        """c(chi) for every character, from the defining sum over lambda-primitive roots."""
        if self._coeff_cache is None:
            self._coeff_cache = _coefficients_from_definition(self)
        return self._coeff_cache


def _generators(n: FactoredInt) -> tuple[int, ...]:
    """One generator per cyclic factor, CRT-lifted to be 1 mod the other prime powers."""
    nv = n.value
    gens = []
    for p, e in n.factors:
        q = p**e
        rest = nv // q
        if p == 2:
            if e == 1:
                continue
            local = [q - 1] if e == 2 else [q - 1, 5]
        else:
            local = [_primitive_root_mod_prime_power(p, e)]
        for g in local:
            if rest == 1:
                gens.append(g % nv)
            else:
                # CRT: g mod q, 1 mod rest
                inv_rest = pow(rest, -1, q)
                inv_q = pow(q, -1, rest)
                x = (g * rest * inv_rest + 1 * q * inv_q) % nv
                gens.append(x)
    return tuple(gens)


@lru_cache(maxsize=4096)
def _primitive_root_mod_prime_power(p: int, e: int) -> int:
    q = p**e
    lam = p ** (e - 1) * (p - 1)
    cofs = [lam // r for r, _ in factorize(lam).factors]
    for g in range(2, q):
        if g % p == 0:
            continue
        if all(pow(g, c, q) != 1 for c in cofs):
            return g
    raise AssertionError(f"no generator found mod {p}**{e}")


@lru_cache(maxsize=512)
def _group_cached(nv: int) -> CharacterGroup:
    return CharacterGroup(factorize(nv))


def character_group(n: IntLike) -> list[Character]:
    """All phi(n) characters mod n; the principal character comes first."""
    f = as_factored(n)
    return _group_cached(f.value).characters


def rho(n: IntLike, h: int) -> int:
    """Count of elementary characters mod n of squarefree order h.

    Computed as the product of (q**delta_q - 1) over primes q | h.  Requires
    h squarefree with every prime divisor dividing lambda(n).
    """
    f = as_factored(n)
    if h < 1:
        raise ValueError(f"positive h required, got {h}")
    hf = factorize(h)
    if any(e >= 2 for _, e in hf.factors):
        raise ValueError(f"h={h} is not squarefree")
    struct = decompose(f)
    out = 1
    for q, _ in hf.factors:
        if struct.lam % q != 0:
            raise ValueError(f"prime {q} of h={h} does not divide lambda({f.value})")
        out *= q ** struct.delta[q] - 1
    return out


def elementary_order_counts(n: IntLike) -> dict[int, int]:
    """Order histogram of the elementary characters, by full enumeration.

    Pure exponent arithmetic on the cyclic orders, so it does not need
    generators and runs for any n with phi(n) worth enumerating.
    """
    struct = decompose(as_factored(n))
    ms = struct.cyclic_orders
    if not ms:
        return {1: 1}
    e_exp = struct.lam // rad(struct.lam)
    steps = [m // math.gcd(m, e_exp) for m in ms]
    orders = np.ones(1, dtype=np.int64)
    elem = np.ones(1, dtype=bool)
    for m, s in zip(ms, steps):
        k = np.arange(m, dtype=np.int64)
        ord_i = m // np.gcd(k, m)
        el_i = (k * s) % m == 0
        orders = np.lcm.outer(orders, ord_i).ravel()
        elem = np.logical_and.outer(elem, el_i).ravel()
    vals, counts = np.unique(orders[elem], return_counts=True)
    return {int(v): int(c) for v, c in zip(vals, counts)}


# ---------------------------------------------------------------------------
# Exact weighted character sums
# ---------------------------------------------------------------------------


def _reduction_matrix(L: int) -> np.ndarray:
    rows = reduction_rows(L)
    return np.array(rows, dtype=np.int64)


def _int64_safe(bound: int) -> bool:
    return bound < 2**62


def _lpr_residues(group: CharacterGroup) -> list[int]:
    return [a for a in group.dlog_index if is_lambda_primitive_root(a, group.n)]


def _bincount_rows(T: np.ndarray, L: int) -> np.ndarray:
    """Row-wise histogram of value exponents: (rows, L) counts from (rows, cols) T."""
    rows = T.shape[0]
    idx = (T + L * np.arange(rows, dtype=np.int64)[:, None]).ravel()
    return np.bincount(idx, minlength=rows * L).reshape(rows, L)


def _coefficients_from_definition(group: CharacterGroup) -> list[Fraction]:
    """Exact c(chi) for all chi: average of chi over the lambda-primitive roots.

    The sum of roots of unity is reduced modulo the cyclotomic polynomial;
    rationality is asserted by the reduction, not assumed.
    """
    L = group.value_modulus
    nv = group.n.value
    lprs = _lpr_residues(group)
    if nv == 1:
        return [Fraction(1)]
    X = group.exponent_matrix[[group.dlog_index[b] for b in lprs]]  # (R, r)
    K = group.exponent_matrix  # (phi, r)
    W = np.array(group.weights, dtype=np.int64)
    T = (K * W) @ X.T % L  # (phi, R) value exponents
    counts = _bincount_rows(T, L)
    M = _reduction_matrix(L)
    bound = len(lprs) * max_abs_row_entry(L) * max(L, 2)
    if _int64_safe(bound):
        Z = counts @ M
    else:
        Z = counts.astype(object) @ M.astype(object)
    if np.any(Z[:, 1:]):
        raise ArithmeticError(f"coefficient sum not rational mod {nv}")
    return [Fraction(int(z), group.phi) for z in Z[:, 0]]


def coefficient(chi: Character) -> CharacterCoefficient:
    """c(chi) from its defining sum, plus the closed-form bound c_bar."""
    group = chi.group
    cs = group.coefficients()
    idx = 0
    for k, m in zip(chi.exponents, group.cyclic_orders):
        idx = idx * m + k
    c = cs[idx]
    if chi.is_elementary:
        c_bar = Fraction(1, rho(group.n, chi.order))
    else:
        c_bar = Fraction(0)
    return CharacterCoefficient(chi=chi, c=c, c_bar=c_bar)


def coefficient_closed_form(chi: Character) -> Fraction:
    """Inclusion-exclusion form of c(chi) over the kernels K_h = {a : a**(lambda/h) = 1}.

    Equivalent to the defining sum by character orthogonality on subgroups;
    kept separate so the two routes can be compared.
    """
    group = chi.group
    lam = group.lam
    ms = group.cyclic_orders
    total = 0
    denom = group.phi
    for h in divisors(rad(lam)):
        mu = mobius(h)
        kh = 1
        trivial = True
        for k, m in zip(chi.exponents, ms):
            g = math.gcd(m, lam // h)
            kh *= g
            if k * (m // g) % m != 0:
                trivial = False
        if trivial:
            total += mu * kh
    return Fraction(total, denom)


def _c_groups(group: CharacterGroup, include_principal: bool) -> list[tuple[Fraction, list[int]]]:
    """Characters bucketed by coefficient value; zero-coefficient buckets dropped."""
    cs = group.coefficients()
    buckets: dict[Fraction, list[int]] = {}
    for i, c in enumerate(cs):
        if i == 0 and not include_principal:  # row 0 is the all-zero exponent vector
            continue
        if c == 0:
            continue
        buckets.setdefault(c, []).append(i)
    return sorted(buckets.items(), key=lambda kv: (kv[0].numerator, kv[0].denominator))


def _weighted_sums(
    group: CharacterGroup,
    residues: list[int],
    include_principal: bool,
    per_residue: bool,
) -> "list[Fraction] | Fraction":
    """Exact sum_chi c(chi) chi(a), per residue or summed over all residues.

    Non-units contribute zero.  The c-weighted combination is reduced modulo
    the cyclotomic polynomial once per bucket; rationality is asserted.
    """
    L = group.value_modulus
    nv = group.n.value
    unit_pos = [
        (j, group.dlog_index[a % nv]) for j, a in enumerate(residues) if math.gcd(a, nv) == 1
    ]
    groups = _c_groups(group, include_principal)
    if not unit_pos or not groups:
        return [Fraction(0)] * len(residues) if per_residue else Fraction(0)
    X = group.exponent_matrix[[i for _, i in unit_pos]]
    M = _reduction_matrix(L)
    den = math.lcm(*[c.denominator for c, _ in groups])
    W = np.array(group.weights, dtype=np.int64)
    nres = len(unit_pos)
    combined = np.zeros((nres if per_residue else 1, L), dtype=object)
    for c, idxs in groups:
        K = group.exponent_matrix[idxs]
        T = (K * W) @ X.T % L  # (nchi, nres)
        counts = _bincount_rows(T.T, L)  # histogram per residue
        scale = int(c.numerator) * (den // int(c.denominator))
        if not per_residue:
            counts = counts.sum(axis=0, keepdims=True)
        combined += counts.astype(object) * scale
    bound = int(np.abs(combined).max()) * max_abs_row_entry(L) * max(L, 2)
    if _int64_safe(bound):
        Z = combined.astype(np.int64) @ M
    else:
        Z = combined @ M.astype(object)
    if np.any(Z[:, 1:] != 0):
        raise ArithmeticError(f"weighted character sum not rational mod {nv}")
    if per_residue:
        out = [Fraction(0)] * len(residues)
        for row, (j, _) in enumerate(unit_pos):
            out[j] = Fraction(int(Z[row, 0]), den)
        return out
    return Fraction(int(Z[0, 0]), den)


def indicator_values_via_characters(n: IntLike, residues: list[int]) -> list[Fraction]:
    """Exact sum over all characters of c(chi) chi(a), for each residue a."""
    f = as_factored(n)
    group = _group_cached(f.value)
    return _weighted_sums(group, residues, include_principal=True, per_residue=True)


def verify_t_expansion(n: IntLike) -> bool:
    """Check sum_chi c(chi) chi(a) == indicator of a being lambda-primitive, all units a."""
    f = as_factored(n)
    nv = f.value
    group = _group_cached(nv)
    residues = sorted(group.dlog_index)
    vals = _weighted_sums(group, residues, include_principal=True, per_residue=True)
    for a, v in zip(residues, vals):
        expected = 1 if is_lambda_primitive_root(a, f) else 0
        if v != expected:
            return False
    return True


def b_sum(x: int, y: int) -> Fraction:
    """Exact B(x, y): sum over n <= x of the non-principal elementary character
    coefficients times their partial sums over a <= y."""
    if x < 1 or y < 1:
        raise ValueError("x and y must be >= 1")
    if x > B_SUM_BOUND or y > B_SUM_BOUND:
        raise ValueError(f"bound {B_SUM_BOUND} exceeded: x={x}, y={y}")
    total = Fraction(0)
    residues = list(range(1, y + 1))
    for nv in range(1, x + 1):
        group = _group_cached(nv)
        total += _weighted_sums(group, residues, include_principal=False, per_residue=False)
    return total


def coprime_count(y: int, n: IntLike) -> int:
    """#{a <= y : gcd(a, n) = 1} by Moebius over the squarefree kernel."""
    f = as_factored(n)
    out = 0
    for d in divisors(rad(f)):
        out += mobius(d) * (y // d)
    return out


def verify_decomposition(x: int, y: int) -> bool:
    """Exact identity: sum_{a<=y} N_a(x) == sum_{n<=x} (R(n)/phi(n)) #{a<=y coprime} + B(x,y)."""
    lhs = 0
    for nv in range(1, x + 1):
        f = factorize(nv)
        lhs += sum(1 for a in range(1, y + 1) if is_lambda_primitive_root(a, f))
    mid = Fraction(0)
    for nv in range(1, x + 1):
        f = factorize(nv)
        mid += Fraction(r_count(f), euler_phi(f)) * coprime_count(y, f)
    return Fraction(lhs) == mid + b_sum(x, y)
