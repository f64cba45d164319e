import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lambdaroots.arith import divisors, euler_phi, factorize, mobius, rad
from lambdaroots.characters import (
    _group_cached,
    b_sum,
    character_group,
    coefficient,
    coefficient_closed_form,
    coprime_count,
    elementary_order_counts,
    indicator_values_via_characters,
    rho,
    verify_decomposition,
    verify_t_expansion,
)
from lambdaroots.unit_group import (
    decompose,
    e_subgroup,
    is_lambda_primitive_root,
    r_count,
)


def test_group_examples():
    assert [c.order for c in character_group(1)] == [1]
    assert sorted(c.order for c in character_group(5)) == [1, 2, 4, 4]
    assert sorted(c.order for c in character_group(8)) == [1, 2, 2, 2]


def test_group_size_and_principal():
    for n in (1, 2, 3, 4, 12, 16, 36, 100):
        chars = character_group(n)
        assert len(chars) == euler_phi(factorize(n))
        assert chars[0].is_principal
        assert chars[0].order == 1
        assert sum(1 for c in chars if c.is_principal) == 1


def test_group_bound():
    with pytest.raises(ValueError):
        character_group(5001)


def test_character_order_from_exponents():
    for n in (7, 9, 15, 16, 24, 40):
        g = _group_cached(n)
        for ch in g.characters:
            expect = 1
            for k, m in zip(ch.exponents, g.cyclic_orders):
                expect = math.lcm(expect, m // math.gcd(k, m))
            assert ch.order == expect


def test_character_values_multiplicative():
    for n in (5, 8, 15, 24, 35):
        g = _group_cached(n)
        units = sorted(g.dlog_index)
        for ch in g.characters:
            for a in units[:6]:
                for b in units[:6]:
                    va, vb = ch.value_exponent(a), ch.value_exponent(b)
                    vab = ch.value_exponent(a * b % n)
                    assert vab == (va + vb) % g.value_modulus
        # non-units map to zero
        if n > 2:
            assert g.characters[1].value(0) == 0j


def test_elementary_iff_trivial_on_e_subgroup():
    for n in range(1, 151):
        g = _group_cached(n)
        E = e_subgroup(factorize(n))
        for ch in g.characters:
            trivial = all(ch.value_exponent(a % n) == 0 for a in E)
            assert ch.is_elementary == trivial


def test_elementary_order_divides_rad_lambda():
    for n in range(1, 301):
        g = _group_cached(n)
        lam_rad = rad(g.lam)
        for ch in g.characters:
            if ch.is_elementary:
                assert lam_rad % ch.order == 0
                assert mobius(ch.order) != 0


def test_rho_examples():
    assert rho(15, 1) == 1
    assert rho(997, 1) == 1
    assert rho(15, 2) == 1
    assert rho(8, 2) == 3
    with pytest.raises(ValueError):
        rho(8, 4)  # not squarefree
    with pytest.raises(ValueError):
        rho(8, 3)  # 3 does not divide lambda(8)


def test_rho_counts_elementary_characters_small():
    for n in range(1, 301):
        counts = elementary_order_counts(n)
        lam = decompose(factorize(n)).lam
        hs = divisors(rad(lam))
        assert set(counts) == set(hs)
        for h in hs:
            assert counts[h] == rho(n, h)
        # total count identity
        assert sum(counts.values()) == sum(rho(n, h) for h in hs)


def test_coefficient_examples():
    g = _group_cached(5)
    by_order = {}
    for ch in g.characters:
        by_order.setdefault(ch.order, []).append(ch)
    principal = by_order[1][0]
    assert coefficient(principal).c == Fraction(r_count(5), euler_phi(factorize(5)))
    quad = by_order[2][0]
    assert coefficient(quad).c == Fraction(-1, 2)
    for ch in by_order[4]:
        assert coefficient(ch).c == 0


def test_coefficient_bound_and_support():
    for n in range(1, 201):
        g = _group_cached(n)
        for ch, c in zip(g.characters, g.coefficients()):
            cc = coefficient(ch)
            assert cc.c == c
            assert abs(cc.c) <= cc.c_bar
            if not ch.is_elementary:
                assert cc.c == 0
            else:
                assert cc.c_bar == Fraction(1, rho(g.n, ch.order))


def test_coefficient_matches_inclusion_exclusion():
    for n in range(1, 201):
        g = _group_cached(n)
        for ch in g.characters:
            assert coefficient(ch).c == coefficient_closed_form(ch)


def test_coefficient_matches_direct_complex_sum():
    for n in range(2, 61):
        g = _group_cached(n)
        lprs = [a for a in sorted(g.dlog_index) if is_lambda_primitive_root(a, g.n)]
        for ch, c in zip(g.characters, g.coefficients()):
            direct = sum(ch.value(b) for b in lprs) / g.phi
            assert abs(direct - complex(float(c), 0)) < 1e-9


def test_coefficient_sign_convention():
    """The nonzero coefficients carry the Moebius sign of the character order.

    c(chi) * rho(ord) * phi / R is recorded to be mu(ord(chi)); in
    particular it is +1 for the principal character and -1 for quadratic
    elementary characters, not (-1)**order.
    """
    for n in range(1, 301):
        g = _group_cached(n)
        R = r_count(g.n)
        for ch, c in zip(g.characters, g.coefficients()):
            if not ch.is_elementary:
                continue
            s = c * rho(g.n, ch.order) * g.phi / R
            assert s == mobius(ch.order)
            assert s in (1, -1)


def _closed_form_coefficient_table(g):
    """Vectorized inclusion-exclusion coefficients for every character of g."""
    lam = g.lam
    ms = g.cyclic_orders
    K = g.exponent_matrix
    total = np.zeros(g.phi, dtype=np.int64)
    for h in divisors(rad(lam)):
        mu = mobius(h)
        kh = 1
        trivial = np.ones(g.phi, dtype=bool)
        for i, m in enumerate(ms):
            gg = math.gcd(m, lam // h)
            kh *= gg
            trivial &= (K[:, i] * (m // gg)) % m == 0
        total += mu * kh * trivial
    return [Fraction(int(t), g.phi) for t in total]


def test_coefficient_bound_and_sign_up_to_2000():
    # the closed form (equal to the defining sum, see the tests above) keeps
    # |c| within 1/rho and carries the Moebius sign, over the full range
    for n in range(1, 2001):
        g = _group_cached(n)
        R = r_count(g.n)
        cs = _closed_form_coefficient_table(g)
        elem = g.elementary_mask
        orders = g.order_array
        for i, c in enumerate(cs):
            if not elem[i]:
                assert c == 0
                continue
            rr = rho(g.n, int(orders[i]))
            assert abs(c) <= Fraction(1, rr)
            assert c * rr * g.phi / R == mobius(int(orders[i]))


def test_orthogonality_nonprincipal_sum_zero():
    # numeric column sums over all units, tolerance far below 1e-9
    for nv in range(1, 2001):
        g = _group_cached(nv)
        if g.phi == 1:
            continue
        L = g.value_modulus
        W = np.array(g.weights, dtype=np.int64)
        X = g.exponent_matrix
        roots = np.exp(2j * np.pi * np.arange(L) / L)
        Kw = (g.exponent_matrix * W)[1:]
        for lo in range(0, Kw.shape[0], 512):
            T = Kw[lo : lo + 512] @ X.T % L
            sums = roots[T].sum(axis=1)
            assert np.abs(sums).max() < 1e-9, nv


def test_t_expansion_small():
    assert all(verify_t_expansion(n) for n in range(1, 101))


def test_t_expansion_numeric_crosscheck():
    # the same identity through floating character values, residual below 1e-9
    for n in range(1, 61):
        g = _group_cached(n)
        cs = [float(c) for c in g.coefficients()]
        for a in sorted(g.dlog_index):
            total = sum(c * ch.value(a) for c, ch in zip(cs, g.characters))
            expected = 1.0 if is_lambda_primitive_root(a, g.n) else 0.0
            assert abs(total - expected) < 1e-9


def test_b_sum_values():
    assert b_sum(1, 7) == 0
    assert b_sum(2, 9) == 0
    assert b_sum(5, 5) == Fraction(-1, 2)
    assert b_sum(10, 10) == Fraction(-31, 12)
    assert b_sum(20, 15) == Fraction(19, 60)


def test_b_sum_bounds():
    with pytest.raises(ValueError):
        b_sum(501, 10)
    with pytest.raises(ValueError):
        b_sum(10, 501)
    with pytest.raises(ValueError):
        b_sum(0, 10)


def test_b_sum_matches_complex_enumeration():
    for x, y in ((8, 12), (15, 9), (30, 30)):
        total = 0j
        for nv in range(1, x + 1):
            g = _group_cached(nv)
            for ch, c in zip(g.characters, g.coefficients()):
                if ch.is_principal or not ch.is_elementary:
                    continue
                s = sum(ch.value(a) for a in range(1, y + 1))
                total += float(c) * s
        assert abs(total - complex(float(b_sum(x, y)), 0)) < 1e-9


def test_coprime_count():
    assert coprime_count(10, factorize(1)) == 10
    assert coprime_count(10, factorize(6)) == 3  # 1, 5, 7
    assert coprime_count(100, factorize(30)) == sum(
        1 for a in range(1, 101) if math.gcd(a, 30) == 1
    )


def test_decomposition_examples():
    assert verify_decomposition(1, 10)
    assert verify_decomposition(10, 10)
    assert verify_decomposition(50, 30)


def test_indicator_values_match_t():
    for n in (1, 2, 12, 45):
        vals = indicator_values_via_characters(n, list(range(1, 31)))
        for a, v in zip(range(1, 31), vals):
            assert v == (1 if is_lambda_primitive_root(a, factorize(n)) else 0)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=3, max_value=400))
def test_group_caching_consistency(n):
    g1 = _group_cached(n)
    g2 = _group_cached(n)
    assert g1 is g2
    assert len(g1.characters) == g1.phi
