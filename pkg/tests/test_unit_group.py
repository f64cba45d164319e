import math

import numpy as np
import pytest

from lambdaroots.arith import carmichael_lambda, euler_phi, factored_range, factorize, primes_upto, rad
from lambdaroots.unit_group import (
    LambdaRootCount,
    count_roots,
    decompose,
    e_membership,
    e_subgroup,
    e_subgroup_exponent,
    is_lambda_primitive_root,
    r_count,
    r_count_bruteforce,
)


def test_decompose_examples():
    d8 = decompose(8)
    assert d8.cyclic_orders == (2, 2) and d8.lam == 2 and d8.delta == {2: 2}
    d15 = decompose(15)
    assert d15.cyclic_orders == (2, 4) and d15.lam == 4 and d15.delta == {2: 1}
    d7 = decompose(7)
    assert d7.cyclic_orders == (6,) and d7.delta == {2: 1, 3: 1}
    assert decompose(1).cyclic_orders == () and decompose(1).lam == 1
    assert decompose(2).cyclic_orders == () and decompose(2).lam == 1


def test_structure_invariants_up_to_1e4():
    for f in factored_range(10**4):
        s = decompose(f)
        assert math.prod(s.cyclic_orders) == euler_phi(f)
        assert math.lcm(*s.cyclic_orders) if s.cyclic_orders else 1 == s.lam
        assert s.lam == carmichael_lambda(f)
        # delta counts the factors whose q-part is maximal; all at least 1
        assert all(d >= 1 for d in s.delta.values())


def test_r_count_examples():
    assert r_count(7) == 2  # phi(6)
    assert r_count(8) == 3
    assert r_count(1) == 1
    assert r_count(2) == 1
    assert r_count(5) == 2
    assert r_count(15) == 4


def test_r_count_bruteforce_examples():
    assert r_count_bruteforce(5) == 2  # residues 2 and 3
    assert r_count_bruteforce(2) == 1
    assert r_count_bruteforce(15) == 4  # residues 2, 7, 8, 13


def test_r_count_matches_bruteforce_small():
    for f in factored_range(300):
        assert r_count(f) == r_count_bruteforce(f)


def test_r_count_prime_specialization_small():
    for p in primes_upto(500):
        assert r_count(factorize(p)) == euler_phi(factorize(p - 1))


def test_r_count_lower_bound_small():
    for f in factored_range(500):
        assert r_count(f) >= euler_phi(factorize(euler_phi(f)))


def test_bruteforce_bound():
    with pytest.raises(ValueError):
        r_count_bruteforce(10**6 + 1)


def test_count_roots_consistency_guard():
    lr = count_roots(100)
    assert lr.r_closed == lr.r_brute
    with pytest.raises(ValueError):
        LambdaRootCount(factorize(8), r_closed=3, r_brute=2)


def test_is_lambda_primitive_root_examples():
    assert is_lambda_primitive_root(2, 5)
    assert not is_lambda_primitive_root(4, 5)
    for n in (3, 4, 5, 12, 100):
        assert not is_lambda_primitive_root(1, n)
    assert is_lambda_primitive_root(1, 1)
    assert is_lambda_primitive_root(1, 2)
    assert not is_lambda_primitive_root(6, 9)  # non-unit


def test_e_subgroup_examples():
    assert e_subgroup_exponent(5) == 2
    assert e_subgroup(5) == [1, 4]
    assert e_subgroup_exponent(8) == 1
    assert e_subgroup(8) == [1]
    # prime with squarefree p-1: exponent collapses to 1
    assert e_subgroup_exponent(7) == 1
    assert e_subgroup(7) == [1]
    with pytest.raises(ValueError):
        e_membership(5, 10)


def test_e_subgroup_is_subgroup_up_to_2000():
    for f in factored_range(2000):
        nv = f.value
        E = e_subgroup(f)
        assert 1 % nv in [e % nv for e in E]
        arr = np.array(E, dtype=np.int64)
        members = set((arr % nv).tolist())
        products = set(np.unique(np.outer(arr, arr).ravel() % nv).tolist())
        assert products <= members


def test_no_lambda_primitive_root_in_e_subgroup():
    for f in factored_range(2000):
        lam = carmichael_lambda(f)
        if lam > e_subgroup_exponent(f):
            assert not any(is_lambda_primitive_root(a, f) for a in e_subgroup(f))


def test_e_exponent_uses_radical_of_lambda():
    # lambda(n)/rad(n) is not an integer in general; the exponent divides lambda
    for f in factored_range(500):
        exp = e_subgroup_exponent(f)
        lam = carmichael_lambda(f)
        assert lam % exp == 0
        assert lam // exp == rad(lam)
