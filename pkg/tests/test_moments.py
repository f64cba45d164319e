import json
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lambdaroots.arith import factorize, multiplicative_order, primes_upto
from lambdaroots.moments import (
    MomentConfig,
    build_report,
    corollary_density,
    mean_sum,
    n_count,
    p_count,
    phi_phi_mean,
    phi_phi_sum,
    second_moment,
    second_moment_split,
    sigma1_direct,
    sigma1_gcd_form,
)
from lambdaroots.unit_group import is_lambda_primitive_root


def test_n_count_values():
    # frozen by the enumeration oracle: qualifying n for a=2, x=10 are 1, 3, 5, 9
    assert n_count(2, 10) == 4
    # a=1 counts exactly the moduli with trivial exponent, which are 1 and 2
    assert n_count(1, 10) == 2
    assert n_count(7, 1) == 1
    assert n_count(123, 1) == 1


def test_n_count_matches_indicator():
    for a in (1, 2, 3, 10):
        for x in (1, 7, 50):
            direct = sum(
                1 for n in range(1, x + 1) if is_lambda_primitive_root(a, factorize(n))
            )
            assert n_count(a, x) == direct


def test_p_count_values():
    assert p_count(2, 20) == 5  # 3, 5, 11, 13, 19
    assert p_count(1, 100) == 1  # only p = 2
    assert p_count(4, 5) == 0
    assert p_count(4, 100) == 0  # squares are never primitive roots for odd p


def test_prime_restriction_indicator_agreement():
    # on prime moduli the maximal-order test is the classical primitive-root test
    for p in primes_upto(500):
        f = factorize(p)
        for a in range(1, 101):
            if a % p == 0:
                assert not is_lambda_primitive_root(a, f)
                continue
            assert is_lambda_primitive_root(a, f) == (
                multiplicative_order(a, f) == p - 1
            )


def test_mean_sum_values():
    assert mean_sum(1) == 1
    assert mean_sum(3) == Fraction(11, 6)  # R(1..3) = 1, 1, 1
    assert mean_sum(10) == Fraction(9407, 2520)
    assert mean_sum(10, include_n_equals_1=False) == Fraction(9407, 2520) - 1


def test_second_moment_values():
    assert second_moment(MomentConfig(x=1, y=5)) == 0
    assert second_moment(MomentConfig(x=10, y=10)) == Fraction(32414089, 6350400)


def test_second_moment_worker_determinism():
    cfg = MomentConfig(x=40, y=40)
    assert second_moment(cfg, workers=1) == second_moment(cfg, workers=3)


def test_second_moment_budget():
    with pytest.raises(ValueError):
        second_moment(MomentConfig(x=10**5, y=10**4))


def test_moment_config_validation():
    with pytest.raises(ValueError):
        MomentConfig(x=0, y=5)


def test_sigma1_values():
    assert sigma1_direct(1) == 0
    assert sigma1_direct(2) == Fraction(1, 4)
    assert sigma1_gcd_form(1) == 0
    assert sigma1_gcd_form(2) == Fraction(1, 4)
    assert sigma1_direct(10) == Fraction(16595921, 6350400)


def test_sigma1_forms_agree():
    assert sigma1_direct(50) == sigma1_gcd_form(50)
    for x in range(1, 121):
        assert sigma1_direct(x) == sigma1_gcd_form(x)


def test_sigma1_direct_bound():
    with pytest.raises(ValueError):
        sigma1_direct(2001)


def test_sigma1_nonnegative():
    for x in (1, 2, 5, 17, 60):
        assert sigma1_direct(x) >= 0


@given(st.integers(min_value=1, max_value=3000), st.integers(min_value=1, max_value=3000))
def test_sigma1_termwise_factor_nonnegative(n1, n2):
    g = math.gcd(n1, n2)
    from lambdaroots.arith import euler_phi

    assert Fraction(g, euler_phi(factorize(g))) >= 1


def test_phi_phi_values():
    assert phi_phi_sum(1) == 1
    assert phi_phi_sum(10) == 15
    assert phi_phi_mean(10) == Fraction(2273, 630)


def test_mean_dominates_phi_phi_mean():
    # termwise R(n) >= phi(phi(n)), so the exact means compare
    for x in (10, 137, 1000, 5000):
        assert mean_sum(x) >= phi_phi_mean(x)


def test_corollary_density_values():
    assert corollary_density(1) == 1
    assert corollary_density(2) == Fraction(1, 3)
    assert corollary_density(6) == Fraction(1, 12)
    assert corollary_density(30) == Fraction(1, 30) * Fraction(2, 3) * Fraction(3, 4) * Fraction(5, 6)


@pytest.mark.parametrize("x,y", [(10, 10), (20, 15), (35, 22)])
def test_second_moment_split_exact(x, y):
    split = second_moment_split(x, y)
    assert split.balanced
    assert split.total == split.sigma1_term + split.sigma2 + split.error


def test_second_moment_split_at_cap():
    split = second_moment_split(100, 100)
    assert split.balanced


def test_report_json_fields():
    rep = build_report(MomentConfig(x=20, y=20))
    d = rep.to_json_dict()
    assert list(d) == [
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
    ]
    assert isinstance(d["mean_num"], str) and isinstance(d["m2_den"], str)
    json.dumps(d)  # serializable
    assert Fraction(int(d["sigma1_num"]), int(d["sigma1_den"])) == sigma1_gcd_form(20)


def test_diagnostics_threshold():
    assert build_report(MomentConfig(x=15, y=5)).diagnostics == {}
    diags = build_report(MomentConfig(x=16, y=5)).diagnostics
    assert diags and all(v > 0 and math.isfinite(v) for v in diags.values())
