"""Verification suites behind the `verify` CLI command.

Each suite checks one exact identity or regression over a capped range
and reports a single deterministic summary line.  Sweeps shard over
contiguous ranges and merge in shard order, so the report text is
byte-identical for any worker count (no timings, no worker counts in the
output).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import divisors, euler_phi, factorize, primes_upto, rad
from .characters import elementary_order_counts, rho, verify_decomposition, verify_t_expansion
from .constants import (
    artin_constant,
    quintic_factor_forms_equal,
    rho1_root,
    stephens_constant,
    theorem12_constant,
    theorem13_constant,
)
from .moments import sigma1_direct, sigma1_gcd_form
from .parallel import parallel_map, split_range
from .unit_group import decompose, r_count, r_count_bruteforce

DEFAULT_CAPS = {
    "rcount-oracle": 5000,
    "rcount-primes": 10000,
    "t-expansion": 500,
    "decomposition": 100,
    "sigma1-forms": 300,
    "rho-counts": 2000,
    "lower-bound": 5000,
}

SUITE_NAMES = (
    "rcount-oracle",
    "t-expansion",
    "decomposition",
    "sigma1-forms",
    "rho-counts",
    "lower-bound",
    "constants-regression",
)

DECOMPOSITION_GRID = (1, 5, 10, 25, 50, 100)


@dataclass(frozen=True)
class VerifyPlan:
    suites: tuple[str, ...] = SUITE_NAMES
    caps: dict = field(default_factory=lambda: dict(DEFAULT_CAPS))
    parallelism: int = 1

    def __post_init__(self):
        for s in self.suites:
            if s not in SUITE_NAMES:
                raise ValueError(f"unknown suite {s!r}; choose from {SUITE_NAMES}")
        for name, cap in self.caps.items():
            if name in DEFAULT_CAPS and cap > DEFAULT_CAPS[name]:
                raise ValueError(
                    f"cap {cap} for {name} exceeds the documented bound {DEFAULT_CAPS[name]}"
                )


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    line: str


def _shards(cap: int, workers: int, lo: int = 1) -> list[tuple[int, int]]:
    return split_range(lo, cap, max(workers, 1) * 4)


# ---------------------------------------------------------------------------
# shard workers (module level, picklable)
# ---------------------------------------------------------------------------


def _rcount_shard(bounds: tuple[int, int]) -> tuple[int, tuple[int, ...]]:
    lo, hi = bounds
    bad = []
    for n in range(lo, hi + 1):
        f = factorize(n)
        if r_count(f) != r_count_bruteforce(f):
            bad.append(n)
    return hi - lo + 1, tuple(bad)


def _texp_shard(bounds: tuple[int, int]) -> tuple[int, tuple[int, ...]]:
    lo, hi = bounds
    bad = tuple(n for n in range(lo, hi + 1) if not verify_t_expansion(n))
    return hi - lo + 1, bad


def _sigma1_shard(bounds: tuple[int, int]) -> tuple[int, tuple[int, ...]]:
    lo, hi = bounds
    bad = tuple(x for x in range(lo, hi + 1) if sigma1_direct(x) != sigma1_gcd_form(x))
    return hi - lo + 1, bad


def _rho_shard(bounds: tuple[int, int]) -> tuple[int, tuple[int, ...]]:
    lo, hi = bounds
    bad = []
    for n in range(lo, hi + 1):
        f = factorize(n)
        counts = elementary_order_counts(f)
        lam = decompose(f).lam
        expected_orders = set(divisors(rad(lam)))
        if set(counts) != expected_orders:
            bad.append(n)
            continue
        if any(counts[h] != rho(f, h) for h in expected_orders):
            bad.append(n)
    return hi - lo + 1, tuple(bad)


def _lower_shard(bounds: tuple[int, int]) -> tuple[int, tuple[int, ...]]:
    lo, hi = bounds
    bad = []
    for n in range(lo, hi + 1):
        f = factorize(n)
        if r_count(f) < euler_phi(factorize(euler_phi(f))):
            bad.append(n)
    return hi - lo + 1, tuple(bad)


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def _merge(parts: list[tuple[int, tuple[int, ...]]]) -> tuple[int, list[int]]:
    checked = sum(c for c, _ in parts)
    bad: list[int] = []
    for _, b in parts:
        bad.extend(b)
    return checked, bad


def suite_rcount_oracle(caps: dict, workers: int) -> SuiteResult:
    cap = caps.get("rcount-oracle", DEFAULT_CAPS["rcount-oracle"])
    prime_cap = caps.get("rcount-primes", DEFAULT_CAPS["rcount-primes"])
    checked, bad = _merge(parallel_map(_rcount_shard, _shards(cap, workers), workers))
    prime_bad = [p for p in primes_upto(prime_cap) if r_count(factorize(p)) != euler_phi(factorize(p - 1))]
    ok = not bad and not prime_bad
    line = (
        f"suite rcount-oracle: closed=bruteforce on n<={cap} ({checked} checked, "
        f"{len(bad)} mismatches); R(p)=phi(p-1) on primes<={prime_cap} "
        f"({len(prime_bad)} mismatches): {'PASS' if ok else 'FAIL'}"
    )
    return SuiteResult("rcount-oracle", ok, line)


def suite_t_expansion(caps: dict, workers: int) -> SuiteResult:
    cap = caps.get("t-expansion", DEFAULT_CAPS["t-expansion"])
    checked, bad = _merge(parallel_map(_texp_shard, _shards(cap, workers), workers))
    ok = not bad
    line = (
        f"suite t-expansion: exact character expansion of the indicator on n<={cap} "
        f"({checked} checked, {len(bad)} failures): {'PASS' if ok else 'FAIL'}"
    )
    return SuiteResult("t-expansion", ok, line)


def suite_decomposition(caps: dict, workers: int) -> SuiteResult:
    cap = caps.get("decomposition", DEFAULT_CAPS["decomposition"])
    grid = [v for v in DECOMPOSITION_GRID if v <= cap]
    bad = [(x, y) for x in grid for y in grid if not verify_decomposition(x, y)]
    ok = not bad
    line = (
        f"suite decomposition: exact count identity on the {len(grid)}x{len(grid)} grid "
        f"up to {max(grid)} ({len(bad)} failures): {'PASS' if ok else 'FAIL'}"
    )
    return SuiteResult("decomposition", ok, line)


def suite_sigma1_forms(caps: dict, workers: int) -> SuiteResult:
    cap = caps.get("sigma1-forms", DEFAULT_CAPS["sigma1-forms"])
    checked, bad = _merge(parallel_map(_sigma1_shard, _shards(cap, workers), workers))
    ok = not bad
    line = (
        f"suite sigma1-forms: direct double sum equals gcd-resummed form for x<={cap} "
        f"({checked} checked, {len(bad)} mismatches): {'PASS' if ok else 'FAIL'}"
    )
    return SuiteResult("sigma1-forms", ok, line)


def suite_rho_counts(caps: dict, workers: int) -> SuiteResult:
    cap = caps.get("rho-counts", DEFAULT_CAPS["rho-counts"])
    checked, bad = _merge(parallel_map(_rho_shard, _shards(cap, workers), workers))
    ok = not bad
    line = (
        f"suite rho-counts: elementary character order histogram matches the "
        f"product formula for n<={cap} ({checked} checked, {len(bad)} mismatches): "
        f"{'PASS' if ok else 'FAIL'}"
    )
    return SuiteResult("rho-counts", ok, line)


def suite_lower_bound(caps: dict, workers: int) -> SuiteResult:
    cap = caps.get("lower-bound", DEFAULT_CAPS["lower-bound"])
    checked, bad = _merge(parallel_map(_lower_shard, _shards(cap, workers), workers))
    ok = not bad
    line = (
        f"suite lower-bound: R(n) >= phi(phi(n)) for n<={cap} "
        f"({checked} checked, {len(bad)} violations): {'PASS' if ok else 'FAIL'}"
    )
    return SuiteResult("lower-bound", ok, line)


def suite_constants_regression(caps: dict, workers: int) -> SuiteResult:
    failures = []
    t12 = theorem12_constant(6)
    if abs(float(t12) - 0.341326) >= 5e-7:
        failures.append("theorem12")
    t13 = theorem13_constant(6)
    if abs(float(t13) - 0.003692) >= 5e-6:
        failures.append("theorem13")
    root = rho1_root(1e-7)
    if abs(root - 3.4199057) >= 1e-6:
        failures.append("rho1")
    for name, fn in (("artin", artin_constant), ("stephens", stephens_constant)):
        v1 = fn(10, prime_cutoff=64)
        v2 = fn(10, prime_cutoff=128)
        if abs(float(v1.mpf() - v2.mpf())) >= 1e-10:
            failures.append(f"{name}-stability")
    if not all(quintic_factor_forms_equal(p) for p in primes_upto(100)):
        failures.append("factor-forms")
    ok = not failures
    line = (
        f"suite constants-regression: 0.341326 / 0.003692 / 3.4199057 regressions, "
        f"10-digit cutoff stability, factor-form identity p<=100 "
        f"(failed: {failures if failures else 'none'}): {'PASS' if ok else 'FAIL'}"
    )
    return SuiteResult("constants-regression", ok, line)


_SUITE_FNS = {
    "rcount-oracle": suite_rcount_oracle,
    "t-expansion": suite_t_expansion,
    "decomposition": suite_decomposition,
    "sigma1-forms": suite_sigma1_forms,
    "rho-counts": suite_rho_counts,
    "lower-bound": suite_lower_bound,
    "constants-regression": suite_constants_regression,
}


def run_plan(plan: VerifyPlan) -> tuple[bool, str]:
    """Run the requested suites; returns (all passed, report text)."""
    results = [_SUITE_FNS[name](plan.caps, plan.parallelism) for name in plan.suites]
    lines = [r.line for r in results]
    passed = sum(1 for r in results if r.passed)
    lines.append(f"verify: {passed}/{len(results)} suites passed")
    return passed == len(results), "\n".join(lines) + "\n"
