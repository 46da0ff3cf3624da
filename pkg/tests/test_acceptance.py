"""Acceptance criteria, each at its stated range and tolerance.

A line ``PASS criterion k: ...`` or ``FAIL criterion k: ...`` is printed per
criterion in the pytest terminal summary.
"""

import math
import time
import warnings
from functools import lru_cache

import numpy as np

from charmeans import verify
from charmeans._arith import primes_up_to
from charmeans.mean_values import (
    L1_CLOSED,
    S_total,
    _chi_mod,
    _local_factor,
    compute_constant,
    euler_factor_closed,
    l1_series,
    transition_scan,
)


def _summary(checks) -> str:
    bad = verify.failures(checks)
    worst = max((c.discrepancy for c in checks), default=0.0)
    return f"{len(checks)} checks, {len(bad)} failures, max discrepancy {worst:.3g}"


@lru_cache(maxsize=None)
def _gauss_suite(order):
    return tuple(verify.gauss_identity_suite(order, max_norm=2000, twist_norm=500))


def test_criterion_01_reciprocity(record):
    parts, ok = [], True
    for order in (3, 4):
        t0 = time.perf_counter()
        checks = verify.reciprocity_suite(order, 1000)
        dt = time.perf_counter() - t0
        fine = not verify.failures(checks) and dt < 30
        ok &= fine
        parts.append(f"order {order}: {_summary(checks)}, {dt:.1f}s")
    record(1, ok, "; ".join(parts))
    assert ok


def test_criterion_02_supplement(record):
    checks = verify.supplement_suite(1000, 50)
    ok = not verify.failures(checks)
    record(2, ok, _summary(checks))
    assert ok


def test_criterion_03_gauss_modulus(record):
    parts, ok = [], True
    for order in (3, 4):
        checks = [c for c in _gauss_suite(order) if c.identity == "g_modulus"]
        ok &= bool(checks) and not verify.failures(checks)
        parts.append(f"order {order}: {_summary(checks)}")
    record(3, ok, "; ".join(parts))
    assert ok


def test_criterion_04_gauss_identities(record):
    parts, ok = [], True
    for order in (3, 4):
        checks = [c for c in _gauss_suite(order) if c.identity != "g_modulus"]
        names = {c.identity for c in checks}
        want = {"g_twist", "g_squarefree_bound", "g_product" if order == 3 else "g4_product"}
        ok &= want <= names and not verify.failures(checks)
        parts.append(f"order {order} {sorted(names)}: {_summary(checks)}")
    record(4, ok, "; ".join(parts))
    assert ok


def test_criterion_05_tau_relations(record):
    parts, ok = [], True
    for order in (3, 4):
        checks = verify.tau_relation_suite(order, 300, rs=(0, 1, 2, 3))
        ok &= bool(checks) and not verify.failures(checks)
        parts.append(f"order {order}: {_summary(checks)}")
    record(5, ok, "; ".join(parts))
    assert ok


def test_criterion_06_g0(record):
    checks = verify.g0_suite(3, 1000)
    ok = bool(checks) and not verify.failures(checks)
    record(6, ok, _summary(checks))
    assert ok


def test_criterion_07_poisson(record):
    parts, ok = [], True
    for order in (3, 4):
        checks = verify.poisson_suite(order, 101, Ms=(1, 2.5, 7))
        ok &= bool(checks) and not verify.failures(checks)
        parts.append(f"order {order}: {_summary(checks)}")
    record(7, ok, "; ".join(parts))
    assert ok


def test_criterion_08_bijection(record):
    parts, ok = [], True
    for order in (3, 4):
        checks = verify.bijection_suite(order, max_prime=500, max_n=5000)
        primes = sum(c.identity == "bijection" for c in checks)
        ok &= primes > 0 and not verify.failures(checks)
        parts.append(f"order {order}: {primes} primes, {_summary(checks)}")
    record(8, ok, "; ".join(parts))
    assert ok


def test_criterion_09_sum_oracle(record):
    ok, worst_im, cases = True, 0.0, 0
    for order in (3, 4):
        for X in (10, 100, 1000):
            for Y in (10, 100, 500):
                for distinct in (True, False):
                    d = S_total(order, X, Y, "direct", distinct=distinct)
                    p = S_total(order, X, Y, "period", distinct=distinct)
                    ok &= d.total_counts == p.total_counts and d.total == p.total
                    worst_im = max(worst_im, abs(d.total.imag), abs(p.total.imag))
                    cases += 1
    ok &= worst_im <= 1e-9
    example = S_total(3, 10, 7).total
    ok &= example == 10
    record(9, ok, f"{cases} grid cases exact, max |Im| {worst_im:.3g}, S_total(3,10,7) = {example.real:g}")
    assert ok


def test_criterion_10_constants(record):
    t0 = time.perf_counter()
    parts, ok = [], True
    for order in (3, 4):
        c5 = compute_constant(order, 10**5)
        c6 = compute_constant(order, 10**6)
        stab = abs(c5.value - c6.value) / c6.value
        ps = primes_up_to(10**6).astype(float)
        chi0, chi1 = _chi_mod(order, ps)
        verbatim = _local_factor(ps, 1.0, chi0, chi1)
        closed = np.array([euler_factor_closed(int(p), order) for p in ps])
        per_prime = float(np.abs(verbatim - closed).max())
        l1_err = abs(l1_series(order) - L1_CLOSED[order])
        fine = c5.value > 0 and c6.value > 0 and stab < 1e-4 and per_prime <= 1e-12 and l1_err <= 1e-10
        ok &= fine
        parts.append(
            f"C{order - 2} = {c6.value:.9f}, stability {stab:.2e}, per-prime {per_prime:.1e}, L(1) err {l1_err:.1e}"
        )
    dt = time.perf_counter() - t0
    ok &= dt < 60
    record(10, ok, "; ".join(parts) + f"; {dt:.1f}s")
    assert ok


def test_criterion_11_transition_scan(record):
    """Diagnostic: the ratio band only warns; decomposition, realness and remainder bound are asserted."""
    t0 = time.perf_counter()
    reps = transition_scan(3, 10**4, [10**2, 10**3, 10**4], threads=4)
    dt = time.perf_counter() - t0
    ok = len(reps) == 3 and not any(r.truncated for r in reps)
    parts = []
    for r in reps:
        bound = 10 * r.Y**1.5 * math.log(r.Y + 2)
        ok &= r.total == r.power_part + r.remainder
        ok &= abs(r.total.imag) <= 1e-9 * (1 + abs(r.total.real))
        ok &= abs(r.remainder) <= bound
        parts.append(f"Y={r.Y:g}: total {r.total.real:g}, |rem|/bound {abs(r.remainder) / bound:.2e}, ratio {r.ratio:.3f}")
    ratio = reps[-1].ratio
    in_band = 0.2 <= ratio <= 5
    if not in_band:
        warnings.warn(f"total/predictor = {ratio:.3f} at X = Y = 1e4 is outside [0.2, 5]", stacklevel=1)
    record(11, ok, "; ".join(parts) + f"; ratio band {'ok' if in_band else 'WARNING'}; {dt:.1f}s")
    assert ok
