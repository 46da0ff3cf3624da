import math
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp

from charmeans._arith import primes_up_to
from charmeans.characters import admissible_moduli, distinct_S, set_S
from charmeans.errors import BudgetExceeded, DomainError
from charmeans.mean_values import (
    L1_CLOSED,
    S_total,
    char_sum_partial,
    compute_constant,
    euler_factor,
    euler_factor_closed,
    euler_product,
    l1_series,
    main_term_predict,
    max_window_sum,
    power_part,
    pv_bound,
    residue_prefactor,
    transition_scan,
)


def test_char_sum_examples():
    (one,) = set_S(1, 3)
    assert char_sum_partial(one, 10) == 10
    for chi in set_S(7, 3):
        assert char_sum_partial(chi, 10) == 0
        assert char_sum_partial(chi, 7) == 0


def test_char_sum_against_naive():
    for order in (3, 4):
        for n in admissible_moduli(120, order):
            for chi in set_S(n, order):
                for X in (1, 2.5, n - 1, 3 * n + 2):
                    ref = sum(chi(m) for m in range(1, math.floor(X) + 1))
                    assert abs(char_sum_partial(chi, X) - ref) < 1e-9


def test_S_total_examples():
    assert S_total(3, 10, 6).total == 10
    r = S_total(3, 10, 7)
    assert r.total == 10 and r.moduli_count == 2
    assert power_part(3, 10, 342) == 10
    pp = power_part(3, 100, 343)
    ref = 100 + sum(char_sum_partial(chi, 100) for chi in distinct_S(343, 3))
    assert pp == ref.real and abs(ref.imag) < 1e-9


@pytest.mark.parametrize("order", [3, 4])
def test_direct_equals_period(order):
    for X in (1, 37, 400):
        for Y in (1, 50, 300):
            d = S_total(order, X, Y, "direct")
            p = S_total(order, X, Y, "period")
            assert d.total_counts == p.total_counts
            assert d.total == p.total and abs(d.total.imag) <= 1e-9 * (1 + abs(d.total.real))


@pytest.mark.parametrize("distinct", [True, False])
def test_additivity_in_Y(distinct):
    X, Y1, Y2 = 300, 120, 400
    a = S_total(3, X, Y1, distinct=distinct).total
    b = S_total(3, X, Y2, distinct=distinct).total
    fam = distinct_S if distinct else set_S
    middle = sum(char_sum_partial(chi, X) for n in admissible_moduli(Y2, 3) if n > Y1 for chi in fam(n, 3))
    assert abs((b - a) - middle) < 1e-9


def test_decomposition_and_scan():
    reps = transition_scan(3, 2000, [50, 500, 100])
    assert [r.Y for r in reps] == [50, 100, 500]
    assert [r.moduli_count for r in reps] == sorted(r.moduli_count for r in reps)
    for r in reps:
        assert r.total == r.power_part + r.remainder
        ref = S_total(3, 2000, r.Y)
        assert r.total_counts == ref.total_counts and r.power_counts == ref.power_counts


def test_scan_truncates_on_budget():
    reps = transition_scan(3, 100, [100, 1000, 5000], budget=20000)
    assert reps[-1].truncated and not any(r.truncated for r in reps[:-1])
    full = S_total(3, 100, reps[-1].Y)
    assert reps[-1].moduli_count < full.moduli_count


def test_budget_and_domain_errors():
    with pytest.raises(BudgetExceeded):
        S_total(3, 10**6, 10**6, budget=10**6)
    with pytest.raises(DomainError):
        S_total(5, 10, 10)
    with pytest.raises(DomainError):
        S_total(3, 10, 10, method="fast")
    with pytest.raises(DomainError):
        main_term_predict(3, 10, 1)


def test_parallel_matches_sequential():
    seq = S_total(4, 3000, 2000, threads=1)
    par = S_total(4, 3000, 2000, threads=2)
    assert seq.as_dict() == par.as_dict()


def test_report_dict_is_deterministic():
    d = S_total(3, 50, 50).as_dict()
    assert d["elapsed_ms"] is None
    assert S_total(3, 50, 50).as_dict(timing=True)["elapsed_ms"] >= 0


# Euler factors -------------------------------------------------------------

x_, p_, c0_, c1_ = sp.symbols("x p c0 c1")
PRODUCT = (1 - c0_ * x_) * (1 - c1_ * x_) * (1 + (c0_ + c1_) / 2 * (1 - 1 / p_) * x_ / (1 - x_)) ** 2


def _chars(order, p):
    c0 = 0 if p % order == 0 or (order == 4 and p % 2 == 0) else 1
    c1 = {1: 1, order - 1: -1}.get(p % order, 0)
    return c0, c1


@pytest.mark.parametrize("order", [3, 4])
@pytest.mark.parametrize("s", [0.6, 0.75, 1.0, 1.5, 3.0])
def test_euler_factor_matches_product_form(order, s):
    for p in [2, 3, 5, 7, 11, 13, 97, 101, 1009]:
        c0, c1 = _chars(order, p)
        ref = float(PRODUCT.subs({c0_: c0, c1_: c1, p_: p, x_: sp.Float(p) ** -s}))
        assert euler_factor(p, s, order) == pytest.approx(ref, rel=1e-12)


def test_euler_factor_examples():
    for p in (2, 5, 11):
        assert euler_factor(p, 1, 3) == pytest.approx(1 - 1 / p**2, rel=1e-14)
    assert euler_factor(3, 1, 3) == 1
    for p in (7, 13):
        assert euler_factor(p, 1, 3) == pytest.approx((1 - 1 / p**2) ** 2, rel=1e-14)
    with pytest.raises(DomainError):
        euler_factor(5, 0.5, 3)


@pytest.mark.parametrize("order", [3, 4])
def test_verbatim_vs_closed_per_prime(order):
    for p in primes_up_to(10**4).tolist():
        assert abs(euler_factor(p, 1.0, order) - euler_factor_closed(p, order)) <= 1e-12


def test_products_agree():
    for order in (3, 4):
        a = euler_product(order, 10**5)
        b = euler_product(order, 10**5, closed=True)
        assert abs(a - b) < 1e-11


def test_l1_closed_forms():
    for order in (3, 4):
        assert abs(l1_series(order) - L1_CLOSED[order]) < 1e-10


def test_prefactors_are_exact():
    assert residue_prefactor(3) == Fraction(2, 9)
    assert residue_prefactor(4) == Fraction(1, 8)


def test_constants():
    for order in (3, 4):
        lo, hi = compute_constant(order, 10**4), compute_constant(order, 10**5)
        assert lo.value > 0 and hi.value > 0
        assert hi.tail_bound < lo.tail_bound
        assert abs(lo.value - hi.value) / hi.value < 1e-4
        inner = float(residue_prefactor(order)) * L1_CLOSED[order] * hi.euler_product
        assert hi.value == pytest.approx(order / math.sqrt(math.pi) * math.sqrt(inner))
    with pytest.raises(DomainError):
        compute_constant(3, 50)


# Polya-Vinogradov ----------------------------------------------------------


def _window_brute(chi):
    n = chi.modulus
    z = np.array([chi(m) for m in range(1, 2 * n + 1)])
    best = 0.0
    for M in range(n):
        best = max(best, float(np.abs(np.cumsum(z[M : M + n])).max()))
    return best


@pytest.mark.parametrize("order", [3, 4])
def test_window_max_matches_brute_force(order):
    for n in admissible_moduli(200, order)[1:]:
        for chi in set_S(n, order):
            if chi.is_principal():
                continue
            assert max_window_sum(chi) == pytest.approx(_window_brute(chi), abs=1e-9)
            assert max_window_sum(chi) <= pv_bound(n)


def test_window_needs_zero_period_sum():
    with pytest.raises(DomainError):
        max_window_sum(set_S(1, 3)[0])
