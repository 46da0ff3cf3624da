"""Exhaustive identity suites.

Each suite returns a list of ``Check`` rows, one per identity instance;
the CLI prints them as CSV and the acceptance tests assert on them.
"""

from __future__ import annotations

import itertools
import math
from typing import NamedTuple

import numpy as np

from . import _quadratic as Q
from ._arith import factor_int, is_perfect_power, primes_up_to
from .characters import (
    admissible_moduli,
    character_from_q,
    enumerate_q,
    primitive_chars_dlog,
    ring_for,
    root_of_unity,
    set_S,
)
from .eisenstein import SQRT_MINUS_3
from .gauss_sums import g_symbol, g_symbol_many, poisson_discrepancy, tau_char
from .gaussian import GaussInt, lambda0
from .mean_values import max_window_sum, pv_bound

GAUSS_TOL = 1e-8


class Check(NamedTuple):
    identity: str
    params: str
    discrepancy: float
    passed: bool


def _exp_check(identity, params, lhs, rhs) -> Check:
    ok = lhs == rhs
    return Check(identity, params, 0.0 if ok else 1.0, ok)


def _num_check(identity, params, err, tol) -> Check:
    return Check(identity, params, float(err), bool(err <= tol))


def failures(checks) -> list[Check]:
    return [c for c in checks if not c.passed]


# ---------------------------------------------------------------------------


def reciprocity_suite(order: int, max_norm: int = 1000) -> list[Check]:
    """(m/n) = (n/m) (cubic) or with the quartic sign, all coprime primary pairs."""
    cls = ring_for(order)
    elems = Q.primary_elements(cls, max_norm)
    out = []
    for m, n in itertools.combinations(elems, 2):
        mn = Q.residue_symbol(m, n, cls)
        nm = Q.residue_symbol(n, m, cls)
        if mn is None or nm is None:
            if (mn is None) != (nm is None):
                out.append(Check("coprimality", f"{m};{n}", 1.0, False))
            continue
        if order == 4:
            sign = ((n.norm() - 1) // 4) * ((m.norm() - 1) // 4) % 2
            nm = (nm + 2 * sign) % 4
        out.append(_exp_check(f"reciprocity{order}", f"{m};{n}", mn, nm))
    return out


def supplement_suite(max_norm: int = 1000, rational_bound: int = 50) -> list[Check]:
    """(i/n)_4 = i**((1-a)/2) and (b/a)_4 = 1 for rational (a, 2b) = 1."""
    out = []
    for n in Q.primary_elements(GaussInt, max_norm):
        out.append(_exp_check("supplement_i", str(n), Q.residue_symbol(GaussInt(0, 1), n, GaussInt), ((1 - n.a) // 2) % 4))
        sgn = (-1) ** (((n.norm() - 1) // 4) % 2)
        ok = n.a % 4 == sgn % 4 and n.b % 4 == (1 - sgn) % 4
        out.append(Check("primary_ab", str(n), 0.0 if ok else 1.0, ok))
    R = rational_bound
    for a in range(-R, R + 1):
        if a % 2 == 0:
            continue
        for b in range(-R, R + 1):
            if math.gcd(a, 2 * b) != 1:
                continue
            out.append(_exp_check("rational_entries", f"{b};{a}", Q.residue_symbol(b, a, GaussInt), 0))
    return out


def lambda0_suite(max_norm: int = 2000) -> list[Check]:
    """(conj q / q)_4 = (-2/q)_4 * lambda0(q) for primary q without rational prime divisor."""
    out = []
    for q in Q.primary_elements(GaussInt, max_norm):
        if q.norm() == 1 or Q.has_rational_prime_divisor(q):
            continue
        lhs = Q.residue_symbol(q.conj(), q, GaussInt)
        rhs = (Q.residue_symbol(-2, q, GaussInt) + (0 if lambda0(q) == 1 else 2)) % 4
        out.append(_exp_check("conj_over_q", str(q), lhs, rhs))
    return out


# ---------------------------------------------------------------------------


def _is_power(n: Q.QuadInt, k: int) -> bool:
    return all(e % k == 0 for _, e in Q.factor_primary(n).factors)


def _coprime(x: Q.QuadInt, y: Q.QuadInt) -> bool:
    if x.is_zero():
        return y.is_unit()
    return Q.gcd(x, y).is_unit()


def gauss_identity_suite(order: int, max_norm: int = 2000, twist_norm: int = 500) -> list[Check]:
    """|g(1, prime)|, multiplicativity in r, product formula, squarefree bound."""
    cls = ring_for(order)
    k = order
    elems = [n for n in Q.primary_elements(cls, max_norm) if not n.is_unit()]
    out = []

    for pi in elems:
        fac = Q.factor_primary(pi).factors
        if len(fac) == 1 and fac[0][1] == 1:
            N = pi.norm()
            err = abs(abs(g_symbol(1, pi)) - math.sqrt(N))
            out.append(_num_check("g_modulus", str(pi), err, GAUSS_TOL * math.sqrt(N)))

    for n in elems:
        if n.norm() > twist_norm:
            continue
        N = n.norm()
        rs = Q.residues_mod(n)
        svals = [s for s in rs if Q.residue_symbol(s, n, cls) is not None]
        for r in (1, 2):
            base = g_symbol(r, n)
            vals = g_symbol_many([s * r for s in svals], n)
            for s, val in zip(svals, vals):
                chi_s = root_of_unity(k, -Q.residue_symbol(s, n, cls))
                err = abs(val - chi_s * base)
                out.append(_num_check("g_twist", f"r={r};s={s};n={n}", err, GAUSS_TOL * math.sqrt(N)))

    ks = (0, 1, 2, cls(1, 1))
    cache: dict = {}

    def gvec(n):
        if n not in cache:
            cache[n] = g_symbol_many(ks, n)
        return cache[n]

    name = "g_product" if order == 3 else "g4_product"
    for n1 in elems:
        for n2 in elems:
            if n1 == n2 or n1.norm() * n2.norm() > max_norm or not _coprime(n1, n2):
                continue
            n12 = n1 * n2
            N = n12.norm()
            s12 = Q.residue_symbol(n1, n2, cls)
            if order == 3:
                factor = root_of_unity(3, -s12)
            else:
                s21 = Q.residue_symbol(n2, n1, cls)
                sign = ((n1.norm() - 1) // 4) * ((n2.norm() - 1) // 4) % 2
                alt = (Q.residue_symbol(n1 * n1, n2, cls) + 2 * sign) % 4
                out.append(_exp_check("g4_product_sign_forms", f"{n1};{n2}", (s21 + s12) % 4, alt))
                factor = root_of_unity(4, s21 + s12)
            lhs = gvec(n12)
            rhs = factor * gvec(n1) * gvec(n2)
            for kk, err in zip(ks, np.abs(lhs - rhs)):
                out.append(_num_check(name, f"k={kk};n1={n1};n2={n2}", err, GAUSS_TOL * math.sqrt(N)))

    box = [cls(u, v) for u in range(-2, 3) for v in range(-2, 3)]
    for n in elems:
        fac = Q.factor_primary(n).factors
        if any(e > 1 for _, e in fac):
            continue
        N = n.norm()
        rlist = box + [p for p, _ in fac] + [n]
        vals = g_symbol_many(rlist, n)
        for r, val in zip(rlist, vals):
            if _coprime(r, n):
                err = max(0.0, abs(val) - math.sqrt(N))
                out.append(_num_check("g_squarefree_bound", f"r={r};n={n}", err, GAUSS_TOL * math.sqrt(N)))
            else:
                out.append(_num_check("g_squarefree_zero", f"r={r};n={n}", abs(val), GAUSS_TOL * math.sqrt(N)))

    return out


def g0_suite(order: int, max_norm: int = 1000) -> list[Check]:
    """g(0, n) = phi(n) on order-th powers and 0 otherwise, primary n (units included)."""
    cls = ring_for(order)
    out = []
    for n in Q.primary_elements(cls, max_norm):
        expected = Q.euler_phi(n) if _is_power(n, order) else 0
        out.append(_num_check("g0", str(n), abs(g_symbol(0, n) - expected), 1e-9))
    return out


def tau_relation_suite(order: int, max_n: int = 300, rs=(0, 1, 2, 3)) -> list[Check]:
    """tau(r, chi_q) against g(r, q) with the unit factor for each order."""
    cls = ring_for(order)
    out = []
    for n in admissible_moduli(max_n, order):
        for q in enumerate_q(n, order):
            chi = character_from_q(q)
            if order == 3:
                factor = root_of_unity(3, -Q.residue_symbol(SQRT_MINUS_3, q, cls))
            else:
                factor = root_of_unity(4, -Q.residue_symbol(cls(0, -1), q, cls)) * lambda0(q)
            for r in rs:
                err = abs(tau_char(r, chi) - factor * g_symbol(r, q))
                out.append(_num_check(f"tau_g{order}", f"r={r};q={q}", err, GAUSS_TOL))
    return out


def poisson_suite(order: int, max_modulus: int = 101, Ms=(1, 2.5, 7)) -> list[Check]:
    out = []
    for n in admissible_moduli(max_modulus, order):
        for chi in set_S(n, order):
            for M in Ms:
                out.append(_num_check("poisson", f"q={chi.q};M={M}", poisson_discrepancy(chi, M), 1e-8))
    return out


def bijection_suite(order: int, max_prime: int = 500, max_n: int = 5000) -> list[Check]:
    """Generator construction vs discrete-log oracle, and family sizes."""
    out = []
    for p in primes_up_to(max_prime).tolist():
        if p % order != 1:
            continue
        ours = {chi.key() for chi in set_S(p, order)}
        oracle = {chi.key() for chi in primitive_chars_dlog(p, order)}
        out.append(Check("bijection", f"p={p}", 0.0 if ours == oracle else 1.0, ours == oracle))
    for n in admissible_moduli(max_n, order):
        fam = set_S(n, order)
        exps = [e for _, e in factor_int(n)] if n > 1 else []
        want = 2 ** len(exps)
        out.append(Check("family_size", f"n={n}", float(abs(len(fam) - want)), len(fam) == want))
        # components chi_i**e coincide with their conjugates when e*2 = 0 mod order
        want_distinct = 2 ** sum(1 for e in exps if (2 * e) % order)
        got = len({chi.key() for chi in fam})
        out.append(Check("distinct_size", f"n={n}", float(abs(got - want_distinct)), got == want_distinct))
    return out


def pv_suite(order: int, max_n: int = 2000) -> list[Check]:
    """Window sums of every non-principal table against sqrt(n) log(n) + 1."""
    out = []
    for n in admissible_moduli(max_n, order):
        if n == 1 or is_perfect_power(n, order):
            continue  # the tables are principal on rad(n)
        for chi in set_S(n, order):
            w = max_window_sum(chi)
            out.append(Check("polya_vinogradov", f"q={chi.q}", w, w <= pv_bound(n)))
    return out


SUITES = {
    "reciprocity": lambda order, N: reciprocity_suite(order, N),
    "supplement": lambda order, N: supplement_suite(N) + lambda0_suite(2 * N),
    "gauss-identities": lambda order, N: gauss_identity_suite(order, N, twist_norm=min(N, 500)) + g0_suite(order, min(N, 1000)),
    "tau-relations": lambda order, N: tau_relation_suite(order, N),
    "poisson": lambda order, N: poisson_suite(order, N),
    "bijection": lambda order, N: bijection_suite(order, max_prime=N, max_n=10 * N),
    "pv": lambda order, N: pv_suite(order, N),
}
