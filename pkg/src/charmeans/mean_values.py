"""Exact evaluation of S_i(X, Y) and the constants of its main term.

Every character sum is carried as an integer vector ``counts`` with
``counts[j]`` = number of m with chi(m) = e(j/order); conversion to a
complex number happens once, at report time.  Reductions over moduli are
therefore exact and independent of evaluation order.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np
from scipy.spatial import ConvexHull, QhullError

from ._arith import factor_int, is_perfect_power, primes_up_to, work_budget
from .characters import (
    CharacterTable,
    admissible_moduli,
    counts_to_complex,
    distinct_S,
    ring_for,
    roots_array,
    set_S,
)
from .errors import BudgetExceeded, DomainError

DEFAULT_CUTOFF = 10**6


@dataclass
class SumReport:
    order: int
    X: float
    Y: float
    total: complex
    power_part: float
    remainder: complex
    predictor: float | None
    ratio: float | None
    moduli_count: int
    char_count: int
    total_counts: tuple[int, ...] = field(repr=False)
    power_counts: tuple[int, ...] = field(repr=False)
    elapsed_ms: float | None = None
    truncated: bool = False

    def as_dict(self, timing: bool = False) -> dict:
        return {
            "order": self.order,
            "X": self.X,
            "Y": self.Y,
            "total_re": self.total.real,
            "total_im": self.total.imag,
            "power_part": self.power_part,
            "remainder_re": self.remainder.real,
            "remainder_im": self.remainder.imag,
            "predictor": self.predictor,
            "ratio": self.ratio,
            "moduli_count": self.moduli_count,
            "char_count": self.char_count,
            "elapsed_ms": self.elapsed_ms if timing else None,
            "truncated": self.truncated,
        }


@dataclass(frozen=True)
class EulerProductResult:
    value: float  # the constant C_1 or C_2
    euler_product: float  # f(1) or h(1)
    prime_cutoff: int
    tail_bound: float


# ---------------------------------------------------------------------------
# Character sums


def _partial_counts(chi: CharacterTable, X: int) -> np.ndarray:
    """Exponent counts of chi(m), 1 <= m <= X, by period reduction."""
    n = chi.modulus
    full, rest = divmod(X, n)
    counts = full * chi.period_counts()
    if rest:
        head = chi.values[1 : rest + 1]
        counts = counts + np.bincount(head[head >= 0], minlength=chi.order)
    return counts.astype(np.int64)


def _direct_counts(chi: CharacterTable, X: int) -> np.ndarray:
    m = np.arange(1, X + 1, dtype=np.int64)
    vals = chi.values[m % chi.modulus]
    return np.bincount(vals[vals >= 0], minlength=chi.order).astype(np.int64)


def char_sum_partial(chi: CharacterTable, X: float) -> complex:
    """sum_{1 <= m <= X} chi(m)."""
    return counts_to_complex(chi.order, _partial_counts(chi, math.floor(X)))


def _modulus_counts(n: int, order: int, X: int, method: str, distinct: bool):
    chars = distinct_S(n, order) if distinct else set_S(n, order)
    counter = _direct_counts if method == "direct" else _partial_counts
    total = np.zeros(order, dtype=np.int64)
    for chi in chars:
        total += counter(chi, X)
    return total, len(chars)


def _chunk_worker(args):
    ns, order, X, method, distinct = args
    return [(n, *_modulus_counts(n, order, X, method, distinct)) for n in ns]


def estimate_work(order: int, X: float, Y: float, method: str = "period", lo: float = 0) -> int:
    """Elementary steps: table size plus scanned length, per generator."""
    X = math.floor(X)
    work = 0
    for n in admissible_moduli(math.floor(Y), order):
        if n <= lo:
            continue
        k = len(factor_int(n)) if n > 1 else 0
        work += (2**k) * (n + (X if method == "direct" else 0))
    return work


def _sweep(order, X, ns, method, distinct, threads):
    """Per-modulus counts in ascending n, regardless of worker completion order."""
    if threads <= 1 or len(ns) < 64:
        return _chunk_worker((ns, order, X, method, distinct))
    size = max(1, len(ns) // (threads * 8))
    chunks = [(ns[i : i + size], order, X, method, distinct) for i in range(0, len(ns), size)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(_chunk_worker, chunks))
    rows = [row for part in parts for row in part]
    rows.sort(key=lambda row: row[0])
    return rows


def _check_args(order, X, Y, method):
    ring_for(order)
    if X < 1 or Y < 1:
        raise DomainError("X and Y must be >= 1")
    if method not in ("direct", "period"):
        raise DomainError(f"unknown method {method!r}")


def _report(order, X, Y, total, power, moduli, chars, t0, truncated=False) -> SumReport:
    tot = counts_to_complex(order, total)
    pw = counts_to_complex(order, power)
    rem = counts_to_complex(order, total - power)
    pred = main_term_predict(order, X, Y) if Y > 1 else None
    return SumReport(
        order=order,
        X=X,
        Y=Y,
        total=tot,
        power_part=pw.real,
        remainder=rem,
        predictor=pred,
        ratio=tot.real / pred if pred else None,
        moduli_count=moduli,
        char_count=chars,
        total_counts=tuple(int(c) for c in total),
        power_counts=tuple(int(c) for c in power),
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
        truncated=truncated,
    )


def S_total(
    order: int,
    X: float,
    Y: float,
    method: str = "period",
    *,
    distinct: bool = True,
    threads: int = 1,
    budget: int | None = None,
) -> SumReport:
    """S_order(X, Y) = sum_{n <= Y} sum_{chi in S_{order,n}} sum_{m <= X} chi(m).

    With ``distinct=True`` each character of the set S_{order,n} is counted
    once; ``distinct=False`` counts one character per generator q, so
    characters that coincide (exponents divisible by the order) repeat.
    """
    _check_args(order, X, Y, method)
    t0 = time.perf_counter()
    budget = work_budget() if budget is None else budget
    work = estimate_work(order, X, Y, method)
    if work > budget:
        raise BudgetExceeded(f"estimated work {work:.3g} exceeds budget {budget:.3g}")
    Xi = math.floor(X)
    ns = admissible_moduli(math.floor(Y), order)
    total = np.zeros(order, dtype=np.int64)
    power = np.zeros(order, dtype=np.int64)
    chars = 0
    for n, counts, k in _sweep(order, Xi, ns, method, distinct, threads):
        total += counts
        chars += k
        if is_perfect_power(n, order):
            power += counts
    return _report(order, X, Y, total, power, len(ns), chars, t0)


def power_part(order: int, X: float, Y: float, *, distinct: bool = True) -> float:
    """Contribution of the moduli n <= Y that are perfect order-th powers."""
    _check_args(order, X, Y, "period")
    Xi = math.floor(X)
    total = np.zeros(order, dtype=np.int64)
    t = 1
    while t**order <= Y:
        n = t**order
        counts, _ = _modulus_counts(n, order, Xi, "period", distinct)
        total += counts
        t += 1
    return counts_to_complex(order, total).real


def transition_scan(
    order: int,
    X: float,
    Ys,
    *,
    distinct: bool = True,
    threads: int = 1,
    budget: int | None = None,
) -> list[SumReport]:
    """S_total for several Y sharing one incremental sweep over the moduli.

    If the budget runs out, the sweep stops and the last report carries
    ``truncated=True`` with the moduli reached so far.
    """
    _check_args(order, X, max(Ys, default=1), "period")
    budget = work_budget() if budget is None else budget
    Xi = math.floor(X)
    total = np.zeros(order, dtype=np.int64)
    power = np.zeros(order, dtype=np.int64)
    moduli = chars = 0
    spent = 0
    lo = 0
    reports = []
    t0 = time.perf_counter()
    for Y in sorted(Ys):
        ns = [n for n in admissible_moduli(math.floor(Y), order) if n > lo]
        step = estimate_work(order, X, Y, lo=lo)
        truncated = spent + step > budget
        if truncated:
            keep, acc = [], spent
            for n in ns:
                w = 2 ** (len(factor_int(n)) if n > 1 else 0) * n
                if acc + w > budget:
                    break
                keep.append(n)
                acc += w
            ns = keep
        for n, counts, k in _sweep(order, Xi, ns, "period", distinct, threads):
            total += counts
            chars += k
            moduli += 1
            if is_perfect_power(n, order):
                power += counts
        spent += step
        reports.append(_report(order, X, Y, total.copy(), power.copy(), moduli, chars, t0, truncated))
        if truncated:
            break
        lo = math.floor(Y)
    return reports


# ---------------------------------------------------------------------------
# Euler products and constants


def _chi_mod(order: int, p):
    """(principal, non-principal) real character values mod 3 or mod 4 at p."""
    p = np.asarray(p)
    r = p % order
    chi0 = np.where(r == 0, 0.0, 1.0) if order == 3 else np.where(p % 2 == 0, 0.0, 1.0)
    chi1 = np.where(r == 1, 1.0, np.where(r == order - 1, -1.0, 0.0))
    return chi0, chi1


def _local_factor(p, s, chi0, chi1):
    """Term-by-term expansion of (1 - c0 x)(1 - c1 x)(1 + (c0+c1)/2 (1-1/p) x/(1-x))**2, x = p**-s."""
    S = chi0 + chi1
    P = chi0 * chi1
    x = p ** (-s)
    one_p = 1 - 1 / p
    return (
        1
        + S * x * x * (1 - p ** (s - 1)) / (1 - x)
        - S * S * one_p * x * x / (1 - x)
        + P * x * x
        + S * P * one_p * x**3 / (1 - x)
        + S * S / 4 * one_p**2 * x * x / (1 - x) ** 2 * (1 - S * x + P * x * x)
    )


def euler_factor(p: int, s: float, order: int) -> float:
    """Local factor f_p(s) (order 3) or h_p(s) (order 4)."""
    ring_for(order)
    if s <= 0.5:
        raise DomainError("local factors are only analytic for s > 1/2")
    chi0, chi1 = _chi_mod(order, p)
    return float(_local_factor(float(p), s, float(chi0), float(chi1)))


def euler_factor_closed(p: int, order: int) -> float:
    """f_p(1) / h_p(1) in closed form."""
    if p % order == 1:
        return (1 - 1 / p**2) ** 2
    if math.gcd(p, order) > 1:
        return 1.0
    return 1 - 1 / p**2


def euler_product(order: int, prime_cutoff: int, closed: bool = False) -> float:
    """f(1) (order 3) or h(1) (order 4) truncated to primes <= prime_cutoff."""
    ps = primes_up_to(prime_cutoff).astype(float)
    if closed:
        r = ps % order
        logs = np.where(r == 1, 2 * np.log1p(-ps**-2), np.where(np.mod(order, ps) == 0, 0.0, np.log1p(-ps**-2)))
    else:
        chi0, chi1 = _chi_mod(order, ps)
        logs = np.log(_local_factor(ps, 1.0, chi0, chi1))
    return math.exp(math.fsum(logs))


L1_CLOSED = {3: math.pi / (3 * math.sqrt(3)), 4: math.pi / 4}


def residue_prefactor(order: int) -> Fraction:
    """lim_{s -> 1/k} (s - 1/k) L(k s, chi_0 mod k) as an exact fraction."""
    out = Fraction(1, order)  # residue of zeta(k s) at s = 1/k
    for p, _ in factor_int(order):
        out *= 1 - Fraction(1, p)
    return out


@lru_cache(maxsize=None)
def l1_series(order: int) -> float:
    """L(1, chi_1) by direct summation of the alternating series."""
    ring_for(order)
    mpmath.mp.dps = 30
    val = mpmath.nsum(lambda k: 1 / (order * k + 1) - 1 / (order * k + order - 1), [0, mpmath.inf])
    return float(val)


@lru_cache(maxsize=None)
def _checked_l1(order: int) -> float:
    closed = L1_CLOSED[order]
    if abs(closed - l1_series(order)) > 1e-10:
        raise ArithmeticError(f"L(1, chi) closed form disagrees with series for order {order}")
    return closed


@lru_cache(maxsize=None)
def compute_constant(order: int, prime_cutoff: int = DEFAULT_CUTOFF) -> EulerProductResult:
    """C_1 (order 3) or C_2 (order 4) with the Euler product cut at prime_cutoff."""
    ring_for(order)
    if prime_cutoff < 100:
        raise DomainError("prime cutoff must be at least 100")
    fp = euler_product(order, prime_cutoff)
    inner = float(residue_prefactor(order)) * _checked_l1(order) * fp
    value = order / math.sqrt(math.pi) * math.sqrt(inner)
    tail = 3 / (prime_cutoff * math.log(prime_cutoff))
    return EulerProductResult(value, fp, prime_cutoff, tail)


def main_term_predict(order: int, X: float, Y: float) -> float:
    """C * X * Y**(1/order) / sqrt(log Y)."""
    if Y <= 1:
        raise DomainError("main term needs Y > 1")
    C = compute_constant(order, DEFAULT_CUTOFF).value
    return C * X * Y ** (1 / order) / math.sqrt(math.log(Y))


# ---------------------------------------------------------------------------
# Polya-Vinogradov diagnostic


def pv_bound(n: int) -> float:
    return math.sqrt(n) * math.log(n) + 1


def max_window_sum(chi: CharacterTable) -> float:
    """max |sum_{M < m <= M+N} chi(m)| over 0 <= M < n, 1 <= N <= n.

    For a character whose period sum vanishes the window sums are exactly
    the pairwise differences of the prefix sums P_0..P_{n-1}, so the
    maximum is the diameter of that point set (taken over its convex hull).
    """
    n = chi.modulus
    z = np.where(chi.values >= 0, roots_array(chi.order)[np.maximum(chi.values, 0)], 0)
    pref = np.concatenate([[0], np.cumsum(np.concatenate([z[1:], z[:1]]))])
    if abs(pref[-1]) > 1e-9:
        raise DomainError("window maximum needs a character with vanishing period sum")
    pts = pref[:n]
    xy = np.column_stack([pts.real, pts.imag])
    try:
        xy = xy[ConvexHull(xy).vertices]
    except (QhullError, ValueError):
        pass  # collinear or tiny point sets: brute force below is cheap
    d = np.hypot(xy[:, None, 0] - xy[None, :, 0], xy[:, None, 1] - xy[None, :, 1])
    return float(d.max())


__all__ = [
    "SumReport",
    "EulerProductResult",
    "char_sum_partial",
    "S_total",
    "power_part",
    "euler_factor",
    "euler_factor_closed",
    "euler_product",
    "compute_constant",
    "main_term_predict",
    "transition_scan",
    "max_window_sum",
    "pv_bound",
    "residue_prefactor",
    "l1_series",
]
