"""Rational-integer helpers: sieves, factorization, primality."""

from __future__ import annotations

import os
from functools import lru_cache

import numpy as np
from sympy import factorint, integer_nthroot, isprime

DEFAULT_NORM_CAP = 10**5
DEFAULT_BUDGET = 10**10
FACTOR_LIMIT = 2**63


def norm_cap() -> int:
    return int(os.environ.get("CHARMEANS_NORM_CAP", DEFAULT_NORM_CAP))


def work_budget() -> int:
    return int(float(os.environ.get("CHARMEANS_BUDGET", DEFAULT_BUDGET)))


def is_prime(n: int) -> bool:
    return bool(isprime(n))


@lru_cache(maxsize=65536)
def factor_int(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n > 0`` as ascending ``(p, e)`` pairs."""
    if n <= 0:
        raise ValueError("factor_int needs a positive integer")
    return tuple(sorted((int(p), int(e)) for p, e in factorint(n).items()))


def omega(n: int) -> int:
    """Number of distinct prime factors."""
    return len(factor_int(n)) if n > 1 else 0


def primes_up_to(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return np.nonzero(sieve)[0].astype(np.int64)


def is_perfect_power(n: int, k: int) -> bool:
    return bool(integer_nthroot(n, k)[1])


def powmod_vec(base: np.ndarray, exponent: int, mod: int) -> np.ndarray:
    """Elementwise ``base**exponent % mod`` for int64 arrays, mod < 3e9."""
    result = np.ones_like(base, dtype=np.int64)
    b = np.asarray(base, dtype=np.int64) % mod
    e = exponent
    while e:
        if e & 1:
            result = result * b % mod
        b = b * b % mod
        e >>= 1
    return result
