"""Gauss sums over Z/nZ and over the residue rings of Z[omega] and Z[i].

All additive phases are exact rationals reduced mod 1 before
exponentiation; sums are accumulated with ``math.fsum`` so the result does
not depend on summation order.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

from . import _quadratic as Q
from ._quadratic import QuadInt, ResidueSystem, etilde_fraction, residues_mod
from .characters import CharacterTable, ring_for, roots_array
from .errors import DomainError

TWO_PI = 2 * math.pi

__all__ = [
    "ResidueSystem",
    "residues_mod",
    "phase_etilde",
    "g_symbol",
    "tau_char",
    "tau_vector",
    "poisson_sides",
    "poisson_discrepancy",
]


def e(x: Fraction | float) -> complex:
    """exp(2*pi*i*x), with x reduced mod 1 first when it is a Fraction."""
    if isinstance(x, Fraction):
        x = x % 1
        if x == 0:
            return 1 + 0j
        if x == Fraction(1, 2):
            return -1 + 0j
    return cmath.exp(1j * TWO_PI * float(x))


def phase_etilde(z_num, z_den=1, ring: int | None = None) -> complex:
    """etilde_omega / etilde_i of z = z_num / z_den."""
    cls = _ring_of(z_num, z_den, ring)
    return e(etilde_fraction(cls.coerce(z_num), cls.coerce(z_den)))


def _ring_of(x, y, ring) -> type[QuadInt]:
    for v in (x, y):
        if isinstance(v, QuadInt):
            return type(v)
    if ring is None:
        raise DomainError("ring (3 or 4) is required for rational arguments")
    return ring_for(ring)


def _fsum_complex(z: np.ndarray) -> complex:
    return complex(math.fsum(z.real), math.fsum(z.imag))


def _unit_phases(t: np.ndarray, N: int) -> np.ndarray:
    return np.exp(1j * TWO_PI * (t % N) / N)


def g_symbol(r, n: QuadInt, order: int | None = None, cap: int | None = None) -> complex:
    """g(r, n) = sum over x mod n of (x/n) * etilde(r*x/n)."""
    cls = type(n) if order is None else ring_for(order)
    n = cls.coerce(n)
    r = cls.coerce(r)
    if n.is_unit():
        return 1 + 0j  # one residue, (0/unit) = 1, phase 1
    rs = residues_mod(n, cap)
    u, v = rs.coords()
    exps = Q.symbol_array(n, u, v)
    t = Q.etilde_phases(n, r, u, v)
    live = exps >= 0
    terms = roots_array(cls.ORDER)[exps[live]] * _unit_phases(t[live], n.norm())
    return _fsum_complex(terms)


def g_symbol_many(rs_list, n: QuadInt, cap: int | None = None) -> np.ndarray:
    """g(r, n) for several r at once (shared residue system and symbol table)."""
    cls = type(n)
    out = np.empty(len(rs_list), dtype=complex)
    if n.is_unit():
        out[:] = 1
        return out
    u, v = residues_mod(n, cap).coords()
    exps = Q.symbol_array(n, u, v)
    live = exps >= 0
    chi = roots_array(cls.ORDER)[exps[live]]
    ul, vl = u[live], v[live]
    N = n.norm()
    for i, r in enumerate(rs_list):
        t = Q.etilde_phases(n, cls.coerce(r), ul, vl)
        out[i] = _fsum_complex(chi * _unit_phases(t, N))
    return out


def tau_char(r: int, chi: CharacterTable) -> complex:
    """tau(r, chi) = sum_{x mod n} chi(x) e(r*x/n)."""
    n = chi.modulus
    x = np.arange(n, dtype=np.int64)
    live = chi.values >= 0
    t = (int(r) % n) * x[live] % n
    terms = roots_array(chi.order)[chi.values[live]] * _unit_phases(t, n)
    return _fsum_complex(terms)


def tau_vector(chi: CharacterTable) -> np.ndarray:
    """tau(k, chi) for k = 0..n-1 via FFT (an independent route to ``tau_char``)."""
    n = chi.modulus
    c = np.where(chi.values >= 0, roots_array(chi.order)[np.maximum(chi.values, 0)], 0)
    return n * np.fft.ifft(c)


# Gaussian weight w(t) = exp(-pi t^2) is its own Fourier transform.
_GAUSS_CUT = math.sqrt(16 * math.log(10) / math.pi) + 0.5  # w(t) < 1e-16 beyond


def _gauss(t: np.ndarray) -> np.ndarray:
    return np.exp(-math.pi * t * t)


def poisson_sides(chi: CharacterTable, M: float) -> tuple[complex, complex]:
    """Both sides of sum_m chi(m) w(m/M) = (M/n) sum_k tau(k, chi) w(kM/n)."""
    n = chi.modulus
    if n > 10**4:
        raise DomainError("Poisson check limited to modulus <= 10**4")
    mmax = int(math.ceil(M * _GAUSS_CUT))
    m = np.arange(-mmax, mmax + 1, dtype=np.int64)
    vals = chi.values[m % n]
    live = vals >= 0
    lhs = _fsum_complex(roots_array(chi.order)[vals[live]] * _gauss(m[live] / M))
    kmax = int(math.ceil(n / M * _GAUSS_CUT))
    k = np.arange(-kmax, kmax + 1, dtype=np.int64)
    taus = tau_vector(chi)[k % n]
    rhs = (M / n) * _fsum_complex(taus * _gauss(k * M / n))
    return lhs, rhs


def poisson_discrepancy(chi: CharacterTable, M: float) -> float:
    lhs, rhs = poisson_sides(chi, M)
    return max(abs(lhs.real - rhs.real), abs(lhs.imag - rhs.imag))
