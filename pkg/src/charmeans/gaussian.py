"""The Gaussian integers Z[i], the quartic residue symbol and the sign lambda_0."""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _quadratic as Q
from ._quadratic import PrimaryFactorization, QuadInt
from .errors import DomainError


@dataclass(frozen=True, slots=True)
class GaussInt(QuadInt):
    """a + b*i."""

    ORDER = 4
    RAMIFIED = 2
    ZETA_SYMBOL = "i"

    @staticmethod
    def mul_coords(a, b, c, d):
        return a * c - b * d, a * d + b * c

    @staticmethod
    def norm_coords(a, b):
        return a * a + b * b

    @staticmethod
    def conj_coords(a, b):
        return a, -b

    @staticmethod
    def _zeta_complex():
        return 0.0, 1.0

    def is_primary(self) -> bool:
        # congruent to 1 mod (1+i)**3
        return (self.a % 4, self.b % 4) in ((1, 0), (3, 2))

    def in_sector(self) -> bool:
        return self.a > 0 and self.b >= 0

    def sort_key(self) -> tuple:
        return (self.norm(), -self.b, self.a)

    @staticmethod
    def norm_solutions(p: int):
        for a in range(-math.isqrt(p), math.isqrt(p) + 1):
            rest = p - a * a
            b = math.isqrt(rest)
            if b * b == rest:
                yield a, b
                yield a, -b


I = GaussInt(0, 1)
GaussInt.UNITS = (GaussInt(1, 0), GaussInt(0, 1), GaussInt(-1, 0), GaussInt(0, -1))

PrimaryFactorizationI = PrimaryFactorization


def norm_i(z: GaussInt) -> int:
    return GaussInt.coerce(z).norm()


def gcd_i(x, y) -> GaussInt:
    """Greatest common divisor, primary for odd norm, else with a > 0, b >= 0."""
    return Q.gcd(GaussInt.coerce(x), GaussInt.coerce(y))


def make_primary_i(z) -> tuple[GaussInt, GaussInt]:
    return Q.make_primary(GaussInt.coerce(z))


def split_prime_i(p: int) -> list[GaussInt]:
    return list(Q.split_prime(GaussInt, p))


def factor_primary_i(n) -> PrimaryFactorization:
    return Q.factor_primary(GaussInt.coerce(n))


def quartic_symbol(a, n) -> int | None:
    """Exponent j with (a/n)_4 = i**j, or None when the symbol vanishes."""
    return Q.residue_symbol(a, n, GaussInt)


def euler_phi_i(n) -> int:
    return Q.euler_phi(GaussInt.coerce(n))


def lambda0(q) -> int:
    """(-1)**((a*a - 1)/8) for primary q = a + b*i."""
    q = GaussInt.coerce(q)
    if not q.is_primary():
        raise DomainError(f"{q} is not primary")
    return -1 if ((q.a * q.a - 1) // 8) % 2 else 1
