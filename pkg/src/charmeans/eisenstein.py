"""The Eisenstein integers Z[omega], omega = e(1/3), and the cubic residue symbol."""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _quadratic as Q
from ._quadratic import PrimaryFactorization, QuadInt

SQRT3_HALF = math.sqrt(3) / 2


@dataclass(frozen=True, slots=True)
class EisInt(QuadInt):
    """a + b*omega."""

    ORDER = 3
    RAMIFIED = 3
    ZETA_SYMBOL = "ω"

    @staticmethod
    def mul_coords(a, b, c, d):
        # omega**2 = -1 - omega
        return a * c - b * d, a * d + b * c - b * d

    @staticmethod
    def norm_coords(a, b):
        return a * a - a * b + b * b

    @staticmethod
    def conj_coords(a, b):
        return a - b, -b

    @staticmethod
    def _zeta_complex():
        return -0.5, SQRT3_HALF

    def is_primary(self) -> bool:
        return self.a % 3 == 1 and self.b % 3 == 0

    def in_sector(self) -> bool:
        # argument in [0, pi/3): between 1 and 1 + omega
        return self.b >= 0 and self.a > self.b

    def sort_key(self) -> tuple:
        return (self.norm(), self.b, self.a)

    @staticmethod
    def norm_solutions(p: int):
        bound = math.ceil(2 * math.sqrt(p / 3)) + 1
        for b in range(-bound, bound + 1):
            disc = 4 * p - 3 * b * b
            if disc < 0:
                continue
            s = math.isqrt(disc)
            if s * s != disc:
                continue
            for num in {b + s, b - s}:
                if num % 2 == 0:
                    yield num // 2, b


OMEGA = EisInt(0, 1)
SQRT_MINUS_3 = EisInt(1, 2)
EisInt.UNITS = (EisInt(1, 0), EisInt(0, 1), EisInt(-1, -1), EisInt(-1, 0), EisInt(0, -1), EisInt(1, 1))

PrimaryFactorizationW = PrimaryFactorization


def norm_w(z: EisInt) -> int:
    return EisInt.coerce(z).norm()


def gcd_w(x, y) -> EisInt:
    """Greatest common divisor, primary when coprime to 3, else in the sector [0, pi/3)."""
    return Q.gcd(EisInt.coerce(x), EisInt.coerce(y))


def make_primary_w(z) -> tuple[EisInt, EisInt]:
    return Q.make_primary(EisInt.coerce(z))


def split_prime_w(p: int) -> list[EisInt]:
    return list(Q.split_prime(EisInt, p))


def factor_primary_w(n) -> PrimaryFactorization:
    return Q.factor_primary(EisInt.coerce(n))


def cubic_symbol(a, n) -> int | None:
    """Exponent j with (a/n)_3 = omega**j, or None when the symbol vanishes."""
    return Q.residue_symbol(a, n, EisInt)


def euler_phi_w(n) -> int:
    return Q.euler_phi(EisInt.coerce(n))
