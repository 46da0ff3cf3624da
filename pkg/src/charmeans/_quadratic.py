"""Arithmetic shared by the two imaginary quadratic rings Z[omega] and Z[i].

Both rings are written as Z[zeta] with zeta = omega (order-3 case) or
zeta = i (order-4 case); an element a + b*zeta is stored as the integer
pair (a, b).  Subclasses supply the multiplication rule, the norm form,
the primary congruence and the ordering tie-break; every algorithm below
(Euclidean division, primary normalization, splitting, factorization,
power-residue symbols, residue systems) is written once against that
small interface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import ClassVar, Iterator, Union

import numpy as np

from ._arith import FACTOR_LIMIT, factor_int, is_prime, norm_cap, powmod_vec
from .errors import CapacityError, DomainError

IntLike = Union[int, "QuadInt"]


@dataclass(frozen=True, slots=True)
class QuadInt:
    a: int
    b: int = 0

    ORDER: ClassVar[int]  # order of the power-residue symbol
    RAMIFIED: ClassVar[int]  # the rational prime that ramifies
    ZETA_SYMBOL: ClassVar[str]
    UNITS: ClassVar[tuple]

    # -- ring structure (coordinate level, works on ints and numpy arrays) --

    @staticmethod
    def mul_coords(a, b, c, d):
        raise NotImplementedError

    @staticmethod
    def norm_coords(a, b):
        raise NotImplementedError

    @staticmethod
    def conj_coords(a, b):
        raise NotImplementedError

    def is_primary(self) -> bool:
        raise NotImplementedError

    def in_sector(self) -> bool:
        """True for the canonical associate when no primary one exists."""
        raise NotImplementedError

    def sort_key(self) -> tuple:
        raise NotImplementedError

    # -- arithmetic --

    @classmethod
    def coerce(cls, x: IntLike) -> "QuadInt":
        if isinstance(x, cls):
            return x
        if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
            return cls(int(x), 0)
        raise TypeError(f"cannot interpret {x!r} as {cls.__name__}")

    def __add__(self, other):
        o = self.coerce(other)
        return type(self)(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self.coerce(other)
        return type(self)(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return self.coerce(other) - self

    def __neg__(self):
        return type(self)(-self.a, -self.b)

    def __mul__(self, other):
        o = self.coerce(other)
        return type(self)(*self.mul_coords(self.a, self.b, o.a, o.b))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = type(self)(1, 0)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def norm(self) -> int:
        return self.norm_coords(self.a, self.b)

    def conj(self):
        return type(self)(*self.conj_coords(self.a, self.b))

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __divmod__(self, other):
        """Euclidean division with coordinates of the quotient rounded to nearest."""
        y = self.coerce(other)
        n = y.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero ring element")
        p, q = self.mul_coords(self.a, self.b, *self.conj_coords(y.a, y.b))
        quo = type(self)((2 * p + n) // (2 * n), (2 * q + n) // (2 * n))
        return quo, self - quo * y

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: IntLike) -> bool:
        """True iff self | other."""
        x = self.coerce(other)
        n = self.norm()
        if n == 0:
            return x.is_zero()
        p, q = self.mul_coords(x.a, x.b, *self.conj_coords(self.a, self.b))
        return p % n == 0 and q % n == 0

    def exact_div(self, other: IntLike):
        y = self.coerce(other)
        quo, rem = divmod(self, y)
        if rem:
            raise ArithmeticError(f"{y} does not divide {self}")
        return quo

    def associates(self) -> list:
        return [u * self for u in self.UNITS]

    def __complex__(self) -> complex:
        zeta = complex(*self._zeta_complex())
        return self.a + self.b * zeta

    @staticmethod
    def _zeta_complex() -> tuple[float, float]:
        raise NotImplementedError

    def __str__(self) -> str:
        z = self.ZETA_SYMBOL
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}{z}" if self.b not in (1, -1) else ("-" if self.b < 0 else "") + z
        sign = "+" if self.b > 0 else "-"
        mag = abs(self.b)
        return f"{self.a}{sign}{'' if mag == 1 else mag}{z}"


@dataclass(frozen=True)
class PrimaryFactorization:
    """``unit * prod(prime**e)``; primes primary, pairwise non-associate, canonically ordered."""

    unit: QuadInt
    factors: tuple[tuple[QuadInt, int], ...]

    def expand(self) -> QuadInt:
        out = self.unit
        for p, e in self.factors:
            out = out * p**e
        return out

    @property
    def primes(self) -> tuple[QuadInt, ...]:
        return tuple(p for p, _ in self.factors)


# ---------------------------------------------------------------------------
# Normalization and gcd


def make_primary(z: QuadInt) -> tuple[QuadInt, QuadInt]:
    """Return ``(u, u*z)`` where ``u*z`` is the unique primary associate of z."""
    cls = type(z)
    if z.is_zero() or z.norm() % cls.RAMIFIED == 0:
        raise DomainError(f"{z} has no primary associate")
    for u in cls.UNITS:
        w = u * z
        if w.is_primary():
            return u, w
    raise AssertionError("no primary associate found")  # unreachable


def canonical_associate(z: QuadInt) -> QuadInt:
    if z.is_zero():
        return z
    if z.norm() % type(z).RAMIFIED:
        return make_primary(z)[1]
    for w in z.associates():
        if w.in_sector():
            return w
    raise AssertionError("no canonical associate found")  # unreachable


def gcd(x: QuadInt, y: QuadInt) -> QuadInt:
    if x.is_zero() and y.is_zero():
        raise DomainError("gcd(0, 0) is undefined")
    while not y.is_zero():
        x, y = y, x % y
    return canonical_associate(x)


# ---------------------------------------------------------------------------
# Primes and factorization


def classify_prime(cls: type[QuadInt], p: int) -> str:
    if p == cls.RAMIFIED:
        return "ramified"
    return "split" if p % cls.ORDER == 1 else "inert"


@lru_cache(maxsize=None)
def split_prime(cls: type[QuadInt], p: int) -> tuple[QuadInt, ...]:
    """Primary primes of norm p above a split rational prime p (empty otherwise)."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if classify_prime(cls, p) != "split":
        return ()
    found = {make_primary(cls(a, b))[1] for a, b in cls.norm_solutions(p)}
    return tuple(sorted(found, key=lambda z: z.sort_key()))


def inert_prime(cls: type[QuadInt], p: int) -> QuadInt:
    """The primary generator -p of an inert rational prime."""
    return cls(-p, 0)


def primes_above(cls: type[QuadInt], p: int) -> tuple[QuadInt, ...]:
    kind = classify_prime(cls, p)
    if kind == "split":
        return split_prime(cls, p)
    if kind == "inert":
        return (inert_prime(cls, p),)
    raise DomainError(f"{p} is ramified; no primary prime lies above it")


@lru_cache(maxsize=65536)
def factor_primary(n: QuadInt) -> PrimaryFactorization:
    cls = type(n)
    if n.is_zero():
        raise DomainError("cannot factor zero")
    N = n.norm()
    if N % cls.RAMIFIED == 0:
        raise DomainError(f"norm of {n} is divisible by {cls.RAMIFIED}")
    if N >= FACTOR_LIMIT:
        raise CapacityError(f"norm {N} exceeds the factorization cutoff 2**63")
    rest = n
    factors = []
    for p, _ in factor_int(N) if N > 1 else ():
        for pi in primes_above(cls, p):
            e = 0
            while pi.divides(rest):
                rest = rest.exact_div(pi)
                e += 1
            if e:
                factors.append((pi, e))
    if not rest.is_unit():
        raise AssertionError(f"incomplete factorization of {n}")
    factors.sort(key=lambda t: t[0].sort_key())
    return PrimaryFactorization(rest, tuple(factors))


def euler_phi(n: QuadInt) -> int:
    """Number of reduced residue classes modulo n."""
    fac = factor_primary(n)
    out = 1
    for pi, e in fac.factors:
        q = pi.norm()
        out *= q ** (e - 1) * (q - 1)
    return out


def has_rational_prime_divisor(n: QuadInt) -> bool:
    fac = factor_primary(n)
    seen = set()
    for pi, _ in fac.factors:
        if pi.b == 0:
            return True
        p = pi.norm()
        if p in seen:
            return True
        seen.add(p)
    return False


def primary_elements(cls: type[QuadInt], max_norm: int) -> list[QuadInt]:
    """All primary elements of norm <= max_norm, canonically ordered."""
    bound = math.isqrt(4 * max_norm) + 2
    out = []
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            z = cls(a, b)
            n = z.norm()
            if 0 < n <= max_norm and z.is_primary():
                out.append(z)
    out.sort(key=lambda z: z.sort_key())
    return out


# ---------------------------------------------------------------------------
# Power-residue symbols


def _split_root(pi: QuadInt) -> int:
    """Image r of zeta under Z[zeta]/(pi) -> F_p, i.e. r = -a/b mod p."""
    p = pi.norm()
    return (-pi.a * pow(pi.b, -1, p)) % p


def _ring_pow_mod(cls: type[QuadInt], u, v, e: int, p: int):
    ra, rb = 1, 0
    ba, bb = u % p, v % p
    while e:
        if e & 1:
            ra, rb = cls.mul_coords(ra, rb, ba, bb)
            ra, rb = ra % p, rb % p
        ba, bb = cls.mul_coords(ba, bb, ba, bb)
        ba, bb = ba % p, bb % p
        e >>= 1
    return ra, rb


def _zeta_powers_mod(cls: type[QuadInt], p: int) -> list[tuple[int, int]]:
    z = cls(1, 0)
    out = []
    for _ in range(cls.ORDER):
        out.append((z.a % p, z.b % p))
        z = z * cls(0, 1)
    return out


def prime_symbol(pi: QuadInt, x: QuadInt) -> int | None:
    """Exponent j with (x/pi) = zeta**j for a primary prime pi; None if pi | x."""
    cls = type(pi)
    k = cls.ORDER
    q = pi.norm()
    if pi.b != 0:  # split: residue field F_p with zeta -> r
        p = q
        r = _split_root(pi)
        t = (x.a + x.b * r) % p
        if t == 0:
            return None
        val = pow(t, (p - 1) // k, p)
        for j in range(k):
            if pow(r, j, p) == val:
                return j
        raise AssertionError("power is not a root of unity")
    p = -pi.a  # inert: residue field F_{p^2} = Z[zeta]/(p)
    if x.a % p == 0 and x.b % p == 0:
        return None
    val = _ring_pow_mod(cls, x.a, x.b, (q - 1) // k, p)
    return _zeta_powers_mod(cls, p).index(val)


def residue_symbol(a: IntLike, n: IntLike, cls: type[QuadInt]) -> int | None:
    """Exponent j with (a/n) = zeta**j, multiplicative in n; None encodes the value 0."""
    n = cls.coerce(n)
    a = cls.coerce(a)
    fac = factor_primary(n)
    total = 0
    for pi, e in fac.factors:
        s = prime_symbol(pi, a)
        if s is None:
            return None
        total += e * s
    return total % cls.ORDER


@lru_cache(maxsize=4096)
def _split_table(p: int, r: int, k: int) -> np.ndarray:
    t = np.arange(p, dtype=np.int64)
    vals = powmod_vec(t, (p - 1) // k, p)
    table = np.full(p, -1, dtype=np.int8)
    rj = 1
    for j in range(k):
        table[vals == rj] = j
        rj = rj * r % p
    table[0] = -1
    return table


@lru_cache(maxsize=256)
def _inert_table(cls: type[QuadInt], p: int) -> np.ndarray:
    if p * p > 10**7:
        raise CapacityError(f"inert residue field of size {p * p} too large to tabulate")
    uu, vv = np.meshgrid(np.arange(p, dtype=np.int64), np.arange(p, dtype=np.int64), indexing="ij")
    ra, rb = _ring_pow_mod(cls, uu, vv, (p * p - 1) // cls.ORDER, p)
    table = np.full((p, p), -1, dtype=np.int8)
    for j, (za, zb) in enumerate(_zeta_powers_mod(cls, p)):
        table[(ra == za) & (rb == zb)] = j
    table[0, 0] = -1
    return table


def prime_symbol_array(pi: QuadInt, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Vectorized prime_symbol over coordinate arrays; -1 marks the value 0."""
    cls = type(pi)
    if pi.b != 0:
        p = pi.norm()
        r = _split_root(pi)
        table = _split_table(p, r, cls.ORDER)
        return table[(u % p + (v % p) * r) % p]
    p = -pi.a
    return _inert_table(cls, p)[u % p, v % p]


def symbol_array(n: QuadInt, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Exponents of (x/n) for x = u + v*zeta, -1 where gcd(x, n) != 1."""
    cls = type(n)
    k = cls.ORDER
    fac = factor_primary(n)
    total = np.zeros(np.shape(u), dtype=np.int64)
    dead = np.zeros(np.shape(u), dtype=bool)
    for pi, e in fac.factors:
        s = prime_symbol_array(pi, u, v)
        dead |= s < 0
        total += e * s.astype(np.int64)
    out = (total % k).astype(np.int8)
    out[dead] = -1
    return out


# ---------------------------------------------------------------------------
# Residue systems and additive phases


@dataclass(frozen=True)
class ResidueSystem:
    """Complete residues a + b*zeta, 0 <= a < h1, 0 <= b < h2, lexicographic."""

    modulus: QuadInt
    h1: int
    h2: int

    def __len__(self) -> int:
        return self.h1 * self.h2

    def coords(self) -> tuple[np.ndarray, np.ndarray]:
        u = np.repeat(np.arange(self.h1, dtype=np.int64), self.h2)
        v = np.tile(np.arange(self.h2, dtype=np.int64), self.h1)
        return u, v

    def __iter__(self) -> Iterator[QuadInt]:
        cls = type(self.modulus)
        for a in range(self.h1):
            for b in range(self.h2):
                yield cls(a, b)


def residues_mod(n: QuadInt, cap: int | None = None) -> ResidueSystem:
    if n.is_zero():
        raise DomainError("residue system modulo zero")
    N = n.norm()
    cap = norm_cap() if cap is None else cap
    if N > cap:
        raise CapacityError(f"residue system of size {N} exceeds cap {cap}")
    zeta_n = n * type(n)(0, 1)
    a1, a2 = n.a, zeta_n.a
    g = math.gcd(a1, a2)
    # lattice {x*n + y*zeta*n} has first-coordinate projection gZ and kernel (N/g)Z
    return ResidueSystem(n, g, N // g)


def etilde_fraction(z_num: QuadInt, z_den: QuadInt) -> Fraction:
    """The rational number (z - conj z)/s reduced mod 1, z = z_num/z_den.

    s = sqrt(-3) = 1 + 2*omega in Z[omega] and s = 2i in Z[i]; in both rings the
    quotient is exactly the zeta-coordinate of z.
    """
    if z_den.is_zero():
        raise DomainError("zero denominator")
    w = z_num * z_den.conj()
    return Fraction(w.b, z_den.norm()) % 1


def etilde_phases(n: QuadInt, r: QuadInt, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Numerators t (mod N(n)) with etilde(r*x/n) = e(t/N(n)) for x = u + v*zeta."""
    cls = type(n)
    c, d = cls.mul_coords(r.a, r.b, *cls.conj_coords(n.a, n.b))
    _, t = cls.mul_coords(u, v, c, d)
    return np.asarray(t, dtype=np.int64) % n.norm()
