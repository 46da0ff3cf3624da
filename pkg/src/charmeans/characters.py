"""Order-3 and order-4 Dirichlet character families attached to primary elements.

A character of modulus n is stored as an exponent table: entry m is j when
chi(m) = e(j/order) and -1 when chi(m) = 0.  Tables built from a primary q
evaluate m -> (m/q) through the isomorphism Z/nZ = Z[zeta]/(q), which holds
because q has no rational prime divisor.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
from sympy.ntheory import primitive_root

from . import _quadratic as Q
from ._arith import factor_int, is_prime
from ._quadratic import QuadInt
from .eisenstein import EisInt
from .errors import DomainError
from .gaussian import GaussInt

RINGS: dict[int, type[QuadInt]] = {3: EisInt, 4: GaussInt}


def ring_for(order: int) -> type[QuadInt]:
    try:
        return RINGS[order]
    except KeyError:
        raise DomainError(f"order must be 3 or 4, got {order}") from None


@dataclass(frozen=True, eq=False)
class CharacterTable:
    order: int
    modulus: int
    q: QuadInt | None
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.values.setflags(write=False)

    def value(self, m: int) -> int | None:
        v = int(self.values[m % self.modulus])
        return None if v < 0 else v

    def __call__(self, m: int) -> complex:
        v = self.value(m)
        return 0j if v is None else root_of_unity(self.order, v)

    def key(self) -> tuple[int, bytes]:
        """Hashable identity of the value table."""
        return self.modulus, self.values.tobytes()

    def conj(self) -> "CharacterTable":
        vals = np.where(self.values < 0, -1, (-self.values.astype(np.int64)) % self.order).astype(np.int8)
        q = self.q.conj() if self.q is not None else None
        return CharacterTable(self.order, self.modulus, q, vals)

    def is_principal(self) -> bool:
        return bool(np.all(self.values <= 0))

    def period_counts(self) -> np.ndarray:
        """How often each exponent occurs over one full period."""
        live = self.values[self.values >= 0]
        return np.bincount(live, minlength=self.order).astype(np.int64)

    def to_csv(self, out=None) -> str | None:
        """Write rows ``m, exponent`` (empty exponent for chi(m) = 0)."""
        buf = io.StringIO() if out is None else out
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m", "exponent"])
        for m, v in enumerate(self.values.tolist()):
            w.writerow([m, "" if v < 0 else v])
        return buf.getvalue() if out is None else None


_ROOTS = {
    3: (1 + 0j, complex(-0.5, 0.8660254037844386), complex(-0.5, -0.8660254037844386)),
    4: (1 + 0j, 1j, -1 + 0j, -1j),
}


def root_of_unity(order: int, j: int) -> complex:
    return _ROOTS[order][j % order]


def roots_array(order: int) -> np.ndarray:
    return np.array(_ROOTS[order], dtype=complex)


def counts_to_complex(order: int, counts: Iterable[int]) -> complex:
    """sum_j counts[j] * e(j/order), evaluated from exact integer counts."""
    c = [int(x) for x in counts]
    if order == 4:
        return complex(c[0] - c[2], c[1] - c[3])
    # c0 + c1*w + c2*w^2 = (c0 - (c1 + c2)/2) + i*sqrt(3)/2*(c1 - c2)
    re = c[0] - (c[1] + c[2]) / 2
    return complex(re, 0.8660254037844386 * (c[1] - c[2]))


def admissible_moduli(Y: int, order: int) -> list[int]:
    """n <= Y all of whose prime factors are 1 mod order (n = 1 included)."""
    ring_for(order)
    Y = int(Y)
    if Y < 1:
        return []
    ok = np.ones(Y + 1, dtype=bool)
    ok[0] = False
    sieve = np.ones(Y + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, Y + 1):
        if not sieve[p]:
            continue
        sieve[p * p :: p] = False
        if p % order != 1:
            ok[p::p] = False
    return np.nonzero(ok)[0].tolist()


def is_admissible(n: int, order: int) -> bool:
    return n >= 1 and all(p % order == 1 for p, _ in (factor_int(n) if n > 1 else ()))


def enumerate_q(n: int, order: int) -> list[QuadInt]:
    """Primary q with N(q) = n and no rational prime divisor, by choice vector."""
    cls = ring_for(order)
    if not is_admissible(n, order):
        return []
    if n == 1:
        return [cls(1, 0)]
    parts = [(Q.split_prime(cls, p), e) for p, e in factor_int(n)]
    out = []
    for choice in itertools.product((0, 1), repeat=len(parts)):
        q = cls(1, 0)
        for (pair, e), c in zip(parts, choice):
            q = q * pair[c] ** e
        assert q.is_primary()
        out.append(q)
    return out


def character_from_q(q: QuadInt, order: int | None = None) -> CharacterTable:
    """Value table of m -> (m/q) on Z/N(q)Z."""
    cls = type(q)
    if order is not None and ring_for(order) is not cls:
        raise DomainError(f"{q} does not live in the ring for order {order}")
    order = cls.ORDER
    n = q.norm()
    if not (q.is_primary() or q == cls(1, 0)):
        raise DomainError(f"{q} is not primary")
    if n == 1:
        return CharacterTable(order, 1, q, np.zeros(1, dtype=np.int8))
    if Q.has_rational_prime_divisor(q):
        raise DomainError(f"{q} has a rational prime divisor")
    m = np.arange(n, dtype=np.int64)
    total = np.zeros(n, dtype=np.int64)
    dead = np.zeros(n, dtype=bool)
    for pi, e in Q.factor_primary(q).factors:
        s = Q.prime_symbol_array(pi, m, np.zeros_like(m))
        dead |= s < 0
        total += e * s.astype(np.int64)
    values = (total % order).astype(np.int8)
    values[dead] = -1
    return CharacterTable(order, n, q, values)


def set_S(n: int, order: int) -> list[CharacterTable]:
    """The family S_{order,n}, one table per generator from ``enumerate_q``."""
    return [character_from_q(q) for q in enumerate_q(n, order)]


def distinct_S(n: int, order: int) -> list[CharacterTable]:
    """``set_S`` with coinciding tables merged (first generator kept)."""
    seen = {}
    for chi in set_S(n, order):
        seen.setdefault(chi.key(), chi)
    return list(seen.values())


def primitive_chars_dlog(p: int, order: int) -> list[CharacterTable]:
    """The two characters of exact order ``order`` mod p, built from the least primitive root."""
    ring_for(order)
    if not is_prime(p) or p % order != 1:
        raise DomainError(f"no primitive order-{order} character modulo {p}")
    g = int(primitive_root(p))
    out = []
    for c in (1, order - 1):
        vals = np.full(p, -1, dtype=np.int8)
        x = 1
        for t in range(p - 1):
            vals[x] = (c * t) % order
            x = x * g % p
        out.append(CharacterTable(order, p, None, vals))
    return out
