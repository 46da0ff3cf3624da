import io
import itertools
import math

import numpy as np
import pytest

from charmeans._arith import factor_int, is_perfect_power
from charmeans.characters import (
    CharacterTable,
    admissible_moduli,
    character_from_q,
    counts_to_complex,
    distinct_S,
    enumerate_q,
    primitive_chars_dlog,
    set_S,
)
from charmeans.eisenstein import EisInt
from charmeans.errors import DomainError
from charmeans.gaussian import GaussInt

W, G = EisInt, GaussInt


def keys(tables):
    return {t.key() for t in tables}


def test_admissible_examples():
    assert admissible_moduli(10, 3) == [1, 7]
    assert admissible_moduli(10, 4) == [1, 5]
    assert admissible_moduli(1, 3) == [1]


def test_enumerate_examples():
    assert enumerate_q(7, 3) == [W(-2, -3), W(1, 3)]
    q49 = enumerate_q(49, 3)
    assert len(q49) == 2 and all(q.norm() == 49 and q.is_primary() for q in q49)
    assert set(q49) == {W(-2, -3) ** 2, W(1, 3) ** 2}
    assert enumerate_q(10, 3) == []


def test_set_S_examples():
    a, b = set_S(7, 3)
    assert a.conj().key() == b.key()
    (one,) = set_S(1, 3)
    assert one.modulus == 1 and one.values.tolist() == [0]
    s25 = set_S(25, 4)
    assert [t.q for t in s25] == [G(-1, 2) ** 2, G(-1, -2) ** 2]
    assert all(t.modulus == 25 for t in s25)


def test_dlog_examples():
    assert keys(primitive_chars_dlog(7, 3)) == keys(set_S(7, 3))
    five = primitive_chars_dlog(5, 4)
    assert len(five) == 2
    for t in five:
        live = t.values[t.values >= 0]
        assert set(live.tolist()) == {0, 1, 2, 3}  # exact order 4
    for t in primitive_chars_dlog(13, 3):
        assert np.all((3 * t.values[1:]) % 3 == 0) and t.values[0] == -1
    with pytest.raises(DomainError):
        primitive_chars_dlog(11, 3)


def test_character_from_q_rejects_bad_generators():
    with pytest.raises(DomainError):
        character_from_q(W(-7))  # rational prime divisor
    with pytest.raises(DomainError):
        character_from_q(W(2, 3))  # not primary
    with pytest.raises(DomainError):
        character_from_q(W(-2, -3), order=4)


@pytest.mark.parametrize("order", [3, 4])
def test_table_invariants(order):
    for n in admissible_moduli(400, order):
        for chi in set_S(n, order):
            v = chi.values
            m = np.arange(n)
            assert np.array_equal(v < 0, np.gcd(m, n) > 1) if n > 1 else v.tolist() == [0]
            # complete multiplicativity on a grid
            a, b = np.meshgrid(m[v >= 0][:40], m[v >= 0][:40])
            assert np.array_equal(v[(a * b) % n], (v[a] + v[b]) % order)
            # chi**order is principal, and conjugation stays inside the family
            assert chi.conj().key() in keys(set_S(n, order))


@pytest.mark.parametrize("order", [3, 4])
def test_crt_structure_against_dlog(order):
    """Each table is sum_i alpha_i * psi_i(m mod p_i) with psi_i primitive mod p_i."""
    for n in admissible_moduli(1500, order):
        if n == 1:
            continue
        fac = factor_int(n)
        m = np.arange(n)
        built = set()
        for choice in itertools.product(*(primitive_chars_dlog(p, order) for p, _ in fac)):
            total = np.zeros(n, dtype=np.int64)
            dead = np.zeros(n, dtype=bool)
            for (p, e), psi in zip(fac, choice):
                r = psi.values[m % p].astype(np.int64)
                dead |= r < 0
                total += e * r
            vals = (total % order).astype(np.int8)
            vals[dead] = -1
            built.add((n, vals.tobytes()))
        assert keys(set_S(n, order)) == built


@pytest.mark.parametrize("order", [3, 4])
def test_period_sums(order):
    for n in admissible_moduli(1000, order):
        for chi in set_S(n, order):
            c = chi.period_counts()
            if n == 1 or is_perfect_power(n, order):
                # principal on the units: every live entry is exponent 0
                assert chi.is_principal()
            else:
                assert not chi.is_principal()
                # exact zero: all three counts equal (order 3), opposite pairs equal (order 4)
                assert (c[0] == c[1] == c[2]) if order == 3 else (c[0] == c[2] and c[1] == c[3])
                assert counts_to_complex(order, c) == 0


def test_family_size_and_distinct():
    for order in (3, 4):
        for n in admissible_moduli(2000, order):
            fam = set_S(n, order)
            w = len(factor_int(n)) if n > 1 else 0
            assert len(fam) == 2**w
            assert len(distinct_S(n, order)) == len(keys(fam))


def test_csv_export():
    chi = set_S(7, 3)[0]
    text = chi.to_csv()
    lines = text.splitlines()
    assert lines[0] == "m,exponent" and lines[1] == "0," and len(lines) == 8
    buf = io.StringIO()
    assert chi.to_csv(buf) is None and buf.getvalue() == text


def test_table_is_read_only_and_callable():
    chi = set_S(5, 4)[0]
    with pytest.raises(ValueError):
        chi.values[1] = 2
    assert chi(0) == 0 and chi(1) == 1
    assert abs(chi(2)) == pytest.approx(1.0)
    assert isinstance(chi, CharacterTable) and math.isclose(abs(chi(12)), 1.0)
