"""Scalar layer: Lucas binomials against the big-integer oracle, p-adics."""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dividedops.errors import InsufficientPrecision, PrecisionMismatch
from dividedops.scalars import (
    FpScalar,
    PadicInt,
    Prime,
    binom_int_mod_p,
    binom_nat_mod_p,
    binom_padic,
    padic_length,
)


def int_binom(m: int, k: int) -> int:
    # independent oracle: the integer-valued polynomial m(m-1)...(m-k+1)/k!
    num = 1
    for i in range(k):
        num *= m - i
    return num // math.factorial(k)


def test_prime_validation():
    assert Prime(2).p == 2
    assert Prime(65521).p == 65521  # largest prime below 2^16
    for bad in (0, 1, 4, 9, 15, 1 << 16, 65536, 65537):
        with pytest.raises(ValueError):
            Prime(bad)


def test_fpscalar_arithmetic():
    p = Prime(5)
    a = FpScalar(3, p)
    b = FpScalar(4, p)
    assert (a + b).value == 2
    assert (a * b).value == 2
    assert (-a).value == 2
    assert (a - b).value == 4
    assert a.inverse().value == 2
    with pytest.raises(ValueError):
        FpScalar(5, p)


def test_binom_nat_examples():
    assert binom_nat_mod_p(4, 2, 3).value == math.comb(4, 2) % 3 == 0
    assert binom_nat_mod_p(7, 0, 5).value == 1
    assert binom_nat_mod_p(7, 5, 3).value == math.comb(7, 5) % 3 == 0


def test_lucas_consistency_small_exhaustive():
    for p in (2, 3, 5, 7):
        for m in range(120):
            for k in range(120):
                assert binom_nat_mod_p(m, k, p).value == math.comb(m, k) % p


def test_lucas_consistency_sampled_to_2000():
    rng = random.Random(7)
    for p in (2, 3, 5, 7):
        for _ in range(400):
            m = rng.randint(0, 2000)
            k = rng.randint(0, 2000)
            assert binom_nat_mod_p(m, k, p).value == math.comb(m, k) % p


def test_binom_int_examples():
    assert binom_int_mod_p(-1, 2, 3).value == 1
    assert binom_int_mod_p(-2, 1, 5).value == 3
    assert binom_int_mod_p(-3, 2, 2).value == int_binom(-3, 2) % 2 == 0


def test_binom_int_matches_falling_factorial_oracle():
    for p in (2, 3, 5):
        for m in range(-60, 61):
            for k in range(0, 12):
                assert binom_int_mod_p(m, k, p).value == int_binom(m, k) % p


def test_pascal_identity():
    for p in (2, 3, 5):
        for m in range(-50, 51):
            for k in range(0, 21):
                lhs = binom_int_mod_p(m, k, p).value
                rhs = (
                    binom_int_mod_p(m - 1, k, p).value
                    + (binom_int_mod_p(m - 1, k - 1, p).value if k > 0 else 0)
                ) % p
                assert lhs == rhs


def test_binom_padic_examples():
    p2 = Prime(2)
    s = PadicInt((1, 1), p2)  # s = 3 mod 4
    assert binom_padic(s, 2).value == int_binom(3, 2) % 2 == 1
    assert binom_padic(s, 0).value == 1
    s5 = PadicInt((4, 2, 0), Prime(5))
    assert binom_padic(s5, 1).value == 4


def test_binom_padic_insufficient_precision():
    s = PadicInt((1,), Prime(2))
    with pytest.raises(InsufficientPrecision):
        binom_padic(s, 2)  # k = 2 has a digit at index 1
    # high zero digits of k are harmless
    assert binom_padic(s, 1).value == 1


def test_binom_padic_agrees_with_integers():
    rng = random.Random(3)
    for p in (2, 3, 5):
        for _ in range(200):
            m = rng.randint(-200, 200)
            k = rng.randint(0, 30)
            s = PadicInt.from_int(m, p, precision=8)
            assert binom_padic(s, k).value == binom_int_mod_p(m, k, p).value


@given(st.integers(2, 7).filter(lambda q: q in (2, 3, 5, 7)),
       st.integers(0, 400),
       st.data())
@settings(max_examples=60, deadline=None)
def test_binom_padic_continuity(p, k, data):
    # digits of s above padic_length(k) never change the value
    length = padic_length(k, p)
    prec = length + 3
    low = data.draw(st.lists(st.integers(0, p - 1), min_size=prec, max_size=prec))
    s = PadicInt(tuple(low), Prime(p))
    tweaked = list(low)
    for i in range(length, prec):
        tweaked[i] = data.draw(st.integers(0, p - 1))
    t = PadicInt(tuple(tweaked), Prime(p))
    assert binom_padic(s, k) == binom_padic(t, k)


def test_padic_from_int_examples():
    assert PadicInt.from_int(-1, 3, 3).digits == (2, 2, 2)
    assert PadicInt.from_int(4, 2, 3).digits == (0, 0, 1)
    assert PadicInt.from_int(7, 5, 2).digits == (2, 1)


def test_padic_add_neg_examples():
    p2 = Prime(2)
    a = PadicInt((1, 1), p2)
    b = PadicInt((1, 0), p2)
    assert (a + b).digits == (0, 0)
    one = PadicInt((1, 0, 0), Prime(3))
    assert (-one).digits == (2, 2, 2)
    z = PadicInt.from_int(0, 2, 2)
    assert (a + z) == a


def test_padic_mismatch_is_hard_error():
    a = PadicInt.from_int(1, 2, 3)
    b = PadicInt.from_int(1, 2, 4)
    with pytest.raises(PrecisionMismatch):
        a + b


@given(st.sampled_from([2, 3, 5]), st.integers(1, 5), st.data())
@settings(max_examples=60, deadline=None)
def test_padic_group_axioms(p, prec, data):
    digs = st.lists(st.integers(0, p - 1), min_size=prec, max_size=prec)
    a = PadicInt(tuple(data.draw(digs)), Prime(p))
    b = PadicInt(tuple(data.draw(digs)), Prime(p))
    c = PadicInt(tuple(data.draw(digs)), Prime(p))
    assert (a + b) == (b + a)
    assert ((a + b) + c) == (a + (b + c))
    assert (a + (-a)).is_zero()
    # exponent p^precision: p^K copies of a sum to zero
    assert a.scale(p ** prec).is_zero()


def test_padic_exponent_by_repeated_addition():
    a = PadicInt((1, 2), Prime(3))
    acc = PadicInt.from_int(0, 3, 2)
    for _ in range(9):
        acc = acc + a
    assert acc.is_zero()


def test_padic_roundtrip_to_int():
    rng = random.Random(11)
    for p in (2, 3, 5):
        for _ in range(100):
            m = rng.randint(-3000, 3000)
            s = PadicInt.from_int(m, p, 6)
            assert s.to_int() == m % p ** 6
