"""Residue arithmetic, prime enumeration, Bernoulli numbers mod p."""

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fmplib.modular import (
    DenominatorNotInvertible,
    NotInvertible,
    PrimeMismatch,
    Residue,
    bernoulli_mod,
    inverse,
    is_prime,
    primes_in,
)

SMALL_PRIMES = [5, 7, 11, 13, 17, 19, 23, 31]


def extended_gcd(a, b):
    if b == 0:
        return a, 1, 0
    g, x, y = extended_gcd(b, a % b)
    return g, y, x - (a // b) * y


def bernoulli_exact(n_max):
    """B_0..B_n_max as exact rationals via sum(C(m+1, j) B_j) = 0."""
    bs = [Fraction(1)]
    for m in range(1, n_max + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * bs[j]
        bs.append(-acc / (m + 1))
    return bs


def reduce_fraction(q: Fraction, p: int) -> int:
    assert q.denominator % p != 0
    return q.numerator * pow(q.denominator, p - 2, p) % p


# --- inverse ---------------------------------------------------------------


def test_inverse_examples():
    assert inverse(Residue(3, 5)) == Residue(2, 5)
    assert inverse(Residue(4, 13)) == Residue(10, 13)
    g, x, _ = extended_gcd(4, 13)
    assert g == 1 and x % 13 == 10
    assert 4 * 10 % 13 == 1


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_inverse_of_one(p):
    assert inverse(Residue(1, p)) == Residue(1, p)


def test_inverse_of_zero_raises_with_prime():
    with pytest.raises(NotInvertible) as err:
        Residue(0, 7).inverse()
    assert err.value.prime == 7


@given(st.sampled_from(SMALL_PRIMES), st.data())
def test_inverse_involution_and_product(p, data):
    a = Residue(data.draw(st.integers(1, p - 1)), p)
    assert inverse(inverse(a)) == a
    assert a * inverse(a) == Residue(1, p)


# --- residue ring ----------------------------------------------------------


def test_residue_validation():
    with pytest.raises(ValueError):
        Residue(5, 5)
    with pytest.raises(ValueError):
        Residue(1, 6)
    assert Residue.of(-1, 5) == Residue(4, 5)
    assert Residue.of(12, 5) == Residue(2, 5)


def test_cross_prime_arithmetic_rejected():
    a, b = Residue(1, 5), Residue(1, 7)
    for op in (lambda: a + b, lambda: a - b, lambda: a * b, lambda: a / b):
        with pytest.raises(PrimeMismatch):
            op()


def test_residue_ops():
    a = Residue(3, 7)
    assert a + 5 == 1
    assert a - 4 == 6
    assert -a == 4
    assert a * 5 == 1
    assert a / 5 == Residue(2, 7)
    assert a**0 == 1 and a**2 == 2 and a**-1 == 5
    assert str(a) == "3 (mod 7)"


# --- primes ----------------------------------------------------------------


def test_primes_in_examples():
    assert primes_in(5, 20) == [5, 7, 11, 13, 17, 19]
    assert primes_in(7, 7) == [7]
    assert primes_in(24, 28) == []
    assert primes_in(2, 11) == [5, 7, 11]  # floor at 5


def test_primes_in_empty_range_rejected():
    with pytest.raises(ValueError):
        primes_in(10, 5)


def test_primes_in_matches_trial_division():
    def trial(n):
        return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))

    expected = [n for n in range(5, 10_001) if trial(n)]
    assert primes_in(5, 10_000) == expected


def test_is_prime_spot():
    assert is_prime(2) and is_prime(199) and is_prime(104729)
    assert not is_prime(1) and not is_prime(0) and not is_prime(187)


# --- Bernoulli -------------------------------------------------------------


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_bernoulli_b0(p):
    assert bernoulli_mod(0, p) == Residue(1, p)


def test_bernoulli_examples():
    # B_2 = 1/6, B_8 = -1/30, reduced from the exact rationals
    assert bernoulli_mod(2, 7) == Residue(6, 7)
    assert bernoulli_mod(2, 7).value == reduce_fraction(Fraction(1, 6), 7)
    assert bernoulli_mod(8, 11).value == reduce_fraction(Fraction(-1, 30), 11)


def test_bernoulli_guards():
    with pytest.raises(DenominatorNotInvertible):
        bernoulli_mod(10, 11)  # m > p - 3
    with pytest.raises(ValueError):
        bernoulli_mod(3, 11)  # odd index
    with pytest.raises(ValueError):
        bernoulli_mod(-2, 11)


def test_bernoulli_dual_path_against_exact_rationals():
    # The triangle scheme must agree with exact rational recurrence + reduction
    # for every even m <= p - 3 and every prime 7 <= p <= 199.
    primes = primes_in(7, 199)
    exact = bernoulli_exact(primes[-1] - 3)
    for p in primes:
        for m in range(0, p - 2, 2):
            assert bernoulli_mod(m, p).value == reduce_fraction(exact[m], p), (m, p)
