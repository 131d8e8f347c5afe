import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from indexdiv.primes import (
    divisors,
    factorize,
    is_prime,
    multiplicative_order,
    prime_powers_upto,
    prime_sieve,
    valuation,
)
from oracles import naive_order, trial_primes


def test_small_sieve_matches_trial_division():
    assert prime_sieve(2000) == trial_primes(2000)
    assert prime_sieve(1) == [] and prime_sieve(2) == [2]


def test_prime_count_million():
    assert len(prime_sieve(10**6)) == 78498 == sympy.primepi(10**6)


@pytest.mark.slow
def test_segmented_sieve_tail():
    ps = prime_sieve(10**7 + 2000)
    assert len(ps) == sympy.primepi(10**7 + 2000)
    assert ps[-5:] == list(sympy.primerange(10**7, 10**7 + 2001))[-5:]


@given(st.integers(-5, 10**12))
def test_is_prime_against_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


@given(st.integers(1, 10**7))
def test_factorize_reassembles(n):
    fac = factorize(n)
    prod = 1
    for p, k in fac:
        assert is_prime(p)
        prod *= p**k
    assert prod == n
    assert [p for p, _ in fac] == sorted(p for p, _ in fac)


@given(st.integers(1, 5000))
def test_divisors(n):
    assert divisors(n) == [d for d in range(1, n + 1) if n % d == 0]


def test_valuation():
    assert valuation(48, 2) == 4 and valuation(48, 3) == 1 and valuation(48, 5) == 0


@given(st.sampled_from(trial_primes(3000)), st.integers(2, 10**6))
def test_multiplicative_order(p, a):
    if a % p == 0:
        return
    assert multiplicative_order(a, p) == naive_order(a, p)


def test_prime_powers_upto():
    got = sorted(q for _, _, q in prime_powers_upto(30))
    assert got == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29]
