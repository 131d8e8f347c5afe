"""Small number-theory helpers: sieve, trial-division factoring, orders, valuations."""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

__all__ = [
    "prime_sieve",
    "is_prime",
    "factorize",
    "prime_factors",
    "smallest_prime_factor",
    "largest_prime_factor",
    "valuation",
    "multiplicative_order",
    "divisors",
    "prime_powers_upto",
]

SEGMENT_THRESHOLD = 10**7


def _simple_sieve(limit: int) -> np.ndarray:
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask)


def prime_sieve(limit: int) -> list[int]:
    """All primes <= limit, ascending. Segmented above ``SEGMENT_THRESHOLD``."""
    if limit < 2:
        return []
    if limit <= SEGMENT_THRESHOLD:
        return _simple_sieve(limit).tolist()
    base = _simple_sieve(math.isqrt(limit))
    out = base.tolist()
    seg = SEGMENT_THRESHOLD
    lo = math.isqrt(limit) + 1
    while lo <= limit:
        hi = min(lo + seg - 1, limit)
        mask = np.ones(hi - lo + 1, dtype=bool)
        for p in base:
            p = int(p)
            if p * p > hi:
                break
            start = max(p * p, -(-lo // p) * p)
            mask[start - lo :: p] = False
        out.extend((np.flatnonzero(mask) + lo).tolist())
        lo = hi + 1
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=65536)
def _factor_cached(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    for p in (2, 3):
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
    p = 5
    step = 2
    while p * p <= n:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
        p += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def factorize(n: int) -> list[tuple[int, int]]:
    """(prime, exponent) pairs of |n| by trial division, ascending primes."""
    n = abs(n)
    if n < 2:
        return []
    return list(_factor_cached(n))


def prime_factors(n: int) -> list[int]:
    return [p for p, _ in factorize(n)]


def smallest_prime_factor(n: int) -> int:
    return factorize(n)[0][0]


def largest_prime_factor(n: int) -> int:
    return factorize(n)[-1][0]


def valuation(n: int, p: int) -> int:
    """v_p(n) for n != 0."""
    if n == 0:
        raise ValueError("v_p(0) is infinite")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def divisors(n: int) -> list[int]:
    """Positive divisors of |n|, ascending."""
    divs = [1]
    for p, k in factorize(n):
        divs = [d * p**i for d in divs for i in range(k + 1)]
    return sorted(divs)


def multiplicative_order(a: int, p: int) -> int:
    """Order of a in (Z/pZ)^x for prime p; factor p-1 then strip prime factors."""
    a %= p
    if a == 0:
        raise ValueError(f"{a} is not a unit mod {p}")
    order = p - 1
    for q, _ in factorize(p - 1):
        while order % q == 0 and pow(a, order // q, p) == 1:
            order //= q
    return order


def prime_powers_upto(limit: int) -> list[tuple[int, int, int]]:
    """(p, j, p^j) for every prime power p^j <= limit, j >= 1."""
    out = []
    for p in prime_sieve(limit):
        q, j = p, 1
        while q <= limit:
            out.append((p, j, q))
            q *= p
            j += 1
    return out
