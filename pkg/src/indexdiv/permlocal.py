"""Local (mod p) tests for whether a prime can lie in D.

For p not dividing f(0), p is in D exactly when f permutes Z/pZ as a single
p-cycle. The predicates here rule that out cheaply for trinomials.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .orbit import rank_of_apparition
from .poly import IntPolynomial, reduce_coeffs
from .primes import is_prime, multiplicative_order, prime_sieve

__all__ = [
    "Parity",
    "Restriction",
    "Verdict",
    "PermutationProfile",
    "RestrictionReport",
    "profile_mod_p",
    "prime_in_divset_via_period",
    "restriction_predicates",
    "circulant_constant",
    "circulant_bruteforce",
    "injectivity_resultant_check",
    "linear_case_predicate",
    "power_map_parity",
    "parity_restriction",
    "density_scan",
]


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"
    NOT_APPLICABLE = "n/a"


class Restriction(enum.Enum):
    EVEN_EXPONENT = "even-exponent"
    EVEN_QUOTIENT = "even-quotient"
    ORDER_NOT_DIVIDING = "order-not-dividing"
    GCD_TOO_SMALL = "gcd-too-small"
    LINEAR_CASE = "linear-case"
    PARITY_RESTRICTION = "parity-restriction"


class Verdict(enum.Enum):
    EXCLUDED = "excluded"
    NOT_EXCLUDED = "not-excluded"
    NOT_APPLICABLE = "not-applicable"


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def _image_table(f: IntPolynomial, p: int) -> np.ndarray:
    """f(x) mod p for x = 0..p-1."""
    x = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for a in reduce_coeffs(f, p):
        acc = (acc * x + a) % p
    return acc


@dataclass(frozen=True)
class PermutationProfile:
    """Functional graph of x -> f(x) on Z/pZ.

    ``cycle_type`` lists the lengths of all cycles (for a permutation these
    partition p). ``zero_tail``/``zero_cycle`` locate 0: after ``zero_tail``
    steps it enters a cycle of length ``zero_cycle``.
    """

    p: int
    is_permutation: bool
    cycle_type: tuple[int, ...]
    parity: Parity
    zero_tail: int
    zero_cycle: int
    image_size: int

    @property
    def is_cyclic(self) -> bool:
        return self.is_permutation and self.cycle_type == (self.p,)


def profile_mod_p(f: IntPolynomial, p: int) -> PermutationProfile:
    _require_prime(p)
    img = _image_table(f, p).tolist()
    image_size = len(set(img))
    is_perm = image_size == p

    # cycles of the functional graph: colour-by-walk
    state = [0] * p  # 0 unseen, 1 on current walk, 2 done
    cycles = []
    for s in range(p):
        if state[s]:
            continue
        walk = []
        x = s
        while state[x] == 0:
            state[x] = 1
            walk.append(x)
            x = img[x]
        if state[x] == 1:
            cycles.append(len(walk) - walk.index(x))
        for y in walk:
            state[y] = 2
    cycles.sort()

    seen = {}
    x, n = 0, 0
    while x not in seen:
        seen[x] = n
        x = img[x]
        n += 1
    zero_tail = seen[x]
    zero_cycle = n - seen[x]

    if is_perm:
        parity = Parity.EVEN if (p - len(cycles)) % 2 == 0 else Parity.ODD
    else:
        parity = Parity.NOT_APPLICABLE
    return PermutationProfile(p, is_perm, tuple(cycles), parity, zero_tail, zero_cycle, image_size)


def prime_in_divset_via_period(f: IntPolynomial, p: int) -> bool:
    """p in D iff 0 is fixed mod p (p | f(0)) or 0 has period exactly p."""
    _require_prime(p)
    return rank_of_apparition(f, p) in (1, p)


def _reduce_exp(k: int, p: int) -> int:
    """Representative of k in [1, p-1] modulo p-1 (x^k and x^k' agree on units)."""
    return (k - 1) % (p - 1) + 1


@dataclass(frozen=True)
class RestrictionReport:
    p: int
    fired: frozenset[Restriction]
    reduced: tuple[int, int]  # exponents after reduction into [1, p-1]

    @property
    def excluded(self) -> bool:
        return bool(self.fired)


def restriction_predicates(d: int, e: int, c: int, p: int) -> RestrictionReport:
    """Which exclusion criteria fire for p and f = x^d + x^e + c.

    Every criterion presumes p does not divide c (otherwise 0 is fixed mod p
    and p is in D), so nothing fires when p | c.
    """
    _require_prime(p)
    if d < 1 or e < 1 or d == e:
        raise ValueError("need distinct exponents >= 1")
    rd, re_ = _reduce_exp(d, p), _reduce_exp(e, p)
    fired: set[Restriction] = set()
    if c % p == 0:
        return RestrictionReport(p, frozenset(), (rd, re_))

    if d % 2 == 0 or e % 2 == 0:
        fired.add(Restriction.EVEN_EXPONENT)

    if rd != re_:
        if rd % 2 == 1 and re_ % 2 == 1:
            k = gcd(rd - re_, p - 1)
            if ((p - 1) // k) % 2 == 0:
                fired.add(Restriction.EVEN_QUOTIENT)
            if k % multiplicative_order(2, p) != 0:
                fired.add(Restriction.ORDER_NOT_DIVIDING)
            if 2**k < p:  # k < log2(p)
                fired.add(Restriction.GCD_TOO_SMALL)
    else:
        # x^d + x^e + c = 2 x^d + c mod p
        if rd == 1 and linear_case_predicate(2, c, p) is Verdict.EXCLUDED:
            fired.add(Restriction.LINEAR_CASE)
        if parity_restriction(2, rd, c, p) is Verdict.EXCLUDED:
            fired.add(Restriction.PARITY_RESTRICTION)
    return RestrictionReport(p, frozenset(fired), (rd, re_))


def circulant_constant(d: int, e: int, p: int) -> int:
    """Determinant of the (p-1)x(p-1) circulant of x^d + x^e, in closed form.

    With k = gcd(d-e, p-1): 0 if (p-1)/k is even, else (-1)^(ep) 2^k, which is
    (-1)^e 2^k for odd p. Exponents at or above p-1 wrap around (the matrix
    lives mod x^(p-1) - 1).
    """
    _require_prime(p)
    if not 0 < e < d:
        raise ValueError("need 0 < e < d")
    k = gcd(d - e, p - 1)
    if ((p - 1) // k) % 2 == 0:
        return 0
    # the product of all (p-1)-th roots of unity is (-1)^p
    return (-1) ** (e * p) * 2**k


def circulant_matrix(d: int, e: int, size: int) -> list[list[int]]:
    """Row i holds the coefficients of x^i (x^d + x^e) mod x^size - 1."""
    rows = []
    for i in range(size):
        row = [0] * size
        row[(d + i) % size] += 1
        row[(e + i) % size] += 1
        rows.append(row)
    return rows


def det_mod_p(matrix: list[list[int]], p: int) -> int:
    """Determinant over Z/pZ by Gaussian elimination."""
    a = [[v % p for v in row] for row in matrix]
    n = len(a)
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det = det * a[col][col] % p
        inv = pow(a[col][col], -1, p)
        for r in range(col + 1, n):
            if a[r][col]:
                t = a[r][col] * inv % p
                a[r] = [(x - t * y) % p for x, y in zip(a[r], a[col])]
    return det % p


def circulant_bruteforce(d: int, e: int, p: int) -> int:
    """Same determinant as circulant_constant, mod p, by building the matrix and eliminating."""
    _require_prime(p)
    if p > 101:
        raise ValueError("dense determinant limited to p <= 101")
    if not 0 < e < d:
        raise ValueError("need 0 < e < d")
    return det_mod_p(circulant_matrix(d, e, p - 1), p)


def injectivity_resultant_check(f: IntPolynomial, p: int) -> bool:
    """Is f injective on Z/pZ? Decided by image size.

    Cross-check: for injective f, g = f - f(0) permutes the units, so the
    constant term prod_{a != 0} g(a) of res(f, x^(p-1) - 1) is -1 mod p.
    """
    _require_prime(p)
    img = _image_table(f, p)
    injective = len(set(img.tolist())) == p
    g = (img[1:] - img[0]) % p
    const = 1
    for v in g.tolist():
        const = const * v % p
    if injective and const != p - 1:
        raise ArithmeticError(f"resultant constant term {const} != -1 mod {p} for an injective map")
    return injective


def linear_case_predicate(a: int, c: int, p: int) -> Verdict:
    """f = a x + c mod p: p in D only if a = 1 or c = 0 mod p."""
    _require_prime(p)
    if a % p != 1 % p and c % p != 0:
        return Verdict.EXCLUDED
    return Verdict.NOT_EXCLUDED


def power_map_parity(d: int, p: int) -> Parity:
    """Sign of x -> x^d on Z/pZ for p = 1 mod 4: odd exactly when d = 3 mod 4."""
    _require_prime(p)
    if p % 4 != 1:
        raise ValueError("need p = 1 mod 4")
    if gcd(d, p - 1) != 1:
        raise ValueError(f"x^{d} does not permute Z/{p}Z")
    return Parity.ODD if d % 4 == 3 else Parity.EVEN


def parity_restriction(a: int, d: int, c: int, p: int) -> Verdict:
    """f = a x^d + c mod p is an odd permutation, hence not a p-cycle, when
    p = 1 mod 4, d = 3 mod 4 and ord_p(a) is odd.

    If x^d does not permute Z/pZ then neither does f, so the exclusion
    still holds. Not applicable when a = 0 or p | c (0 is then fixed and p is in D).
    """
    _require_prime(p)
    if a % p == 0 or c % p == 0:
        return Verdict.NOT_APPLICABLE
    if p % 4 == 1 and d % 4 == 3 and multiplicative_order(a, p) % 2 == 1:
        return Verdict.EXCLUDED
    return Verdict.NOT_APPLICABLE


@dataclass(frozen=True)
class DensityResult:
    bound: int
    qualifying: int
    total: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.qualifying, self.total) if self.total else Fraction(0)


def density_scan(bound: int) -> DensityResult:
    """Primes p <= bound with p = 1 mod 8 and ord_p(2) odd, out of all primes <= bound."""
    primes = prime_sieve(bound)
    hits = sum(1 for p in primes if p % 8 == 1 and multiplicative_order(2, p) % 2 == 1)
    return DensityResult(bound, hits, len(primes))
