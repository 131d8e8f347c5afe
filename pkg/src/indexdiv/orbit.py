"""Orbit of 0 under f: exact prefixes, modular tail/cycle structure, valuations."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .poly import IntPolynomial, eval_exact, reduce_coeffs, trinomial

__all__ = [
    "BitBudgetExceeded",
    "UndecidedError",
    "OrbitPrefix",
    "ModularOrbit",
    "ZeroKind",
    "ZeroClassification",
    "orbit_exact",
    "orbit_mod",
    "iterate_index_mod",
    "classify_zero",
    "rank_of_apparition",
    "valuation_of_term",
]


class BitBudgetExceeded(RuntimeError):
    """An exact orbit term would exceed the bit budget.

    ``last_index`` is the largest n whose term f^n(0) fit.
    """

    def __init__(self, last_index: int, bits: int):
        super().__init__(f"term {last_index + 1} exceeds {bits} bits (last safe index {last_index})")
        self.last_index = last_index
        self.bits = bits


class UndecidedError(RuntimeError):
    """classify_zero ran out of iteration budget before deciding."""


@dataclass(frozen=True)
class OrbitPrefix:
    f: IntPolynomial
    terms: tuple[int, ...]  # terms[n-1] = f^n(0)

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, n: int) -> int:
        """f^n(0), 1-indexed; index 0 gives 0."""
        if n == 0:
            return 0
        if n < 0:
            raise IndexError(n)
        return self.terms[n - 1]

    @property
    def absolute(self) -> tuple[int, ...]:
        return tuple(abs(t) for t in self.terms)

    def is_consistent(self) -> bool:
        prev = 0
        for t in self.terms:
            if eval_exact(self.f, prev) != t:
                return False
            prev = t
        return True


def orbit_exact(f: IntPolynomial, n_max: int, bit_cap: int | None = None) -> OrbitPrefix:
    """First ``n_max`` terms f(0), f^2(0), ... as exact integers."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    terms = []
    x = 0
    for n in range(1, n_max + 1):
        x = eval_exact(f, x)
        if bit_cap is not None and x.bit_length() > bit_cap:
            raise BitBudgetExceeded(n - 1, bit_cap)
        terms.append(x)
    return OrbitPrefix(f, tuple(terms))


@dataclass(frozen=True)
class ModularOrbit:
    """Orbit of 0 mod m as a rho shape over the indices n >= 1.

    ``table[k]`` is f^(k+1)(0) mod m for k < tail + cycle; after the first
    ``tail`` terms the sequence repeats with period ``cycle``.
    """

    modulus: int
    tail: int
    cycle: int
    table: tuple[int, ...]

    def residue(self, n: int) -> int:
        """f^n(0) mod m for any n >= 0."""
        if n < 0:
            raise ValueError("index must be >= 0")
        if n == 0:
            return 0
        if n > self.tail:
            n = self.tail + (n - self.tail - 1) % self.cycle + 1
        return self.table[n - 1]

    def zero_indices(self) -> list[int]:
        return [k + 1 for k, r in enumerate(self.table) if r == 0]


def _step_fn(f: IntPolynomial, m: int):
    cs = reduce_coeffs(f, m)

    def step(x: int) -> int:
        acc = 0
        for a in cs:
            acc = (acc * x + a) % m
        return acc

    return step


def orbit_mod(f: IntPolynomial, m: int) -> ModularOrbit:
    """Tail and cycle of (f^n(0) mod m)_{n>=1} by Brent's algorithm."""
    if m < 1:
        raise ValueError("modulus must be >= 1")
    step = _step_fn(f, m)
    x0 = step(0)

    power = lam = 1
    tortoise, hare = x0, step(x0)
    while tortoise != hare:
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = step(hare)
        lam += 1

    tortoise = hare = x0
    for _ in range(lam):
        hare = step(hare)
    mu = 0
    while tortoise != hare:
        tortoise = step(tortoise)
        hare = step(hare)
        mu += 1

    table = [x0]
    for _ in range(mu + lam - 1):
        table.append(step(table[-1]))
    return ModularOrbit(m, mu, lam, tuple(table))


def iterate_index_mod(f: IntPolynomial, m: int, n: int) -> int:
    """f^n(0) mod m. Short indices are iterated directly, long ones go through orbit_mod."""
    if m < 1:
        raise ValueError("modulus must be >= 1")
    if n < 0:
        raise ValueError("index must be >= 0")
    if m == 1:
        return 0
    if n < m:
        step = _step_fn(f, m)
        x = 0
        for _ in range(n):
            x = step(x)
        return x
    return orbit_mod(f, m).residue(n)


def rank_of_apparition(f: IntPolynomial, m: int) -> int | None:
    """Least n >= 1 with m | f^n(0), or None if 0 never returns to 0 mod m."""
    if m < 1:
        raise ValueError("modulus must be >= 1")
    if m == 1:
        return 1
    step = _step_fn(f, m)
    x = 0
    # if 0 recurs, it is on the cycle and the rho has length <= m
    for n in range(1, m + 1):
        x = step(x)
        if x == 0:
            return n
    return None


def valuation_of_term(f: IntPolynomial, p: int, n: int, cap: int) -> int:
    """v_p(f^n(0)) computed mod p^cap. A result equal to ``cap`` means "at least cap"."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    r = iterate_index_mod(f, p**cap, n)
    if r == 0:
        return cap
    t = 0
    while r % p == 0:
        r //= p
        t += 1
    return t


class ZeroKind(enum.Enum):
    WANDERING = "wandering"
    PREPERIODIC = "preperiodic"


@dataclass(frozen=True)
class ZeroClassification:
    """Dynamics of 0. ``tail``/``period`` follow f^(tail+period)(0) = f^tail(0), both minimal."""

    kind: ZeroKind
    tail: int | None = None
    period: int | None = None
    method: str = "closed-form"

    @property
    def wandering(self) -> bool:
        return self.kind is ZeroKind.WANDERING

    @property
    def periodic(self) -> bool:
        return self.kind is ZeroKind.PREPERIODIC and self.tail == 0


def _trinomial_zero(d: int, e: int, c: int) -> ZeroClassification:
    if c == 0:
        return ZeroClassification(ZeroKind.PREPERIODIC, 0, 1)
    if c == -1 and (d % 2 == 0 or e % 2 == 0):
        if d % 2 == 0 and e % 2 == 0:
            # 0 -> -1 -> 1 -> 1
            return ZeroClassification(ZeroKind.PREPERIODIC, 2, 1)
        # 0 -> -1 -> -1
        return ZeroClassification(ZeroKind.PREPERIODIC, 1, 1)
    return ZeroClassification(ZeroKind.WANDERING)


def escape_radius(f: IntPolynomial) -> int | None:
    """R such that |x| >= R forces |f(x)| > |x| >= R (so the orbit is unbounded).

    None when no such radius exists (degree <= 0, or linear with |slope| = 1).
    """
    d = f.degree
    if d < 1:
        return None
    lead = abs(f.coeffs[d])
    rest = sum(abs(a) for a in f.coeffs[:d])
    if d == 1:
        return rest + 1 if lead >= 2 else None
    # |f(x)| >= |x|^(d-1) (lead*|x| - rest) >= 2|x| once lead*|x| >= rest + 2
    return max(2, -(-(rest + 2) // lead))


def classify_zero(f: IntPolynomial, budget: int = 1_000_000) -> ZeroClassification:
    """Wandering vs preperiodic for the orbit of 0.

    Trinomials x^d + x^e + c (d > e >= 2) use the closed-form classification;
    everything else iterates exactly until a repeat or until the orbit leaves
    the escape radius, which is a proof of wandering.
    """
    tri = trinomial(f)
    if tri is not None:
        return _trinomial_zero(*tri)
    d = f.degree
    if d == 1 and abs(f.coeffs[1]) == 1:
        a, b = f.coeffs[1], f.coeffs[0]
        if b == 0:
            return ZeroClassification(ZeroKind.PREPERIODIC, 0, 1, "linear")
        if a == 1:
            return ZeroClassification(ZeroKind.WANDERING, method="linear")
        return ZeroClassification(ZeroKind.PREPERIODIC, 0, 2, "linear")
    radius = escape_radius(f)
    seen = {0: 0}
    x = 0
    for n in range(1, budget + 1):
        x = eval_exact(f, x)
        if x in seen:
            mu = seen[x]
            return ZeroClassification(ZeroKind.PREPERIODIC, mu, n - mu, "iteration")
        if radius is not None and abs(x) >= radius:
            return ZeroClassification(ZeroKind.WANDERING, method="escape-radius")
        seen[x] = n
    raise UndecidedError(f"orbit of 0 undecided after {budget} steps")
