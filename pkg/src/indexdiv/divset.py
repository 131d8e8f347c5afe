"""Index divisibility sets D(f) = {n : n | f^n(0)} over a window [1, N]."""

from __future__ import annotations

import enum
from bisect import bisect_left
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd

from ._vector import residues_at_own_index
from .orbit import UndecidedError, classify_zero, iterate_index_mod, valuation_of_term
from .poly import IntPolynomial
from .primes import divisors, factorize, is_prime, prime_sieve, valuation

__all__ = [
    "DivisibilitySetWindow",
    "ClosureReport",
    "PrimeConstraint",
    "in_div_set",
    "div_set_window",
    "scan_members",
    "check_closure_properties",
    "rigidity_witness",
    "trinomial_prime_constraint",
    "check_exponent_shift",
]


def in_div_set(f: IntPolynomial, n: int) -> bool:
    if n < 1:
        raise ValueError("n must be >= 1")
    return iterate_index_mod(f, n, n) == 0


def _scan_chunk(args) -> list[int]:
    f, ns = args
    r = residues_at_own_index(f, ns)
    return [n for n, v in zip(ns, r.tolist()) if v == 0]


def scan_members(f: IntPolynomial, candidates, workers: int = 1) -> list[int]:
    """Sorted members of D among ``candidates``, all candidates scanned in one vectorised sweep."""
    ns = sorted(set(int(n) for n in candidates))
    if not ns:
        return []
    if ns[0] < 1:
        raise ValueError("candidates must be >= 1")
    if workers <= 1 or len(ns) < 2 * workers:
        return _scan_chunk((f, ns))
    # interleave so each worker sees a similar spread of moduli
    chunks = [(f, ns[i::workers]) for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_scan_chunk, chunks))
    return sorted(n for part in parts for n in part)


@dataclass(frozen=True)
class DivisibilitySetWindow:
    f: IntPolynomial
    bound: int
    members: tuple[int, ...]
    degenerate: bool = False  # 0 is periodic, so f^n(0) = 0 exactly for some n

    def __contains__(self, n: int) -> bool:
        i = bisect_left(self.members, n)
        return i < len(self.members) and self.members[i] == n

    @property
    def primes(self) -> list[int]:
        return [n for n in self.members if is_prime(n)]


def _zero_is_periodic(f: IntPolynomial) -> bool:
    try:
        return classify_zero(f, budget=10_000).periodic
    except UndecidedError:
        return False


def div_set_window(f: IntPolynomial, bound: int, workers: int = 1) -> DivisibilitySetWindow:
    if bound < 1:
        raise ValueError("bound must be >= 1")
    members = scan_members(f, range(1, bound + 1), workers)
    return DivisibilitySetWindow(f, bound, tuple(members), _zero_is_periodic(f))


def rigidity_witness(f: IntPolynomial) -> bool:
    """Zero linear coefficient and 0 wandering: the orbit is then a rigid divisibility sequence."""
    if f.coefficient(1) != 0:
        return False
    try:
        return classify_zero(f).wandering
    except UndecidedError:
        return False


@dataclass
class ClosureReport:
    """Instances checked and counterexamples found, keyed by property name."""

    checked: dict[str, int] = field(default_factory=dict)
    counterexamples: dict[str, list[tuple]] = field(default_factory=dict)
    skipped: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(self.counterexamples.values())

    def _record(self, name: str, holds: bool, instance: tuple) -> None:
        self.checked[name] = self.checked.get(name, 0) + 1
        bad = self.counterexamples.setdefault(name, [])
        if not holds:
            bad.append(instance)


def check_closure_properties(f: IntPolynomial, window: DivisibilitySetWindow) -> ClosureReport:
    """Check every in-window instance of the closure rules of D.

    divides_f0       n | f(0)                                  => n in D
    even_primes      f even, p in D prime                      => p | f(0)
    valuation        n in D, v_p(n) < v_p(f^n(0)), np <= N     => np in D
    coprime_product  m, n in D, gcd(m, n) = 1, mn <= N          => mn in D
    smallest_prime   m | n in D, p = spf(n/m), p not | m        => mp in D
    spf_member       n in D, n > 1                             => spf(n) in D
    rigid_smallest   (rigid) m | n in D, p = spf(n/m)           => mp in D
    rigid_largest    (rigid) n in D, p = lpf(n)                 => n/p in D
    """
    rep = ClosureReport()
    N = window.bound
    D = window.members
    inD = set(D)
    c = f.constant

    rep.checked["divides_f0"] = 0
    rep.counterexamples["divides_f0"] = []
    cands = range(1, N + 1) if c == 0 else [d for d in divisors(c) if d <= N]
    for n in cands:
        rep._record("divides_f0", n in inD, (n,))

    if f.is_even_function():
        rep.checked["even_primes"] = 0
        rep.counterexamples["even_primes"] = []
        for p in window.primes:
            rep._record("even_primes", c % p == 0, (p,))
    else:
        rep.skipped.append("even_primes")

    primes = prime_sieve(N)
    rep.checked["valuation"] = 0
    rep.counterexamples["valuation"] = []
    for n in D:
        for p in primes:
            if n * p > N:
                break
            v = valuation(n, p)
            if valuation_of_term(f, p, n, v + 1) > v:
                rep._record("valuation", n * p in inD, (n, p))

    rep.checked["coprime_product"] = 0
    rep.counterexamples["coprime_product"] = []
    for i, m in enumerate(D):
        for n in D[i + 1 :]:
            if m * n > N:
                break
            if gcd(m, n) == 1:
                rep._record("coprime_product", m * n in inD, (m, n))

    rigid = rigidity_witness(f)
    names = ["smallest_prime", "spf_member"] + (["rigid_smallest", "rigid_largest"] if rigid else [])
    for name in names:
        rep.checked[name] = 0
        rep.counterexamples[name] = []
    if not rigid:
        rep.skipped += ["rigid_smallest", "rigid_largest"]

    for n in D:
        if n == 1:
            continue
        fac = factorize(n)
        rep._record("spf_member", fac[0][0] in inD, (n,))
        if rigid:
            p = fac[-1][0]
            rep._record("rigid_largest", n // p in inD, (n,))
        for m in D:
            if m >= n:
                break
            if n % m:
                continue
            p = factorize(n // m)[0][0]
            if m % p:
                rep._record("smallest_prime", m * p in inD, (m, n))
            if rigid:
                rep._record("rigid_smallest", m * p in inD, (m, n))
    return rep


class PrimeConstraint(enum.Enum):
    ADMISSIBLE = "admissible"
    EXCLUDED_BY_PARITY = "excluded-by-parity"


def trinomial_prime_constraint(d: int, e: int, c: int, p: int) -> PrimeConstraint:
    """If d or e is even, the only primes in D_{d,e,c} divide c."""
    if not d > e >= 2:
        raise ValueError("need d > e >= 2")
    if (d % 2 == 0 or e % 2 == 0) and c % p != 0:
        return PrimeConstraint.EXCLUDED_BY_PARITY
    return PrimeConstraint.ADMISSIBLE


def check_exponent_shift(d: int, e: int, c: int, p: int, k1: int, k2: int) -> bool:
    """Shifting exponents by multiples of p-1 keeps p in D; verified directly on the shifted map."""
    if not d > e >= 2:
        raise ValueError("need d > e >= 2")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    d2, e2 = d + k1 * (p - 1), e + k2 * (p - 1)
    # the shifted pair need not stay ordered: x^a + x^b + c is symmetric in a, b
    if d2 < 3 or e2 < 2:
        raise ValueError(f"shifted exponents ({d2}, {e2}) out of range")
    if not in_div_set(IntPolynomial.from_trinomial(d, e, c), p):
        raise ValueError(f"{p} is not in D_{{{d},{e},{c}}}")
    return in_div_set(IntPolynomial.from_trinomial(d2, e2, c), p)
