"""Primitive parts of orbit terms, Zsigmondy sets, growth bounds, finiteness of D for trinomials."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import prod

from .divset import div_set_window, rigidity_witness
from .orbit import classify_zero, orbit_exact
from .poly import IntPolynomial, trinomial
from .primes import divisors

__all__ = [
    "DEFAULT_BIT_BUDGET",
    "RigidityViolation",
    "PrimitiveSplit",
    "GrowthRow",
    "Finiteness",
    "FinitenessVerdict",
    "primitive_split_prefix",
    "zsigmondy_window",
    "check_growth",
    "finiteness_verdict",
]

DEFAULT_BIT_BUDGET = 1 << 20
DEFAULT_N_MAX = 8


class RigidityViolation(ArithmeticError):
    """|f^n(0)| is not divisible by the product of the earlier primitive parts it should contain."""

    def __init__(self, n: int):
        super().__init__(f"non-exact primitive division at n = {n}")
        self.n = n


@dataclass(frozen=True)
class PrimitiveSplit:
    n: int
    primitive: int  # P_n
    non_primitive: int  # N_n


def primitive_split_prefix(
    f: IntPolynomial, n_max: int = DEFAULT_N_MAX, bit_budget: int = DEFAULT_BIT_BUDGET
) -> list[PrimitiveSplit]:
    """|f^n(0)| = P_n * N_n for n <= n_max, with N_n the product of P_d over proper divisors d of n.

    Needs only exact division, never factorisation. Requires a rigid orbit
    (zero linear coefficient, 0 wandering).
    """
    if not rigidity_witness(f):
        raise ValueError("rigidity witness fails: need zero linear coefficient and 0 wandering")
    terms = orbit_exact(f, n_max, bit_cap=bit_budget).absolute
    prim: dict[int, int] = {}
    out = []
    for n in range(1, n_max + 1):
        non_prim = prod(prim[d] for d in divisors(n) if d < n)
        p_n, rem = divmod(terms[n - 1], non_prim)
        if rem:
            raise RigidityViolation(n)
        prim[n] = p_n
        out.append(PrimitiveSplit(n, p_n, non_prim))
    return out


def zsigmondy_window(
    f: IntPolynomial, n_max: int = DEFAULT_N_MAX, bit_budget: int = DEFAULT_BIT_BUDGET
) -> set[int]:
    """Indices n <= n_max whose term has no primitive prime divisor (P_n = 1)."""
    return {s.n for s in primitive_split_prefix(f, n_max, bit_budget) if s.primitive == 1}


@dataclass(frozen=True)
class GrowthRow:
    n: int
    cubic_bound: bool  # |a_n| > |a_{n-1}| (|a_{n-1}|^2 - 2|a_{n-1}| + 1)
    product_bound: bool  # prod_{k<n} |a_k| < |a_n|
    cubic_slack_bits: int
    product_slack_bits: int


def check_growth(
    f: IntPolynomial, n_max: int = DEFAULT_N_MAX, bit_budget: int = DEFAULT_BIT_BUDGET
) -> list[GrowthRow]:
    """Both growth inequalities behind the primitive-divisor argument, for 3 <= n <= n_max.

    Slack is reported in bits: bit_length(larger side) - bit_length(smaller side).
    """
    if trinomial(f) is None:
        raise ValueError("growth bounds are stated for x^d + x^e + c with d > e >= 2")
    if not classify_zero(f).wandering:
        raise ValueError("0 is not wandering")
    a = orbit_exact(f, n_max, bit_cap=bit_budget).absolute
    rows = []
    running = a[0]
    for n in range(2, n_max + 1):
        prev, cur = a[n - 2], a[n - 1]
        if n >= 3:
            cubic = prev * (prev * prev - 2 * prev + 1)
            rows.append(
                GrowthRow(
                    n,
                    cur > cubic,
                    running < cur,
                    cur.bit_length() - cubic.bit_length(),
                    cur.bit_length() - running.bit_length(),
                )
            )
        running *= cur
    return rows


class Finiteness(enum.Enum):
    FINITE_TRIVIAL = "finite-trivial"  # c = +-1, D = {1}
    INFINITE = "infinite"  # |c| >= 2
    DEGENERATE = "degenerate"  # 0 preperiodic


@dataclass(frozen=True)
class FinitenessVerdict:
    classification: Finiteness
    bound: int
    members: tuple[int, ...]
    consistent: bool  # window data agree with the classification


def finiteness_verdict(d: int, e: int, c: int, bound: int) -> FinitenessVerdict:
    """Classify D_{d,e,c} as finite or infinite and check the window against the claim.

    For c = +-1 the window must be exactly {1}; for |c| >= 2 it must contain
    every divisor of c in range.
    """
    if not d > e >= 2:
        raise ValueError("need d > e >= 2")
    f = IntPolynomial.from_trinomial(d, e, c)
    window = div_set_window(f, bound)
    members = window.members
    if not classify_zero(f).wandering:
        return FinitenessVerdict(Finiteness.DEGENERATE, bound, members, True)
    if abs(c) == 1:
        return FinitenessVerdict(Finiteness.FINITE_TRIVIAL, bound, members, members == (1,))
    need = {q for q in divisors(c) if q <= bound}
    return FinitenessVerdict(Finiteness.INFINITE, bound, members, need <= set(members))
