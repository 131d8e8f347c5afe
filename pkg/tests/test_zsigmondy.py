from math import gcd

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from indexdiv.divset import rigidity_witness
from indexdiv.orbit import BitBudgetExceeded, orbit_exact, rank_of_apparition, valuation_of_term
from indexdiv.poly import IntPolynomial, parse_poly
from indexdiv.zsigmondy import (
    Finiteness,
    check_growth,
    finiteness_verdict,
    primitive_split_prefix,
    zsigmondy_window,
)
from oracles import naive_valuation

rigid_trinomials = st.tuples(st.integers(3, 5), st.integers(2, 4), st.integers(-10, 10)).filter(
    lambda t: t[0] > t[1]
)


def test_primitive_parts_known():
    splits = primitive_split_prefix(parse_poly("x^3+x^2+1"), 4)
    assert [s.primitive for s in splits] == [1, 3, 37, 17341]
    assert splits[3].non_primitive == 3
    s = primitive_split_prefix(parse_poly("x^13+x^3+5"), 2)
    assert (s[0].primitive, s[1].non_primitive) == (5, 5)


def test_primitive_split_needs_rigidity():
    with pytest.raises(ValueError):
        primitive_split_prefix(parse_poly("x^3+x+1"))
    with pytest.raises(ValueError):
        primitive_split_prefix(parse_poly("x^4+x^2-1"))


def test_bit_budget():
    with pytest.raises(BitBudgetExceeded):
        primitive_split_prefix(parse_poly("x^5+x^3+7"), 8, bit_budget=10_000)


def test_zsigmondy_window_values():
    assert zsigmondy_window(parse_poly("x^3+x^2+1")) == {1}
    assert zsigmondy_window(parse_poly("x^4+x^2-3")) == set()


@given(rigid_trinomials)
def test_split_reassembles(t):
    d, e, c = t
    f = IntPolynomial.from_trinomial(d, e, c)
    assume(rigidity_witness(f))
    terms = orbit_exact(f, 5).absolute
    for s in primitive_split_prefix(f, 5):
        assert s.primitive * s.non_primitive == terms[s.n - 1]
        # the non-primitive part carries only primes of earlier terms
        rest = s.non_primitive
        for a in terms[: s.n - 1]:
            g = gcd(rest, a)
            while g > 1:
                rest //= g
                g = gcd(rest, a)
        assert rest == 1


@given(rigid_trinomials)
def test_divisibility_sequence(t):
    f = IntPolynomial.from_trinomial(*t)
    a = orbit_exact(f, 6).terms
    for m in range(1, 7):
        for n in range(m, 7, m):
            assert a[n - 1] % a[m - 1] == 0 if a[m - 1] else a[n - 1] == 0


@given(rigid_trinomials, st.sampled_from([2, 3, 5, 7, 11, 13]))
def test_rigid_valuations_on_exact_prefix(t, p):
    f = IntPolynomial.from_trinomial(*t)
    assume(rigidity_witness(f))
    a = orbit_exact(f, 6).terms
    first = next((n for n in range(1, 7) if a[n - 1] % p == 0), None)
    assume(first is not None)
    v = naive_valuation(a[first - 1], p)
    for n in range(first, 7, first):
        assert naive_valuation(a[n - 1], p) == v


@given(rigid_trinomials, st.sampled_from([3, 5, 7, 11, 13, 17, 19, 23, 29, 31]))
def test_rigid_valuations_mod_prime_power(t, p):
    f = IntPolynomial.from_trinomial(*t)
    assume(rigidity_witness(f))
    r = rank_of_apparition(f, p)
    assume(r is not None)
    v = valuation_of_term(f, p, r, 12)
    assert v < 12
    for k in range(2, 5):
        assert valuation_of_term(f, p, r * k, 12) == v


@given(rigid_trinomials)
def test_growth_inequalities(t):
    f = IntPolynomial.from_trinomial(*t)
    assume(rigidity_witness(f))
    rows = check_growth(f, 6)
    assert [r.n for r in rows] == [3, 4, 5, 6]
    assert all(r.cubic_bound and r.product_bound for r in rows)


def test_growth_rejects():
    with pytest.raises(ValueError):
        check_growth(parse_poly("x^3+x+1"))
    with pytest.raises(ValueError):
        check_growth(parse_poly("x^4+x^2-1"))


@pytest.mark.parametrize(
    "d, e, c, kind, consistent",
    [
        (5, 3, 1, Finiteness.FINITE_TRIVIAL, True),
        (5, 3, -1, Finiteness.FINITE_TRIVIAL, True),
        (4, 2, -1, Finiteness.DEGENERATE, True),
        (4, 3, 0, Finiteness.DEGENERATE, True),
        (13, 3, 5, Finiteness.INFINITE, True),
        (4, 2, 6, Finiteness.INFINITE, True),
    ],
)
def test_finiteness_verdict(d, e, c, kind, consistent):
    v = finiteness_verdict(d, e, c, 300)
    assert v.classification is kind
    assert v.consistent is consistent
