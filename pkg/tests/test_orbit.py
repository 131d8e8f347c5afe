import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from indexdiv.orbit import (
    BitBudgetExceeded,
    UndecidedError,
    ZeroKind,
    _trinomial_zero,
    classify_zero,
    escape_radius,
    iterate_index_mod,
    orbit_exact,
    orbit_mod,
    rank_of_apparition,
    valuation_of_term,
)
from indexdiv.poly import IntPolynomial, parse_poly
from oracles import exact_orbit, naive_term_mod, naive_valuation

small_polys = st.lists(st.integers(-6, 6), min_size=2, max_size=5).map(lambda cs: IntPolynomial(tuple(cs)))


def test_orbit_exact_prefix():
    f = parse_poly("x^3+x^2+1")
    orb = orbit_exact(f, 4)
    assert orb.terms == (1, 3, 37, 52023)
    assert orb[0] == 0 and orb[2] == 3
    assert orb.is_consistent()


def test_orbit_exact_bit_cap():
    with pytest.raises(BitBudgetExceeded) as exc:
        orbit_exact(parse_poly("x^13+x^3+5"), 6, bit_cap=200)
    assert exc.value.last_index == 2


def test_orbit_mod_known_shapes():
    # f^n(0) mod 2 for x^3+x^2+1 is 1, 1, 1, ...: pure cycle of length 1
    o = orbit_mod(parse_poly("x^3+x^2+1"), 2)
    assert (o.tail, o.cycle) == (0, 1)
    o = orbit_mod(parse_poly("x^13+x^3+5"), 31)
    assert (o.tail, o.cycle) == (0, 31)
    assert o.zero_indices() == [31]


@given(small_polys, st.integers(1, 300), st.integers(0, 900))
def test_orbit_mod_residue_matches_naive(f, m, n):
    o = orbit_mod(f, m)
    assert o.residue(n) == naive_term_mod(list(f.coeffs), m, n)
    assert len(o.table) == o.tail + o.cycle
    # the rho is minimal: the table has no repeated entry
    assert len(set(o.table)) == len(o.table)


@given(small_polys, st.integers(1, 400), st.integers(0, 1500))
def test_iterate_index_mod_matches_naive(f, m, n):
    assert iterate_index_mod(f, m, n) == naive_term_mod(list(f.coeffs), m, n)


@given(small_polys, st.integers(2, 200))
def test_rank_of_apparition(f, m):
    r = rank_of_apparition(f, m)
    residues = [naive_term_mod(list(f.coeffs), m, n) for n in range(1, 2 * m + 2)]
    if r is None:
        assert 0 not in residues
    else:
        assert residues[r - 1] == 0 and 0 not in residues[: r - 1]


@given(small_polys, st.sampled_from([2, 3, 5, 7, 11]), st.integers(1, 7))
def test_valuation_of_term(f, p, n):
    exact = exact_orbit(list(f.coeffs), n)[-1]
    cap = 6
    assert valuation_of_term(f, p, n, cap) == min(naive_valuation(exact, p), cap)


@pytest.mark.parametrize(
    "text, kind, tail, period",
    [
        ("x^4+x^2", ZeroKind.PREPERIODIC, 0, 1),
        ("x^4+x^2-1", ZeroKind.PREPERIODIC, 2, 1),
        ("x^5+x^2-1", ZeroKind.PREPERIODIC, 1, 1),
        ("x^5+x^3-1", ZeroKind.WANDERING, None, None),
        ("x^13+x^3+5", ZeroKind.WANDERING, None, None),
        ("x^4+x^2+x-1", ZeroKind.PREPERIODIC, 0, 2),
        ("x^2-2", ZeroKind.PREPERIODIC, 2, 1),
        ("x^2-1", ZeroKind.PREPERIODIC, 0, 2),
        ("-x+3", ZeroKind.PREPERIODIC, 0, 2),
        ("x+3", ZeroKind.WANDERING, None, None),
        ("2*x+2", ZeroKind.WANDERING, None, None),
        ("5", ZeroKind.PREPERIODIC, 1, 1),
    ],
)
def test_classify_zero(text, kind, tail, period):
    z = classify_zero(parse_poly(text))
    assert z.kind is kind
    if kind is ZeroKind.PREPERIODIC:
        assert (z.tail, z.period) == (tail, period)


def test_classify_zero_budget():
    # f(0) = -30000 sits just inside the escape radius, so one step decides nothing
    with pytest.raises(UndecidedError):
        classify_zero(parse_poly("x^2+x-30000"), budget=1)


@given(small_polys, st.integers(-30, 30))
def test_escape_radius_is_sound(f, x):
    r = escape_radius(f)
    assume(r is not None and abs(x) >= r)
    y = f(x)
    assert abs(y) > abs(x)


@given(st.integers(3, 9), st.integers(2, 8), st.integers(-12, 12))
def test_trinomial_closed_form_matches_iteration(d, e, c):
    assume(d > e)
    f = IntPolynomial.from_trinomial(d, e, c)
    closed = _trinomial_zero(d, e, c)
    # iterate directly, bypassing the closed form
    seen = {0: 0}
    x = 0
    for n in range(1, 50):
        x = f(x)
        if x in seen:
            assert closed.kind is ZeroKind.PREPERIODIC
            assert (closed.tail, closed.period) == (seen[x], n - seen[x])
            return
        if abs(x) > 10**6:
            break
        seen[x] = n
    assert closed.kind is ZeroKind.WANDERING
