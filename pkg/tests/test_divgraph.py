import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from indexdiv.divgraph import (
    EdgeType,
    build_graph,
    classify_edge,
    export_graph,
    graph_from_records,
    open_question_scan,
    path_to,
    reconstruct_from_set,
    scan_polynomial,
)
from indexdiv.divset import div_set_window, in_div_set
from indexdiv.poly import IntPolynomial, parse_poly
from indexdiv.primes import prime_sieve
from oracles import exact_orbit, naive_valuation

small_polys = st.lists(st.integers(-9, 9), min_size=2, max_size=5).map(lambda cs: IntPolynomial(tuple(cs)))


def test_small_graph_dot():
    g = build_graph(parse_poly("x^13+x^3+5"), 35)
    assert g.vertices == (1, 5, 31)
    assert export_graph(g, "dot").decode() == (
        "digraph D {\n  1;\n  5;\n  31;\n"
        '  1 -> 5 [type="1,2"];\n'
        '  1 -> 31 [type="2"];\n'
        "}\n"
    )


def test_edge_type_labels():
    both = EdgeType.TYPE1 | EdgeType.TYPE2
    assert both.label == "1,2"
    assert EdgeType.from_label("1,2") == both
    assert EdgeType.from_label("2") == EdgeType.TYPE2


def test_classify_edge_examples():
    f = parse_poly("x^13+x^3+5")
    assert classify_edge(f, 1, 5) == EdgeType.TYPE1 | EdgeType.TYPE2
    assert classify_edge(f, 5, 31) == EdgeType.TYPE2
    assert classify_edge(f, 1, 7) is None
    with pytest.raises(ValueError):
        classify_edge(f, 1, 6)


@given(small_polys, st.integers(1, 7), st.sampled_from([2, 3, 5, 7]))
def test_classify_edge_against_exact_orbit(f, n, p):
    term = exact_orbit(list(f.coeffs), n)[-1]
    v = naive_valuation(n, p)
    t1 = naive_valuation(term, p) > v
    t2 = v == 0 and in_div_set(f, p)
    got = classify_edge(f, n, p) or EdgeType(0)
    assert (EdgeType.TYPE1 in got) == t1
    assert (EdgeType.TYPE2 in got) == t2


@given(small_polys, st.integers(1, 250))
def test_graph_matches_scalar_rules(f, bound):
    g = build_graph(f, bound)
    inD = set(div_set_window(f, bound).members)
    # vertices are what the rules reach from 1; every reached vertex lies in D
    assert set(g.vertices) <= inD
    expected = set()
    for n in g.vertices:
        for p in prime_sieve(bound // n):
            kind = classify_edge(f, n, p)
            if kind is not None:
                expected.add((n, n * p, p, kind))
    assert set(g.edges) == expected


@given(small_polys, st.integers(1, 200))
def test_reconstruction_pairs_are_prime_steps(f, bound):
    w = div_set_window(f, bound)
    pairs = reconstruct_from_set(w)
    for m, n in pairs:
        assert m in w and n in w and n // m in prime_sieve(n // m)


def test_path_to():
    g = build_graph(parse_poly("x^13+x^3+5"), 2000)
    assert path_to(g, 155) == [(1, 5), (5, 155)]
    with pytest.raises(ValueError):
        path_to(g, 7)


@given(small_polys, st.integers(2, 200))
def test_path_to_every_vertex(f, bound):
    g = build_graph(f, bound)
    pairs = g.edge_pairs()
    for v in g.vertices:
        path = path_to(g, v)
        cur = 1
        for a, b in path:
            assert a == cur and (a, b) in pairs
            cur = b
        assert cur == v


@pytest.mark.parametrize("fmt", ["records", "dot", "csv"])
def test_export_formats_deterministic(fmt):
    f = parse_poly("x^4+x^2+6")
    assert export_graph(build_graph(f, 500), fmt) == export_graph(build_graph(f, 500), fmt)


def test_csv_export():
    g = build_graph(parse_poly("x^13+x^3+5"), 35)
    assert export_graph(g, "csv").decode().splitlines() == ["source,target,prime,type", '1,5,5,"1,2"', '1,31,31,"2"']


def test_unknown_format():
    with pytest.raises(ValueError):
        export_graph(build_graph(parse_poly("x+1"), 5), "svg")


@given(small_polys, st.integers(1, 150))
def test_records_roundtrip(f, bound):
    g = build_graph(f, bound)
    blob = export_graph(g, "records")
    assert graph_from_records(blob) == g
    assert graph_from_records(json.loads(blob)) == g


def test_scan_polynomial_counts():
    r = scan_polynomial(parse_poly("x^3+x+2"), 2000)
    assert r.counterexamples == [] and r.escaped == []
    assert r.type1_only + r.type2_only + r.both == r.edges


def test_open_question_scan_workers_agree():
    fam = [parse_poly(f"x^3+x+{c}") for c in (2, 6, 12)]
    serial = open_question_scan(fam, 1500)
    assert open_question_scan(fam, 1500, workers=2) == serial
