"""Index divisibility graphs: construction, edge typing, reconstruction, export."""

from __future__ import annotations

import enum
import json
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, NamedTuple

import numpy as np

from ._vector import VectorMap, _dtype_for, residues_at_own_index
from .divset import DivisibilitySetWindow, div_set_window, in_div_set
from .orbit import valuation_of_term
from .poly import IntPolynomial, parse_poly, render
from .primes import factorize, is_prime, prime_sieve, valuation

__all__ = [
    "EdgeType",
    "Edge",
    "DivGraph",
    "ScanResult",
    "classify_edge",
    "build_graph",
    "reconstruct_from_set",
    "path_to",
    "open_question_scan",
    "scan_polynomial",
    "export_graph",
    "graph_from_records",
]


class EdgeType(enum.Flag):
    TYPE1 = 1  # v_p(n) < v_p(f^n(0))
    TYPE2 = 2  # v_p(n) = 0 and p in D

    @property
    def label(self) -> str:
        return ",".join(s for flag, s in ((EdgeType.TYPE1, "1"), (EdgeType.TYPE2, "2")) if flag in self)

    @classmethod
    def from_label(cls, text: str) -> EdgeType:
        out = cls(0)
        for part in text.split(","):
            out |= {"1": cls.TYPE1, "2": cls.TYPE2}[part.strip()]
        return out


class Edge(NamedTuple):
    source: int
    target: int
    prime: int
    kind: EdgeType


@dataclass(frozen=True)
class DivGraph:
    f: IntPolynomial
    bound: int
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]

    root = 1

    def edge_pairs(self) -> set[tuple[int, int]]:
        return {(e.source, e.target) for e in self.edges}

    def edge(self, source: int, target: int) -> Edge | None:
        for e in self.edges:
            if e.source == source and e.target == target:
                return e
        return None


def classify_edge(
    f: IntPolynomial,
    n: int,
    p: int,
    prime_membership: Callable[[int], bool] | None = None,
) -> EdgeType | None:
    """Type flags of the candidate edge (n, np); None when neither rule applies."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    member = prime_membership or (lambda q: in_div_set(f, q))
    v = valuation(n, p)
    kind = EdgeType(0)
    if valuation_of_term(f, p, n, v + 1) > v:
        kind |= EdgeType.TYPE1
    if v == 0 and member(p):
        kind |= EdgeType.TYPE2
    return kind or None


def _sweep(
    f: IntPolynomial, bound: int, is_vertex: Callable[[int], bool]
) -> Iterator[tuple[int, np.ndarray, np.ndarray, np.ndarray]]:
    """Walk k = 1..N once, tracking f^k(0) mod every prime power <= N.

    At each k with ``is_vertex(k)`` (asked only when k is reached) yield
    ``(k, primes, type1, type2)`` for all primes p <= N/k. The type-1 test
    needs f^k(0) mod p^(v_p(k)+1), and p^(v_p(k)+1) <= p*k <= N.
    """
    primes = prime_sieve(bound)
    if not primes:
        return
    col_start = []
    moduli = []
    for p in primes:
        col_start.append(len(moduli))
        q = p
        while q <= bound:
            moduli.append(q)
            q *= p
    col_start.append(len(moduli))
    col_start = np.asarray(col_start, dtype=np.int64)
    primes_arr = np.asarray(primes, dtype=np.int64)
    dtype = _dtype_for(bound)
    q_arr = np.asarray(moduli, dtype=dtype)
    fmap = VectorMap(f, q_arr)
    prime_in_d = residues_at_own_index(f, primes) == 0
    x = np.zeros(len(moduli), dtype=dtype)

    for k in range(1, bound + 1):
        n_primes = int(np.searchsorted(primes_arr, bound // k, side="right"))
        if n_primes == 0:
            break
        active = int(col_start[n_primes])
        x[:active] = fmap(x[:active], 0, active)
        if not is_vertex(k):
            continue
        cols = col_start[:n_primes].copy()
        v = np.zeros(n_primes, dtype=np.int64)
        for p, e in factorize(k):
            i = int(np.searchsorted(primes_arr, p))
            if i < n_primes and primes[i] == p:
                v[i] = e
                cols[i] += e
        t1 = x[cols] == 0
        t2 = (v == 0) & prime_in_d[:n_primes]
        yield k, primes_arr[:n_primes], t1, t2


def _kind(t1: bool, t2: bool) -> EdgeType:
    kind = EdgeType(0)
    if t1:
        kind |= EdgeType.TYPE1
    if t2:
        kind |= EdgeType.TYPE2
    return kind


def build_graph(f: IntPolynomial, bound: int) -> DivGraph:
    """Grow the graph from 1 using both edge rules, restricted to vertices <= bound.

    Vertices are expanded in increasing order; every edge (n, np) points
    upward, so a single ascending pass reaches the fixed point.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    vertices = {1}
    edges = []
    for n, ps, t1, t2 in _sweep(f, bound, vertices.__contains__):
        for i in np.flatnonzero(t1 | t2):
            p = int(ps[i])
            edges.append(Edge(n, n * p, p, _kind(bool(t1[i]), bool(t2[i]))))
            vertices.add(n * p)
    return DivGraph(f, bound, tuple(sorted(vertices)), tuple(edges))


def reconstruct_from_set(window: DivisibilitySetWindow) -> list[tuple[int, int]]:
    """All member pairs (m, n) with n/m prime, ordered by (m, n)."""
    members = set(window.members)
    primes = prime_sieve(window.bound)
    out = []
    for m in window.members:
        for p in primes:
            if m * p > window.bound:
                break
            if m * p in members:
                out.append((m, m * p))
    return out


def path_to(graph: DivGraph, n: int) -> list[tuple[int, int]]:
    """Edges of a path 1 -> n.

    Tries the canonical route first: prime factors of n in increasing
    order, each prime power climbed one step at a time. If that route
    leaves the graph, falls back to breadth-first search.
    """
    if n not in set(graph.vertices):
        raise ValueError(f"{n} is not a vertex")
    pairs = graph.edge_pairs()
    path = []
    cur = 1
    for p, k in factorize(n):
        for _ in range(k):
            path.append((cur, cur * p))
            cur *= p
    if all(e in pairs for e in path):
        return path
    parent: dict[int, int] = {1: 0}
    out_edges: dict[int, list[int]] = {}
    for e in graph.edges:
        out_edges.setdefault(e.source, []).append(e.target)
    queue = deque([1])
    while queue:
        u = queue.popleft()
        for w in out_edges.get(u, ()):
            if w not in parent:
                parent[w] = u
                queue.append(w)
    route = []
    cur = n
    while cur != 1:
        route.append((parent[cur], cur))
        cur = parent[cur]
    return route[::-1]


@dataclass
class ScanResult:
    """Typing of every prime-quotient pair inside one window of D."""

    polynomial: str
    bound: int
    members: int
    edges: int
    type1_only: int = 0
    type2_only: int = 0
    both: int = 0
    counterexamples: list[tuple[int, int]] = field(default_factory=list)
    # rule-generated edges landing outside D; impossible for any f, so a bug signal
    escaped: list[tuple[int, int]] = field(default_factory=list)


def scan_polynomial(f: IntPolynomial, bound: int) -> ScanResult:
    window = div_set_window(f, bound)
    members = set(window.members)
    pairs = set(reconstruct_from_set(window))
    res = ScanResult(render(f), bound, len(window.members), len(pairs))
    for n, ps, t1, t2 in _sweep(f, bound, members.__contains__):
        for i in range(len(ps)):
            target = n * int(ps[i])
            typed = bool(t1[i] or t2[i])
            if target in members:
                if not typed:
                    res.counterexamples.append((n, target))
                elif t1[i] and t2[i]:
                    res.both += 1
                elif t1[i]:
                    res.type1_only += 1
                else:
                    res.type2_only += 1
            elif typed:
                res.escaped.append((n, target))
    assert res.type1_only + res.type2_only + res.both + len(res.counterexamples) == len(pairs)
    return res


def _scan_args(args) -> ScanResult:
    return scan_polynomial(*args)


def open_question_scan(family: Iterable[IntPolynomial], bound: int, workers: int = 1) -> list[ScanResult]:
    """For each f, report window edges (n, np) that are neither type 1 nor type 2."""
    jobs = [(f, bound) for f in family]
    if workers <= 1 or len(jobs) < 2:
        return [scan_polynomial(f, b) for f, b in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_scan_args, jobs))


def _graph_record(graph: DivGraph) -> dict:
    return {
        "polynomial": render(graph.f),
        "bound": graph.bound,
        "vertices": list(graph.vertices),
        "edges": [
            {"source": e.source, "target": e.target, "prime": e.prime, "type": e.kind.label}
            for e in graph.edges
        ],
    }


def export_graph(graph: DivGraph, fmt: str = "dot") -> bytes:
    """DOT digraph, JSON record, or CSV edge list."""
    if fmt == "dot":
        lines = ["digraph D {"]
        lines += [f"  {v};" for v in graph.vertices]
        lines += [f'  {e.source} -> {e.target} [type="{e.kind.label}"];' for e in graph.edges]
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    if fmt == "records":
        return (json.dumps(_graph_record(graph), indent=2) + "\n").encode()
    if fmt == "csv":
        rows = ["source,target,prime,type"]
        rows += [f'{e.source},{e.target},{e.prime},"{e.kind.label}"' for e in graph.edges]
        return ("\n".join(rows) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")


def graph_from_records(data: bytes | str | dict) -> DivGraph:
    rec = data if isinstance(data, dict) else json.loads(data)
    edges = tuple(
        Edge(e["source"], e["target"], e["prime"], EdgeType.from_label(e["type"])) for e in rec["edges"]
    )
    return DivGraph(parse_poly(rec["polynomial"]), rec["bound"], tuple(rec["vertices"]), edges)
