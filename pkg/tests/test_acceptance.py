"""Exit criteria for the package, one test per criterion, all exact."""

import io
import random
import time

import pytest

from hyperbinary.cli import main
from hyperbinary.expansion import (
    binary_expansion,
    blocks_of_twos,
    count_expansions,
    enumerate_expansions,
    minimal_expansion,
    shortlex_key,
    stern,
    value,
    weight,
)
from hyperbinary.graph import build_graph, cyclomatic_number
from hyperbinary.rewrite import ArcColor, parents, reduce_to_root, reduce_to_sink
from hyperbinary.structure import (
    color_iso,
    induced_arcs,
    is_colour_isomorphism,
    long_count,
    long_nodes,
    long_subgraph,
)
from hyperbinary.verify import oracle_expansions

S, D = "single", "double"

FIGURES = {
    4: ({"12", "20", "100"}, {("12", "20", D), ("20", "100", S)}),
    10: (
        {"122", "202", "1002", "210", "1010"},
        {("122", "202", D), ("202", "1002", S), ("202", "210", S), ("1002", "1010", S), ("210", "1010", S)},
    ),
    12: (
        {"212", "1012", "220", "1020", "1100"},
        {("212", "1012", S), ("212", "220", D), ("1012", "1020", D), ("220", "1020", S), ("1020", "1100", S)},
    ),
    18: (
        {"1122", "1202", "2002", "1210", "10002", "2010", "10010"},
        {
            ("1122", "1202", D), ("1202", "2002", D), ("1202", "1210", S), ("2002", "10002", S),
            ("10002", "10010", S), ("2002", "2010", S), ("1210", "2010", D), ("2010", "10010", S),
        },
    ),
    20: (
        {"1212", "2012", "1220", "2020", "10012", "10020", "2100", "10100"},
        {
            ("1212", "2012", D), ("1212", "1220", D), ("2012", "2020", D), ("1220", "2020", D),
            ("10012", "10020", D), ("10020", "10100", S), ("2012", "10012", S), ("2020", "10020", S),
            ("2020", "2100", S), ("2100", "10100", S),
        },
    ),
}
BRIDGING = {
    18: ({("1202", "1210"), ("2002", "2010"), ("10002", "10010")}, S),
    20: ({("1212", "1220"), ("2012", "2020"), ("10012", "10020")}, D),
}


def closed_form_trees(limit):
    """2^(s+t+1) +/- 2^s - 1 in (0, limit], by brute force over (s, t)."""
    out = set()
    for s in range(limit.bit_length() + 1):
        for t in range(limit.bit_length() + 1):
            for x in (2 ** (s + t + 1) + 2**s - 1, 2 ** (s + t + 1) - 2**s - 1):
                if 0 < x <= limit:
                    out.add(x)
    return out


@pytest.fixture(scope="module")
def sweep_5000():
    """Per-n structural data for 1 <= n <= 5000, computed once."""
    data = {}
    for n in range(1, 5001):
        g = build_graph(n)
        data[n] = {
            "cyclomatic": cyclomatic_number(g),
            "nodes": len(g.nodes),
            "rows": weight(g.root) - weight(g.sink) + 1,
            "iso_10_12": None,
        }
        if data[n]["cyclomatic"] == 1:
            data[n]["iso_10_12"] = color_iso(g, build_graph(10)) or color_iso(g, build_graph(12))
    return data


@pytest.mark.criterion(1, "figure-exactness of A(4), A(10), A(12), A(18), A(20), each built in < 1 ms")
def test_c01_figures():
    for n, (nodes, arcs) in FIGURES.items():
        g = build_graph(n)
        assert set(g.nodes) == nodes
        assert g.arc_triples() == arcs
        timings = []
        for _ in range(5):
            t0 = time.perf_counter()
            build_graph.__wrapped__(n)
            timings.append(time.perf_counter() - t0)
        assert min(timings) < 1e-3, (n, timings)
    for n, (pairs, color) in BRIDGING.items():
        left = {v for v in FIGURES[n][0] if v.endswith("2")}
        right = {v for v in FIGURES[n][0] if v.endswith("0")}
        bridging = {(s, t, c) for s, t, c in build_graph(n).arc_triples() if s in left and t in right}
        assert bridging == {(s, t, color) for s, t in pairs}


@pytest.mark.criterion(2, "b(n) = |H(n)| = |oracle H(n)| for n <= 5000; b(n) = s(n+1) for n <= 10^5; < 10 s")
def test_c02_count_identities():
    t0 = time.perf_counter()
    for n in range(1, 5001):
        b = count_expansions(n)
        assert b == len(enumerate_expansions(n)) == len(oracle_expansions(n)), n
    for n in range(0, 100_001):
        assert count_expansions(n) == stern(n + 1), n
    assert time.perf_counter() - t0 < 10


@pytest.mark.criterion(3, "{n <= 2^14 : b(n) = 1} = {2^k - 1 : 1 <= k <= 14}")
def test_c03_single_expansion():
    assert {n for n in range(1, 2**14 + 1) if count_expansions(n) == 1} == {2**k - 1 for k in range(1, 15)}


@pytest.mark.criterion(4, "b(2^k-1-j) = b(2^(k-1)-1+j) for all k <= 14, 0 <= j < 2^k")
def test_c04_northshield():
    failures = [
        (k, j)
        for k in range(1, 15)
        for j in range(2**k)
        if count_expansions(2**k - 1 - j) != count_expansions(2 ** (k - 1) - 1 + j)
    ]
    assert failures == [], f"{len(failures)} failures, first {failures[:3]}"


@pytest.mark.criterion(5, "value, weight-1, shortlex increase, outdegree = blocks of 2's, duality; every arc, n <= 2000")
def test_c05_structure_laws():
    for n in range(1, 2001):
        g = build_graph(n)
        for a in g.arcs:
            assert value(a.source) == value(a.target) == n
            assert weight(a.target) == weight(a.source) - 1
            assert shortlex_key(a.source) < shortlex_key(a.target)
            assert a in parents(a.target)
        for v in g.nodes:
            assert g.outdegree(v) == blocks_of_twos(v)
            assert set(g.in_arcs[v]) == set(parents(v))


@pytest.mark.criterion(6, "8 seeded random forward/backward reductions per node end at n'' / n', n <= 2000")
def test_c06_confluence():
    for n in range(1, 2001):
        rng = random.Random(n)
        sink, root = binary_expansion(n), minimal_expansion(n)
        for v in build_graph(n).nodes:
            for _ in range(8):
                assert reduce_to_sink(v, rng) == sink
                assert reduce_to_root(v, rng) == root


@pytest.mark.criterion(7, "tree iff n = 2^(s+t+1) +/- 2^s - 1 for n <= 5000; even case iff m = 2^t - eps")
def test_c07_trees(sweep_5000):
    trees = closed_form_trees(5000)
    for n, d in sweep_5000.items():
        assert (d["cyclomatic"] == 0) == (n in trees), n
        if n % 2 == 0:
            m = n // 2
            assert (d["cyclomatic"] == 0) == any(m in (2**t, 2**t - 1) for t in range(1, 14)), n


@pytest.mark.criterion(8, "{n <= 5000 : cyclomatic 1} = {2^l*11-1, 2^l*13-1}; 5 nodes; colour-iso to A(10) or A(12)")
def test_c08_cyclomatic_one(sweep_5000):
    t = {x for l in range(13) for x in (2**l * 11 - 1, 2**l * 13 - 1) if x <= 5000}
    s1 = {n for n, d in sweep_5000.items() if d["cyclomatic"] == 1}
    assert s1 == t
    for n in s1:
        assert sweep_5000[n]["nodes"] == 5
        assert sweep_5000[n]["iso_10_12"] is True


@pytest.mark.criterion(9, "append-1 iso A(m) -> A(2m+1); even split into A(m-1), A(m); bridging colour by parity; m <= 1000")
def test_c09_odd_and_even_maps():
    for m in range(1, 1001):
        a, b = build_graph(m), build_graph(2 * m + 1)
        psi = {v: v + "1" for v in a.nodes}
        assert is_colour_isomorphism(psi, a.nodes, a.arcs, b.nodes, b.arcs), m
        if m < 2:
            continue
        g = build_graph(2 * m)
        left = {v for v in g.nodes if v.endswith("2")}
        right = {v for v in g.nodes if v.endswith("0")}
        assert left | right == set(g.nodes) and not left & right
        for part, k, digit in ((left, m - 1, "2"), (right, m, "0")):
            src = build_graph(k)
            phi = {v: v + digit for v in src.nodes}
            assert is_colour_isomorphism(phi, src.nodes, src.arcs, part, induced_arcs(g, part)), m
        colours = {a.color for a in g.arcs if a.source in left and a.target in right}
        assert colours == {ArcColor.SINGLE if m % 2 else ArcColor.DOUBLE}, m


@pytest.mark.criterion(10, "long subgraph colour-iso to A(n - 2^k) via xi; long count = b(n - 2^k); n <= 2000")
def test_c10_long_expansions():
    for n in range(1, 2001):
        k = n.bit_length() - 1
        g = build_graph(n)
        assert len(long_nodes(g)) == count_expansions(n - 2**k) == long_count(n)
        if n == 2**k:
            assert len(long_nodes(g)) == 1
            continue
        ls = long_subgraph(n)
        target = build_graph(n - 2**k)
        assert is_colour_isomorphism(ls.xi, ls.nodes, ls.arcs, target.nodes, target.arcs)


@pytest.mark.criterion(11, "b(n) >= row count for n <= 5000, equality exactly on tree integers")
def test_c11_rows(sweep_5000):
    trees = closed_form_trees(5000)
    for n, d in sweep_5000.items():
        b = count_expansions(n)
        assert b >= d["rows"]
        assert (b == d["rows"]) == (n in trees), n


@pytest.mark.criterion(12, "verify all over default ranges exits 0 in < 60 s")
def test_c12_verify_all():
    out = io.StringIO()
    t0 = time.perf_counter()
    code = main(["verify", "all"], out=out)
    elapsed = time.perf_counter() - t0
    failing = [line for line in out.getvalue().splitlines() if "status=FAIL" in line]
    assert elapsed < 60, elapsed
    assert code == 0, failing
