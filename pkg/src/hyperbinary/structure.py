"""Maps between graphs A(n): the odd-double embedding, the even split,
the long-expansion subgraph, and a coloured isomorphism test."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, InvariantViolation
from .expansion import Expansion, LengthClass, _check_positive, _trusted, count_expansions, length_class
from .graph import HyperGraph, build_graph
from .rewrite import ArcColor, RewriteStep

Triple = tuple[str, str, ArcColor]


def _triples(arcs) -> set[Triple]:
    return {(a.source, a.target, a.color) for a in arcs}


def induced_arcs(g: HyperGraph, nodes) -> list[RewriteStep]:
    nodes = set(nodes)
    return [a for a in g.arcs if a.source in nodes and a.target in nodes]


def is_colour_isomorphism(mapping: dict, src_nodes, src_arcs, dst_nodes, dst_arcs) -> bool:
    """True when ``mapping`` is a node bijection carrying arcs onto arcs with colours kept."""
    src_nodes, dst_nodes = set(src_nodes), set(dst_nodes)
    if set(mapping) != src_nodes or len(set(mapping.values())) != len(mapping):
        return False
    if set(mapping.values()) != dst_nodes:
        return False
    image = {(mapping[s], mapping[t], c) for s, t, c in _triples(src_arcs)}
    return image == _triples(dst_arcs)


def double_plus_one_map(g: HyperGraph) -> dict[Expansion, Expansion]:
    """Append the digit 1: the isomorphism A(m) -> A(2m+1)."""
    psi = {v: _trusted(v + "1") for v in g.nodes}
    target = build_graph(2 * g.n + 1)
    if not is_colour_isomorphism(psi, g.nodes, g.arcs, target.nodes, target.arcs):
        raise InvariantViolation(f"appending 1 is not an isomorphism A({g.n}) -> A({target.n})")
    return psi


@dataclass(frozen=True)
class EvenSplit:
    m: int
    left: frozenset[Expansion]  # words ending in 2: copy of A(m-1)
    right: frozenset[Expansion]  # words ending in 0: copy of A(m)
    bridging: tuple[RewriteStep, ...]

    @property
    def bridging_color(self) -> ArcColor:
        return self.bridging[0].color


def even_split(g: HyperGraph) -> EvenSplit:
    """Split A(2m) by last digit and check both halves and the bridging colour.

    The halves must be colour-isomorphic to A(m-1) (append 2) and A(m)
    (append 0); every arc from the left half to the right one is SINGLE
    when m is odd and DOUBLE when m is even.
    """
    if g.n % 2 or g.n < 4:
        raise DomainError(f"even_split needs n = 2m with m >= 2, got {g.n}")
    m = g.n // 2
    left = frozenset(v for v in g.nodes if v.endswith("2"))
    right = frozenset(v for v in g.nodes if v.endswith("0"))
    if left & right or left | right != set(g.nodes):
        raise InvariantViolation(f"A({g.n}): halves do not partition the nodes")

    for part, k, digit in ((left, m - 1, "2"), (right, m, "0")):
        a = build_graph(k)
        phi = {v: _trusted(v + digit) for v in a.nodes}
        if not is_colour_isomorphism(phi, a.nodes, a.arcs, part, induced_arcs(g, part)):
            raise InvariantViolation(f"A({g.n}): appending {digit} is not an isomorphism from A({k})")

    bridging = tuple(a for a in g.arcs if a.source in left and a.target in right)
    if any(a.source in right and a.target in left for a in g.arcs):
        raise InvariantViolation(f"A({g.n}) has an arc from the 0-half back to the 2-half")
    expected = ArcColor.SINGLE if m % 2 else ArcColor.DOUBLE
    if not bridging or any(a.color is not expected for a in bridging):
        raise InvariantViolation(f"A({g.n}): bridging arcs are not all {expected}")
    return EvenSplit(m, left, right, bridging)


def _largest_power_exponent(n: int) -> int:
    return n.bit_length() - 1


def long_nodes(g: HyperGraph) -> list[Expansion]:
    return [v for v in g.nodes if length_class(v) is LengthClass.LONG]


@dataclass(frozen=True)
class LongSubgraph:
    n: int
    nodes: tuple[Expansion, ...]
    arcs: tuple[RewriteStep, ...]
    xi: dict
    target: HyperGraph


def strip_long(e: Expansion) -> Expansion:
    """Drop the leading 1 of a long word along with the zeros that follow it."""
    return _trusted(e[1:].lstrip("0"))


def long_subgraph(n: int) -> LongSubgraph:
    """The long expansions of n and their arcs, mapped onto A(n - 2^k)."""
    _check_positive(n)
    k = _largest_power_exponent(n)
    if n == 1 << k:
        raise DomainError(f"{n} is a power of two; use long_count")
    g = build_graph(n)
    nodes = tuple(long_nodes(g))
    arcs = tuple(induced_arcs(g, nodes))
    xi = {v: strip_long(v) for v in nodes}
    target = build_graph(n - (1 << k))
    if not is_colour_isomorphism(xi, nodes, arcs, target.nodes, target.arcs):
        raise InvariantViolation(f"long subgraph of A({n}) is not isomorphic to A({target.n})")
    return LongSubgraph(n, nodes, arcs, xi, target)


def long_count(n: int, check: bool = True) -> int:
    """Number of long expansions of n, b(n - 2^floor(log2 n))."""
    _check_positive(n)
    count = count_expansions(n - (1 << _largest_power_exponent(n)))
    if check:
        actual = len(long_nodes(build_graph(n)))
        if actual != count:
            raise InvariantViolation(f"A({n}) has {actual} long nodes, expected {count}")
    return count


def color_iso(g1: HyperGraph, g2: HyperGraph) -> bool:
    """Is there a node bijection preserving arcs and their colours?

    Backtracking that sends row r to row r, root to root, and matches
    coloured in/out degree signatures before extending a partial map.
    """
    if [len(r) for r in g1.rows] != [len(r) for r in g2.rows] or len(g1.arcs) != len(g2.arcs):
        return False

    def signature(g, v):
        return (
            g.row_of(v),
            tuple(sorted(a.color.value for a in g.out_arcs[v])),
            tuple(sorted(a.color.value for a in g.in_arcs[v])),
        )

    sig1 = {v: signature(g1, v) for v in g1.nodes}
    sig2 = {v: signature(g2, v) for v in g2.nodes}
    if sorted(sig1.values()) != sorted(sig2.values()):
        return False

    arcs2 = {(a.source, a.target): a.color for a in g2.arcs}
    order = list(g1.nodes)  # row-major, root first
    mapping: dict = {}
    used: set = set()

    def consistent(v, w):
        for a in g1.in_arcs[v]:
            if a.source in mapping and arcs2.get((mapping[a.source], w)) is not a.color:
                return False
        for a in g1.out_arcs[v]:
            if a.target in mapping and arcs2.get((w, mapping[a.target])) is not a.color:
                return False
        return True

    def extend(i):
        if i == len(order):
            return True
        v = order[i]
        for w in g2.rows[g1.row_of(v)]:
            if w in used or sig2[w] != sig1[v] or not consistent(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if extend(i + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return extend(0)
