"""The graph A(n): hyperbinary expansions of n joined by single rewrite steps."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import InvariantViolation
from .expansion import (
    Expansion,
    _check_positive,
    enumerate_expansions,
    minimal_expansion,
    shortlex_key,
    weight,
)
from .rewrite import RewriteStep, children, is_backward_irreducible, is_forward_irreducible


@dataclass(frozen=True)
class HyperGraph:
    """A(n), immutable once built.

    ``rows[r]`` holds the nodes of weight ``weight(root) - r`` in decreasing
    shortlex order; ``nodes`` is the concatenation of the rows.
    """

    n: int
    nodes: tuple[Expansion, ...]
    arcs: tuple[RewriteStep, ...]
    root: Expansion
    sink: Expansion
    rows: tuple[tuple[Expansion, ...], ...]
    out_arcs: dict = field(repr=False, compare=False)
    in_arcs: dict = field(repr=False, compare=False)

    def __len__(self):
        return len(self.nodes)

    def outdegree(self, node: Expansion) -> int:
        return len(self.out_arcs[node])

    def indegree(self, node: Expansion) -> int:
        return len(self.in_arcs[node])

    def arc_triples(self) -> set[tuple[str, str, str]]:
        """Arcs as (source, target, colour token) triples, handy for diffs."""
        return {(str(a.source), str(a.target), a.color.value) for a in self.arcs}

    def row_of(self, node: Expansion) -> int:
        return weight(self.root) - weight(node)


@lru_cache(maxsize=512)
def build_graph(n: int) -> HyperGraph:
    """Materialize A(n) by breadth-first closure of ``children`` from the root.

    The closure is checked against :func:`enumerate_expansions`, an
    independent route to the same node set.
    """
    _check_positive(n)
    root = minimal_expansion(n)
    seen = {root}
    queue = deque([root])
    arcs = []
    while queue:
        node = queue.popleft()
        for step in children(node):
            arcs.append(step)
            if step.target not in seen:
                seen.add(step.target)
                queue.append(step.target)

    if seen != enumerate_expansions(n):
        raise InvariantViolation(f"A({n}): closure from root differs from H({n})")

    sinks = [v for v in seen if is_forward_irreducible(v)]
    if len(sinks) != 1:
        raise InvariantViolation(f"A({n}) has {len(sinks)} sinks")
    sink = sinks[0]
    if [v for v in seen if is_backward_irreducible(v)] != [root]:
        raise InvariantViolation(f"A({n}) does not have a unique root")

    top = weight(root)
    rows: list[list[Expansion]] = [[] for _ in range(top - weight(sink) + 1)]
    for v in seen:
        rows[top - weight(v)].append(v)
    rows_t = tuple(tuple(sorted(r, key=shortlex_key, reverse=True)) for r in rows)
    if any(not r for r in rows_t):
        raise InvariantViolation(f"A({n}) has an empty weight row")
    nodes = tuple(v for r in rows_t for v in r)

    out_arcs = {v: [] for v in nodes}
    in_arcs = {v: [] for v in nodes}
    for a in arcs:
        out_arcs[a.source].append(a)
        in_arcs[a.target].append(a)
    index = {v: i for i, v in enumerate(nodes)}
    arcs.sort(key=lambda a: (index[a.source], a.position))
    return HyperGraph(
        n=n,
        nodes=nodes,
        arcs=tuple(arcs),
        root=root,
        sink=sink,
        rows=rows_t,
        out_arcs={k: tuple(v) for k, v in out_arcs.items()},
        in_arcs={k: tuple(v) for k, v in in_arcs.items()},
    )


def cyclomatic_number(g: HyperGraph) -> int:
    """|E| - |V| + 1, cross-checked against the sum of (outdegree - 1) off the sink."""
    v = len(g.arcs) - len(g.nodes) + 1
    by_outdegree = sum(g.outdegree(u) - 1 for u in g.nodes if u != g.sink)
    if v != by_outdegree:
        raise InvariantViolation(f"A({g.n}): cyclomatic {v} != outdegree sum {by_outdegree}")
    return v


def row_count(g: HyperGraph) -> int:
    return len(g.rows)


def topological_order(g: HyperGraph) -> list[Expansion]:
    """Kahn's algorithm; raises if A(n) were to contain a cycle."""
    indeg = {v: g.indegree(v) for v in g.nodes}
    ready = deque(v for v in g.nodes if indeg[v] == 0)
    order = []
    while ready:
        v = ready.popleft()
        order.append(v)
        for a in g.out_arcs[v]:
            indeg[a.target] -= 1
            if indeg[a.target] == 0:
                ready.append(a.target)
    if len(order) != len(g.nodes):
        raise InvariantViolation(f"A({g.n}) is not acyclic")
    return order


def node_class(g: HyperGraph, node: Expansion) -> str:
    """root / sink / branch, or plain for the lone node of A(2^k - 1)."""
    if g.root == g.sink:
        return "plain"
    if node == g.root:
        return "root"
    if node == g.sink:
        return "sink"
    return "branch"


_FILL = {"root": "green", "sink": "red", "branch": "yellow", "plain": "white"}


def to_dot(g: HyperGraph) -> str:
    """Graphviz source for A(n); byte-identical for identical input.

    Nodes carry ``class`` root/sink/branch/plain, arcs carry ``class``
    single/double, and each weight row is one ``rank=same`` group.
    """
    lines = [f'digraph "A({g.n})" {{', "  rankdir=BT;", "  node [shape=circle style=filled];"]
    for v in g.nodes:
        cls = node_class(g, v)
        lines.append(f'  "{v}" [label="{v}" class="{cls}" fillcolor="{_FILL[cls]}"];')
    for r, row in enumerate(g.rows):
        members = " ".join(f'"{v}";' for v in row)
        lines.append(f"  {{ rank=same; {members} }}  // row {r}")
    for a in g.arcs:
        head = "normal" if a.color.value == "single" else "normalnormal"
        lines.append(f'  "{a.source}" -> "{a.target}" [class="{a.color.value}" arrowhead={head}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
