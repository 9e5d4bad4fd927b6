"""Brute-force oracles and a claim-by-claim verification harness.

Each registered claim is a predicate checked for every index in a range
(usually n, sometimes m with n = 2m or 2m+1, or an exponent k).  A check
returns ``None`` on success or a witness dict describing the failure.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from . import classify as cls
from .errors import DomainError
from .expansion import (
    Expansion,
    LengthClass,
    binary_expansion,
    blocks_of_twos,
    count_expansions,
    length_class,
    minimal_expansion,
    shortlex_key,
    stern,
    value,
    weight,
)
from .graph import HyperGraph, build_graph, cyclomatic_number
from .rewrite import ArcColor, children, reduce_to_root, reduce_to_sink
from .structure import color_iso, induced_arcs, is_colour_isomorphism, long_nodes, strip_long

DEFAULT_ORACLE_BOUND = 5000
RANDOM_WALKS = 8


def oracle_expansions(n: int, bound: int = DEFAULT_ORACLE_BOUND) -> set[Expansion]:
    """H(n) by exhaustive digit choice from the top position down.

    Positions run from floor(log2 n) + 1 to 1; a digit is kept only if the
    lower positions can still absorb the residual value.
    """
    if n < 1:
        raise DomainError(f"oracle needs n >= 1, got {n}")
    if n > bound:
        raise DomainError(f"n={n} exceeds the oracle bound {bound}")
    words = []

    def place(pos, residual, prefix):
        if pos == 0:
            if residual == 0:
                words.append(prefix)
            return
        unit = 1 << (pos - 1)
        room_below = 2 * (unit - 1)
        for d in range(3):
            rest = residual - d * unit
            if 0 <= rest <= room_below:
                place(pos - 1, rest, prefix + "012"[d])

    place(n.bit_length(), n, "")
    out = set()
    for w in words:
        i = 0
        while w[i] == "0":
            i += 1
        out.add(Expansion(w[i:]))
    return out


def oracle_count(n: int, bound: int = DEFAULT_ORACLE_BOUND) -> int:
    return 1 if n == 0 else len(oracle_expansions(n, bound))


@lru_cache(maxsize=None)
def tree_numbers(limit: int) -> frozenset[int]:
    """All 0 < 2^(s+t+1) +/- 2^s - 1 <= limit, by looping over s and t."""
    out = set()
    s = 0
    while 2**s - 1 <= limit:
        t = 0
        while 2 ** (s + t + 1) - 2**s - 1 <= limit:
            for x in (2 ** (s + t + 1) + 2**s - 1, 2 ** (s + t + 1) - 2**s - 1):
                if 0 < x <= limit:
                    out.add(x)
            t += 1
        s += 1
    return frozenset(out)


@lru_cache(maxsize=None)
def t_numbers(limit: int) -> frozenset[int]:
    """All 2^l * 11 - 1 and 2^l * 13 - 1 up to limit."""
    out = set()
    l = 0
    while 11 * 2**l - 1 <= limit:
        out.update(x for x in (11 * 2**l - 1, 13 * 2**l - 1) if x <= limit)
        l += 1
    return frozenset(out)


@dataclass
class Context:
    seed: int = 0
    oracle_bound: int = DEFAULT_ORACLE_BOUND
    upper: int = 0  # largest index requested, sizes the closed-form sets

    def graph(self, n: int) -> HyperGraph:
        return build_graph(n)

    def rng(self, n: int) -> random.Random:
        # per-index stream: results do not depend on where the range starts
        return random.Random(f"{self.seed}:{n}")


@dataclass(frozen=True)
class Claim:
    id: str
    statement: str
    check: Callable[[int, Context], dict | None]
    default_range: tuple[int, int]
    index: str = "n"
    min_index: int = 1
    max_index: int | None = None
    oracle_backed: bool = False
    stride: int = 1  # sweep position of index i is stride * i



REGISTRY: dict[str, Claim] = {}


def claim(id, statement, default_range, **kw):
    def register(fn):
        REGISTRY[id] = Claim(id, statement, fn, default_range, **kw)
        return fn

    return register


def _arc(a) -> str:
    return f"{a.source}>{a.target}/{a.color.value}"


@claim("prop-pr1", "b(0)=b(1)=1, b(2n+1)=b(n), b(2n)=b(n)+b(n-1), and b(n)=s(n+1)", (0, 100_000), min_index=0)
def _prop_pr1(n, ctx):
    b = count_expansions(n)
    if b != stern(n + 1):
        return {"b": b, "stern_next": stern(n + 1)}
    if n == 0 and (count_expansions(0), count_expansions(1)) != (1, 1):
        return {"b0": count_expansions(0), "b1": count_expansions(1)}
    if 2 * n + 1 <= ctx.oracle_bound:
        on, odd = oracle_count(n), oracle_count(2 * n + 1)
        if odd != on:
            return {"b_2n_plus_1": odd, "b_n": on}
        if n >= 1:
            even = oracle_count(2 * n)
            if even != on + oracle_count(n - 1):
                return {"b_2n": even, "b_n": on, "b_n_minus_1": oracle_count(n - 1)}
            if on != b:
                return {"oracle": on, "table": b}
    return None


@claim("cor-co1", "b(n)=1 iff n=2^k-1", (1, 1 << 14))
def _cor_co1(n, ctx):
    single = count_expansions(n) == 1
    mersenne = (n + 1) & n == 0
    if single != mersenne:
        return {"b": count_expansions(n)}
    return None


@claim("prop-pr2", "exactly one expansion has no digit 0", (1, DEFAULT_ORACLE_BOUND), oracle_backed=True)
def _prop_pr2(n, ctx):
    zero_free = sorted(e for e in oracle_expansions(n, ctx.oracle_bound) if "0" not in e)
    if zero_free != [minimal_expansion(n)]:
        return {"zero_free": "|".join(zero_free) or "none"}
    return None


@claim("prop-ac", "the zero-free word is the only root, the binary word the only sink", (1, DEFAULT_ORACLE_BOUND), oracle_backed=True)
def _prop_ac(n, ctx):
    g = ctx.graph(n)
    h = oracle_expansions(n, ctx.oracle_bound)
    if set(g.nodes) != h:
        return {"nodes_vs_oracle": "mismatch"}
    roots = [v for v in g.nodes if g.indegree(v) == 0]
    sinks = [v for v in g.nodes if g.outdegree(v) == 0]
    if roots != [minimal_expansion(n)] or any("0" in v for v in roots):
        return {"roots": "|".join(roots)}
    if sinks != [binary_expansion(n)] or [e for e in h if "2" not in e] != sinks:
        return {"sinks": "|".join(sinks)}
    return None


@claim("prop-comp", "every reduction step increases the word in shortlex order", (1, 2000))
def _prop_comp(n, ctx):
    for a in ctx.graph(n).arcs:
        if not shortlex_key(a.source) < shortlex_key(a.target):
            return {"arc": _arc(a)}
    return None


@claim("cor-conf", "every reduction ends at the binary word, every inverse one at the zero-free word", (1, 2000))
def _cor_conf(n, ctx):
    g = ctx.graph(n)
    rng = ctx.rng(n)
    sink, root = binary_expansion(n), minimal_expansion(n)
    for v in g.nodes:
        for strategy in ("leftmost", "rightmost") + ("random",) * RANDOM_WALKS:
            end = reduce_to_sink(v, rng, strategy)
            if end != sink:
                return {"start": v, "end": end, "direction": "forward", "strategy": strategy}
            end = reduce_to_root(v, rng, strategy)
            if end != root:
                return {"start": v, "end": end, "direction": "backward", "strategy": strategy}
    ordered = sorted(g.nodes, key=shortlex_key)
    if (ordered[0], ordered[-1]) != (root, sink):
        return {"shortlex_min": ordered[0], "shortlex_max": ordered[-1]}
    return None


@claim("northshield", "b(2^k-1-j) = b(2^(k-1)-1+j) for 0 <= j < 2^k", (1, 14), index="k", max_index=20)
def _northshield(k, ctx):
    for j in range(1 << k):
        lhs, rhs = count_expansions((1 << k) - 1 - j), count_expansions((1 << (k - 1)) - 1 + j)
        if lhs != rhs:
            return {"j": j, "lhs": lhs, "rhs": rhs}
    return None


@claim("lemma-l1-s3", "a child weighs exactly one less than its parent, with the same value", (1, 2000))
def _lemma_l1_s3(n, ctx):
    for a in ctx.graph(n).arcs:
        if weight(a.target) != weight(a.source) - 1 or value(a.target) != n or value(a.source) != n:
            return {"arc": _arc(a)}
    return None


@claim("prop-10", "appending 1 is an isomorphism A(m) -> A(2m+1)", (1, 1000), index="m", stride=2)
def _prop_10(m, ctx):
    a, b = ctx.graph(m), ctx.graph(2 * m + 1)
    psi = {v: Expansion(v + "1") for v in a.nodes}
    if not is_colour_isomorphism(psi, a.nodes, a.arcs, b.nodes, b.arcs):
        return {"nodes": len(a.nodes), "image_nodes": len(b.nodes)}
    return None


@claim("prop-11", "A(2m) splits into copies of A(m-1) (append 2) and A(m) (append 0)", (2, 1000), index="m", min_index=2, stride=2)
def _prop_11(m, ctx):
    g = ctx.graph(2 * m)
    left = {v for v in g.nodes if v[-1] == "2"}
    right = {v for v in g.nodes if v[-1] == "0"}
    if left & right or len(left) + len(right) != len(g.nodes):
        return {"partition": "broken"}
    for part, k, digit in ((left, m - 1, "2"), (right, m, "0")):
        a = ctx.graph(k)
        phi = {v: Expansion(v + digit) for v in a.nodes}
        if not is_colour_isomorphism(phi, a.nodes, a.arcs, part, induced_arcs(g, part)):
            return {"half": digit, "source": f"A({k})"}
    return None


@claim("prop-cr", "bridging arcs of A(2m) are all single if m is odd, all double if m is even", (2, 1000), index="m", min_index=2, stride=2)
def _prop_cr(m, ctx):
    g = ctx.graph(2 * m)
    expected = ArcColor.SINGLE if m % 2 else ArcColor.DOUBLE
    bridging = [a for a in g.arcs if a.source[-1] == "2" and a.target[-1] == "0"]
    if not bridging:
        return {"bridging": "none"}
    for a in bridging:
        if a.color is not expected:
            return {"arc": _arc(a), "expected": expected.value}
    return None


@claim("lemma-l1-s4", "words starting with 2 or 12 are short; every length is floor(log2 n) or one more", (1, 5000))
def _lemma_l1_s4(n, ctx):
    k = n.bit_length() - 1
    for v in ctx.graph(n).nodes:
        if len(v) not in (k, k + 1):
            return {"node": v, "length": len(v)}
        if v.startswith(("2", "12")) and len(v) != k:
            return {"node": v, "length": len(v)}
    return None


@claim("prop-p1", "long words of n form a copy of A(n-2^k) via dropping the leading 1 and following zeros", (3, 2000), min_index=3)
def _prop_p1(n, ctx):
    k = n.bit_length() - 1
    if n == 1 << k:
        return None
    g = ctx.graph(n)
    nodes = long_nodes(g)
    xi = {v: strip_long(v) for v in nodes}
    target = ctx.graph(n - (1 << k))
    if not is_colour_isomorphism(xi, nodes, induced_arcs(g, nodes), target.nodes, target.arcs):
        return {"long_nodes": "|".join(nodes), "target": f"A({target.n})"}
    return None


@claim("cor-c1", "the number of long words of n is b(n-2^k)", (1, 2000))
def _cor_c1(n, ctx):
    k = n.bit_length() - 1
    got = sum(1 for v in ctx.graph(n).nodes if length_class(v) is LengthClass.LONG)
    if got != count_expansions(n - (1 << k)):
        return {"long": got, "expected": count_expansions(n - (1 << k))}
    return None


@claim("prop-15", "cyclomatic number = sum over non-sink nodes of (outdegree - 1)", (1, 5000))
def _prop_15(n, ctx):
    g = ctx.graph(n)
    euler = len(g.arcs) - len(g.nodes) + 1
    by_outdegree = sum(len(children(v)) - 1 for v in g.nodes if v != g.sink)
    if euler != by_outdegree:
        return {"euler": euler, "outdegree_sum": by_outdegree}
    return None


@claim("lemma-16", "outdegree = number of blocks of 2's", (1, 2000))
def _lemma_16(n, ctx):
    g = ctx.graph(n)
    for v in g.nodes:
        if g.outdegree(v) != blocks_of_twos(v):
            return {"node": v, "outdegree": g.outdegree(v)}
    return None


@claim("cor-17", "cyclomatic number >= blocks of 2's in the root - 1", (1, 5000))
def _cor_17(n, ctx):
    g = ctx.graph(n)
    v = cyclomatic_number(g)
    if v < blocks_of_twos(g.root) - 1:
        return {"cyclomatic": v, "root": g.root}
    return None


@claim("thm-t1", "A(2m) is a tree iff m = 2^t or 2^t - 1", (1, 2500), index="m", stride=2)
def _thm_t1(m, ctx):
    tree = cyclomatic_number(ctx.graph(2 * m)) == 0
    form = m & (m - 1) == 0 or (m + 1) & m == 0
    if tree != form:
        return {"tree": tree, "closed_form": form}
    return None


@claim("thm-t2", "A(n) is a tree iff n = 2^(s+t+1) +/- 2^s - 1", (1, 5000))
def _thm_t2(n, ctx):
    tree = cyclomatic_number(ctx.graph(n)) == 0
    enumerated = n in tree_numbers(max(n, ctx.upper))
    params = cls.tree_params(n)
    if tree != enumerated or (params is not None) != enumerated:
        return {"tree": tree, "closed_form": enumerated, "params": params or "none"}
    if params is not None and params.value() != n:
        return {"params": params}
    return None


@claim("cor-e14", "b(n) >= number of weight rows, with equality iff A(n) is a tree", (1, 5000))
def _cor_e14(n, ctx):
    g = ctx.graph(n)
    b, rows = count_expansions(n), weight(g.root) - weight(g.sink) + 1
    if b < rows or (b == rows) != (n in tree_numbers(max(n, ctx.upper))):
        return {"b": b, "rows": rows}
    return None


_A10_A12: list[HyperGraph] = []


@claim("s1-eq-T", "cyclomatic number 1 iff n = 2^l * (12 +/- 1) - 1; such graphs match A(10) or A(12)", (1, 5000))
def _s1_eq_t(n, ctx):
    g = ctx.graph(n)
    v = cyclomatic_number(g)
    member = n in t_numbers(max(n, ctx.upper))
    if (v == 1) != member or cls.in_T(n) != member:
        return {"cyclomatic": v, "in_T": member}
    if member:
        if not _A10_A12:
            _A10_A12.extend([build_graph(10), build_graph(12)])
        if len(g.nodes) != 5 or not any(color_iso(g, h) for h in _A10_A12):
            return {"nodes": len(g.nodes), "iso": "none"}
    return None


@dataclass
class VerificationReport:
    claim_id: str
    index: str
    lo: int
    hi: int
    passed: bool
    witness: dict | None = None
    elapsed: float = 0.0
    checked: int = 0

    def to_line(self, timing: bool = True) -> str:
        parts = [
            f"id={self.claim_id}",
            f"range={self.lo}..{self.hi}",
            f"index={self.index}",
            f"status={'PASS' if self.passed else 'FAIL'}",
            f"witness={format_witness(self.witness)}",
        ]
        if timing:
            parts.append(f"elapsed={self.elapsed:.3f}")
        return " ".join(parts)


def format_witness(w: dict | None) -> str:
    if not w:
        return "-"
    return ",".join(f"{k}:{str(v).replace(' ', '_')}" for k, v in w.items())


def parse_report_line(line: str) -> dict[str, str]:
    """Inverse of ``to_line`` for the key=value fields; the witness stays a string."""
    return dict(part.split("=", 1) for part in line.split())


def resolve_range(c: Claim, lo: int | None, hi: int | None, oracle_bound: int) -> tuple[int, int]:
    a = c.default_range[0] if lo is None else max(lo, c.min_index)
    b = c.default_range[1] if hi is None else hi
    if c.max_index is not None:
        b = min(b, c.max_index)
    if c.oracle_backed and b > oracle_bound:
        raise DomainError(f"{c.id}: range end {b} exceeds the oracle bound {oracle_bound}")
    return a, b


def verify_many(
    ids, lo: int | None = None, hi: int | None = None, seed: int = 0, oracle_bound: int = DEFAULT_ORACLE_BOUND
) -> list[VerificationReport]:
    """Run several claims in one sweep so each A(n) is built once.

    With no explicit range each claim uses its own default range.  Each
    claim stops at its first counterexample.
    """
    claims = []
    for i in ids:
        if i not in REGISTRY:
            raise DomainError(f"unknown claim id {i!r}")
        claims.append(REGISTRY[i])
    ranges = [resolve_range(c, lo, hi, oracle_bound) for c in claims]
    reports = [VerificationReport(c.id, c.index, a, b, True) for c, (a, b) in zip(claims, ranges)]
    live = [(c, r) for c, r in zip(claims, reports) if r.lo <= r.hi]
    if not live:
        return reports
    ctx = Context(seed=seed, oracle_bound=oracle_bound, upper=max(r.hi for _, r in live))
    start = min(c.stride * r.lo for c, r in live)
    stop = max(c.stride * r.hi for c, r in live)
    # claims indexed by m look at A(2m), so they run at position 2m and
    # share the graph built there by the n-indexed claims
    for p in range(start, stop + 1):
        for c, r in live:
            i, off = divmod(p, c.stride)
            if off or not r.passed or not r.lo <= i <= r.hi:
                continue
            t0 = time.perf_counter()
            w = c.check(i, ctx)
            r.elapsed += time.perf_counter() - t0
            r.checked += 1
            if w is not None:
                r.passed = False
                r.witness = {c.index: i, **w}
    return reports


def verify(claim_id: str, lo: int | None = None, hi: int | None = None, seed: int = 0,
           oracle_bound: int = DEFAULT_ORACLE_BOUND) -> VerificationReport:
    return verify_many([claim_id], lo, hi, seed, oracle_bound)[0]


def verify_all(seed: int = 0, oracle_bound: int = DEFAULT_ORACLE_BOUND, lo=None, hi=None) -> list[VerificationReport]:
    return verify_many(list(REGISTRY), lo, hi, seed, oracle_bound)
