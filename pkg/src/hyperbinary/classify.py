"""Closed-form classification of A(n), cross-checked against the built graph."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvariantViolation
from .expansion import _check_positive, count_expansions
from .graph import build_graph, cyclomatic_number

# b(n) * len(word) above which classify() skips building the graph
DEFAULT_WORK_BOUND = 10**6


@dataclass(frozen=True)
class Pi1:
    """Fundamental group of a connected graph: free of the given rank."""

    rank: int

    @property
    def kind(self) -> str:
        if self.rank == 0:
            return "trivial"
        return "Z" if self.rank == 1 else "free"

    @property
    def is_abelian(self) -> bool:
        return self.rank <= 1

    def __str__(self):
        if self.rank <= 1:
            return self.kind
        return f"free rank {self.rank}"


@dataclass(frozen=True)
class TreeParams:
    s: int
    t: int
    sign: str  # "+" or "-"

    def value(self) -> int:
        pm = 1 if self.sign == "+" else -1
        return 2 ** (self.s + self.t + 1) + pm * 2**self.s - 1

    def __str__(self):
        return f"2^{self.s + self.t + 1} {self.sign} 2^{self.s} - 1"


@dataclass(frozen=True)
class Classification:
    n: int
    b: int
    cyclomatic: int | None  # None only when unverified and not fixed by a closed form
    is_tree: bool
    tree_params: TreeParams | None
    in_T: bool
    pi1: Pi1 | None
    structurally_verified: bool


def two_adic_split(n: int) -> tuple[int, int]:
    """(s, q) with n = 2^s * q and q odd."""
    s = (n & -n).bit_length() - 1
    return s, n >> s


def _is_power_of_two(x: int) -> bool:
    return x > 0 and x & (x - 1) == 0


def tree_params(n: int) -> TreeParams | None:
    """(s, t, sign) with n = 2^(s+t+1) +/- 2^s - 1, or None.

    Writing n + 1 = 2^s * q with q odd, the plus form needs q = 2^(t+1) + 1
    and the minus form q = 2^(t+1) - 1.  When q = 3 both apply, (s,0,+) and
    (s,1,-); the plus form is reported.
    """
    _check_positive(n)
    s, q = two_adic_split(n + 1)
    if q >= 3 and _is_power_of_two(q - 1):
        return TreeParams(s, (q - 1).bit_length() - 2, "+")
    if _is_power_of_two(q + 1):
        return TreeParams(s, (q + 1).bit_length() - 2, "-")
    return None


def in_T(n: int) -> bool:
    """n = 2^l * 11 - 1 or 2^l * 13 - 1."""
    _check_positive(n)
    return two_adic_split(n + 1)[1] in (11, 13)


def is_even_tree_form(m: int) -> bool:
    """m = 2^t or m = 2^t - 1, the halves of the even trees A(2m)."""
    return _is_power_of_two(m) or _is_power_of_two(m + 1)


def classify(n: int, work_bound: int = DEFAULT_WORK_BOUND) -> Classification:
    """Tree / T membership from closed forms, confirmed on A(n) when affordable.

    Raises InvariantViolation if the graph disagrees with a closed form.
    """
    _check_positive(n)
    b = count_expansions(n)
    params = tree_params(n)
    member = in_T(n)
    if b * n.bit_length() <= work_bound:
        v = cyclomatic_number(build_graph(n))
        if (v == 0) != (params is not None):
            raise InvariantViolation(f"n={n}: cyclomatic {v} but tree closed form says {params}")
        if (v == 1) != member:
            raise InvariantViolation(f"n={n}: cyclomatic {v} but membership in T is {member}")
        return Classification(n, b, v, v == 0, params, member, Pi1(v), True)

    v = 0 if params is not None else 1 if member else None
    return Classification(n, b, v, params is not None, params, member, None if v is None else Pi1(v), False)
