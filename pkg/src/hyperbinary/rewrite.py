"""The rewriting system {02 -> 10, 12 -> 20} on hyperbinary words, and its inverse.

A word is matched with one virtual leading zero, so a leading 2 rewrites as
``2y -> 10y``.  Each step records the index of the left symbol of the
rewritten pair in the source word; the virtual zero has index -1.
"""

from __future__ import annotations

import enum
import random
from functools import lru_cache
from typing import NamedTuple

from .expansion import Expansion, _trusted


class ArcColor(enum.Enum):
    SINGLE = "single"  # 02 -> 10, including the leading 2y -> 10y case
    DOUBLE = "double"  # 12 -> 20

    @property
    def glyph(self) -> str:
        return "→" if self is ArcColor.SINGLE else "↠"

    def __str__(self):
        return self.value


class RewriteStep(NamedTuple):
    source: Expansion
    target: Expansion
    color: ArcColor
    position: int

    def __str__(self):
        return f"{self.source} {self.color.glyph} {self.target}"


_FORWARD = {"0": ("1", ArcColor.SINGLE), "1": ("2", ArcColor.DOUBLE)}
_BACKWARD = {"1": ("0", ArcColor.SINGLE), "2": ("1", ArcColor.DOUBLE)}


@lru_cache(maxsize=1 << 16)
def children(e: Expansion) -> tuple[RewriteStep, ...]:
    """All single-step reductions of ``e``, left to right.

    One per maximal block of 2's: only the first 2 of a block has a left
    neighbour in {0, 1}.
    """
    e = Expansion(e) if type(e) is not Expansion else e
    padded = "0" + e
    steps = []
    for i in range(1, len(padded)):
        if padded[i] != "2":
            continue
        left = padded[i - 1]
        if left == "2":
            continue
        up, color = _FORWARD[left]
        word = padded[: i - 1] + up + "0" + padded[i + 1 :]
        steps.append(RewriteStep(e, _trusted(word.lstrip("0")), color, i - 2))
    return tuple(steps)


@lru_cache(maxsize=1 << 16)
def parents(e: Expansion) -> tuple[RewriteStep, ...]:
    """All words reducing to ``e`` in one step (inverse rules 10 -> 02, 20 -> 12)."""
    e = Expansion(e) if type(e) is not Expansion else e
    steps = []
    for i in range(1, len(e)):
        if e[i] != "0" or e[i - 1] == "0":
            continue
        down, color = _BACKWARD[e[i - 1]]
        word = e[: i - 1] + down + "2" + e[i + 1 :]
        # a produced leading zero undoes the 2y -> 10y case
        position = i - 1
        if word[0] == "0":
            word = word[1:]
            position = -1
        steps.append(RewriteStep(_trusted(word), e, color, position))
    return tuple(steps)


def is_forward_irreducible(e: str) -> bool:
    return "2" not in e


def is_backward_irreducible(e: str) -> bool:
    return "0" not in e


def _pick(steps, rng, strategy):
    if strategy == "leftmost":
        return steps[0]
    if strategy == "rightmost":
        return steps[-1]
    return rng.choice(steps)


def reduce_to_sink(e: Expansion, rng: random.Random | None = None, strategy: str = "random") -> Expansion:
    """Apply reductions until none applies; ``strategy`` is random, leftmost or rightmost."""
    rng = rng or random.Random(0)
    while True:
        steps = children(e)
        if not steps:
            return e
        e = _pick(steps, rng, strategy).target


def reduce_to_root(e: Expansion, rng: random.Random | None = None, strategy: str = "random") -> Expansion:
    """Apply inverse reductions until none applies."""
    rng = rng or random.Random(0)
    while True:
        steps = parents(e)
        if not steps:
            return e
        e = _pick(steps, rng, strategy).source
