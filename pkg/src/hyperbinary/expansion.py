"""Hyperbinary expansions and the counting function b(n).

An expansion is stored as its digit word, most significant digit first,
e.g. ``Expansion("122")`` is one of the five expansions of 10.
"""

from __future__ import annotations

import enum
import threading
from functools import lru_cache

from .errors import DomainError, InvariantViolation

_DIGITS = frozenset("012")


class Expansion(str):
    """A canonical hyperbinary word: digits in {0,1,2}, leading digit nonzero.

    Subclasses ``str`` so words hash, compare for equality and print exactly
    like the digit strings used when drawing A(n).  Ordering is *not* the
    str ordering; use :func:`shortlex_key` / :func:`shortlex_compare`.
    """

    __slots__ = ()

    def __new__(cls, word):
        if not isinstance(word, str):
            word = "".join(str(d) for d in word)
        if not word or not _DIGITS.issuperset(word):
            raise DomainError(f"not a hyperbinary word: {word!r}")
        if word[0] == "0":
            raise DomainError(f"non-canonical word (leading zero): {word!r}; use normalize()")
        return super().__new__(cls, word)

    @property
    def digits(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self)

    @property
    def value(self) -> int:
        return value(self)

    @property
    def weight(self) -> int:
        return weight(self)

    def __repr__(self):
        return f"Expansion({str(self)!r})"


def _trusted(word: str) -> Expansion:
    # skips validation; only for words produced by the rewrite rules
    return str.__new__(Expansion, word)


def value(e: str) -> int:
    """Sum of x_i * 2^(k-i) over the digits of ``e``."""
    ones = int(e.replace("2", "0"), 2)
    twos = int(e.replace("1", "0").replace("2", "1"), 2)
    return ones + 2 * twos


def normalize(word) -> Expansion:
    """Strip leading zeros from a raw digit sequence (str or iterable of ints)."""
    if not isinstance(word, str):
        word = "".join(str(d) for d in word)
    if not _DIGITS.issuperset(word):
        raise DomainError(f"digits must be 0, 1 or 2: {word!r}")
    stripped = word.lstrip("0")
    if not stripped:
        raise DomainError(f"word {word!r} has no positive value")
    return _trusted(stripped)


def weight(e: str) -> int:
    return e.count("1") + 2 * e.count("2")


def _check_positive(n: int) -> None:
    if n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")


@lru_cache(maxsize=4096)
def _expansions(n: int) -> frozenset[str]:
    # Last digit is forced by parity: 1 if n odd, else 0 or 2.
    if n == 0:
        return frozenset([""])
    if n % 2:
        return frozenset(w + "1" for w in _expansions((n - 1) // 2))
    out = {w + "0" for w in _expansions(n // 2)}
    out.update(w + "2" for w in _expansions((n - 2) // 2))
    return frozenset(out)


def enumerate_expansions(n: int) -> frozenset[Expansion]:
    """Return H(n), the set of all hyperbinary expansions of ``n``."""
    _check_positive(n)
    # words built from the empty word for 0 never start with a zero digit
    return frozenset(_trusted(w) for w in _expansions(n))


def minimal_expansion(n: int) -> Expansion:
    """The unique expansion of ``n`` with no digit 0 (the root of A(n)).

    Built right to left: an odd n ends in 1, an even n ends in 2.
    """
    _check_positive(n)
    digits = []
    while n > 0:
        d = 1 if n % 2 else 2
        digits.append(str(d))
        n = (n - d) // 2
    return _trusted("".join(reversed(digits)))


def binary_expansion(n: int) -> Expansion:
    """The ordinary base-2 word of ``n`` (the sink of A(n))."""
    _check_positive(n)
    return _trusted(format(n, "b"))


def distance_indices(e: Expansion) -> tuple[int, int]:
    """(i, j): reductions needed to reach the binary word, and to climb to the root."""
    n = value(e)
    w = weight(e)
    return w - weight(binary_expansion(n)), weight(minimal_expansion(n)) - w


def shortlex_key(e: str) -> tuple[int, str]:
    # digit characters sort like the digits themselves
    return (len(e), str(e))


def shortlex_compare(a: str, b: str) -> int:
    """Three-way shortlex comparison: -1, 0 or 1."""
    ka, kb = shortlex_key(a), shortlex_key(b)
    return (ka > kb) - (ka < kb)


class CountTable:
    """Memo for b(n) built on b(0)=b(1)=1, b(2n+1)=b(n), b(2n)=b(n)+b(n-1).

    Safe to share between threads; writes go through a lock.
    """

    def __init__(self):
        self.cache: dict[int, int] = {0: 1, 1: 1}
        self._lock = threading.Lock()

    def get(self, n: int) -> int:
        if n < 0:
            raise DomainError(f"b(n) undefined for negative n={n}")
        cache = self.cache
        if n in cache:
            return cache[n]
        # resolve the dependency chain iteratively; recursion depth stays O(1)
        pending = [n]
        while pending:
            m = pending[-1]
            if m in cache:
                pending.pop()
                continue
            h = m // 2
            needed = [h] if m % 2 else [h, h - 1]
            missing = [x for x in needed if x not in cache]
            if missing:
                pending.extend(missing)
                continue
            val = cache[h] if m % 2 else cache[h] + cache[h - 1]
            with self._lock:
                cache[m] = val
            pending.pop()
        return cache[n]

    def __len__(self):
        return len(self.cache)


_default_table = CountTable()


def count_expansions(n: int, table: CountTable | None = None) -> int:
    """b(n), the number of hyperbinary expansions of n, with b(0) = 1."""
    return (table or _default_table).get(n)


def stern(n: int) -> int:
    """Stern's diatomic sequence s(n): s(0)=0, s(1)=1, s(2n)=s(n), s(2n+1)=s(n)+s(n+1).

    Evaluated bit by bit from the least significant end, without tables.
    """
    if n < 0:
        raise DomainError(f"stern(n) undefined for negative n={n}")
    a, b = 1, 0
    while n:
        if n & 1:
            b += a
        else:
            a += b
        n >>= 1
    return b


def blocks_of_twos(e: str) -> int:
    """Number of maximal runs of the digit 2."""
    count = 0
    prev = ""
    for c in e:
        if c == "2" and prev != "2":
            count += 1
        prev = c
    return count


class LengthClass(enum.Enum):
    SHORT = "short"
    LONG = "long"

    def __str__(self):
        return self.value


def length_class(e: Expansion) -> LengthClass:
    """Short if len(e) == floor(log2 n), long if floor(log2 n) + 1."""
    k = value(e).bit_length() - 1
    if len(e) == k + 1:
        return LengthClass.LONG
    if len(e) == k:
        return LengthClass.SHORT
    raise InvariantViolation(f"expansion {e} of {value(e)} has impossible length {len(e)}")
