"""Combinatorial and gamma-function primitives.

Everything here is exact where the result is an integer (Stirling numbers,
binomials) and double precision otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError

__all__ = [
    "Stirling2Table",
    "binomial",
    "falling_factorial",
    "log_gamma",
    "reciprocal_factorial",
    "stirling2",
]


def log_gamma(x: float) -> float:
    """ln|Gamma(x)|, raising DomainError at the poles 0, -1, -2, ..."""
    if not math.isfinite(x):
        raise DomainError(f"log_gamma needs a finite argument, got {x!r}")
    if x <= 0 and x == math.floor(x):
        raise DomainError(f"log_gamma has a pole at {x!r}")
    return math.lgamma(x)


def reciprocal_factorial(m: int) -> float:
    """1/m! with the reciprocal-gamma convention 1/m! = 0 for m < 0."""
    if m < 0:
        return 0.0
    return 1 / math.factorial(m)


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def falling_factorial(c, j: int):
    """(c)_j = c (c-1) ... (c-j+1).

    Exact for int and Fraction ``c``; works for negative and real ``c`` too.
    """
    out = 1
    for i in range(j):
        out *= c - i
    return out


@dataclass(frozen=True)
class Stirling2Table:
    """Triangle of Stirling numbers of the second kind S(p, r), 0 <= r <= p <= max_p."""

    max_p: int
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, max_p: int) -> Stirling2Table:
        if max_p < 0:
            raise DomainError("max_p must be nonnegative")
        rows = [(1,)]
        for p in range(1, max_p + 1):
            prev = rows[-1]
            row = [0] * (p + 1)
            for r in range(1, p + 1):
                left = prev[r] if r < p else 0
                row[r] = r * left + prev[r - 1]
            rows.append(tuple(row))
        return cls(max_p, tuple(rows))

    def __call__(self, p: int, r: int) -> int:
        if p > self.max_p:
            raise DomainError(f"table built up to p={self.max_p}, asked for p={p}")
        if r < 0 or r > p:
            return 0
        return self.entries[p][r]


@lru_cache(maxsize=None)
def _table(max_p: int) -> Stirling2Table:
    return Stirling2Table.build(max_p)


def stirling2(p: int, r: int) -> int:
    """S(p, r): number of partitions of a p-set into r nonempty blocks.

    Equivalently, the coefficient of x^r D^r in the normal-ordered (xD)^p.
    """
    if p < 0 or r < 0:
        raise DomainError("stirling2 takes nonnegative arguments")
    if r > p:
        return 0
    # tables are shared in blocks of 32 rows to keep the cache small
    return _table(32 * (p // 32 + 1))(p, r)

