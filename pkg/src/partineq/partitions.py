"""Direct counting and enumeration of restricted partitions.

These routines know nothing about series tables; they count multisets of
allowed parts straight from the definition, which makes them usable as an
independent check on :mod:`partineq.qseries`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterable

from partineq.errors import ResourceError, ValidationError

#: Largest ``n`` that :func:`enumerate_partitions` accepts unless overridden.
DEFAULT_ENUMERATION_CAP = 60


@dataclass(frozen=True)
class PartitionQuery:
    """Partitions of ``n`` into exactly ``m`` parts from ``parts``."""

    n: int
    m: int
    parts: tuple[int, ...]
    distinct: bool = False

    def __post_init__(self) -> None:
        if self.n < 0 or self.m < 0:
            raise ValidationError(f"n and m must be >= 0, got n={self.n}, m={self.m}")
        parts = tuple(sorted(set(int(p) for p in self.parts)))
        if parts and parts[0] < 1:
            raise ValidationError(f"parts must be positive, got {parts}")
        object.__setattr__(self, "parts", parts)


def allowed_parts(M: int, a: int, N: int) -> list[int]:
    """All ``1 <= e <= N`` with ``e ≡ ±a (mod M)``, ascending."""
    if not 1 <= a < M / 2:
        raise ValidationError(f"need 1 <= a < M/2, got a={a}, M={M}")
    if math.gcd(a, M) != 1:
        warnings.warn(f"gcd({a}, {M}) != 1", stacklevel=2)
    return [e for e in range(1, N + 1) if e % M in (a, M - a)]


def count_exact_parts(q: PartitionQuery) -> int:
    """Number of partitions of ``q.n`` into exactly ``q.m`` parts from ``q.parts``.

    ``ways[k][t]`` counts partitions of ``t`` into ``k`` parts using the part
    sizes seen so far; memory is ``O(m * n)``.
    """
    n, m = q.n, q.m
    if m == 0:
        return 1 if n == 0 else 0
    parts = [p for p in q.parts if p <= n]
    if not parts or m * parts[0] > n:
        return 0
    ways = [[0] * (n + 1) for _ in range(m + 1)]
    ways[0][0] = 1
    for p in parts:
        if q.distinct:
            for k in range(m, 0, -1):
                prev, cur = ways[k - 1], ways[k]
                for t in range(n, p - 1, -1):
                    cur[t] += prev[t - p]
        else:
            for k in range(1, m + 1):
                prev, cur = ways[k - 1], ways[k]
                for t in range(p, n + 1):
                    cur[t] += prev[t - p]
    return ways[m][n]


def enumerate_partitions(
    q: PartitionQuery, cap: int = DEFAULT_ENUMERATION_CAP
) -> list[tuple[int, ...]]:
    """Every qualifying partition as a nondecreasing tuple, in lexicographic order."""
    if q.n > cap:
        raise ResourceError(f"n={q.n} exceeds the enumeration cap {cap}")
    parts = [p for p in q.parts if p <= q.n]
    out: list[tuple[int, ...]] = []
    chosen: list[int] = []

    def extend(start: int, remaining: int, left: int) -> None:
        if left == 0:
            if remaining == 0:
                out.append(tuple(chosen))
            return
        for i in range(start, len(parts)):
            p = parts[i]
            if p * left > remaining:
                break
            chosen.append(p)
            extend(i + 1 if q.distinct else i, remaining - p, left - 1)
            chosen.pop()

    extend(0, q.n, q.m)
    return out


def count_any_parts(n: int, parts: Iterable[int], distinct: bool = False) -> int:
    """Partitions of ``n`` into parts from ``parts`` with any number of parts."""
    ways = [1] + [0] * n
    for p in sorted(set(parts)):
        if p > n:
            continue
        if distinct:
            for t in range(n, p - 1, -1):
                ways[t] += ways[t - p]
        else:
            for t in range(p, n + 1):
                ways[t] += ways[t - p]
    return ways[n]
