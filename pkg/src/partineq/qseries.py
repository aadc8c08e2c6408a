"""Exact truncated series in two variables, ``s`` (parts) and ``q`` (weight).

A :class:`SeriesTable` holds the coefficients ``c(m, n)`` of ``s^m q^n`` for
``0 <= m <= n <= N``.  Coefficients with ``m > n`` are identically zero because
every factor carries at least one power of ``q`` with each power of ``s``.

Products of the shape ``1/(s q^a, s q^{M-a}; q^M)`` and
``(-s q^a, -s q^{M-a}; q^M)`` are expanded by a factor-by-factor DP over
Python integers, so nothing ever overflows.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from functools import lru_cache
from operator import add, sub
from typing import Iterator

from partineq.errors import (
    OutOfRangeError,
    ResourceError,
    TruncationMismatch,
    UnsupportedSpecError,
    ValidationError,
)

#: Environment variable overriding :data:`DEFAULT_MAX_ENTRIES`.
MAX_ENTRIES_ENV = "PARTINEQ_MAX_ENTRIES"
#: Largest triangular table (number of stored coefficients) built by default.
DEFAULT_MAX_ENTRIES = 20_000_000


class Kind(str, enum.Enum):
    """Which q-Pochhammer expansion a product uses."""

    #: ``1/(1 - s q^e)`` factors: parts may repeat.
    RECIPROCAL = "reciprocal"
    #: ``(1 + s q^e)`` factors: parts are distinct.
    DISTINCT = "distinct"

    def __str__(self) -> str:
        return self.value


def max_table_entries() -> int:
    raw = os.environ.get(MAX_ENTRIES_ENV)
    if raw is None:
        return DEFAULT_MAX_ENTRIES
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"{MAX_ENTRIES_ENV}={raw!r} is not an integer") from None


def _check_budget(N: int) -> None:
    entries = (N + 1) * (N + 2) // 2
    budget = max_table_entries()
    if entries > budget:
        raise ResourceError(
            f"a table of order N={N} needs {entries} coefficients, "
            f"over the budget of {budget} (set {MAX_ENTRIES_ENV} to raise it)"
        )


@dataclass(frozen=True)
class ProductSpec:
    """A product over the factor exponents ``r + jM`` for each residue ``r``.

    ``length=None`` means the infinite product; otherwise ``j`` runs over
    ``0 <= j < length`` for every residue.
    """

    modulus: int
    residues: tuple[int, ...]
    kind: Kind = Kind.RECIPROCAL
    length: int | None = None

    def __post_init__(self) -> None:
        if isinstance(self.modulus, bool) or not isinstance(self.modulus, int):
            raise ValidationError(f"modulus must be an integer, got {self.modulus!r}")
        if self.modulus < 3:
            raise ValidationError(f"modulus must be >= 3, got {self.modulus}")
        residues = tuple(sorted(int(r) for r in self.residues))
        if not residues:
            raise ValidationError("residues must be non-empty")
        for r in residues:
            if not 1 <= r <= self.modulus:
                raise ValidationError(f"residue {r} outside [1, {self.modulus}]")
        if self.length is not None and self.length < 0:
            raise ValidationError(f"length must be >= 0 or None, got {self.length}")
        object.__setattr__(self, "residues", residues)
        object.__setattr__(self, "kind", Kind(self.kind))

    @classmethod
    def pair(
        cls, M: int, a: int, kind: Kind | str = Kind.RECIPROCAL, length: int | None = None
    ) -> ProductSpec:
        """The product over parts congruent to ``±a`` modulo ``M``."""
        if not 1 <= a < M / 2:
            raise ValidationError(f"need 1 <= a < M/2, got a={a}, M={M}")
        return cls(M, (a, M - a), Kind(kind), length)

    @property
    def is_pair(self) -> bool:
        return (
            len(self.residues) == 2
            and self.residues[0] + self.residues[1] == self.modulus
            and self.residues[0] < self.modulus / 2
        )

    def exponents(self, N: int) -> list[int]:
        """Factor exponents ``e <= N`` in ascending order, with multiplicity."""
        out = []
        for r in self.residues:
            e, j = r, 0
            while e <= N and (self.length is None or j < self.length):
                out.append(e)
                e += self.modulus
                j += 1
        out.sort()
        return out


@dataclass(frozen=True, eq=True)
class SeriesTable:
    """Coefficients of ``sum c(m, n) s^m q^n`` modulo ``q^(N+1)``.

    ``rows[m][n - m]`` holds ``c(m, n)``; row ``m`` covers ``m <= n <= N``.
    """

    trunc_order: int
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def zero(cls, N: int) -> SeriesTable:
        return cls(N, tuple((0,) * (N + 1 - m) for m in range(N + 1)))

    def _check_n(self, n: int) -> None:
        if not 0 <= n <= self.trunc_order:
            raise OutOfRangeError(f"n={n} outside [0, {self.trunc_order}]")

    def coefficient(self, m: int, n: int) -> int:
        """``c(m, n)``; zero when ``m > n``."""
        self._check_n(n)
        if m < 0:
            raise OutOfRangeError(f"m={m} is negative")
        if m > n:
            return 0
        return self.rows[m][n - m]

    def s_polynomial(self, n: int) -> list[int]:
        """Coefficients ``[c(0, n), ..., c(n, n)]`` with trailing zeros trimmed."""
        self._check_n(n)
        coeffs = [self.rows[m][n - m] for m in range(n + 1)]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return coeffs

    def evaluate_s1(self) -> list[int]:
        """The univariate series obtained by setting ``s = 1``."""
        N = self.trunc_order
        total = [0] * (N + 1)
        for m, row in enumerate(self.rows):
            total[m:] = map(add, total[m:], row)
        return total

    def restrict(self, N: int) -> SeriesTable:
        """The same series reduced modulo ``q^(N+1)``."""
        if not 0 <= N <= self.trunc_order:
            raise OutOfRangeError(f"cannot restrict order {self.trunc_order} to {N}")
        return SeriesTable(N, tuple(self.rows[m][: N + 1 - m] for m in range(N + 1)))

    def entries(self, include_zero: bool = False) -> Iterator[tuple[int, int, int]]:
        """Yield ``(m, n, c(m, n))`` ordered by ``n`` then ``m``."""
        N = self.trunc_order
        for n in range(N + 1):
            for m in range(n + 1):
                v = self.rows[m][n - m]
                if v or include_zero:
                    yield m, n, v

    def __sub__(self, other: SeriesTable) -> SeriesTable:
        return difference(self, other)


def difference(A: SeriesTable, B: SeriesTable) -> SeriesTable:
    """Entrywise ``A - B``."""
    if A.trunc_order != B.trunc_order:
        raise TruncationMismatch(
            f"truncation orders differ: {A.trunc_order} vs {B.trunc_order}"
        )
    return SeriesTable(
        A.trunc_order,
        tuple(tuple(map(sub, ra, rb)) for ra, rb in zip(A.rows, B.rows)),
    )


def build_product(spec: ProductSpec, N: int) -> SeriesTable:
    """Expand the product described by ``spec`` modulo ``q^(N+1)``.

    Each factor is folded into the table in ascending exponent order.  For a
    reciprocal factor ``1/(1 - s q^e)`` the new table ``G`` satisfies
    ``G[m][n] = F[m][n] + G[m-1][n-e]`` (rows swept upward); a distinct factor
    ``(1 + s q^e)`` gives ``G[m][n] = F[m][n] + F[m-1][n-e]`` (rows swept
    downward so row ``m-1`` is still the old one).
    """
    if N < 0:
        raise ValidationError(f"N must be >= 0, got {N}")
    _check_budget(N)
    rows = [[0] * (N + 1 - m) for m in range(N + 1)]
    rows[0][0] = 1
    inf = N + 1
    # lowest[m]: smallest n with c(m, n) != 0 (single products never cancel)
    lowest = [inf] * (N + 2)
    lowest[0] = 0
    top = 0
    reciprocal = spec.kind is Kind.RECIPROCAL

    def fold(m: int, e: int) -> None:
        n0 = lowest[m - 1] + e
        if n0 > N:
            return
        dst, src = rows[m], rows[m - 1]
        i0 = n0 - m
        j0 = n0 - e - (m - 1)
        dst[i0:] = map(add, dst[i0:], src[j0 : j0 + N - n0 + 1])
        if n0 < lowest[m]:
            lowest[m] = n0

    for e in spec.exponents(N):
        if reciprocal:
            m = 1
            while m <= N and lowest[m - 1] + e <= N:
                fold(m, e)
                m += 1
            top = max(top, m - 1)
        else:
            for m in range(min(top + 1, N), 0, -1):
                fold(m, e)
            if top < N and lowest[top + 1] <= N:
                top += 1
    return SeriesTable(N, tuple(tuple(r) for r in rows))


def _inverse_qpoch_table(D: int) -> list[list[int]]:
    """``inv[j]`` = coefficients of ``1/(x; x)_j`` up to ``x^D``, for ``j <= D``."""
    cur = [1] + [0] * D
    inv = [cur[:]]
    for j in range(1, D + 1):
        for d in range(j, D + 1):
            cur[d] += cur[d - j]
        inv.append(cur[:])
    return inv


def build_product_double_sum(spec: ProductSpec, N: int) -> SeriesTable:
    """Expand a two-residue product through its q-binomial double sum.

    ``1/(s q^a, s q^{M-a}; q^M)`` is the sum over ``j, k >= 0`` of
    ``s^(j+k) q^(a j + (M-a) k) / ((q^M; q^M)_j (q^M; q^M)_k)``; the distinct
    kind inserts ``q^(M (j(j-1)/2 + k(k-1)/2))``.  The summation shares no
    code with :func:`build_product`, so it serves as a check on it.
    """
    if not spec.is_pair:
        raise UnsupportedSpecError(
            f"double-sum expansion needs residues {{a, M-a}}, got {spec.residues}"
        )
    if spec.length is not None:
        raise UnsupportedSpecError("double-sum expansion covers infinite products only")
    if N < 0:
        raise ValidationError(f"N must be >= 0, got {N}")
    _check_budget(N)
    M = spec.modulus
    a = spec.residues[0]
    distinct = spec.kind is Kind.DISTINCT
    D = N // M
    inv = _inverse_qpoch_table(D)

    def inv_of(j: int) -> list[int]:
        # 1/(1 - x^j) is 1 modulo x^(D+1) once j > D
        return inv[min(j, D)]

    rows = [[0] * (N + 1 - m) for m in range(N + 1)]
    j = 0
    while a * j + (M * j * (j - 1) // 2 if distinct else 0) <= N:
        k = 0
        while True:
            E = a * j + (M - a) * k
            if distinct:
                E += M * (j * (j - 1) // 2 + k * (k - 1) // 2)
            if E > N:
                break
            m = j + k
            left, right = inv_of(j), inv_of(k)
            row = rows[m]
            for d in range((N - E) // M + 1):
                row[E + M * d - m] += sum(left[i] * right[d - i] for i in range(d + 1))
            k += 1
        j += 1
    return SeriesTable(N, tuple(tuple(r) for r in rows))


def rr_difference_sum(N: int) -> list[int]:
    """Coefficients of ``sum_{k>=1} q^(k^2) / (q; q)_(k-1)`` up to ``q^N``."""
    if N < 0:
        raise ValidationError(f"N must be >= 0, got {N}")
    out = [0] * (N + 1)
    inv = [1] + [0] * N  # 1/(q; q)_(k-1)
    k = 1
    while k * k <= N:
        if k >= 2:
            step = k - 1
            for d in range(step, N + 1):
                inv[d] += inv[d - step]
        shift = k * k
        out[shift:] = map(add, out[shift:], inv[: N + 1 - shift])
        k += 1
    return out


@lru_cache(maxsize=64)
def product_table(spec: ProductSpec, N: int) -> SeriesTable:
    """Memoized :func:`build_product`; tables are immutable so sharing is safe."""
    return build_product(spec, N)


def difference_table(
    M: int,
    a: int,
    b: int,
    kind: Kind | str,
    N: int,
    length: int | None = None,
) -> SeriesTable:
    """Table for the ``±a`` product minus the ``±b`` product modulo ``M``."""
    kind = Kind(kind)
    A = product_table(ProductSpec.pair(M, a, kind, length), N)
    B = product_table(ProductSpec.pair(M, b, kind, length), N)
    return difference(A, B)
