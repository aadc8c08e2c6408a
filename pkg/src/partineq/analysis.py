"""Nonnegativity scans along arithmetic progressions and sign-pattern analysis.

Everything here is bounded evidence: a progression that passes at order ``N``
has no negative coefficient with ``n <= N``, nothing more.
"""

from __future__ import annotations

import enum
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from partineq.errors import ValidationError
from partineq.qseries import Kind, SeriesTable, difference_table


class Status(str, enum.Enum):
    PASS = "pass"
    VIOLATION = "violation"

    def __str__(self) -> str:
        return self.value


class Sign(str, enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    ZERO = "zero"
    MIXED = "mixed"

    def __str__(self) -> str:
        return self.value

    @property
    def symbol(self) -> str:
        return {"positive": "+", "negative": "−", "zero": "0", "mixed": "±"}[self.value]


@dataclass(frozen=True)
class ProgressionQuery:
    """Is ``c(m, n) >= 0`` for every ``n ≡ r (mod M)`` with ``n <= N``?

    ``length`` switches to finite products with that many factors per residue.
    """

    M: int
    a: int
    b: int
    r: int
    N: int
    kind: Kind = Kind.RECIPROCAL
    length: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", Kind(self.kind))
        if not 1 <= self.a < self.b < self.M / 2:
            raise ValidationError(
                f"need 1 <= a < b < M/2, got M={self.M}, a={self.a}, b={self.b}"
            )
        if not 0 <= self.r < self.M:
            raise ValidationError(f"r={self.r} outside [0, {self.M - 1}]")
        if self.N < self.r:
            raise ValidationError(f"N={self.N} is below r={self.r}")

    @property
    def coprime(self) -> bool:
        return math.gcd(self.a, self.M) == 1 and math.gcd(self.b, self.M) == 1

    @property
    def theorem_covered(self) -> bool:
        """True for the residues whose nonnegativity is already a theorem."""
        if self.length is not None or self.M < 5 or not self.coprime:
            return False
        return self.r == 0 or (self.M % 2 == 0 and self.r == self.M // 2)


@dataclass(frozen=True)
class Violation:
    m: int
    n: int
    value: int


@dataclass(frozen=True)
class ProgressionReport:
    query: ProgressionQuery
    status: Status
    first_violation: Violation | None
    theorem_covered: bool
    bound_checked: int

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS


@dataclass(frozen=True)
class SignReport:
    M: int
    a: int
    b: int
    N: int
    per_n_class: tuple[Sign, ...]
    per_residue_sign: tuple[Sign, ...]
    anomalies: tuple[int, ...]
    pattern_consistent: bool

    def anomalies_from(self, start: int) -> tuple[int, ...]:
        return tuple(n for n in self.anomalies if n >= start)


def scan_progression(table: SeriesTable, M: int, r: int) -> Violation | None:
    """First negative ``c(m, n)`` with ``n ≡ r (mod M)``, scanning n then m."""
    for n in range(r, table.trunc_order + 1, M):
        for m in range(1, n + 1):
            v = table.rows[m][n - m]
            if v < 0:
                return Violation(m, n, v)
    return None


def _report(q: ProgressionQuery, table: SeriesTable) -> ProgressionReport:
    hit = scan_progression(table, q.M, q.r)
    return ProgressionReport(
        query=q,
        status=Status.PASS if hit is None else Status.VIOLATION,
        first_violation=hit,
        theorem_covered=q.theorem_covered,
        bound_checked=q.N,
    )


def verify_progression(q: ProgressionQuery) -> ProgressionReport:
    if not q.coprime:
        warnings.warn(f"({q.M}, {q.a}, {q.b}) fails the coprimality hypothesis", stacklevel=2)
    table = difference_table(q.M, q.a, q.b, q.kind, q.N, q.length)
    return _report(q, table)


def valid_pairs(M: int, allow_noncoprime: bool = False) -> list[tuple[int, int]]:
    """All ``1 <= a < b < M/2``, with both coprime to ``M`` unless relaxed."""
    cands = list(range(1, (M - 1) // 2 + 1))
    if not allow_noncoprime:
        cands = [x for x in cands if math.gcd(x, M) == 1]
    return [(a, b) for i, a in enumerate(cands) for b in cands[i + 1 :]]


def covered_residues(M: int) -> list[int]:
    return [0, M // 2] if M % 2 == 0 else [0]


def _m_values(M_range: Sequence[int] | range) -> list[int]:
    if isinstance(M_range, range):
        return list(M_range)
    lo, hi = M_range
    return list(range(lo, hi + 1))


# Tasks are plain tuples so they pickle cheaply.
def _suite_task(args: tuple[int, int, int, str, int]) -> list[ProgressionReport]:
    M, a, b, kind, N = args
    table = difference_table(M, a, b, kind, N)
    return [
        _report(ProgressionQuery(M, a, b, r, N, kind), table)
        for r in covered_residues(M)
        if r <= N
    ]


def _search_task(args: tuple[int, int, int, str, int, bool]) -> list[ProgressionQuery]:
    M, a, b, kind, N, include_covered = args
    table = difference_table(M, a, b, kind, N)
    hits = []
    for r in range(min(M, N + 1)):
        q = ProgressionQuery(M, a, b, r, N, kind)
        if q.theorem_covered and not include_covered:
            continue
        if scan_progression(table, M, r) is None:
            hits.append(q)
    return hits


def _fan_out(fn, tasks: list, parallelism: int) -> list:
    if parallelism <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=parallelism) as pool:
        # map preserves task order, so output never depends on scheduling
        return list(pool.map(fn, tasks))


def theorem_suite(
    M_range: Sequence[int] | range,
    N: int,
    kinds: Iterable[Kind | str] = (Kind.RECIPROCAL, Kind.DISTINCT),
    parallelism: int = 1,
) -> list[ProgressionReport]:
    """Scan every theorem-covered progression for ``M`` in the range."""
    kinds = [Kind(k) for k in kinds]
    tasks = [
        (M, a, b, kind.value, N)
        for M in _m_values(M_range)
        if M >= 5
        for a, b in valid_pairs(M)
        for kind in kinds
    ]
    return [rep for chunk in _fan_out(_suite_task, tasks, parallelism) for rep in chunk]


def search_quadruples(
    M_range: Sequence[int] | range,
    N: int,
    include_covered: bool = False,
    kind: Kind | str = Kind.RECIPROCAL,
    allow_noncoprime: bool = False,
    parallelism: int = 1,
) -> list[ProgressionQuery]:
    """Quadruples ``(M, a, b, r)`` with no negative coefficient up to ``N``.

    The result is evidence bounded by ``N`` (carried on each query) and is
    sorted by ``(M, a, b, r)``.
    """
    kind = Kind(kind)
    Ms = [M for M in _m_values(M_range) if M >= 5]
    if Ms and N < 3 * max(Ms) - 1:
        warnings.warn(
            f"N={N} scans fewer than 3 terms of some progressions for M={max(Ms)}",
            stacklevel=2,
        )
    tasks = [
        (M, a, b, kind.value, N, include_covered)
        for M in Ms
        for a, b in valid_pairs(M, allow_noncoprime)
    ]
    return [q for chunk in _fan_out(_search_task, tasks, parallelism) for q in chunk]


def classify_polynomial_sign(coeffs: Iterable[int]) -> Sign:
    pos = neg = False
    for c in coeffs:
        if c > 0:
            pos = True
        elif c < 0:
            neg = True
    if pos and neg:
        return Sign.MIXED
    if pos:
        return Sign.POSITIVE
    if neg:
        return Sign.NEGATIVE
    return Sign.ZERO


def sign_pattern(M: int, a: int, b: int, N: int) -> SignReport:
    """Classify ``p_n(s)`` for the distinct-parts difference, ``0 <= n <= N``.

    The consensus sign of a residue class is the majority sign among its
    positive and negative members (a tie goes to the largest such ``n``).
    Zero polynomials do not vote.  Mixed polynomials and members disagreeing
    with the consensus are anomalies.
    """
    if not 1 <= a < b < M / 2:
        raise ValidationError(f"need 1 <= a < b < M/2, got M={M}, a={a}, b={b}")
    if N < 0:
        raise ValidationError(f"N must be >= 0, got {N}")
    if M % 2 or M < 8 or math.gcd(a, M) != 1 or math.gcd(b, M) != 1:
        warnings.warn(f"({M}, {a}, {b}) is outside the even-modulus coprime setting", stacklevel=2)
    table = difference_table(M, a, b, Kind.DISTINCT, N)
    classes = tuple(classify_polynomial_sign(table.s_polynomial(n)) for n in range(N + 1))

    consensus = []
    for r in range(M):
        members = [(n, classes[n]) for n in range(r, N + 1, M)]
        votes = [(n, c) for n, c in members if c in (Sign.POSITIVE, Sign.NEGATIVE)]
        if not votes:
            consensus.append(Sign.ZERO)
            continue
        pos = sum(1 for _, c in votes if c is Sign.POSITIVE)
        neg = len(votes) - pos
        if pos != neg:
            consensus.append(Sign.POSITIVE if pos > neg else Sign.NEGATIVE)
        else:
            consensus.append(votes[-1][1])

    anomalies = tuple(
        n
        for n, c in enumerate(classes)
        if c is Sign.MIXED or (c is not Sign.ZERO and c is not consensus[n % M])
    )
    mixed = any(c is Sign.MIXED for c in classes)
    return SignReport(
        M=M,
        a=a,
        b=b,
        N=N,
        per_n_class=classes,
        per_residue_sign=tuple(consensus),
        anomalies=anomalies,
        pattern_consistent=not anomalies and not mixed,
    )
