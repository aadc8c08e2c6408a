"""Serialization of results to JSON, CSV and markdown.

Exact integers go out as decimal strings in JSON; they outgrow 64 bits long
before the tables get interesting.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from functools import singledispatch
from pathlib import Path
from typing import IO, Any

from partineq.analysis import ProgressionQuery, ProgressionReport, SignReport
from partineq.errors import ValidationError
from partineq.qseries import Kind, SeriesTable

FORMATS = ("json", "csv", "md")


@dataclass(frozen=True)
class Expansion:
    """Columns of a product (or product difference) table."""

    M: int
    a: int
    b: int | None
    kind: Kind
    N: int
    length: int | None
    columns: tuple[int, ...]
    first: SeriesTable
    second: SeriesTable | None
    table: SeriesTable


@dataclass(frozen=True)
class SuiteResult:
    reports: tuple[ProgressionReport, ...]

    @property
    def violations(self) -> int:
        return sum(1 for r in self.reports if not r.passed)


@dataclass(frozen=True)
class SearchResult:
    M_range: tuple[int, int]
    N: int
    kind: Kind
    include_covered: bool
    hits: tuple[ProgressionQuery, ...]

    @property
    def label(self) -> str:
        return f"evidence up to N={self.N}"


@dataclass(frozen=True)
class SignResult:
    report: SignReport
    polynomials: dict[int, list[int]] = field(default_factory=dict)


@dataclass(frozen=True)
class OracleCheck:
    name: str
    compared: int
    mismatches: int


@dataclass(frozen=True)
class OracleSummary:
    M: int
    a: int
    b: int
    kind: Kind
    N: int
    checks: tuple[OracleCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.mismatches == 0 for c in self.checks)


def format_s_polynomial(coeffs: list[int]) -> str:
    """Render like ``3 s^8 (s^2+5)``: sign, content and lowest power pulled out."""
    nz = [(d, c) for d, c in enumerate(coeffs) if c]
    if not nz:
        return "0"
    low = nz[0][0]
    g = math.gcd(*(abs(c) for _, c in nz))
    neg = all(c < 0 for _, c in nz)
    unit = -g if neg else g
    inner = [(d - low, c // unit) for d, c in reversed(nz)]

    def power(d: int) -> str:
        return "" if d == 0 else ("s" if d == 1 else f"s^{d}")

    terms = []
    for d, c in inner:
        mag = abs(c)
        body = power(d)
        if mag != 1 or not body:
            body = f"{mag} {body}".strip()
        terms.append(("-" if c < 0 else "+") + body)
    inner_text = "".join(terms).lstrip("+")

    factors = []
    if g != 1:
        factors.append(str(g))
    if low:
        factors.append(power(low))
    if inner != [(0, 1)]:
        factors.append(f"({inner_text})" if factors else inner_text)
    text = " ".join(factors) or "1"
    return "-" + text if neg else text


def _query_dict(q: ProgressionQuery) -> dict[str, Any]:
    d: dict[str, Any] = {"M": q.M, "a": q.a, "b": q.b, "r": q.r, "N": q.N, "kind": q.kind.value}
    if q.length is not None:
        d["L"] = q.length
    return d


@singledispatch
def to_dict(obj: Any) -> Any:
    raise TypeError(f"no serializer for {type(obj).__name__}")


@to_dict.register
def _(rep: ProgressionReport) -> dict[str, Any]:
    d: dict[str, Any] = {"query": _query_dict(rep.query), "status": rep.status.value}
    if rep.first_violation is not None:
        v = rep.first_violation
        d["first_violation"] = {"m": v.m, "n": v.n, "value": str(v.value)}
    d["theorem_covered"] = rep.theorem_covered
    d["bound_checked"] = rep.bound_checked
    return d


@to_dict.register
def _(res: SuiteResult) -> dict[str, Any]:
    return {
        "reports": [to_dict(r) for r in res.reports],
        "total": len(res.reports),
        "violations": res.violations,
    }


@to_dict.register
def _(res: SearchResult) -> dict[str, Any]:
    return {
        "label": res.label,
        "evidence_bound": res.N,
        "M_range": list(res.M_range),
        "kind": res.kind.value,
        "include_covered": res.include_covered,
        "quadruples": [_query_dict(q) for q in res.hits],
    }


@to_dict.register
def _(res: SignResult) -> dict[str, Any]:
    rep = res.report
    return {
        "M": rep.M,
        "a": rep.a,
        "b": rep.b,
        "N": rep.N,
        "per_residue_sign": [s.value for s in rep.per_residue_sign],
        "pattern_consistent": rep.pattern_consistent,
        "anomalies": list(rep.anomalies),
        "per_n_class": [s.value for s in rep.per_n_class],
        "polynomials": {str(n): [str(c) for c in p] for n, p in res.polynomials.items()},
    }


def _expansion_rows(exp: Expansion):
    for n in exp.columns:
        for m in range(1, n + 1):
            first = exp.first.coefficient(m, n)
            second = exp.second.coefficient(m, n) if exp.second is not None else None
            yield m, n, first, second, exp.table.coefficient(m, n)


@to_dict.register
def _(exp: Expansion) -> dict[str, Any]:
    query: dict[str, Any] = {"M": exp.M, "a": exp.a, "b": exp.b, "N": exp.N, "kind": exp.kind.value}
    if exp.length is not None:
        query["L"] = exp.length
    rows = []
    for m, n, first, second, value in _expansion_rows(exp):
        row = {"m": m, "n": n, "a_count": str(first)}
        if second is not None:
            row["b_count"] = str(second)
        row["value"] = str(value)
        rows.append(row)
    return {"query": query, "rows": rows}


@to_dict.register
def _(res: OracleSummary) -> dict[str, Any]:
    return {
        "M": res.M,
        "a": res.a,
        "b": res.b,
        "kind": res.kind.value,
        "N": res.N,
        "status": "pass" if res.passed else "fail",
        "checks": [
            {"name": c.name, "compared": c.compared, "mismatches": c.mismatches}
            for c in res.checks
        ],
    }


def _csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _report_csv_rows(reports):
    for rep in reports:
        q, v = rep.query, rep.first_violation
        yield [
            q.M, q.a, q.b, q.r, q.N, q.kind.value, rep.status.value,
            str(rep.theorem_covered).lower(),
            "" if v is None else v.m,
            "" if v is None else v.n,
            "" if v is None else v.value,
        ]


_REPORT_HEADER = ["M", "a", "b", "r", "N", "kind", "status", "theorem_covered", "m", "n", "value"]


@singledispatch
def to_csv(obj: Any) -> str:
    raise TypeError(f"no CSV layout for {type(obj).__name__}")


@to_csv.register
def _(exp: Expansion) -> str:
    return _csv(["m", "n", "value"], ((m, n, v) for m, n, _, _, v in _expansion_rows(exp)))


@to_csv.register
def _(rep: ProgressionReport) -> str:
    return _csv(_REPORT_HEADER, _report_csv_rows([rep]))


@to_csv.register
def _(res: SuiteResult) -> str:
    return _csv(_REPORT_HEADER, _report_csv_rows(res.reports))


@to_csv.register
def _(res: SearchResult) -> str:
    return _csv(
        ["M", "a", "b", "r", "N", "kind"],
        ((q.M, q.a, q.b, q.r, q.N, q.kind.value) for q in res.hits),
    )


@to_csv.register
def _(res: SignResult) -> str:
    rep = res.report
    return _csv(["n", "residue", "class"], ((n, n % rep.M, c.value) for n, c in enumerate(rep.per_n_class)))


@to_csv.register
def _(res: OracleSummary) -> str:
    return _csv(["check", "compared", "mismatches"], ((c.name, c.compared, c.mismatches) for c in res.checks))


def _md_table(header: list[str], rows) -> list[str]:
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    lines += ["| " + " | ".join(str(x) for x in row) + " |" for row in rows]
    return lines


def _violation_text(rep: ProgressionReport) -> str:
    v = rep.first_violation
    return "" if v is None else f"c({v.m},{v.n}) = {v.value}"


@singledispatch
def to_markdown(obj: Any) -> str:
    raise TypeError(f"no markdown layout for {type(obj).__name__}")


@to_markdown.register
def _(exp: Expansion) -> str:
    kind = "distinct parts" if exp.kind is Kind.DISTINCT else "parts"
    title = f"## Exactly m {kind} ≡ ±{exp.a}"
    if exp.b is not None:
        title += f" vs ±{exp.b}"
    title += f" (mod {exp.M}), N={exp.N}"
    if exp.length is not None:
        title += f", L={exp.length}"
    lines = [title]
    for n in exp.columns:
        header = ["m", f"p_{exp.a},{exp.M}(m,{n})"]
        if exp.b is not None:
            header += [f"p_{exp.b},{exp.M}(m,{n})", f"c(m,{n})"]
        rows = []
        for m, _, first, second, value in (r for r in _expansion_rows(exp) if r[1] == n):
            rows.append([m, first] if exp.b is None else [m, first, second, value])
        lines += [""] + _md_table(header, rows)
    return "\n".join(lines) + "\n"


@to_markdown.register
def _(rep: ProgressionReport) -> str:
    q = rep.query
    lines = [
        f"## Progression n ≡ {q.r} (mod {q.M}), a={q.a}, b={q.b}, kind={q.kind.value}",
        "",
        f"- status: {rep.status.value}",
        f"- first violation: {_violation_text(rep) or 'none'}",
        f"- theorem covered: {'yes' if rep.theorem_covered else 'no'}",
        f"- bound checked: N={rep.bound_checked}",
    ]
    if q.length is not None:
        lines.append(f"- finite length: L={q.length}")
    return "\n".join(lines) + "\n"


@to_markdown.register
def _(res: SuiteResult) -> str:
    rows = [
        [r.query.M, r.query.a, r.query.b, r.query.kind.value, r.query.r, r.status.value, _violation_text(r)]
        for r in res.reports
    ]
    lines = ["## Theorem-covered progressions", ""]
    lines += _md_table(["M", "a", "b", "kind", "r", "status", "first violation"], rows)
    lines += ["", f"{len(res.reports)} progressions, {res.violations} violations"]
    return "\n".join(lines) + "\n"


@to_markdown.register
def _(res: SearchResult) -> str:
    grouped: dict[tuple[int, int, int], list[int]] = {}
    for q in res.hits:
        grouped.setdefault((q.M, q.a, q.b), []).append(q.r)
    rows = []
    last_M = None
    for (M, a, b), rs in grouped.items():
        rows.append(["" if M == last_M else M, a, b, ",".join(map(str, rs))])
        last_M = M
    lines = [
        f"## Nonnegative progressions, {res.kind.value}, M in [{res.M_range[0]}, {res.M_range[1]}]"
        f" ({res.label})",
        "",
    ]
    lines += _md_table(["M", "a", "b", "r"], rows)
    return "\n".join(lines) + "\n"


@to_markdown.register
def _(res: SignResult) -> str:
    rep = res.report
    lines = [f"## Sign pattern of p_{rep.a},{rep.b},{rep.M},n(s), 0 ≤ n ≤ {rep.N}", ""]
    lines += _md_table(["r", "sign"], [[r, s.symbol] for r, s in enumerate(rep.per_residue_sign)])
    lines += [
        "",
        "pattern: " + ",".join(s.symbol for s in rep.per_residue_sign),
        f"consistent: {'yes' if rep.pattern_consistent else 'no'}",
        "anomalies: " + (", ".join(map(str, rep.anomalies)) if rep.anomalies else "none"),
    ]
    if res.polynomials:
        lines += [""] + _md_table(
            ["n", f"p_{rep.a},{rep.b},{rep.M},n(s)"],
            [[n, format_s_polynomial(p)] for n, p in res.polynomials.items()],
        )
    return "\n".join(lines) + "\n"


@to_markdown.register
def _(res: OracleSummary) -> str:
    lines = [
        f"## Oracle agreement, M={res.M}, a={res.a}, b={res.b}, kind={res.kind.value}, N={res.N}",
        "",
    ]
    lines += _md_table(
        ["check", "compared", "mismatches"],
        [[c.name, c.compared, c.mismatches] for c in res.checks],
    )
    lines += ["", f"status: {'pass' if res.passed else 'fail'}"]
    return "\n".join(lines) + "\n"


def render(report: Any, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(to_dict(report), indent=2) + "\n"
    if fmt == "csv":
        return to_csv(report)
    if fmt == "md":
        return to_markdown(report)
    raise ValidationError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def write_report(report: Any, fmt: str, sink: IO[str] | str | Path) -> int:
    """Render ``report`` and write it to a stream or a file path.

    Returns the number of bytes written (UTF-8).
    """
    text = render(report, fmt)
    if isinstance(sink, (str, Path)):
        with open(sink, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sink.write(text)
    return len(text.encode("utf-8"))
