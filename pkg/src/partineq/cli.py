"""Command-line front end.

Exit status: 0 on success, 1 when a violation or oracle mismatch is found,
2 on usage, validation, resource or I/O errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import IO, Sequence

from partineq.analysis import (
    ProgressionQuery,
    search_quadruples,
    sign_pattern,
    theorem_suite,
    verify_progression,
)
from partineq.errors import PartineqError, ResourceError, ValidationError
from partineq.partitions import (
    DEFAULT_ENUMERATION_CAP,
    PartitionQuery,
    allowed_parts,
    count_exact_parts,
    enumerate_partitions,
)
from partineq.qseries import (
    Kind,
    ProductSpec,
    build_product,
    build_product_double_sum,
    difference,
    difference_table,
)
from partineq.reports import (
    FORMATS,
    Expansion,
    OracleCheck,
    OracleSummary,
    SearchResult,
    SignResult,
    SuiteResult,
    write_report,
)

COMMANDS = ("expand", "verify", "suite", "search", "signs", "oracle")

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


@dataclass
class RunConfig:
    command: str
    M: int | None = None
    a: int | None = None
    b: int | None = None
    r: int | None = None
    N: int = 200
    kind: Kind = Kind.RECIPROCAL
    M_range: tuple[int, int] | None = None
    include_covered: bool = False
    allow_noncoprime: bool = False
    cap: int = DEFAULT_ENUMERATION_CAP
    length: int | None = None
    columns: tuple[int, ...] | None = None
    rows: tuple[int, int] | None = None
    output_format: str = "md"
    output_path: str | None = None
    parallelism: int = 1

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ValidationError(f"unknown command {self.command!r}")
        self.kind = Kind(self.kind)
        if self.output_format not in FORMATS:
            raise ValidationError(f"format must be one of {FORMATS}")
        if self.N < 0:
            raise ValidationError("--N must be >= 0")
        if self.parallelism < 1:
            raise ValidationError("--parallelism must be >= 1")
        need = {
            "expand": ("M", "a"),
            "verify": ("M", "a", "b", "r"),
            "signs": ("M", "a", "b"),
            "oracle": ("M", "a", "b"),
        }.get(self.command, ())
        missing = [f"--{k}" for k in need if getattr(self, k) is None]
        if missing:
            raise ValidationError(f"{self.command} needs {' '.join(missing)}")
        if self.command in ("suite", "search") and self.M_range is None:
            if self.M is None:
                raise ValidationError(f"{self.command} needs --M-range or --M")
            self.M_range = (self.M, self.M)
        if self.M_range is not None and self.M_range[0] > self.M_range[1]:
            raise ValidationError(f"empty M range {self.M_range}")
        if self.columns is not None:
            bad = [n for n in self.columns if not 0 <= n <= self.N]
            if bad:
                raise ValidationError(f"columns {bad} outside [0, {self.N}]")


def oracle_check(
    M: int, a: int, b: int, kind: Kind | str, N_small: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> OracleSummary:
    """Compare the factor DP, the double sum, partition DP and enumeration.

    Every ``0 <= m <= n <= N_small`` is compared for both products.
    """
    kind = Kind(kind)
    if N_small > cap:
        raise ResourceError(f"N={N_small} exceeds the enumeration cap {cap}")
    distinct = kind is Kind.DISTINCT
    counts = {"factor DP vs double sum": [0, 0], "factor DP vs partition DP": [0, 0],
              "partition DP vs enumeration": [0, 0]}

    def tally(name: str, ok: bool) -> None:
        counts[name][0] += 1
        counts[name][1] += 0 if ok else 1

    for x in (a, b):
        spec = ProductSpec.pair(M, x, kind)
        dp = build_product(spec, N_small)
        ds = build_product_double_sum(spec, N_small)
        parts = allowed_parts(M, x, max(N_small, 1))
        for n in range(N_small + 1):
            for m in range(n + 1):
                q = PartitionQuery(n, m, tuple(parts), distinct)
                via_parts = count_exact_parts(q)
                tally("factor DP vs double sum", dp.coefficient(m, n) == ds.coefficient(m, n))
                tally("factor DP vs partition DP", dp.coefficient(m, n) == via_parts)
                tally("partition DP vs enumeration", len(enumerate_partitions(q, cap)) == via_parts)
    return OracleSummary(
        M, a, b, kind, N_small,
        tuple(OracleCheck(name, c, bad) for name, (c, bad) in counts.items()),
    )


def _expand(cfg: RunConfig) -> Expansion:
    first = build_product(ProductSpec.pair(cfg.M, cfg.a, cfg.kind, cfg.length), cfg.N)
    second = None
    table = first
    if cfg.b is not None:
        if not cfg.a < cfg.b:
            raise ValidationError(f"need a < b, got a={cfg.a}, b={cfg.b}")
        second = build_product(ProductSpec.pair(cfg.M, cfg.b, cfg.kind, cfg.length), cfg.N)
        table = difference(first, second)
    columns = cfg.columns if cfg.columns is not None else (cfg.N,)
    return Expansion(cfg.M, cfg.a, cfg.b, cfg.kind, cfg.N, cfg.length, columns, first, second, table)


def _signs(cfg: RunConfig) -> SignResult:
    report = sign_pattern(cfg.M, cfg.a, cfg.b, cfg.N)
    lo, hi = cfg.rows if cfg.rows is not None else (max(0, cfg.N - cfg.M + 1), cfg.N)
    hi = min(hi, cfg.N)
    table = difference_table(cfg.M, cfg.a, cfg.b, Kind.DISTINCT, cfg.N)
    polys = {n: table.s_polynomial(n) for n in range(max(lo, 0), hi + 1)}
    return SignResult(report, polys)


def dispatch(cfg: RunConfig):
    """Run the library call for ``cfg`` and return ``(report, exit_code)``."""
    cfg.validate()
    if cfg.command == "expand":
        return _expand(cfg), EXIT_OK
    if cfg.command == "verify":
        q = ProgressionQuery(cfg.M, cfg.a, cfg.b, cfg.r, cfg.N, cfg.kind, cfg.length)
        rep = verify_progression(q)
        return rep, EXIT_OK if rep.passed else EXIT_VIOLATION
    if cfg.command == "suite":
        res = SuiteResult(tuple(theorem_suite(cfg.M_range, cfg.N, parallelism=cfg.parallelism)))
        return res, EXIT_OK if res.violations == 0 else EXIT_VIOLATION
    if cfg.command == "search":
        hits = search_quadruples(
            cfg.M_range, cfg.N, cfg.include_covered, cfg.kind,
            cfg.allow_noncoprime, cfg.parallelism,
        )
        return SearchResult(cfg.M_range, cfg.N, cfg.kind, cfg.include_covered, tuple(hits)), EXIT_OK
    if cfg.command == "signs":
        return _signs(cfg), EXIT_OK
    res = oracle_check(cfg.M, cfg.a, cfg.b, cfg.kind, cfg.N, cfg.cap)
    return res, EXIT_OK if res.passed else EXIT_VIOLATION


def run(cfg: RunConfig, stdout: IO[str] | None = None, stderr: IO[str] | None = None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    try:
        report, code = dispatch(cfg)
    except (PartineqError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    try:
        write_report(report, cfg.output_format, cfg.output_path or stdout)
    except OSError as exc:
        print(f"error: cannot write report: {exc}", file=stderr)
        return EXIT_USAGE
    return code


def _interval(text: str) -> tuple[int, int]:
    sep = ":" if ":" in text else "-"
    lo, _, hi = text.partition(sep)
    try:
        return (int(lo), int(hi)) if hi else (int(lo), int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None


def _columns(text: str) -> tuple[int, ...] | str:
    if text == "all":
        return text
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected n[,n...] or 'all', got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--M", type=int, help="modulus")
    common.add_argument("--a", type=int, help="first residue, 1 <= a < M/2")
    common.add_argument("--b", type=int, help="second residue, a < b < M/2")
    common.add_argument("--r", type=int, help="progression residue, 0 <= r < M")
    common.add_argument("--N", type=int, default=200, help="truncation order (default 200)")
    common.add_argument("--kind", choices=[k.value for k in Kind], default="reciprocal")
    common.add_argument("--L", dest="length", type=int, help="finite product length")
    common.add_argument("--M-range", dest="M_range", type=_interval, help="LO:HI, inclusive")
    common.add_argument("--include-covered", action="store_true",
                        help="keep theorem-covered residues in search output")
    common.add_argument("--allow-noncoprime", action="store_true",
                        help="search pairs with gcd(a, M) != 1 too")
    common.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP,
                        help="enumeration cap for the oracle command")
    common.add_argument("--n", dest="columns", type=_columns,
                        help="expand: q-exponents to list, comma separated, or 'all'")
    common.add_argument("--rows", type=_interval, help="signs: n window LO:HI to print")
    common.add_argument("--format", dest="output_format", choices=FORMATS, default="md")
    common.add_argument("--output", dest="output_path", help="write report to this file")
    common.add_argument("--parallelism", type=int, default=1, help="worker processes")

    parser = argparse.ArgumentParser(
        prog="partineq",
        description="Expand q-product differences with a parts variable and check their signs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "expand": "coefficient table of a product or product difference",
        "verify": "scan one progression n ≡ r (mod M) for negative coefficients",
        "suite": "scan every theorem-covered progression over a range of M",
        "search": "find quadruples (M, a, b, r) without violations up to N",
        "signs": "sign pattern of the distinct-parts difference polynomials",
        "oracle": "three-way agreement of independent expansions",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    opts = vars(args)
    if opts.get("columns") == "all":
        opts["columns"] = tuple(range(opts["N"] + 1)) if opts["N"] >= 0 else ()
    return run(RunConfig(**opts))


if __name__ == "__main__":
    sys.exit(main())
