"""Exact expansion and partition-inequality checks for q-product differences."""

from partineq.analysis import (
    ProgressionQuery,
    ProgressionReport,
    Sign,
    SignReport,
    Status,
    Violation,
    classify_polynomial_sign,
    search_quadruples,
    sign_pattern,
    theorem_suite,
    verify_progression,
)
from partineq.partitions import (
    PartitionQuery,
    allowed_parts,
    count_any_parts,
    count_exact_parts,
    enumerate_partitions,
)
from partineq.qseries import (
    Kind,
    ProductSpec,
    SeriesTable,
    build_product,
    build_product_double_sum,
    difference,
    difference_table,
    rr_difference_sum,
)

__version__ = "0.1.0"
