"""Exact linear algebra over F2 on bit-packed matrices."""

from .bits import BitMatrix, BitVector, complement, index_set
from .linalg import (
    RREF,
    dual_basis,
    in_rowspace,
    independent_rows,
    inverse,
    kernel_basis,
    left_kernel,
    puncture,
    rank,
    row_basis,
    rref,
    shorten,
    shorten_with_map,
    solve,
)
from .search import (
    DEFAULT_BUDGET,
    MinWeight,
    min_nonzero_weight,
    min_weight_in_coset,
    min_weight_nontrivial,
    min_weight_with_syndrome,
    span_min,
)
from .sparse_io import format_matrix, parse_matrix, read_matrix, write_matrix

__all__ = [
    "BitMatrix",
    "BitVector",
    "complement",
    "index_set",
    "RREF",
    "rref",
    "rank",
    "row_basis",
    "kernel_basis",
    "dual_basis",
    "left_kernel",
    "in_rowspace",
    "solve",
    "inverse",
    "independent_rows",
    "puncture",
    "shorten",
    "shorten_with_map",
    "DEFAULT_BUDGET",
    "MinWeight",
    "span_min",
    "min_weight_in_coset",
    "min_nonzero_weight",
    "min_weight_nontrivial",
    "min_weight_with_syndrome",
    "format_matrix",
    "parse_matrix",
    "read_matrix",
    "write_matrix",
]
