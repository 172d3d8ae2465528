"""Exact algebra kernel: forms, univariate root counting, quadratic forms, ranks."""

from .linalg import (
    Modular,
    ModularEscalationError,
    RankResult,
    SparseEliminator,
    charpoly,
    det,
    is_psd_exact,
    matrix_rank,
    nullspace_basis,
    rank_mod_p,
)
from .poly import (
    HomogeneousPoly,
    as_fraction,
    as_vector,
    compose,
    dim_forms,
    directional_derivative,
    identity_map,
    linear_map,
    monomial_exponents,
)
from .quadform import QuadraticFormDiag, lagrange_diagonalize, signature
from .textio import PolyFormatError, format_poly, parse_poly, parse_polys, read_poly, write_poly
from .univariate import (
    UPoly,
    count_with_multiplicity,
    is_real_rooted,
    isolate_real_roots,
    restrict_line,
    squarefree_part,
    sturm_count,
    sturm_sequence,
)

__all__ = [
    "HomogeneousPoly", "UPoly", "QuadraticFormDiag", "Modular", "ModularEscalationError", "RankResult",
    "SparseEliminator", "PolyFormatError",
    "as_fraction", "as_vector", "charpoly", "compose", "count_with_multiplicity", "det", "dim_forms",
    "directional_derivative", "format_poly", "identity_map", "is_psd_exact", "is_real_rooted",
    "isolate_real_roots", "lagrange_diagonalize", "linear_map", "matrix_rank", "monomial_exponents",
    "nullspace_basis", "parse_poly", "parse_polys", "rank_mod_p", "read_poly", "restrict_line",
    "signature", "squarefree_part", "sturm_count", "sturm_sequence", "write_poly",
]
