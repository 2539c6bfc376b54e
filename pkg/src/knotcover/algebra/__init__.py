"""Exact arithmetic substrate: integer/Laurent polynomials, Smith normal
form over Z and F_p[t], finite fields, and cyclotomic rationals."""

from .cyclotomic import CyclotomicField
from .gf import GF, field_from_factor
from .modp import (fp_factor, fp_factorization_str, fp_from_int_poly,
                   fp_is_irreducible, fp_monic, fp_poly_str, fp_snf, is_prime)
from .polyz import Laurent, det_bareiss, laurent_str, resultant
from .snf import (AbelianGroup, abelian_from_divisor_list, cokernel,
                  cokernel_dense, int_rank, smith_invariant_factors,
                  smith_with_column_basis)

__all__ = [
    "AbelianGroup", "CyclotomicField", "GF", "Laurent",
    "abelian_from_divisor_list", "cokernel", "cokernel_dense", "det_bareiss",
    "field_from_factor", "fp_factor", "fp_factorization_str",
    "fp_from_int_poly", "fp_is_irreducible", "fp_monic", "fp_poly_str",
    "fp_snf", "int_rank", "is_prime", "laurent_str", "resultant",
    "smith_invariant_factors", "smith_with_column_basis",
]
