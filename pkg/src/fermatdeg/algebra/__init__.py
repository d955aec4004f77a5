"""Exact integer linear algebra, cyclotomic and Laurent arithmetic."""

from .cyclotomic import (CyclotomicElement, cyclotomic_invert, cyclotomic_mul,
                         cyclotomic_polynomial, euler_phi)
from .intmat import (IntegerMatrix, elementary_divisors, hermite_normal_form, matrix_rank,
                     smith_normal_form)
from .laurent import LaurentPolynomial, constant_term_power, constant_terms
from .lattice import (INFINITE, Lattice, integer_kernel, is_saturated, lattice_sum, saturate,
                      sublattice_index)

__all__ = [
    "CyclotomicElement", "cyclotomic_invert", "cyclotomic_mul", "cyclotomic_polynomial",
    "euler_phi", "IntegerMatrix", "elementary_divisors", "hermite_normal_form", "matrix_rank",
    "smith_normal_form", "LaurentPolynomial", "constant_term_power", "constant_terms", "INFINITE", "Lattice",
    "integer_kernel", "is_saturated", "lattice_sum", "saturate", "sublattice_index",
]
