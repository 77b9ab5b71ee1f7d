"""Exact linear algebra over F_p, F_{p^2}, Q and Z."""

from .fields import FieldSpec, FieldSpecError, Q, Z, is_prime, prime_factors
from .matrix import ExactMatrix, MatrixError, matmul
from .echelon import (Echelon, SolutionQuery, is_feasible, kernel_basis, rank,
                      row_echelon, solve_affine)
from .smith import (SmithDecomposition, determinant, elementary_divisor_primes,
                    free_rank_and_torsion, integer_kernel_basis, reduce_mod_p,
                    smith_normal_form)

__all__ = [
    "FieldSpec", "FieldSpecError", "Q", "Z", "is_prime", "prime_factors",
    "ExactMatrix", "MatrixError", "matmul",
    "Echelon", "SolutionQuery", "is_feasible", "kernel_basis", "rank",
    "row_echelon", "solve_affine",
    "SmithDecomposition", "determinant", "elementary_divisor_primes",
    "free_rank_and_torsion", "integer_kernel_basis", "reduce_mod_p",
    "smith_normal_form",
]
