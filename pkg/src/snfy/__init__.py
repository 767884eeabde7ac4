"""Certified Smith normal forms for the operator d/dp_1 p_1 on symmetric functions."""
from .divisors import check_conjecture, conjecture_diagonal, determinantal_ladder, proposition_diagonal
from .operators import build_A_h_basis, build_M_k_h_basis, build_M_schur
from .partitions import enumerate_partitions, partition_count, string_decomposition
from .polymat import PolyMatrix, determinant
from .polyzx import PolyZx
from .smith import SnfCertificate, smith_form, theorem_diagonal
from .zsnf import int_snf, specialize_and_check

__version__ = "0.1.0"

__all__ = [
    "PolyMatrix",
    "PolyZx",
    "SnfCertificate",
    "build_A_h_basis",
    "build_M_k_h_basis",
    "build_M_schur",
    "check_conjecture",
    "conjecture_diagonal",
    "determinant",
    "determinantal_ladder",
    "enumerate_partitions",
    "int_snf",
    "partition_count",
    "proposition_diagonal",
    "smith_form",
    "specialize_and_check",
    "string_decomposition",
    "theorem_diagonal",
]
