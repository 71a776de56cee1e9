"""The Steenrod algebra and exact linear algebra over F_p."""

from exponent_toolkit.algebra.linear import (
    EchelonBasis,
    FpMatrix,
    FpVector,
    RowReduction,
    kernel_basis,
    rank,
    row_reduce,
    solve,
)
from exponent_toolkit.algebra.steenrod import (
    Monomial,
    Prime,
    SteenrodElement,
    adem_normalize,
    algebra_dimension,
    basis_in_degree,
    check_prime,
    milnor_dimension,
    multiply_monomials,
    parse_word,
)

__all__ = [
    "EchelonBasis",
    "FpMatrix",
    "FpVector",
    "Monomial",
    "Prime",
    "RowReduction",
    "SteenrodElement",
    "adem_normalize",
    "algebra_dimension",
    "basis_in_degree",
    "check_prime",
    "kernel_basis",
    "milnor_dimension",
    "multiply_monomials",
    "parse_word",
    "rank",
    "row_reduce",
    "solve",
]
