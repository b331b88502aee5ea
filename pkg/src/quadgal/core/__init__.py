from .factor import factor_over_Q, is_irreducible_over_Q
from .finite_field import factor_mod_p
from .integers import PrimeFactorization, factor_integer, kronecker_symbol
from .polynomial import IntPolynomial, poly_discriminant, real_root_count, resultant

__all__ = [
    "IntPolynomial",
    "PrimeFactorization",
    "factor_integer",
    "factor_mod_p",
    "factor_over_Q",
    "is_irreducible_over_Q",
    "kronecker_symbol",
    "poly_discriminant",
    "real_root_count",
    "resultant",
]
