"""Exact integer linear algebra kernel."""

from .factor import factor_cap, factorize, is_probable_prime, prime_divisors
from .matrix import ColVec, Mat, det, gcd_entries, gcd_values, mat_mul, xgcd
from .normal_forms import (
    HermiteForm,
    SmithDecomp,
    extend_to_basis,
    hermite_normal_form,
    inverse_unimodular,
    smith_normal_form,
)

__all__ = [
    "ColVec", "Mat", "HermiteForm", "SmithDecomp",
    "mat_mul", "det", "gcd_entries", "gcd_values", "xgcd",
    "smith_normal_form", "hermite_normal_form", "inverse_unimodular", "extend_to_basis",
    "factorize", "prime_divisors", "is_probable_prime", "factor_cap",
]
