"""Exact computations with Kauffman bracket skein modules of the 3-ball, their
Gram kernels at roots of unity, and the homological representations they
match."""

from .exact_arith import (
    CycloNum,
    CycloRing,
    LaurentPoly,
    QRoot,
    RatFunc,
    chebyshev,
    chebyshev_product_coeffs,
    cyclo_eval,
    quantum_int,
    torus_reduce,
    tqft_dimension,
)

__all__ = [
    "CycloNum",
    "CycloRing",
    "LaurentPoly",
    "QRoot",
    "RatFunc",
    "chebyshev",
    "chebyshev_product_coeffs",
    "cyclo_eval",
    "quantum_int",
    "torus_reduce",
    "tqft_dimension",
]

__version__ = "0.1.0"
