"""Exact arithmetic: cyclotomic fields, polynomials, series, finite fields."""

from .cyclotomic import Cyclotomic, cyclo_normalize, cyclotomic_polynomial, euler_phi, sqrt_rational
from .finfield import (
    FFElement,
    FiniteField,
    distinct_degree_factorization,
    ff_factor_degrees,
    ff_orbit_resolvent,
    is_prime,
    prime_power,
    squarefree_decomposition,
)
from .poly import CharPoly, TruncatedSeries, UniPoly, newton_charpoly, parse_int_poly, series_invert

__all__ = [
    "Cyclotomic",
    "cyclo_normalize",
    "cyclotomic_polynomial",
    "euler_phi",
    "sqrt_rational",
    "FFElement",
    "FiniteField",
    "distinct_degree_factorization",
    "ff_factor_degrees",
    "ff_orbit_resolvent",
    "is_prime",
    "prime_power",
    "squarefree_decomposition",
    "CharPoly",
    "TruncatedSeries",
    "UniPoly",
    "newton_charpoly",
    "parse_int_poly",
    "series_invert",
]
