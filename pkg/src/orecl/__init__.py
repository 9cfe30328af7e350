"""Exact closure properties of D-finite objects in Ore algebras, with size bounds."""

from .domains import DomainError, Integers, PolyPrimeField, PrimeField, make_domain
from .ore import OreAlgebra, OreOperator, difference, differential, make_algebra, op_mul, rising_factorial, shift
from .poly import UniPoly, content_primitive

__all__ = [
    "DomainError", "Integers", "PolyPrimeField", "PrimeField", "make_domain", "OreAlgebra", "OreOperator",
    "difference", "differential", "make_algebra", "op_mul", "rising_factorial", "shift", "UniPoly",
    "content_primitive",
]
