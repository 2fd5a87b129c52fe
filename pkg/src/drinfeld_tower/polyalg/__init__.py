"""Polynomial arithmetic over small finite fields."""

from .multi import (InexactDivisionError, MultiPoly, divide_exact, exact_divide, poly_ring,
                    resultant)
from .ratfunc import DegenerateSpecialization, RationalFunction, UniFractionField
from .textform import CoeffSyntax, ParseError, parse_poly, to_text, xy_syntax
from .towerring import ExtensionTowerRing, SimpleExtension, TowerElement, ZeroDivisorError
from .uni import (UniPoly, factor_univariate, gcd, interpolate, is_irreducible, resultant_uni,
                  squarefree_decomposition, xgcd)

__all__ = [
    "CoeffSyntax", "DegenerateSpecialization", "ExtensionTowerRing", "InexactDivisionError",
    "MultiPoly", "ParseError", "RationalFunction", "SimpleExtension", "TowerElement",
    "UniFractionField", "UniPoly", "ZeroDivisorError", "divide_exact", "exact_divide",
    "factor_univariate", "gcd", "interpolate", "is_irreducible", "parse_poly", "poly_ring",
    "resultant", "resultant_uni", "squarefree_decomposition", "to_text", "xgcd", "xy_syntax",
]
