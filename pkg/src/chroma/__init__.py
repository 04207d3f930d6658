"""Exact-arithmetic toolkit for diagonal braiding data, reflection orbits,
colored Dynkin diagrams, quantum-double color predicates, abelian
extensions, and color Hopf algebra verification."""

from .scalars import Cyclo, Rational01, Scalar, order_of, parse_scalar, solve_power
from .groups import (Bicharacter, Character, Element, FinAbGroup, Homomorphism,
                     Subgroup, perp, quotient)
from .datum import BraidingMatrix, Datum, datum_from_twisted, twist_matrix, untwist_matrix
from .weyl import cartan_entry, reflect_datum, reflect_matrix, weyl_orbit
from .dynkin import Diagram, colored_diagram, generalized_diagram, isomorphic

__version__ = "0.1.0"

__all__ = [
    "Bicharacter", "BraidingMatrix", "Character", "Cyclo", "Datum", "Diagram",
    "Element", "FinAbGroup", "Homomorphism", "Rational01", "Scalar", "Subgroup",
    "cartan_entry", "colored_diagram", "datum_from_twisted", "generalized_diagram",
    "isomorphic", "order_of", "parse_scalar", "perp", "quotient", "reflect_datum",
    "reflect_matrix", "solve_power", "twist_matrix", "untwist_matrix", "weyl_orbit",
]
