"""Exact computations with finite groupoids and their polynomial functors.

Everything numeric crosses the binding as a canonical ``p/q`` string; the
helpers here lift those to :class:`fractions.Fraction` so no precision is
ever lost.
"""

from fractions import Fraction

from ._grpoly import (
    Action,
    Caps,
    CapError,
    Groupoid,
    Loader,
    Map,
    ParseError,
    Polynomial,
    Species,
    ValidationError,
    compose,
    cyclic_polynomial,
    cyclic_species,
    discrete,
    enumerate_trees,
    equivalent,
    extend,
    fibre,
    group_groupoid,
    identity_polynomial,
    linear_species,
    list_polynomial,
    multiset_polynomial,
    multiset_species,
    point,
    polynomial_to_species,
    positive_list_polynomial,
    positive_multiset_polynomial,
    pullback,
    quotient,
    species_extension,
    species_to_polynomial,
)
from ._grpoly import egf as _egf_strings


def cardinality(g: Groupoid) -> Fraction:
    """Homotopy cardinality as an exact fraction."""
    return Fraction(g.cardinality())


def egf(species: Species, caps: Caps | None = None) -> list[Fraction]:
    """Series coefficients as exact fractions, degree 0 upward."""
    return [Fraction(c) for c in _egf_strings(species, caps or Caps())]


__all__ = [
    "Action",
    "Caps",
    "CapError",
    "Groupoid",
    "Loader",
    "Map",
    "ParseError",
    "Polynomial",
    "Species",
    "ValidationError",
    "cardinality",
    "compose",
    "cyclic_polynomial",
    "cyclic_species",
    "discrete",
    "egf",
    "enumerate_trees",
    "equivalent",
    "extend",
    "fibre",
    "group_groupoid",
    "identity_polynomial",
    "linear_species",
    "list_polynomial",
    "multiset_polynomial",
    "multiset_species",
    "point",
    "polynomial_to_species",
    "positive_list_polynomial",
    "positive_multiset_polynomial",
    "pullback",
    "quotient",
    "species_extension",
    "species_to_polynomial",
]
