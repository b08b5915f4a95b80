"""Smoke tests for the python bindings against the native build."""

import os
from fractions import Fraction

import pytest

import grpoly


def data(name: str) -> str:
    root = os.environ.get("GRPOLY_DATA")
    assert root, "GRPOLY_DATA must point at the fixture directory"
    return os.path.join(root, name)


def test_builders_and_cardinality():
    assert grpoly.cardinality(grpoly.point()) == 1
    assert grpoly.cardinality(grpoly.discrete(3)) == 3
    bc2 = grpoly.group_groupoid("cyclic", 2)
    assert grpoly.cardinality(bc2) == Fraction(1, 2)
    assert bc2.num_objects == 1
    assert bc2.num_morphisms == 2
    bs3 = grpoly.group_groupoid("symmetric", 3)
    assert grpoly.cardinality(bs3) == Fraction(1, 6)
    ok, errors = bs3.validate()
    assert ok and errors == []


def test_components_and_equivalence():
    d2 = grpoly.discrete(2)
    assert d2.components() == [["x0"], ["x1"]]
    eq, _ = grpoly.equivalent(grpoly.point(), grpoly.point())
    assert eq
    ne, reason = grpoly.equivalent(
        grpoly.group_groupoid("klein"), grpoly.group_groupoid("cyclic", 4)
    )
    assert not ne and reason


def test_file_loading_shares_instances():
    loader = grpoly.Loader()
    bc2 = loader.groupoid(data("BC2.json"))
    assert grpoly.cardinality(bc2) == Fraction(1, 2)
    m = loader.map(data("pt_to_BC2.json"))
    ok, _ = m.validate()
    assert ok
    # The map's target is the same instance the direct load produced.
    loops = grpoly.pullback(m, m)
    assert grpoly.cardinality(loops) == 2
    assert loops.num_components == 2


def test_fibre_and_quotient():
    loader = grpoly.Loader()
    cover = loader.map(data("double_cover.json"))
    fib = grpoly.fibre(cover, "pt")
    assert fib.num_objects == 4
    act = loader.action(data("flip_action.json"))
    assert act.group_order == 2
    q = grpoly.quotient(act)
    assert grpoly.cardinality(q) == 1


def test_series_and_extensions():
    ms = grpoly.multiset_species(5)
    assert grpoly.egf(ms) == [
        Fraction(1),
        Fraction(1),
        Fraction(1, 2),
        Fraction(1, 6),
        Fraction(1, 24),
        Fraction(1, 120),
    ]
    cyc = grpoly.cyclic_species(5)
    assert grpoly.egf(cyc)[:3] == [0, 1, Fraction(1, 2)]

    total = grpoly.extend(grpoly.multiset_polynomial(3), grpoly.discrete(2))
    assert grpoly.cardinality(total) == Fraction(19, 3)

    lin = grpoly.species_extension(grpoly.linear_species(3), grpoly.discrete(2))
    assert grpoly.cardinality(lin) == 1 + 2 + 4 + 8


def test_round_trip_between_species_and_polynomials():
    F = grpoly.cyclic_species(3)
    P = grpoly.species_to_polynomial(F)
    ok, _ = P.validate()
    assert ok
    back = grpoly.polynomial_to_species(P, 3)
    assert grpoly.egf(back) == grpoly.egf(F)


def test_composition_matches_staged_evaluation():
    outer = grpoly.list_polynomial(2)
    inner = grpoly.list_polynomial(2)
    comp = grpoly.compose(outer, inner)
    d2 = grpoly.discrete(2)
    staged = grpoly.extend(outer, grpoly.extend(inner, d2))
    assert grpoly.cardinality(grpoly.extend(comp, d2)) == grpoly.cardinality(staged)


def test_tree_enumeration():
    classes = grpoly.enumerate_trees(grpoly.identity_polynomial(), 4)
    assert [c[0] for c in classes] == [1, 2, 3, 4]
    assert all(c[1] == 1 for c in classes)
    bushy = grpoly.enumerate_trees(grpoly.positive_multiset_polynomial(5), 3)
    assert len(bushy) == 4  # chains plus the two-leaf corolla


def test_error_mapping():
    with pytest.raises(grpoly.ValidationError):
        grpoly.fibre(grpoly.Loader().map(data("double_cover.json")), "absent")
    with pytest.raises(grpoly.ParseError):
        grpoly.Loader().groupoid(data("no_such_file.json"))
    with pytest.raises(grpoly.CapError):
        tight = grpoly.Caps()
        tight.max_objects = 10
        grpoly.extend(grpoly.multiset_polynomial(3), grpoly.discrete(2), tight)
    # The registered exceptions double as standard ones.
    with pytest.raises(ValueError):
        grpoly.Loader().groupoid(data("no_such_file.json"))
    with pytest.raises(RuntimeError):
        tight = grpoly.Caps()
        tight.max_objects = 10
        grpoly.extend(grpoly.multiset_polynomial(3), grpoly.discrete(2), tight)
