#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "grpoly/equivalence.hpp"
#include "grpoly/polynomial.hpp"
#include "grpoly/species.hpp"

using namespace grpoly;

namespace {

const Caps caps;

FamilyOver over_point(GroupoidPtr pt, GroupoidPtr total) {
    FamilyOver f;
    f.base = pt;
    f.total = total;
    f.proj = constant_map(total, pt, 0);
    return f;
}

}  // namespace

TEST_CASE("finite-sets classifier") {
    auto b2 = b_omega(2);
    CHECK(validate_groupoid(*b2.g).ok);
    CHECK(b2.g->num_objects() == 3);
    CHECK(b2.g->num_components() == 3);
    CHECK(b2.g->cardinality() == Rat(5, 2));
    CHECK(b2.g->loops(b2.obj_of_size[0]).size() == 1);
    CHECK(b2.g->loops(b2.obj_of_size[1]).size() == 1);
    CHECK(b2.g->loops(b2.obj_of_size[2]).size() == 2);

    auto b3 = b_omega(3);
    CHECK(b3.g->cardinality() == Rat(8, 3));
    CHECK(b3.g->loops(b3.obj_of_size[3]).size() == 6);

    CHECK_THROWS_AS(b_omega(-1), validation_error);
    CHECK_THROWS_AS(b_omega(6), validation_error);
}

TEST_CASE("perm_rank is the lexicographic rank") {
    CHECK(perm_rank({}) == 0);
    CHECK(perm_rank({0}) == 0);
    CHECK(perm_rank({0, 1, 2}) == 0);
    CHECK(perm_rank({1, 2, 0}) == 3);
    CHECK(perm_rank({2, 1, 0}) == 5);
}

TEST_CASE("pointed classifier has discrete fibres") {
    auto b3 = b_omega(3);
    auto p3 = b_omega_pointed(3, b3);
    CHECK(validate_map(p3.proj).ok);
    for (int k = 1; k <= 3; ++k) {
        auto fib = homotopy_fibre(p3.proj, b3.obj_of_size[k], caps);
        CHECK(fib.gpd->num_components() == k);
        CHECK(fib.gpd->cardinality() == Rat(k));
        for (int c = 0; c < k; ++c)
            CHECK(fib.gpd->loops(fib.gpd->component_rep(c)).size() == 1);
    }
}

TEST_CASE("cyclic-orders groupoid") {
    auto b3 = b_omega(3);
    auto c3 = c_omega(3, b3);
    CHECK(validate_groupoid(*c3.g).ok);
    CHECK(c3.g->num_objects() == 3);
    CHECK(c3.g->loops(c3.obj_of_size[3]).size() == 3);
    CHECK(validate_map(c3.to_sym).ok);
    // the generating rotation of c3 is the 3-cycle 0->1->2->0
    CHECK(c3.to_sym.mor[c3.rot_mor[3][1]] == b3.perm_mor[3][perm_rank({1, 2, 0})]);

    auto cp = c_omega_pointed(3, c3);
    CHECK(validate_map(cp.proj).ok);
    for (int k = 1; k <= 3; ++k) {
        auto fib = homotopy_fibre(cp.proj, c3.obj_of_size[k], caps);
        CHECK(fib.gpd->num_components() == k);
        CHECK(fib.gpd->cardinality() == Rat(k));
    }
}

TEST_CASE("linear-orders groupoid is discrete") {
    auto b3 = b_omega(3);
    auto l3 = lin(3, b3);
    CHECK(l3.g->num_objects() == 4);
    CHECK(l3.g->num_morphisms() == 4);
    CHECK(validate_map(l3.to_sym).ok);
    auto lp = lin_pointed(3, l3);
    CHECK(lp.g->num_objects() == 6);
    CHECK(validate_map(lp.proj).ok);
}

TEST_CASE("exponential generating functions") {
    auto ms = egf(multiset_species(5), caps);
    REQUIRE(ms.size() == 6);
    CHECK(ms[0] == Rat(1));
    CHECK(ms[1] == Rat(1));
    CHECK(ms[2] == Rat(1, 2));
    CHECK(ms[3] == Rat(1, 6));
    CHECK(ms[4] == Rat(1, 24));
    CHECK(ms[5] == Rat(1, 120));

    auto cy = egf(cyclic_species(4), caps);
    REQUIRE(cy.size() == 5);
    CHECK(cy[0] == Rat(0));
    CHECK(cy[1] == Rat(1));
    CHECK(cy[2] == Rat(1, 2));
    CHECK(cy[3] == Rat(1, 3));
    CHECK(cy[4] == Rat(1, 4));

    auto li = egf(linear_species(4), caps);
    REQUIRE(li.size() == 5);
    for (const auto& a : li) CHECK(a == Rat(1));
}

TEST_CASE("power groupoid") {
    auto d2 = discrete_n(2);
    auto p = power_groupoid(d2, 3, caps);
    CHECK(p.g->num_objects() == 8);
    CHECK(p.g->num_morphisms() == 8);

    auto bc2 = one_object_groupoid(GroupTable::cyclic(2));
    auto q = power_groupoid(bc2, 2, caps);
    CHECK(q.g->num_objects() == 1);
    CHECK(q.g->num_morphisms() == 4);
    CHECK(validate_groupoid(*q.g).ok);

    auto e = power_groupoid(d2, 0, caps);
    CHECK(e.g->num_objects() == 1);
}

TEST_CASE("species extension counts") {
    auto d1 = discrete_n(1);
    auto d2 = discrete_n(2);

    auto le = species_extension(linear_species(3), d2, caps);
    CHECK(le->num_components() == 15);
    CHECK(le->cardinality() == Rat(15));

    auto me1 = species_extension(multiset_species(3), d1, caps);
    CHECK(me1->num_components() == 4);
    CHECK(me1->cardinality() == Rat(8, 3));

    auto me2 = species_extension(multiset_species(3), d2, caps);
    CHECK(me2->num_components() == 10);
    CHECK(me2->cardinality() == Rat(19, 3));

    auto ce = species_extension(cyclic_species(3), d2, caps);
    CHECK(ce->num_components() == 9);
    CHECK(ce->cardinality() == Rat(20, 3));
}

TEST_CASE("species and polynomial extensions agree") {
    auto F = multiset_species(2);
    auto P = species_to_polynomial(F, caps);
    CHECK(validate_polynomial(P).ok);
    CHECK(is_one_variable(P));

    auto d2 = discrete_n(2);
    auto ext_poly = extend(P, over_point(P.I, d2), ProdMode::Auto, caps);
    auto ext_spec = species_extension(F, d2, caps);
    CHECK(ext_poly.total->cardinality() == Rat(5));
    CHECK(ext_spec->cardinality() == Rat(5));
    CHECK(equivalent(ext_poly.total, ext_spec, caps).equivalent);

    auto L = linear_species(2);
    auto Q = species_to_polynomial(L, caps);
    auto el = extend(Q, over_point(Q.I, d2), ProdMode::Auto, caps);
    CHECK(el.total->cardinality() == Rat(7));
    CHECK(species_extension(L, d2, caps)->cardinality() == Rat(7));
}

TEST_CASE("polynomial to species") {
    auto S = polynomial_to_species(multiset_polynomial(3), 3, caps);
    CHECK(validate_species(S).ok);
    auto e = egf(S, caps);
    CHECK(e[0] == Rat(1));
    CHECK(e[1] == Rat(1));
    CHECK(e[2] == Rat(1, 2));
    CHECK(e[3] == Rat(1, 6));

    auto C = polynomial_to_species(cyclic_polynomial(3), 3, caps);
    auto ec = egf(C, caps);
    CHECK(ec[0] == Rat(0));
    CHECK(ec[1] == Rat(1));
    CHECK(ec[2] == Rat(1, 2));
    CHECK(ec[3] == Rat(1, 3));

    // round trip through the polynomial presentation
    auto F = multiset_species(2);
    auto back = polynomial_to_species(species_to_polynomial(F, caps), 2, caps);
    CHECK(back.total.get() == F.total.get());
    auto eb = egf(back, caps);
    CHECK(eb[0] == Rat(1));
    CHECK(eb[1] == Rat(1));
    CHECK(eb[2] == Rat(1, 2));
}

TEST_CASE("polynomial_to_species rejects bad input") {
    // positions with a nontrivial symmetry cannot come from a species
    auto pt = trivial_groupoid();
    PolyDiagram P;
    P.I = pt;
    P.J = pt;
    P.E = one_object_groupoid(GroupTable::cyclic(2));
    P.B = trivial_groupoid();
    P.s = constant_map(P.E, P.I, 0);
    P.p = constant_map(P.E, P.B, 0);
    P.t = constant_map(P.B, P.J, 0);
    P.truncation = 1;
    CHECK(validate_polynomial(P).ok);
    CHECK_FALSE(is_combinatorial(P, caps).first);
    CHECK_THROWS_AS(polynomial_to_species(P, 1, caps), validation_error);
}

TEST_CASE("classical extension counts") {
    CHECK(classical_extension(list_polynomial(3), 2, caps) == 15);
    CHECK(classical_extension(list_polynomial(3), 0, caps) == 1);
    CHECK(classical_extension(multiset_polynomial(3), 1, caps) == 4);
    CHECK(classical_extension(multiset_polynomial(3), 2, caps) == 10);
    CHECK(classical_extension(multiset_polynomial(3), 0, caps) == 1);
    CHECK(classical_extension(cyclic_polynomial(3), 1, caps) == 3);
    CHECK(classical_extension(cyclic_polynomial(3), 2, caps) == 9);
    CHECK(classical_extension(cyclic_polynomial(3), 0, caps) == 0);
}

TEST_CASE("canonical squares are homotopy cartesian") {
    for (int n : {2, 3}) {
        auto lc = lists_to_cycles_square(n);
        CHECK(validate_square(lc).ok);
        CHECK(is_homotopy_cartesian(lc, caps));

        auto cm = cycles_to_multisets_square(n);
        CHECK(validate_square(cm).ok);
        CHECK(is_homotopy_cartesian(cm, caps));
    }
}

TEST_CASE("the rotation filler matters") {
    auto sq = lists_to_cycles_square(2);
    // identity filler: still a valid square, no longer cartesian
    for (size_t o = 0; o < sq.mid.comp.size(); ++o)
        sq.mid.comp[o] = sq.mid.lhs.target->identity(sq.mid.lhs.ob[o]);
    CHECK(validate_square(sq).ok);
    CHECK_FALSE(is_homotopy_cartesian(sq, caps));
}
