#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "grpoly/builders.hpp"
#include "grpoly/equivalence.hpp"
#include "grpoly/gmap.hpp"
#include "grpoly/groupoid.hpp"
#include "grpoly/groups.hpp"

using namespace grpoly;

static Caps caps;

namespace {

GroupoidPtr bgroup(const GroupTable& t, const std::string& name) {
    return one_object_groupoid(t, name);
}

// Contractible groupoid: C2 acting freely on itself.
GroupoidPtr ec2() {
    auto act = action_from_permutations(GroupTable::cyclic(2), discrete_n(2),
                                        {{0, 1}, {1, 0}});
    return homotopy_quotient(act, caps).g;
}

void check_witness(const EquivResult& r) {
    REQUIRE(r.equivalent);
    REQUIRE(r.witness.has_value());
    const auto& w = *r.witness;
    CHECK(validate_map(w.fwd).ok);
    CHECK(validate_map(w.bwd).ok);
    CHECK(is_equivalence_functor(w.fwd).ok);
    CHECK(is_equivalence_functor(w.bwd).ok);
    CHECK(validate_two_cell(w.cell_src).ok);
    CHECK(validate_two_cell(w.cell_tgt).ok);
    CHECK(maps_equal(w.cell_src.lhs, compose_maps(w.bwd, w.fwd)));
    CHECK(maps_equal(w.cell_tgt.lhs, compose_maps(w.fwd, w.bwd)));
}

}  // namespace

TEST_CASE("skeleton collapses each component to its representative") {
    auto g = ec2();
    REQUIRE(g->num_objects() == 2);
    auto sk = skeleton(g);
    CHECK(sk.skeletal->num_objects() == 1);
    CHECK(sk.reps.size() == 1);
    REQUIRE(sk.aut.size() == 1);
    CHECK(sk.aut[0].n == 1);
    CHECK(validate_map(sk.incl).ok);
    CHECK(validate_map(sk.retr).ok);
    CHECK(validate_two_cell(sk.unit).ok);
    CHECK(maps_equal(sk.unit.lhs, compose_maps(sk.incl, sk.retr)));
    CHECK(maps_equal(sk.unit.rhs, identity_map(g)));
    CHECK(maps_equal(compose_maps(sk.retr, sk.incl), identity_map(sk.skeletal)));
    CHECK(sk.skeletal->cardinality() == g->cardinality());
}

TEST_CASE("skeleton keeps one vertex group per component") {
    auto two = sum_groupoid({bgroup(GroupTable::cyclic(3), "bc3"), discrete_n(2)},
                            "mix");
    auto sk = skeleton(two.g);
    CHECK(sk.skeletal->num_objects() == 3);
    std::vector<int> orders;
    for (const auto& t : sk.aut) orders.push_back(t.n);
    std::sort(orders.begin(), orders.end());
    CHECK(orders == std::vector<int>{1, 1, 3});
}

TEST_CASE("contractible groupoid is equivalent to the point") {
    auto r = equivalent(ec2(), trivial_groupoid(), caps);
    check_witness(r);
}

TEST_CASE("equivalence matches components regardless of listing order") {
    auto ab = sum_groupoid({bgroup(GroupTable::cyclic(2), "bc2"), trivial_groupoid()},
                           "ab");
    auto ba = sum_groupoid({trivial_groupoid(), bgroup(GroupTable::cyclic(2), "bc2")},
                           "ba");
    check_witness(equivalent(ab.g, ba.g, caps));
}

TEST_CASE("doubling a one-object groupoid splits into two components") {
    auto bc2 = bgroup(GroupTable::cyclic(2), "bc2");
    auto prod = product_groupoid(bc2, discrete_n(2), caps);
    auto twice = sum_groupoid({bc2, bgroup(GroupTable::cyclic(2), "other")}, "twice");
    check_witness(equivalent(prod.g, twice.g, caps));
}

TEST_CASE("equivalence rejects on countable invariants with a reason") {
    auto bc2 = bgroup(GroupTable::cyclic(2), "bc2");
    auto bc3 = bgroup(GroupTable::cyclic(3), "bc3");

    auto r1 = equivalent(bc2, bc3, caps);
    CHECK_FALSE(r1.equivalent);
    CHECK_FALSE(r1.reason.empty());

    auto r2 = equivalent(discrete_n(2), discrete_n(3), caps);
    CHECK_FALSE(r2.equivalent);

    auto extra = sum_groupoid({bc2, trivial_groupoid()}, "extra");
    CHECK_FALSE(equivalent(extra.g, bc2, caps).equivalent);
}

TEST_CASE("equal vertex group orders are not enough") {
    auto k4 = bgroup(GroupTable::klein(), "bk4");
    auto c4 = bgroup(GroupTable::cyclic(4), "bc4");
    auto r = equivalent(k4, c4, caps);
    CHECK_FALSE(r.equivalent);
    CHECK_FALSE(r.reason.empty());
    check_witness(equivalent(k4, bgroup(GroupTable::klein(), "bk4b"), caps));
}

TEST_CASE("vertex group order cap stops the matching search") {
    auto bs5 = bgroup(GroupTable::symmetric(5), "bs5");
    CHECK_THROWS_AS(equivalent(bs5, bs5, caps), cap_error);
    Caps wide = caps;
    wide.max_group_order = 200;
    check_witness(equivalent(bs5, bgroup(GroupTable::symmetric(5), "bs5b"), wide));
}

TEST_CASE("equivalence checker classifies functor failures") {
    auto bc2 = bgroup(GroupTable::cyclic(2), "bc2");
    auto pt = trivial_groupoid();

    auto sub = is_equivalence_functor(constant_map(pt, discrete_n(2), 0));
    CHECK_FALSE(sub.ok);  // misses a component

    auto merge = is_equivalence_functor(constant_map(discrete_n(2), pt, 0));
    CHECK_FALSE(merge.ok);  // identifies two components

    auto crush = is_equivalence_functor(constant_map(bc2, pt, 0));
    CHECK_FALSE(crush.ok);  // kills the loop

    auto into = is_equivalence_functor(constant_map(pt, bc2, 0));
    CHECK_FALSE(into.ok);  // misses the loop

    CHECK(is_equivalence_functor(identity_map(bc2)).ok);
}

TEST_CASE("quasi-inverse triangles validate and throws off an equivalence") {
    auto g = ec2();
    auto sk = skeleton(g);
    auto qi = quasi_inverse(sk.incl);
    CHECK(validate_map(qi.psi).ok);
    CHECK(validate_two_cell(qi.eps).ok);
    CHECK(validate_two_cell(qi.eta).ok);
    CHECK(maps_equal(qi.eps.lhs, compose_maps(sk.incl, qi.psi)));
    CHECK(maps_equal(qi.eps.rhs, identity_map(g)));
    CHECK(maps_equal(qi.eta.lhs, compose_maps(qi.psi, sk.incl)));
    CHECK(maps_equal(qi.eta.rhs, identity_map(sk.skeletal)));

    CHECK_THROWS_AS(quasi_inverse(constant_map(trivial_groupoid(), discrete_n(2), 0)),
                    validation_error);
}

TEST_CASE("natural isomorphism search finds conjugation cells") {
    auto bs3 = bgroup(GroupTable::symmetric(3), "bs3");
    std::vector<int> loops;
    auto t = aut_table(*bs3, 0, &loops);
    int swap = -1;
    for (int i = 0; i < t.n; ++i)
        if (t.order_of(i) == 2) { swap = i; break; }
    REQUIRE(swap >= 0);

    // Conjugation by the chosen involution, as a functor.
    GroupoidMap conj;
    conj.source = bs3;
    conj.target = bs3;
    conj.ob = {0};
    conj.mor.resize(bs3->num_morphisms());
    for (int i = 0; i < t.n; ++i)
        conj.mor[loops[i]] = loops[t.at(t.at(swap, i), t.inverse(swap))];
    REQUIRE(validate_map(conj).ok);

    auto cell = find_two_cell(identity_map(bs3), conj);
    REQUIRE(cell.has_value());
    CHECK(validate_two_cell(*cell).ok);

    // Between distinct constant maps into a discrete target there is none.
    auto d2 = discrete_n(2);
    auto pt = trivial_groupoid();
    CHECK_FALSE(find_two_cell(constant_map(pt, d2, 0), constant_map(pt, d2, 1))
                    .has_value());
}

TEST_CASE("equivalence decision is deterministic") {
    auto mk = [&] {
        return sum_groupoid({bgroup(GroupTable::dihedral(3), "bd3"), discrete_n(2)},
                            "m")
            .g;
    };
    auto r1 = equivalent(mk(), mk(), caps);
    auto r2 = equivalent(mk(), mk(), caps);
    REQUIRE(r1.equivalent);
    REQUIRE(r2.equivalent);
    CHECK(r1.witness->fwd.ob == r2.witness->fwd.ob);
    CHECK(r1.witness->fwd.mor == r2.witness->fwd.mor);
    CHECK(r1.witness->bwd.ob == r2.witness->bwd.ob);
    CHECK(r1.witness->bwd.mor == r2.witness->bwd.mor);
    CHECK(r1.witness->cell_src.comp == r2.witness->cell_src.comp);
    CHECK(r1.witness->cell_tgt.comp == r2.witness->cell_tgt.comp);
}
