#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

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

int image_components(const GroupoidMap& m) {
    std::set<int> seen;
    for (int o : m.ob) seen.insert(m.target->component_of(o));
    return static_cast<int>(seen.size());
}

}  // namespace

TEST_CASE("identity polynomial") {
    auto P = identity_polynomial();
    CHECK(validate_polynomial(P).ok);
    CHECK(is_one_variable(P));
    CHECK(is_combinatorial(P, caps).first);

    auto d3 = discrete_n(3);
    auto e = extend(P, over_point(P.I, d3), ProdMode::Auto, caps);
    CHECK(e.total->num_components() == 3);
    CHECK(e.total->cardinality() == Rat(3));
    CHECK(equivalent(e.total, d3, caps).equivalent);

    auto bc2 = one_object_groupoid(GroupTable::cyclic(2));
    auto eb = extend(P, over_point(P.I, bc2), ProdMode::Auto, caps);
    CHECK(eb.total->cardinality() == Rat(1, 2));
    CHECK(equivalent(eb.total, bc2, caps).equivalent);
}

TEST_CASE("spans give linear diagrams") {
    auto pt = trivial_groupoid();
    auto d2 = discrete_n(2);
    auto f = constant_map(d2, pt, 0);
    auto P = from_span(f, f);
    CHECK(validate_polynomial(P).ok);
    auto e = extend(P, over_point(P.I, discrete_n(3)), ProdMode::Auto, caps);
    CHECK(e.total->num_components() == 6);
    CHECK(e.total->cardinality() == Rat(6));
}

TEST_CASE("extension counts over discrete inputs") {
    auto d0 = discrete_n(0);
    auto d1 = discrete_n(1);
    auto d2 = discrete_n(2);

    auto L = list_polynomial(3);
    auto el = extend(L, over_point(L.I, d2), ProdMode::Auto, caps);
    CHECK(el.total->num_components() == 15);
    CHECK(el.total->cardinality() == Rat(15));
    auto el0 = extend(L, over_point(L.I, d0), ProdMode::Auto, caps);
    CHECK(el0.total->cardinality() == Rat(1));

    auto M = multiset_polynomial(3);
    auto em1 = extend(M, over_point(M.I, d1), ProdMode::Auto, caps);
    CHECK(em1.total->num_components() == 4);
    CHECK(em1.total->cardinality() == Rat(8, 3));
    auto em2 = extend(M, over_point(M.I, d2), ProdMode::Auto, caps);
    CHECK(em2.total->num_components() == 10);
    CHECK(em2.total->cardinality() == Rat(19, 3));
    auto em0 = extend(M, over_point(M.I, d0), ProdMode::Auto, caps);
    CHECK(em0.total->cardinality() == Rat(1));

    auto C = cyclic_polynomial(3);
    auto ec = extend(C, over_point(C.I, d2), ProdMode::Auto, caps);
    CHECK(ec.total->num_components() == 9);
    CHECK(ec.total->cardinality() == Rat(20, 3));
    auto ec0 = extend(C, over_point(C.I, d0), ProdMode::Auto, caps);
    CHECK(ec0.total->num_components() == 0);
}

TEST_CASE("extension of a groupoid input") {
    auto M = multiset_polynomial(2);
    auto bc2 = one_object_groupoid(GroupTable::cyclic(2));
    auto e = extend(M, over_point(M.I, bc2), ProdMode::Auto, caps);
    CHECK(e.total->num_components() == 3);
    CHECK(e.total->cardinality() == Rat(13, 8));
}

TEST_CASE("combinatoriality report") {
    auto ok = is_combinatorial(multiset_polynomial(3), caps);
    CHECK(ok.first);
    for (const auto& en : ok.second.entries) CHECK(en.trivial_auts);

    PolyDiagram P;
    P.I = trivial_groupoid();
    P.J = trivial_groupoid();
    P.E = one_object_groupoid(GroupTable::cyclic(2));
    P.B = trivial_groupoid();
    P.s = constant_map(P.E, P.I, 0);
    P.p = constant_map(P.E, P.B, 0);
    P.t = constant_map(P.B, P.J, 0);
    P.truncation = 1;
    auto bad = is_combinatorial(P, caps);
    CHECK_FALSE(bad.first);
    REQUIRE(bad.second.entries.size() == 1);
    CHECK_FALSE(bad.second.entries[0].trivial_auts);
}

TEST_CASE("lists to cycles along the canonical square") {
    auto sq = lists_to_cycles_square(3);
    auto d2 = discrete_n(2);
    auto res = apply_poly_morphism(sq, over_point(sq.from.I, d2), ProdMode::Auto, caps);
    CHECK(res.src_ext.total->num_components() == 14);
    CHECK(res.src_ext.total->cardinality() == Rat(14));
    CHECK(res.tgt_ext.total->num_components() == 9);
    CHECK(res.tgt_ext.total->cardinality() == Rat(20, 3));
    CHECK(validate_map(res.map).ok);
    CHECK(validate_two_cell(res.over_j).ok);
    // every necklace is hit by some word
    CHECK(image_components(res.map) == 9);

    auto d1 = discrete_n(1);
    auto r1 = apply_poly_morphism(sq, over_point(sq.from.I, d1), ProdMode::Auto, caps);
    CHECK(r1.src_ext.total->num_components() == 3);
    CHECK(r1.tgt_ext.total->num_components() == 3);
    CHECK(image_components(r1.map) == 3);
}

TEST_CASE("cycles to multisets along the canonical square") {
    auto sq = cycles_to_multisets_square(3);
    auto d1 = discrete_n(1);
    auto res = apply_poly_morphism(sq, over_point(sq.from.I, d1), ProdMode::Auto, caps);
    CHECK(res.src_ext.total->cardinality() == Rat(11, 6));
    CHECK(res.src_ext.total->num_components() == 3);
    CHECK(res.tgt_ext.total->cardinality() == Rat(8, 3));
    CHECK(res.tgt_ext.total->num_components() == 4);
    CHECK(validate_map(res.map).ok);
    CHECK(validate_two_cell(res.over_j).ok);
    // the empty multiset is not in the image
    CHECK(image_components(res.map) == 3);
}

TEST_CASE("substitution of lists into lists") {
    auto L = list_polynomial(2);
    auto c = compose1(L, L, caps);
    CHECK(validate_polynomial(c).ok);
    CHECK(is_one_variable(c));

    auto d1 = discrete_n(1);
    auto ec = extend(c, over_point(c.I, d1), ProdMode::Auto, caps);
    CHECK(ec.total->num_components() == 13);
    CHECK(ec.total->cardinality() == Rat(13));

    // agrees with extending twice
    auto inner_ext = extend(L, over_point(L.I, d1), ProdMode::Auto, caps);
    auto outer_ext =
        extend(L, rebase_point_family(inner_ext, L.I), ProdMode::Auto, caps);
    CHECK(outer_ext.total->cardinality() == Rat(13));
    CHECK(equivalent(ec.total, outer_ext.total, caps).equivalent);
}

TEST_CASE("substitution of multisets into multisets") {
    auto M = multiset_polynomial(2);
    auto c = compose1(M, M, caps);
    CHECK(validate_polynomial(c).ok);

    auto d1 = discrete_n(1);
    auto ec = extend(c, over_point(c.I, d1), ProdMode::Auto, caps);
    CHECK(ec.total->num_components() == 10);
    CHECK(ec.total->cardinality() == Rat(53, 8));

    auto inner_ext = extend(M, over_point(M.I, d1), ProdMode::Auto, caps);
    auto outer_ext =
        extend(M, rebase_point_family(inner_ext, M.I), ProdMode::Auto, caps);
    CHECK(outer_ext.total->cardinality() == Rat(53, 8));
    CHECK(equivalent(ec.total, outer_ext.total, caps).equivalent);
}

TEST_CASE("substitution with the identity") {
    auto M = multiset_polynomial(2);
    auto I = identity_polynomial();
    auto d2 = discrete_n(2);

    auto left = compose1(I, M, caps);
    auto el = extend(left, over_point(left.I, d2), ProdMode::Auto, caps);
    CHECK(el.total->cardinality() == Rat(5));

    auto right = compose1(M, I, caps);
    auto er = extend(right, over_point(right.I, d2), ProdMode::Auto, caps);
    CHECK(er.total->cardinality() == Rat(5));

    auto em = extend(M, over_point(M.I, d2), ProdMode::Auto, caps);
    CHECK(equivalent(el.total, em.total, caps).equivalent);
    CHECK(equivalent(er.total, em.total, caps).equivalent);
}

TEST_CASE("base change squares from cospans") {
    auto pt1 = trivial_groupoid();
    auto pt2 = trivial_groupoid();
    auto bc2 = one_object_groupoid(GroupTable::cyclic(2));
    auto phi = constant_map(pt1, bc2, 0);
    auto beta = constant_map(pt2, bc2, 0);
    auto sq = square_from_cospan(phi, beta, caps);
    CHECK(sq.P->num_objects() == 2);

    auto rep = beck_chevalley_check(sq, over_point(pt2, discrete_n(2)),
                                    over_point(pt1, discrete_n(3)), caps);
    CHECK(rep.sum_ok);
    CHECK(rep.prod_ok);
}

TEST_CASE("base change over a discrete cospan") {
    auto pt = trivial_groupoid();
    auto d2 = discrete_n(2);
    auto bc2 = one_object_groupoid(GroupTable::cyclic(2));
    auto phi = constant_map(d2, pt, 0);
    auto beta = constant_map(bc2, pt, 0);
    auto sq = square_from_cospan(phi, beta, caps);

    FamilyOver on_y;
    on_y.base = bc2;
    on_y.total = bc2;
    on_y.proj = identity_map(bc2);
    FamilyOver on_x;
    on_x.base = d2;
    on_x.total = discrete_n(4);
    on_x.proj = constant_map(on_x.total, d2, 0);
    on_x.proj.ob = {0, 0, 1, 1};
    for (int m = 0; m < 4; ++m)
        on_x.proj.mor[m] = d2->identity(on_x.proj.ob[m]);

    auto rep = beck_chevalley_check(sq, on_y, on_x, caps);
    CHECK(rep.sum_ok);
    CHECK(rep.prod_ok);
}
