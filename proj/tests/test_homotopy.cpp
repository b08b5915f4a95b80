#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "grpoly/equivalence.hpp"
#include "grpoly/homotopy.hpp"

using namespace grpoly;

namespace {

const Caps caps;

GroupoidPtr loop_space(GroupoidPtr g, int x) {
    auto n = name_map(g, x);
    return homotopy_pullback(n, n, caps).apex;
}

bool is_discrete(const FinGroupoid& g) {
    return g.num_morphisms() == g.num_objects();
}

// Group homomorphism between one-object groupoids, by element images.
GroupoidMap hom_map(GroupoidPtr src, GroupoidPtr tgt, std::vector<int> img) {
    GroupoidMap m;
    m.source = src;
    m.target = tgt;
    m.ob = {0};
    m.mor = std::move(img);
    return m;
}

// Quotient of the free swap action on two points: a two-sheeted covering
// with contractible total space.
struct Covering {
    QuotientResult q;
    FamilyOver fam;
};
Covering double_cover() {
    auto space = discrete_n(2);
    auto act = action_from_permutations(GroupTable::cyclic(2), space, {{0, 1}, {1, 0}});
    Covering c;
    c.q = homotopy_quotient(act, caps);
    c.fam = make_family(c.q.proj);
    return c;
}

FamilyOver family_over_point(GroupoidPtr pt, GroupoidPtr total) {
    return make_family(constant_map(total, pt, 0));
}

}  // namespace

TEST_CASE("loop spaces are discrete of vertex group size") {
    auto l2 = loop_space(one_object_groupoid(GroupTable::cyclic(2)), 0);
    CHECK(l2->num_objects() == 2);
    CHECK(is_discrete(*l2));
    CHECK(l2->cardinality().str() == "2");

    auto l3 = loop_space(one_object_groupoid(GroupTable::cyclic(3)), 0);
    CHECK(l3->num_objects() == 3);
    CHECK(is_discrete(*l3));

    auto l6 = loop_space(one_object_groupoid(GroupTable::symmetric(3)), 0);
    CHECK(l6->num_objects() == 6);
    CHECK(is_discrete(*l6));
    CHECK(l6->cardinality().str() == "6");
}

TEST_CASE("homotopy pullback of group inclusions") {
    auto bc2a = one_object_groupoid(GroupTable::cyclic(2), "left");
    auto bc2b = one_object_groupoid(GroupTable::cyclic(2), "right");
    auto bc4 = one_object_groupoid(GroupTable::cyclic(4));
    auto f = hom_map(bc2a, bc4, {0, 2});
    auto g = hom_map(bc2b, bc4, {0, 2});
    CHECK(validate_map(f).ok);

    auto pb = homotopy_pullback(f, g, caps);
    CHECK(pb.apex->num_objects() == 4);
    CHECK(pb.apex->num_morphisms() == 16);
    CHECK(pb.apex->num_components() == 2);
    CHECK(pb.apex->cardinality().str() == "1");
    CHECK(validate_map(pb.to_left).ok);
    CHECK(validate_map(pb.to_right).ok);
    CHECK(validate_two_cell(pb.cmp).ok);
    CHECK(validate_groupoid(*pb.apex).ok);
}

TEST_CASE("strict pullback against replaced leg matches homotopy pullback") {
    auto bc2 = one_object_groupoid(GroupTable::cyclic(2));
    auto f = name_map(bc2, 0);
    auto g = name_map(bc2, 0);

    auto hp = homotopy_pullback(f, g, caps);
    auto rep = factor_as_fibration(f, caps);
    auto sp = strict_pullback(rep.fibration, g, caps);
    CHECK(validate_groupoid(*sp.apex).ok);
    CHECK(sp.apex->cardinality() == hp.apex->cardinality());
    CHECK(equivalent(sp.apex, hp.apex, caps).equivalent);

    // Same comparison with a non-discrete answer.
    auto bc4 = one_object_groupoid(GroupTable::cyclic(4));
    auto f2 = hom_map(bc2, bc4, {0, 2});
    auto hp2 = homotopy_pullback(f2, f2, caps);
    auto rep2 = factor_as_fibration(f2, caps);
    auto sp2 = strict_pullback(rep2.fibration, f2, caps);
    CHECK(sp2.apex->cardinality() == hp2.apex->cardinality());
    CHECK(equivalent(sp2.apex, hp2.apex, caps).equivalent);
}

TEST_CASE("homotopy fibre of a covering is its set of sheets") {
    auto cov = double_cover();
    auto fib = homotopy_fibre(cov.q.proj, 0, caps);
    CHECK(fib.gpd->num_objects() == 4);
    CHECK(fib.gpd->num_components() == 2);
    CHECK(fib.gpd->cardinality().str() == "2");
    CHECK(validate_map(fib.to_total).ok);

    auto act = fibre_aut_action(fib, cov.q.proj, 0);
    CHECK(validate_action(act).ok);
    auto quot = homotopy_quotient(act, caps);
    CHECK(quot.g->cardinality() == cov.fam.total->cardinality());
}

TEST_CASE("homotopy fibre of an identity is contractible") {
    auto bc2 = one_object_groupoid(GroupTable::cyclic(2));
    auto fib = homotopy_fibre(identity_map(bc2), 0, caps);
    CHECK(fib.gpd->num_objects() == 2);
    CHECK(fib.gpd->num_components() == 1);
    CHECK(fib.gpd->cardinality().str() == "1");
    CHECK(equivalent(fib.gpd, trivial_groupoid(), caps).equivalent);
}

TEST_CASE("subgroup inclusion has discrete coset fibre") {
    auto bc2 = one_object_groupoid(GroupTable::cyclic(2));
    auto bc4 = one_object_groupoid(GroupTable::cyclic(4));
    auto f = hom_map(bc2, bc4, {0, 2});
    auto fib = homotopy_fibre(f, 0, caps);
    CHECK(fib.gpd->num_objects() == 4);
    CHECK(fib.gpd->num_components() == 2);
    CHECK(fib.gpd->cardinality().str() == "2");
    for (int c = 0; c < fib.gpd->num_components(); ++c)
        CHECK(fib.gpd->loops(fib.gpd->component_rep(c)).size() == 1);
}

TEST_CASE("mapping-path factorization") {
    auto pt = trivial_groupoid();
    auto bc2 = one_object_groupoid(GroupTable::cyclic(2));
    auto bc4 = one_object_groupoid(GroupTable::cyclic(4));

    std::vector<GroupoidMap> cases;
    cases.push_back(constant_map(pt, bc2, 0));
    cases.push_back(hom_map(bc2, bc4, {0, 2}));
    cases.push_back(constant_map(discrete_n(3), bc2, 0));

    for (const auto& f : cases) {
        CAPTURE(f.target->name());
        CHECK_FALSE(is_isofibration(f));
        auto rep = factor_as_fibration(f, caps);
        CHECK(validate_groupoid(*rep.total).ok);
        CHECK(validate_map(rep.embed).ok);
        CHECK(validate_map(rep.fibration).ok);
        CHECK(is_isofibration(rep.fibration));
        CHECK(is_equivalence_functor(rep.embed).ok);
        CHECK(maps_equal(compose_maps(rep.fibration, rep.embed), f));

        // Strict fibre of the replacement recovers the homotopy fibre.
        auto strict = strict_pullback(rep.fibration, name_map(f.target, 0), caps);
        auto hofib = homotopy_fibre(f, 0, caps);
        CHECK(strict.apex->cardinality() == hofib.gpd->cardinality());
        CHECK(equivalent(strict.apex, hofib.gpd, caps).equivalent);
    }

    auto idrep = factor_as_fibration(identity_map(bc2), caps);
    CHECK(is_isofibration(idrep.fibration));
    CHECK(is_equivalence_functor(idrep.fibration).ok);
}

TEST_CASE("base change along a point names the fibre") {
    auto bc2 = one_object_groupoid(GroupTable::cyclic(2));
    auto x = identity_family(bc2);
    auto bc = base_change(name_map(bc2, 0), x, caps);
    CHECK(bc.fam.total->cardinality().str() == "1");
    CHECK(equivalent(bc.fam.total, trivial_groupoid(), caps).equivalent);
    CHECK(validate_map(bc.fam.proj).ok);
    CHECK(validate_map(bc.to_total).ok);

    auto cov = double_cover();
    auto bc2nd = base_change(name_map(cov.fam.base, 0), cov.fam, caps);
    CHECK(bc2nd.fam.total->cardinality().str() == "2");
}

TEST_CASE("dependent sum keeps the total") {
    auto pt = trivial_groupoid();
    auto bc2 = one_object_groupoid(GroupTable::cyclic(2));
    auto y = family_over_point(pt, discrete_n(3));
    auto s = dep_sum(constant_map(pt, bc2, 0), y);
    CHECK(s.total->cardinality().str() == "3");
    CHECK(s.base.get() == bc2.get());
    CHECK(validate_map(s.proj).ok);
}

TEST_CASE("dependent product over two independent fibres multiplies") {
    auto base = discrete_n(2);
    auto pt = trivial_groupoid();
    auto total = discrete_n(5);
    GroupoidMap q;
    q.source = total;
    q.target = base;
    q.ob = {0, 0, 1, 1, 1};
    q.mor = q.ob;
    auto y = make_family(q);
    auto f = constant_map(base, pt, 0);

    DepProd dp(f, y, ProdMode::Auto, caps);
    CHECK(dp.discrete_mode());
    CHECK(dp.family().total->num_objects() == 6);
    CHECK(is_discrete(*dp.family().total));
    CHECK(dp.family().total->cardinality().str() == "6");
    CHECK(validate_map(dp.family().proj).ok);
}

TEST_CASE("dependent product along an identity returns the family") {
    auto bc2 = one_object_groupoid(GroupTable::cyclic(2));
    auto y = identity_family(bc2);
    DepProd dp(identity_map(bc2), y, ProdMode::Auto, caps);
    CHECK(dp.discrete_mode());
    CHECK(dp.family().total->cardinality().str() == "1/2");
    CHECK(equivalent(dp.family().total, bc2, caps).equivalent);
    CHECK(is_isofibration(dp.family().proj));
}

TEST_CASE("dependent product builds the wreath of the fibre choices") {
    auto pt = trivial_groupoid();
    auto bc2 = one_object_groupoid(GroupTable::cyclic(2));
    auto f = constant_map(pt, bc2, 0);

    SUBCASE("two-point fibre choices give pairs modulo swap") {
        auto y = family_over_point(pt, discrete_n(2));
        DepProd dp(f, y, ProdMode::Auto, caps);
        CHECK(dp.discrete_mode());
        CHECK(dp.family().total->num_objects() == 4);
        CHECK(dp.family().total->cardinality().str() == "2");
        CHECK(dp.family().total->num_components() == 3);
    }
    SUBCASE("group-valued choices give the wreath group") {
        auto y = family_over_point(pt, one_object_groupoid(GroupTable::cyclic(3)));
        DepProd dp(f, y, ProdMode::Auto, caps);
        CHECK(dp.family().total->num_objects() == 1);
        CHECK(dp.family().total->num_morphisms() == 18);
        CHECK(dp.family().total->cardinality().str() == "1/18");
        CHECK(validate_groupoid(*dp.family().total).ok);
        CHECK(is_isofibration(dp.family().proj));
    }
}

TEST_CASE("dependent product with looping fibres needs general sections") {
    auto pt = trivial_groupoid();
    auto bc2 = one_object_groupoid(GroupTable::cyclic(2));
    auto f = constant_map(bc2, pt, 0);
    auto y = identity_family(bc2);

    CHECK_THROWS_AS(DepProd(f, y, ProdMode::Discrete, caps), validation_error);

    DepProd dp(f, y, ProdMode::Auto, caps);
    CHECK_FALSE(dp.discrete_mode());
    CHECK(dp.family().total->num_objects() == 2);
    CHECK(dp.family().total->cardinality().str() == "1");
    CHECK(equivalent(dp.family().total, pt, caps).equivalent);
}

TEST_CASE("general and fast section models agree up to equivalence") {
    auto bc2 = one_object_groupoid(GroupTable::cyclic(2));
    auto bc4 = one_object_groupoid(GroupTable::cyclic(4));
    auto f = hom_map(bc2, bc4, {0, 2});
    auto y = identity_family(bc2);

    DepProd fast(f, y, ProdMode::Discrete, caps);
    DepProd full(f, y, ProdMode::General, caps);
    CHECK(fast.discrete_mode());
    CHECK_FALSE(full.discrete_mode());
    CHECK(fast.family().total->cardinality() == full.family().total->cardinality());
    CHECK(equivalent(fast.family().total, full.family().total, caps).equivalent);
    CHECK(is_isofibration(fast.family().proj));
    CHECK(is_isofibration(full.family().proj));

    auto pt = trivial_groupoid();
    auto f2 = constant_map(pt, bc2, 0);
    auto y2 = family_over_point(pt, discrete_n(2));
    DepProd fast2(f2, y2, ProdMode::Discrete, caps);
    DepProd full2(f2, y2, ProdMode::General, caps);
    CHECK(fast2.family().total->cardinality() == full2.family().total->cardinality());
    CHECK(equivalent(fast2.family().total, full2.family().total, caps).equivalent);
}

TEST_CASE("section fibre matches the groupoid of maps over the base") {
    auto pt = trivial_groupoid();
    auto bc2 = one_object_groupoid(GroupTable::cyclic(2));
    auto f = constant_map(pt, bc2, 0);
    auto y = family_over_point(pt, one_object_groupoid(GroupTable::cyclic(3)));

    DepProd dp(f, y, ProdMode::Auto, caps);

    // Vertical part over the base object, as a strict pullback with its name.
    auto vertical = strict_pullback(dp.family().proj, name_map(bc2, 0), caps);
    CHECK(vertical.apex->cardinality().str() == "1/9");

    // Same groupoid as maps-over-the-base from the fibre into the replaced family.
    FamilyOver vfam;
    vfam.base = f.source;
    vfam.total = dp.fibre(0).gpd;
    vfam.proj.source = vfam.total;
    vfam.proj.target = f.source;
    for (const auto& k : dp.fibre(0).obj_key) vfam.proj.ob.push_back(k[0]);
    for (const auto& k : dp.fibre(0).mor_key) vfam.proj.mor.push_back(k[1]);
    CHECK(validate_map(vfam.proj).ok);

    auto rep = factor_as_fibration(y.proj, caps);
    auto yhat = make_family(rep.fibration);
    auto slice = slice_mapping_groupoid(vfam, yhat, caps);
    CHECK(slice->cardinality().str() == "1/9");
    CHECK(equivalent(slice, vertical.apex, caps).equivalent);
}

TEST_CASE("dependent product bookkeeping is coherent") {
    auto bc2 = one_object_groupoid(GroupTable::cyclic(2));
    auto bc4 = one_object_groupoid(GroupTable::cyclic(4));
    auto f = hom_map(bc2, bc4, {0, 2});
    DepProd dp(f, identity_family(bc2), ProdMode::General, caps);

    const FinGroupoid& z = *dp.family().total;
    for (int m = 0; m < z.num_morphisms(); ++m) {
        const auto& zm = dp.z_morphism(m);
        CHECK(zm.src == z.src(m));
        CHECK(zm.tgt == z.tgt(m));
        CHECK(dp.find_z_morphism(zm.src, zm.tau, zm.delta) == m);
        CHECK(dp.family().proj.mor[m] == zm.tau);
    }
    for (int o = 0; o < z.num_objects(); ++o) {
        auto [a, s] = dp.z_key(o);
        CHECK(dp.z_object(a, s) == o);
        CHECK(dp.find_section(a, dp.section(a, s)) == s);
    }
    // Transports preserve the underlying object and reverse cleanly.
    const FinGroupoid& a4 = *bc4;
    for (int tau = 0; tau < a4.num_morphisms(); ++tau) {
        const auto& fib = dp.fibre(a4.src(tau));
        for (int o = 0; o < static_cast<int>(fib.obj_key.size()); ++o) {
            int to = dp.transport_obj(tau, o);
            CHECK(dp.fibre(a4.tgt(tau)).obj_key[to][0] == fib.obj_key[o][0]);
            CHECK(dp.transport_obj(a4.inverse(tau), to) == o);
        }
    }
}

TEST_CASE("families decompose into quotients of their fibres") {
    auto bc2 = one_object_groupoid(GroupTable::cyclic(2));

    SUBCASE("identity family over a one-object base") {
        auto d = fibre_decomposition(identity_family(bc2), caps);
        REQUIRE(d.pieces.size() == 1);
        CHECK(d.pieces[0].quot.g->cardinality().str() == "1/2");
        CHECK(d.sum->cardinality() == bc2->cardinality());
        CHECK(d.check.ok);
        CHECK(validate_map(d.reassemble).ok);
    }
    SUBCASE("double cover") {
        auto cov = double_cover();
        auto d = fibre_decomposition(cov.fam, caps);
        REQUIRE(d.pieces.size() == 1);
        CHECK(d.sum->cardinality() == cov.fam.total->cardinality());
        CHECK(d.check.ok);
    }
    SUBCASE("mixed base") {
        auto base = sum_groupoid({bc2, discrete_n(1)}).g;
        auto d = fibre_decomposition(identity_family(base), caps);
        REQUIRE(d.pieces.size() == 2);
        CHECK(d.sum->cardinality().str() == "3/2");
        CHECK(d.check.ok);
    }
}

TEST_CASE("summing a family through an intermediate base") {
    auto bc2 = one_object_groupoid(GroupTable::cyclic(2));

    SUBCASE("discrete intermediate") {
        auto base = discrete_n(2);
        GroupoidMap f = constant_map(base, bc2, 0);
        auto total = discrete_n(5);
        GroupoidMap q;
        q.source = total;
        q.target = base;
        q.ob = {0, 0, 1, 1, 1};
        q.mor = q.ob;
        auto rep = fubini_check(f, make_family(q), caps);
        CHECK(rep.total_card.str() == "5");
        CHECK(rep.grouped_card.str() == "5");
        CHECK(rep.cards_equal);
        CHECK(rep.witness_ok);
    }
    SUBCASE("identity intermediate") {
        auto rep = fubini_check(identity_map(bc2), identity_family(bc2), caps);
        CHECK(rep.total_card.str() == "1/2");
        CHECK(rep.cards_equal);
        CHECK(rep.witness_ok);
    }
    SUBCASE("covering intermediate") {
        auto cov = double_cover();
        auto rep = fubini_check(cov.q.proj, identity_family(cov.fam.total), caps);
        CHECK(rep.total_card.str() == "1");
        CHECK(rep.cards_equal);
        CHECK(rep.witness_ok);
    }
}
