#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "grpoly/builders.hpp"
#include "grpoly/equivalence.hpp"
#include "grpoly/gmap.hpp"
#include "grpoly/groupoid.hpp"
#include "grpoly/groups.hpp"
#include "grpoly/mapping.hpp"
#include "grpoly/rational.hpp"

using namespace grpoly;

static Caps caps;

TEST_CASE("rational arithmetic and parsing") {
    CHECK(Rat(3, 6).str() == "1/2");
    CHECK(Rat(-4, 8).str() == "-1/2");
    CHECK(Rat(4, 2).str() == "2");
    CHECK((Rat(1, 2) + Rat(1, 3)).str() == "5/6");
    CHECK((Rat(1, 2) * Rat(2, 3)).str() == "1/3");
    CHECK((Rat(5) / Rat(10)).str() == "1/2");
    CHECK(Rat::parse("7/3") == Rat(7, 3));
    CHECK(Rat::parse("-2") == Rat(-2));
    CHECK(Rat::parse("0") == Rat(0));
    CHECK_THROWS_AS(Rat::parse("1/0"), validation_error);
    CHECK_THROWS_AS(Rat::parse("a/b"), parse_error);
    CHECK_THROWS_AS(Rat::parse("1/-2"), parse_error);
    CHECK(factorial(5).str() == "120");
    CHECK(factorial(0).str() == "1");
}

TEST_CASE("identifier syntax") {
    CHECK(valid_identifier("abc_09"));
    CHECK_FALSE(valid_identifier(""));
    CHECK_FALSE(valid_identifier("a-b"));
    CHECK_FALSE(valid_identifier("a b"));
    CHECK(padded_id("o", 3, 120) == "o003");
    CHECK(padded_id("m", 17, 18) == "m17");
    CHECK(padded_id("x", 0, 1) == "x0");
}

TEST_CASE("builder and validation on a hand-built group") {
    GroupoidBuilder b("c2");
    int pt = b.add_object("pt");
    int tau = b.add_morphism("tau", pt, pt);
    b.set_compose(tau, tau, b.identity_of(pt));
    auto g = b.finalize();
    CHECK(g->num_objects() == 1);
    CHECK(g->num_morphisms() == 2);
    CHECK(g->inverse(tau) == tau);
    CHECK(g->compose(tau, tau) == g->identity(pt));
    CHECK(g->cardinality().str() == "1/2");
    auto rep = validate_groupoid(*g);
    CHECK(rep.ok);
}

TEST_CASE("validation reports idempotent non-identity and missing inverse") {
    GroupoidBuilder b("broken");
    int pt = b.add_object("b");
    int tau = b.add_morphism("tau", pt, pt);
    b.set_compose(tau, tau, tau);
    auto g = b.finalize();
    auto rep = validate_groupoid(*g);
    CHECK_FALSE(rep.ok);
    bool saw_inverse = false, saw_idem = false;
    for (const auto& e : rep.errors) {
        if (e.find("no inverse") != std::string::npos && e.find("tau") != std::string::npos)
            saw_inverse = true;
        if (e.find("idempotent") != std::string::npos) saw_idem = true;
    }
    CHECK(saw_inverse);
    CHECK(saw_idem);
}

TEST_CASE("empty groupoid") {
    GroupoidBuilder b("empty");
    auto g = b.finalize();
    CHECK(g->num_objects() == 0);
    CHECK(g->num_components() == 0);
    CHECK(g->cardinality().str() == "0");
    CHECK(validate_groupoid(*g).ok);
}

TEST_CASE("group tables") {
    CHECK(GroupTable::trivial().valid());
    CHECK(GroupTable::cyclic(6).valid());
    CHECK(GroupTable::symmetric(4).valid());
    CHECK(GroupTable::klein().valid());
    CHECK(GroupTable::dihedral(3).valid());
    CHECK(GroupTable::symmetric(3).n == 6);
    CHECK(GroupTable::dihedral(4).n == 8);

    CHECK(groups_isomorphic(GroupTable::dihedral(3), GroupTable::symmetric(3)));
    CHECK(groups_isomorphic(GroupTable::product(GroupTable::cyclic(2), GroupTable::cyclic(3)),
                            GroupTable::cyclic(6)));
    CHECK_FALSE(groups_isomorphic(GroupTable::klein(), GroupTable::cyclic(4)));
    CHECK_FALSE(groups_isomorphic(GroupTable::cyclic(6), GroupTable::symmetric(3)));
    std::vector<int> iso;
    CHECK(groups_isomorphic(GroupTable::cyclic(4), GroupTable::cyclic(4), &iso));
    CHECK(iso[0] == 0);

    auto gens = minimal_generators(GroupTable::symmetric(3));
    CHECK(gens.size() == 2);
    CHECK(minimal_generators(GroupTable::cyclic(5)).size() == 1);
    CHECK(minimal_generators(GroupTable::trivial()).empty());
}

TEST_CASE("canonical builders") {
    auto d3 = discrete_n(3);
    CHECK(d3->num_objects() == 3);
    CHECK(d3->num_components() == 3);
    CHECK(d3->cardinality().str() == "3");

    auto bs3 = one_object_groupoid(GroupTable::symmetric(3));
    CHECK(bs3->cardinality().str() == "1/6");
    CHECK(static_cast<int>(bs3->loops(0).size()) == 6);
    CHECK(validate_groupoid(*bs3).ok);

    auto bc2 = one_object_groupoid(GroupTable::cyclic(2));
    auto s = sum_groupoid({d3, bc2});
    CHECK(s.g->num_objects() == 4);
    CHECK(s.g->cardinality().str() == "7/2");
    CHECK(validate_groupoid(*s.g).ok);
    for (const auto& inj : s.inj) CHECK(validate_map(inj).ok);

    auto p = product_groupoid(bc2, bc2, caps);
    CHECK(p.g->num_objects() == 1);
    CHECK(p.g->num_morphisms() == 4);
    CHECK(p.g->cardinality().str() == "1/4");
    CHECK(validate_groupoid(*p.g).ok);
    CHECK(validate_map(p.pr1).ok);
    CHECK(validate_map(p.pr2).ok);
    auto pa = aut_table(*p.g, 0, nullptr);
    CHECK(groups_isomorphic(pa, GroupTable::klein()));

    auto sub = full_subgroupoid(s.g, {0, 1}, "pair");
    CHECK(sub.g->num_objects() == 2);
    CHECK(sub.g->object_id(0) == s.g->object_id(0));
    CHECK(validate_map(sub.incl).ok);
}

TEST_CASE("functor and two-cell validation") {
    auto bc2 = one_object_groupoid(GroupTable::cyclic(2));
    auto id = identity_map(bc2);
    CHECK(validate_map(id).ok);
    auto cell = identity_cell(id);
    CHECK(validate_two_cell(cell).ok);

    // Non-functorial assignment: swap identity and the flip.
    GroupoidMap bad;
    bad.source = bad.target = bc2;
    bad.ob = {0};
    bad.mor = {1, 0};
    CHECK_FALSE(validate_map(bad).ok);

    auto bs3 = one_object_groupoid(GroupTable::symmetric(3));
    // Conjugation by a transposition is naturally isomorphic to the identity.
    std::vector<int> loops;
    aut_table(*bs3, 0, &loops);
    int t = loops[1];
    GroupoidMap conj;
    conj.source = conj.target = bs3;
    conj.ob = {0};
    conj.mor.resize(bs3->num_morphisms());
    for (int m = 0; m < bs3->num_morphisms(); ++m)
        conj.mor[m] = bs3->compose_chain({t, m, bs3->inverse(t)});
    CHECK(validate_map(conj).ok);
    auto nat = find_two_cell(conj, identity_map(bs3));
    REQUIRE(nat.has_value());
    CHECK(validate_two_cell(*nat).ok);
    CHECK(validate_two_cell(invert_cell(*nat)).ok);
}

TEST_CASE("equivalence recognition") {
    // Interval: two objects, one isomorphism between them.
    GroupoidBuilder jb("interval");
    int a = jb.add_object("a");
    int bb = jb.add_object("b");
    int f = jb.add_morphism("f", a, bb);
    int finv = jb.add_morphism("f_inv", bb, a);
    jb.set_compose(finv, f, jb.identity_of(a));
    jb.set_compose(f, finv, jb.identity_of(bb));
    auto j = jb.finalize();
    CHECK(validate_groupoid(*j).ok);
    CHECK(j->num_components() == 1);
    CHECK(j->cardinality().str() == "1");

    auto sk = skeleton(j);
    CHECK(sk.skeletal->num_objects() == 1);
    CHECK(validate_map(sk.incl).ok);
    CHECK(validate_map(sk.retr).ok);
    CHECK(validate_two_cell(sk.unit).ok);

    auto pt = trivial_groupoid();
    auto res = equivalent(j, pt, caps);
    CHECK(res.equivalent);
    REQUIRE(res.witness.has_value());
    CHECK(validate_map(res.witness->fwd).ok);
    CHECK(validate_map(res.witness->bwd).ok);
    CHECK(validate_two_cell(res.witness->cell_src).ok);
    CHECK(validate_two_cell(res.witness->cell_tgt).ok);

    auto bc2 = one_object_groupoid(GroupTable::cyclic(2));
    auto bc3 = one_object_groupoid(GroupTable::cyclic(3));
    auto r2 = equivalent(bc2, bc3, caps);
    CHECK_FALSE(r2.equivalent);
    CHECK_FALSE(r2.reason.empty());

    auto r3 = equivalent(discrete_n(2), discrete_n(3), caps);
    CHECK_FALSE(r3.equivalent);
    CHECK(r3.reason.find("components") != std::string::npos);

    auto bv4 = one_object_groupoid(GroupTable::klein());
    auto bc4 = one_object_groupoid(GroupTable::cyclic(4));
    auto r4 = equivalent(bv4, bc4, caps);
    CHECK_FALSE(r4.equivalent);

    auto bc6 = one_object_groupoid(GroupTable::cyclic(6));
    auto bs3 = one_object_groupoid(GroupTable::symmetric(3));
    CHECK_FALSE(equivalent(bc6, bs3, caps).equivalent);
    CHECK(equivalent(bs3, one_object_groupoid(GroupTable::dihedral(3)), caps).equivalent);

    // Equivalence is insensitive to fattening: two copies of one object.
    auto fat = sum_groupoid({bc2, bc3});
    auto fat2 = sum_groupoid({bc3, bc2});
    auto r5 = equivalent(fat.g, fat2.g, caps);
    CHECK(r5.equivalent);
    CHECK(validate_two_cell(r5.witness->cell_src).ok);
    CHECK(validate_two_cell(r5.witness->cell_tgt).ok);
}

TEST_CASE("is_equivalence_functor and quasi_inverse") {
    GroupoidBuilder jb("interval");
    int a = jb.add_object("a");
    int bb = jb.add_object("b");
    int f = jb.add_morphism("f", a, bb);
    int finv = jb.add_morphism("f_inv", bb, a);
    jb.set_compose(finv, f, jb.identity_of(a));
    jb.set_compose(f, finv, jb.identity_of(bb));
    auto j = jb.finalize();
    auto pt = trivial_groupoid();

    GroupoidMap incl;
    incl.source = pt;
    incl.target = j;
    incl.ob = {0};
    incl.mor = {j->identity(0)};
    CHECK(validate_map(incl).ok);
    CHECK(is_equivalence_functor(incl).ok);
    auto qi = quasi_inverse(incl);
    CHECK(validate_map(qi.psi).ok);
    CHECK(validate_two_cell(qi.eps).ok);
    CHECK(validate_two_cell(qi.eta).ok);

    auto bc2 = one_object_groupoid(GroupTable::cyclic(2));
    GroupoidMap crush = constant_map(bc2, pt, 0);
    CHECK(validate_map(crush).ok);
    auto chk = is_equivalence_functor(crush);
    CHECK_FALSE(chk.ok);
    CHECK(chk.reason.find("vertex") != std::string::npos);
    CHECK_THROWS_AS(quasi_inverse(crush), validation_error);

    GroupoidMap collapse = constant_map(discrete_n(2), pt, 0);
    auto chk2 = is_equivalence_functor(collapse);
    CHECK_FALSE(chk2.ok);
}

TEST_CASE("homotopy quotient") {
    // Trivial action of C2 on the point: quotient is the one-object C2 groupoid.
    auto pt = trivial_groupoid();
    auto act = trivial_action(GroupTable::cyclic(2), pt);
    CHECK(validate_action(act).ok);
    auto q = homotopy_quotient(act, caps);
    CHECK(validate_groupoid(*q.g).ok);
    CHECK(q.g->cardinality().str() == "1/2");
    CHECK(validate_map(q.proj).ok);
    CHECK(validate_map(q.incl).ok);

    // Free C3 rotation on three points: quotient has cardinality 1.
    auto d3 = discrete_n(3);
    std::vector<std::vector<int>> rot = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    auto act3 = action_from_permutations(GroupTable::cyclic(3), d3, rot);
    CHECK(validate_action(act3).ok);
    auto q3 = homotopy_quotient(act3, caps);
    CHECK(validate_groupoid(*q3.g).ok);
    CHECK(q3.g->num_components() == 1);
    CHECK(q3.g->cardinality().str() == "1");
    CHECK(equivalent(q3.g, trivial_groupoid(), caps).equivalent);

    // Natural S3 on three points: one orbit with stabilizer of order 2.
    auto s3 = GroupTable::symmetric(3);
    std::vector<std::vector<int>> perms;
    {
        std::vector<int> p = {0, 1, 2};
        do {
            perms.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
    }
    auto acts3 = action_from_permutations(s3, d3, perms);
    CHECK(validate_action(acts3).ok);
    auto qs3 = homotopy_quotient(acts3, caps);
    CHECK(validate_groupoid(*qs3.g).ok);
    CHECK(qs3.g->cardinality().str() == "1/2");

    // Exactness |X/G| = |X|/|G| across instances.
    auto check_exact = [&](const GroupAction& action) {
        auto qq = homotopy_quotient(action, caps);
        Rat lhs = qq.g->cardinality();
        Rat rhs = action.space->cardinality() / Rat(action.grp.n);
        CHECK(lhs == rhs);
    };
    check_exact(act);
    check_exact(act3);
    check_exact(acts3);
    check_exact(trivial_action(GroupTable::klein(), discrete_n(5)));
    check_exact(trivial_action(GroupTable::cyclic(4),
                               one_object_groupoid(GroupTable::cyclic(2))));
}

TEST_CASE("mapping groupoids") {
    auto bc2 = one_object_groupoid(GroupTable::cyclic(2));
    auto d2 = discrete_n(2);

    auto m1 = mapping_groupoid(d2, bc2, caps);
    CHECK(m1.gpd->num_objects() == 1);
    CHECK(m1.gpd->num_morphisms() == 4);
    CHECK(validate_groupoid(*m1.gpd).ok);
    for (const auto& f : m1.functors) CHECK(validate_map(f).ok);

    auto m2 = mapping_groupoid(bc2, d2, caps);
    CHECK(m2.gpd->num_objects() == 2);
    CHECK(m2.gpd->num_morphisms() == 2);
    CHECK(equivalent(m2.gpd, d2, caps).equivalent);

    auto bc3 = one_object_groupoid(GroupTable::cyclic(3));
    auto m3 = mapping_groupoid(bc2, bc3, caps);
    CHECK(m3.gpd->num_objects() == 1);
    CHECK(m3.gpd->cardinality().str() == "1/3");

    // Cells are genuinely natural.
    for (int m = 0; m < m1.gpd->num_morphisms(); ++m) {
        TwoCell c;
        c.lhs = m1.functors[m1.gpd->src(m)];
        c.rhs = m1.functors[m1.gpd->tgt(m)];
        c.comp = m1.cells[m];
        CHECK(validate_two_cell(c).ok);
    }

    // Functors BS3 -> BS3: endomorphisms of S3; 10 homs, pointwise conjugacy.
    auto bs3 = one_object_groupoid(GroupTable::symmetric(3));
    auto m4 = mapping_groupoid(bs3, bs3, caps);
    CHECK(m4.gpd->num_objects() == 10);
    CHECK(validate_groupoid(*m4.gpd).ok);
}

TEST_CASE("skeleton on multi-component groupoid") {
    auto bc2 = one_object_groupoid(GroupTable::cyclic(2));
    auto s = sum_groupoid({discrete_n(2), bc2});
    auto sk = skeleton(s.g);
    CHECK(sk.skeletal->num_objects() == 3);
    CHECK(validate_two_cell(sk.unit).ok);
    CHECK(sk.aut.size() == 3);
}
