#include "grpoly/checks.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

#include "grpoly/builders.hpp"
#include "grpoly/equivalence.hpp"
#include "grpoly/groups.hpp"
#include "grpoly/homotopy.hpp"
#include "grpoly/io.hpp"
#include "grpoly/polynomial.hpp"
#include "grpoly/species.hpp"
#include "grpoly/trees.hpp"

namespace grpoly {

namespace {

CheckResult pass(std::string name, std::string detail) {
    return CheckResult{std::move(name), true, std::move(detail)};
}

CheckResult failed(std::string name, std::string detail) {
    return CheckResult{std::move(name), false, std::move(detail)};
}

FamilyOver over_point(GroupoidPtr pt, GroupoidPtr total) {
    FamilyOver f;
    f.base = pt;
    f.total = total;
    f.proj = constant_map(total, pt, 0);
    return f;
}

// Fibrewise-doubled family: total = base x 2 under the first projection.
FamilyOver thick_family(GroupoidPtr base, const Caps& caps) {
    auto pr = product_groupoid(base, discrete_n(2), caps);
    FamilyOver f;
    f.base = base;
    f.total = pr.g;
    f.proj = pr.pr1;
    return f;
}

// Left multiplication on the cosets of the cyclic subgroup generated by h.
GroupAction coset_action(const GroupTable& grp, int h) {
    int n = grp.n;
    std::vector<char> in_h(n, 0);
    int cur = 0;
    while (!in_h[cur]) {
        in_h[cur] = 1;
        cur = grp.at(cur, h);
    }
    std::vector<int> coset_of(n, -1), reps;
    for (int x = 0; x < n; ++x) {
        if (coset_of[x] >= 0) continue;
        reps.push_back(x);
        for (int s = 0; s < n; ++s)
            if (in_h[s]) coset_of[grp.at(x, s)] = static_cast<int>(reps.size()) - 1;
    }
    int k = static_cast<int>(reps.size());
    std::vector<std::vector<int>> perms(n, std::vector<int>(k));
    for (int g = 0; g < n; ++g)
        for (int c = 0; c < k; ++c) perms[g][c] = coset_of[grp.at(g, reps[c])];
    return action_from_permutations(grp, discrete_n(k), perms);
}

GroupAction join_actions(const GroupTable& grp, const GroupAction& a,
                         const GroupAction& b) {
    int ka = a.space->num_objects(), kb = b.space->num_objects();
    std::vector<std::vector<int>> perms(grp.n, std::vector<int>(ka + kb));
    for (int g = 0; g < grp.n; ++g) {
        for (int i = 0; i < ka; ++i) perms[g][i] = a.ob[g][i];
        for (int i = 0; i < kb; ++i) perms[g][ka + i] = ka + b.ob[g][i];
    }
    return action_from_permutations(grp, discrete_n(ka + kb), perms);
}

int element_of_order(const GroupTable& g, int ord) {
    for (int a = 0; a < g.n; ++a)
        if (g.order_of(a) == ord) return a;
    throw validation_error("no element of the requested order");
}

}  // namespace

CheckResult check_fixtures(const std::string& data_dir, const Caps& caps) {
    const std::string name = "fixtures";
    LoadContext ctx;
    auto path = [&](const std::string& f) { return data_dir + "/" + f; };
    int files = 0;
    auto groupoid_ok = [&](const std::string& f) {
        ++files;
        auto g = load_groupoid_file(path(f), ctx);
        auto r = validate_groupoid(*g);
        if (!r.ok) throw validation_error(f + ": " + r.errors.front());
        return g;
    };
    try {
        auto bc2 = groupoid_ok("BC2.json");
        if (bc2->cardinality() != Rat(1, 2))
            return failed(name, "BC2.json cardinality is " + bc2->cardinality().str());
        groupoid_ok("BC3.json");
        groupoid_ok("point.json");
        groupoid_ok("discrete2.json");

        for (const char* f : {"pt_to_BC2.json", "double_cover.json"}) {
            ++files;
            auto m = load_map_file(path(f), ctx);
            auto r = validate_map(m);
            if (!r.ok) return failed(name, std::string(f) + ": " + r.errors.front());
        }
        // Shared references resolve to shared instances, so the two demo maps
        // compose into pullbacks directly. The loop space of BC2 has two points.
        auto ptm = load_map_file(path("pt_to_BC2.json"), ctx);
        auto loop = homotopy_pullback(ptm, ptm, caps);
        if (loop.apex->num_objects() != 2 || loop.apex->cardinality() != Rat(2))
            return failed(name, "loop space of the shipped BC2 is wrong");

        for (const char* f : {"identity.json", "multiset.json", "list.json",
                              "positive_list.json", "positive_multiset.json"}) {
            ++files;
            auto P = load_polynomial_file(path(f), ctx);
            auto r = validate_polynomial(P);
            if (!r.ok) return failed(name, std::string(f) + ": " + r.errors.front());
        }
        for (const char* f : {"multiset.json", "cyclic.json", "linear.json"}) {
            ++files;
            auto F = load_species_file(path(f), ctx);
            auto r = validate_species(F);
            if (!r.ok) return failed(name, std::string(f) + ": " + r.errors.front());
        }
        {
            auto F = load_species_file(path("multiset.json"), ctx);
            auto built = multiset_species(5);
            if (egf(F, caps) != egf(built, caps))
                return failed(name, "multiset.json disagrees with the builder");
        }
        for (const char* f : {"lists_to_cycles.json", "cycles_to_multisets.json"}) {
            ++files;
            auto sq = load_square_file(path(f), ctx);
            auto r = validate_square(sq);
            if (!r.ok) return failed(name, std::string(f) + ": " + r.errors.front());
        }
        {
            ++files;
            auto t = load_tree_file(path("tree_corolla2.json"));
            auto r = validate_tree(t);
            if (!r.ok) return failed(name, "tree_corolla2.json: " + r.errors.front());
            auto st = tree_stats(t);
            if (st.root != "r" || st.leaves.size() != 2)
                return failed(name, "tree_corolla2.json has the wrong shape");
        }
        for (const char* f : {"ptree_single.json", "ptree_chain2.json"}) {
            ++files;
            auto pt = load_ptree_file(path(f), ctx);
            auto r = validate_ptree(pt, caps);
            if (!r.ok) return failed(name, std::string(f) + ": " + r.errors.front());
            if (ptree_aut_order(pt, caps) != 1)
                return failed(name, std::string(f) + ": expected a rigid tree");
        }
        {
            ++files;
            auto act = load_action_file(path("flip_action.json"), ctx);
            auto r = validate_action(act);
            if (!r.ok) return failed(name, "flip_action.json: " + r.errors.front());
            auto q = homotopy_quotient(act, caps);
            if (q.g->cardinality() != Rat(1))
                return failed(name, "flip_action.json quotient is not a point's worth");
        }
    } catch (const validation_error& e) {
        return failed(name, e.what());
    } catch (const parse_error& e) {
        return failed(name, e.what());
    }
    return pass(name, std::to_string(files) + " files loaded and validated");
}

CheckResult check_quotient_cardinalities(const Caps& caps) {
    const std::string name = "quotient_cardinality";
    struct Case {
        std::string label;
        GroupTable grp;
        GroupAction act;
    };
    std::vector<Case> cases;
    auto add = [&](std::string label, const GroupTable& g, GroupAction a) {
        cases.push_back(Case{std::move(label), g, std::move(a)});
    };
    auto regular = [&](const GroupTable& g) { return coset_action(g, 0); };
    auto on_point = [&](const GroupTable& g) {
        // cosets of the whole group: a cyclic group collapses along a
        // generator, otherwise fold twice
        return trivial_action(g, trivial_groupoid());
    };

    GroupTable c1 = GroupTable::trivial(), c2 = GroupTable::cyclic(2);
    GroupTable c3 = GroupTable::cyclic(3), c4 = GroupTable::cyclic(4);
    GroupTable kl = GroupTable::klein(), c5 = GroupTable::cyclic(5);
    GroupTable c6 = GroupTable::cyclic(6), s3 = GroupTable::dihedral(3);

    add("c1_regular", c1, regular(c1));
    add("c2_point", c2, on_point(c2));  // one object, vertex group C2
    add("c2_regular", c2, regular(c2));  // free contractible total
    add("c2_mixed", c2, join_actions(c2, regular(c2), on_point(c2)));
    add("c3_point", c3, on_point(c3));
    add("c3_regular", c3, regular(c3));
    add("c3_mixed", c3, join_actions(c3, regular(c3), on_point(c3)));
    add("c4_point", c4, on_point(c4));
    add("c4_regular", c4, regular(c4));
    add("c4_halved", c4, coset_action(c4, element_of_order(c4, 2)));
    add("klein_point", kl, on_point(kl));
    add("klein_regular", kl, regular(kl));
    add("klein_halved", kl, coset_action(kl, element_of_order(kl, 2)));
    add("c5_point", c5, on_point(c5));
    add("c5_regular", c5, regular(c5));
    add("c6_regular", c6, regular(c6));
    add("c6_thirds", c6, coset_action(c6, element_of_order(c6, 2)));
    add("s3_regular", s3, regular(s3));
    add("s3_pairs", s3, coset_action(s3, element_of_order(s3, 3)));
    add("s3_triples", s3, coset_action(s3, element_of_order(s3, 2)));

    for (const auto& c : cases) {
        auto vr = validate_action(c.act);
        if (!vr.ok) return failed(name, c.label + ": " + vr.errors.front());
        auto q = homotopy_quotient(c.act, caps);
        Rat want = Rat(c.act.space->num_objects()) / Rat(c.grp.n);
        Rat got = q.g->cardinality();
        if (got != want)
            return failed(name, c.label + ": got " + got.str() + ", want " + want.str());
    }
    return pass(name, std::to_string(cases.size()) + " actions, orbit count exact");
}

CheckResult check_loop_spaces(const Caps& caps) {
    const std::string name = "loop_space";
    struct Case {
        std::string label;
        GroupTable grp;
    };
    for (const auto& c : {Case{"C2", GroupTable::cyclic(2)},
                          Case{"C3", GroupTable::cyclic(3)},
                          Case{"S3", GroupTable::symmetric(3)}}) {
        auto bg = one_object_groupoid(c.grp, "B" + c.label);
        auto f = name_map(bg, 0);
        auto pb = homotopy_pullback(f, f, caps);
        auto eq = equivalent(pb.apex, discrete_n(c.grp.n), caps);
        if (!eq.equivalent)
            return failed(name, c.label + ": " + eq.reason);
    }
    return pass(name, "3 groups, loops form the discrete group set");
}

CheckResult check_fibration_reduction(const Caps& caps) {
    const std::string name = "fibration_reduction";
    struct Case {
        std::string label;
        GroupoidMap p, g;
    };
    std::vector<Case> cases;

    auto flip = coset_action(GroupTable::cyclic(2), 0);  // free flip on two points
    auto fq = homotopy_quotient(flip, caps);
    cases.push_back({"flip_vs_name", fq.proj, name_map(fq.bg, 0)});
    cases.push_back({"flip_vs_id", fq.proj, identity_map(fq.bg)});

    auto triv2 = trivial_action(GroupTable::cyclic(2), trivial_groupoid());
    auto tq = homotopy_quotient(triv2, caps);
    cases.push_back({"point_mod_c2_vs_name", tq.proj, name_map(tq.bg, 0)});
    cases.push_back({"point_mod_c2_vs_self", tq.proj, tq.proj});

    auto bc2 = one_object_groupoid(GroupTable::cyclic(2), "BC2");
    auto prod = product_groupoid(bc2, discrete_n(2), caps);
    cases.push_back({"product_vs_name", prod.pr1, name_map(bc2, 0)});
    cases.push_back({"product_vs_id", prod.pr1, identity_map(bc2)});

    auto fact = factor_as_fibration(constant_map(discrete_n(2), bc2, 0), caps);
    cases.push_back({"replaced_cover_vs_name", fact.fibration, name_map(bc2, 0)});
    cases.push_back({"replaced_cover_vs_collapse", fact.fibration,
                     constant_map(discrete_n(3), bc2, 0)});

    auto bc3 = one_object_groupoid(GroupTable::cyclic(3), "BC3");
    auto fact3 = factor_as_fibration(name_map(bc3, 0), caps);
    cases.push_back({"replaced_point_vs_name", fact3.fibration, name_map(bc3, 0)});

    auto reg3 = coset_action(GroupTable::cyclic(3), 0);
    auto rq = homotopy_quotient(reg3, caps);
    cases.push_back({"free_c3_vs_id", rq.proj, identity_map(rq.bg)});

    for (const auto& c : cases) {
        if (!is_isofibration(c.p))
            return failed(name, c.label + ": the chosen map is not an isofibration");
        auto sp = strict_pullback(c.p, c.g, caps);
        auto hp = homotopy_pullback(c.p, c.g, caps);
        auto eq = equivalent(sp.apex, hp.apex, caps);
        if (!eq.equivalent) return failed(name, c.label + ": " + eq.reason);
    }
    return pass(name, std::to_string(cases.size()) +
                          " isofibrations, strict matches homotopy");
}

CheckResult check_canonical_egfs(const Caps& caps) {
    const std::string name = "canonical_egf";
    auto same = [&](const std::vector<Rat>& got, const std::vector<Rat>& want) {
        return got == want;
    };
    std::vector<Rat> ms = {Rat(1), Rat(1), Rat(1, 2), Rat(1, 6), Rat(1, 24), Rat(1, 120)};
    std::vector<Rat> cy = {Rat(0), Rat(1), Rat(1, 2), Rat(1, 3), Rat(1, 4), Rat(1, 5)};
    std::vector<Rat> li = {Rat(1), Rat(1), Rat(1), Rat(1), Rat(1), Rat(1)};
    if (!same(egf(multiset_species(5), caps), ms))
        return failed(name, "multiset coefficients drifted");
    if (!same(egf(cyclic_species(5), caps), cy))
        return failed(name, "cyclic coefficients drifted");
    if (!same(egf(linear_species(5), caps), li))
        return failed(name, "linear coefficients drifted");
    return pass(name, "3 canonical series exact at truncation 5");
}

CheckResult check_extension_values(const Caps& caps) {
    const std::string name = "extension_values";
    auto card_at = [&](const PolyDiagram& P, int k) {
        auto x = over_point(P.I, discrete_n(k));
        return extend(P, x, ProdMode::Auto, caps).total->cardinality();
    };
    for (int k = 0; k <= 2; ++k) {
        Rat kk(k);
        Rat lists(0), cycles(0), multis(0), pw(1);
        for (int j = 0; j <= 3; ++j) {
            lists += pw;
            multis += pw / factorial(j);
            if (j >= 1) cycles += pw / Rat(j);
            pw *= kk;
        }
        if (card_at(list_polynomial(3), k) != lists)
            return failed(name, "list at k=" + std::to_string(k));
        if (card_at(cyclic_polynomial(3), k) != cycles)
            return failed(name, "cyclic at k=" + std::to_string(k));
        if (card_at(multiset_polynomial(3), k) != multis)
            return failed(name, "multiset at k=" + std::to_string(k));
    }
    return pass(name, "list/cyclic/multiset on 0..2 points at truncation 3");
}

namespace {

Species pair_species() {
    // One structure on the empty set plus one symmetric structure on a pair.
    auto part = one_object_groupoid(GroupTable::cyclic(2), "sympair");
    auto sum = sum_groupoid({trivial_groupoid(), part}, "pairsp");
    Species F;
    F.truncation = 2;
    F.classifier = b_omega(2);
    F.total = sum.g;
    GroupoidMap m;
    m.source = sum.g;
    m.target = F.classifier.g;
    m.ob.assign(sum.g->num_objects(), -1);
    m.mor.assign(sum.g->num_morphisms(), -1);
    for (int x = 0; x < sum.g->num_objects(); ++x)
        m.ob[x] = sum.obj_key[x].first == 0 ? F.classifier.obj_of_size[0]
                                            : F.classifier.obj_of_size[2];
    for (int mm = 0; mm < sum.g->num_morphisms(); ++mm)
        m.mor[mm] = sum.g->is_identity(mm)
                        ? F.classifier.g->identity(m.ob[sum.g->src(mm)])
                        : F.classifier.perm_mor[2][1];  // the transposition
    F.map = m;
    return F;
}

std::vector<GroupoidPtr> round_trip_inputs() {
    return {discrete_n(0), discrete_n(1), discrete_n(2),
            one_object_groupoid(GroupTable::cyclic(2), "BC2")};
}

}  // namespace

CheckResult check_round_trips(const Caps& caps) {
    const std::string name = "round_trip";
    auto inputs = round_trip_inputs();

    struct PolyCase {
        std::string label;
        PolyDiagram P;
        int trunc;
    };
    std::vector<PolyCase> polys;
    polys.push_back({"identity", identity_polynomial(), 1});
    for (int n = 1; n <= 3; ++n) {
        polys.push_back({"multiset" + std::to_string(n), multiset_polynomial(n), n});
        polys.push_back({"list" + std::to_string(n), list_polynomial(n), n});
        polys.push_back({"cyclic" + std::to_string(n), cyclic_polynomial(n), n});
    }
    for (const auto& c : polys) {
        Species F = polynomial_to_species(c.P, c.trunc, caps);
        PolyDiagram back = species_to_polynomial(F, caps);
        for (auto& x : inputs) {
            auto ext1 = extend(c.P, over_point(c.P.I, x), ProdMode::Auto, caps);
            auto ext2 = extend(back, over_point(back.I, x), ProdMode::Auto, caps);
            auto eq = equivalent(ext1.total, ext2.total, caps);
            if (!eq.equivalent)
                return failed(name, c.label + " on " + x->name() + ": " + eq.reason);
        }
    }

    struct SpecCase {
        std::string label;
        Species F;
    };
    std::vector<SpecCase> specs;
    for (int n = 1; n <= 3; ++n) {
        specs.push_back({"multiset" + std::to_string(n), multiset_species(n)});
        specs.push_back({"cyclic" + std::to_string(n), cyclic_species(n)});
        specs.push_back({"linear" + std::to_string(n), linear_species(n)});
    }
    specs.push_back({"pair", pair_species()});
    for (const auto& c : specs) {
        PolyDiagram P = species_to_polynomial(c.F, caps);
        Species back = polynomial_to_species(P, c.F.truncation, caps);
        auto eq = equivalent(c.F.total, back.total, caps);
        if (!eq.equivalent) return failed(name, c.label + ": " + eq.reason);
        for (auto& x : inputs) {
            auto e1 = species_extension(c.F, x, caps);
            auto e2 = species_extension(back, x, caps);
            auto xeq = equivalent(e1, e2, caps);
            if (!xeq.equivalent)
                return failed(name, c.label + " on " + x->name() + ": " + xeq.reason);
        }
    }
    return pass(name, std::to_string(polys.size()) + " diagrams and " +
                          std::to_string(specs.size()) + " species agree both ways");
}

CheckResult check_beck_chevalley(const Caps& caps) {
    const std::string name = "beck_chevalley";
    struct Entry {
        std::string label;
        GroupoidMap phi, beta;
        bool thick_y = false, thick_x = false;
    };
    std::vector<Entry> es;
    auto pt = trivial_groupoid();
    auto d2 = discrete_n(2), d3 = discrete_n(3);
    auto bc2 = one_object_groupoid(GroupTable::cyclic(2), "BC2");
    auto bc3 = one_object_groupoid(GroupTable::cyclic(3), "BC3");

    es.push_back({"pt_pt", identity_map(pt), identity_map(pt)});
    es.push_back({"sets_over_pt", constant_map(d2, pt, 0), constant_map(d2, pt, 0), true});
    es.push_back({"bc2_over_pt", constant_map(bc2, pt, 0), constant_map(d2, pt, 0)});
    es.push_back({"mixed_over_pt", constant_map(d3, pt, 0), constant_map(bc2, pt, 0),
                  false, true});

    es.push_back({"loop_bc2", name_map(bc2, 0), name_map(bc2, 0)});
    es.push_back({"loop_bc2_thick", name_map(bc2, 0), name_map(bc2, 0), true});
    es.push_back({"cover_vs_point", constant_map(d2, bc2, 0), name_map(bc2, 0)});
    es.push_back({"cover_vs_cover", constant_map(d2, bc2, 0), constant_map(d2, bc2, 0),
                  false, true});
    es.push_back({"id_vs_point", identity_map(bc2), name_map(bc2, 0)});

    auto flip = coset_action(GroupTable::cyclic(2), 0);
    auto fq = homotopy_quotient(flip, caps);
    es.push_back({"quot_vs_point", fq.proj, name_map(fq.bg, 0)});
    es.push_back({"quot_vs_point_thick", fq.proj, name_map(fq.bg, 0), true});

    es.push_back({"loop_bc3", name_map(bc3, 0), name_map(bc3, 0)});
    es.push_back({"collapse3_vs_point", constant_map(d3, bc3, 0), name_map(bc3, 0)});
    es.push_back({"loop_bc3_thick", name_map(bc3, 0), name_map(bc3, 0), true, true});

    GroupoidMap swap2;
    swap2.source = d2;
    swap2.target = d2;
    swap2.ob = {1, 0};
    swap2.mor = {d2->identity(1), d2->identity(0)};
    es.push_back({"set_id_vs_point", identity_map(d2), name_map(d2, 0)});
    es.push_back({"set_disjoint", name_map(d2, 0), name_map(d2, 1)});
    es.push_back({"set_swap", swap2, identity_map(d2), true});
    es.push_back({"bc2_into_set", constant_map(bc2, d2, 0), name_map(d2, 0)});

    auto mix = sum_groupoid({pt, bc2}, "mix");
    es.push_back({"sum_disjoint", mix.inj[0], mix.inj[1]});
    es.push_back({"sum_loop", mix.inj[1], mix.inj[1], false, true});

    for (const auto& e : es) {
        auto sq = square_from_cospan(e.phi, e.beta, caps);
        FamilyOver on_y = e.thick_y ? thick_family(sq.Y, caps) : identity_family(sq.Y);
        FamilyOver on_x = e.thick_x ? thick_family(sq.X, caps) : identity_family(sq.X);
        auto rep = beck_chevalley_check(sq, on_y, on_x, caps);
        if (!rep.sum_ok)
            return failed(name, e.label + ": sum side " + rep.sum_left.str() + " vs " +
                                    rep.sum_right.str());
        if (!rep.prod_ok)
            return failed(name, e.label + ": section side " + rep.prod_left.str() +
                                    " vs " + rep.prod_right.str());
    }
    return pass(name, std::to_string(es.size()) + " cartesian squares, both laws");
}

CheckResult check_cartesian_chain(const Caps& caps) {
    const std::string name = "cartesian_chain";
    for (int n : {2, 3}) {
        for (bool second : {false, true}) {
            auto sq = second ? cycles_to_multisets_square(n) : lists_to_cycles_square(n);
            std::string label = (second ? "cycles_to_multisets@" : "lists_to_cycles@") +
                                std::to_string(n);
            auto vr = validate_square(sq);
            if (!vr.ok) return failed(name, label + ": " + vr.errors.front());
            if (!is_homotopy_cartesian(sq, caps))
                return failed(name, label + ": comparison functor is not an equivalence");
        }
    }
    return pass(name, "2 canonical squares homotopy cartesian at sizes 2 and 3");
}

CheckResult check_tree_enumeration(const Caps& caps) {
    const std::string name = "tree_enumeration";
    {
        auto cs = enumerate_ptrees(identity_polynomial(), 7, caps);
        if (cs.size() != 7)
            return failed(name, "identity gave " + std::to_string(cs.size()) +
                                    " classes, want 7");
        for (int i = 0; i < 7; ++i)
            if (cs[i].edges != i + 1 || cs[i].aut != 1)
                return failed(name, "identity class " + std::to_string(i) +
                                        " is not a rigid chain");
    }
    auto group_by_edges = [](const std::vector<PTreeClass>& cs) {
        std::map<int, std::vector<long>> m;
        for (const auto& c : cs) m[c.edges].push_back(c.aut);
        for (auto& [k, v] : m) std::sort(v.begin(), v.end());
        return m;
    };
    {
        auto mine = group_by_edges(enumerate_ptrees(positive_multiset_polynomial(5), 6, caps));
        for (const auto& r : naive_tree_oracle("abstract", 6)) {
            auto it = mine.find(r.edges);
            if (it == mine.end() || static_cast<long>(it->second.size()) != r.count ||
                it->second != r.auts)
                return failed(name, "multiset classes at " + std::to_string(r.edges) +
                                        " edges disagree with the direct count");
        }
    }
    {
        auto cs = enumerate_ptrees(positive_list_polynomial(5), 6, caps);
        for (const auto& c : cs)
            if (c.aut != 1)
                return failed(name, "planar class '" + c.form + "' has symmetry");
        auto mine = group_by_edges(cs);
        for (const auto& r : naive_tree_oracle("planar", 6)) {
            auto it = mine.find(r.edges);
            if (it == mine.end() || static_cast<long>(it->second.size()) != r.count)
                return failed(name, "planar classes at " + std::to_string(r.edges) +
                                        " edges disagree with the direct count");
        }
    }
    return pass(name, "identity chains 1..7, set and order flavors match the oracle");
}

CheckResult check_fubini(const Caps& caps) {
    const std::string name = "fubini";
    auto bc2 = one_object_groupoid(GroupTable::cyclic(2), "BC2");
    auto bc3 = one_object_groupoid(GroupTable::cyclic(3), "BC3");
    auto d2 = discrete_n(2), d3 = discrete_n(3);
    auto pt = trivial_groupoid();
    auto flip = coset_action(GroupTable::cyclic(2), 0);
    auto fq = homotopy_quotient(flip, caps);
    auto reg3 = coset_action(GroupTable::cyclic(3), 0);
    auto rq = homotopy_quotient(reg3, caps);
    auto prod = product_groupoid(bc2, d2, caps);
    auto mix = sum_groupoid({pt, bc2}, "mix");
    auto lin3 = lin(3, b_omega(3));

    struct GCase {
        std::string label;
        GroupoidMap f;
        FamilyOver y;
    };
    std::vector<GCase> gs;
    gs.push_back({"id_bc2", identity_map(bc2), identity_family(bc2)});
    gs.push_back({"flip_quot", fq.proj, identity_family(fq.g)});
    gs.push_back({"flip_quot_thick", fq.proj, thick_family(fq.g, caps)});
    gs.push_back({"collapse3", constant_map(d3, bc2, 0), identity_family(d3)});
    gs.push_back({"cover_thick", constant_map(d2, bc2, 0), thick_family(d2, caps)});
    gs.push_back({"point_in", constant_map(pt, bc2, 0), identity_family(pt)});
    gs.push_back({"orders_to_sets", lin3.to_sym, identity_family(lin3.g)});
    gs.push_back({"free_c3", rq.proj, identity_family(rq.g)});
    gs.push_back({"project", prod.pr1, identity_family(prod.g)});
    gs.push_back({"mix_collapse", constant_map(mix.g, pt, 0), thick_family(mix.g, caps)});
    for (const auto& c : gs) {
        auto rep = fubini_check(c.f, c.y, caps);
        if (!rep.cards_equal)
            return failed(name, c.label + ": " + rep.total_card.str() + " vs " +
                                    rep.grouped_card.str());
        if (!rep.witness_ok)
            return failed(name, c.label + ": reassembly is not an equivalence");
    }

    struct DCase {
        std::string label;
        FamilyOver x;
    };
    FamilyOver cover;
    cover.base = bc2;
    cover.total = d2;
    cover.proj = constant_map(d2, bc2, 0);
    std::vector<DCase> ds;
    ds.push_back({"id_bc2", identity_family(bc2)});
    ds.push_back({"thick_bc2", thick_family(bc2, caps)});
    ds.push_back({"cover", cover});
    ds.push_back({"flip_quot", make_family(fq.proj)});
    ds.push_back({"project", make_family(prod.pr1)});
    ds.push_back({"orders_to_sets", make_family(lin3.to_sym)});
    ds.push_back({"cycles_to_sets", make_family(c_omega(3, b_omega(3)).to_sym)});
    ds.push_back({"id_sets", identity_family(d3)});
    ds.push_back({"point_in_bc3", make_family(name_map(bc3, 0))});
    ds.push_back({"thick_sets", thick_family(d2, caps)});
    for (const auto& c : ds) {
        auto d = fibre_decomposition(c.x, caps);
        if (!d.check.ok) return failed(name, c.label + ": " + d.check.reason);
        if (d.sum->cardinality() != c.x.total->cardinality())
            return failed(name, c.label + ": piecewise total drifted");
    }
    return pass(name, "10 grouped sums and 10 fibre decompositions reassemble");
}

CheckResult check_composition(const Caps& caps) {
    const std::string name = "composition";
    struct Case {
        std::string label;
        PolyDiagram outer, inner;
    };
    std::vector<Case> cases;
    cases.push_back({"list.list", list_polynomial(2), list_polynomial(2)});
    cases.push_back({"multiset.multiset", multiset_polynomial(2), multiset_polynomial(2)});
    cases.push_back({"identity.multiset", identity_polynomial(), multiset_polynomial(2)});
    for (const auto& c : cases) {
        auto comp = compose1(c.outer, c.inner, caps);
        for (int k = 0; k <= 2; ++k) {
            auto x = discrete_n(k);
            auto one = extend(comp, over_point(comp.I, x), ProdMode::Auto, caps);
            auto inner_ext = extend(c.inner, over_point(c.inner.I, x), ProdMode::Auto, caps);
            auto mid = rebase_point_family(inner_ext, c.outer.I);
            auto two = extend(c.outer, mid, ProdMode::Auto, caps);
            if (one.total->cardinality() != two.total->cardinality())
                return failed(name, c.label + " at k=" + std::to_string(k) + ": " +
                                        one.total->cardinality().str() + " vs " +
                                        two.total->cardinality().str());
        }
    }
    return pass(name, "3 substitutions match staged evaluation on 0..2 points");
}

std::vector<CheckResult> run_check_suite(const std::string& data_dir, const Caps& caps) {
    std::vector<CheckResult> out;
    out.push_back(check_fixtures(data_dir, caps));
    out.push_back(check_quotient_cardinalities(caps));
    out.push_back(check_loop_spaces(caps));
    out.push_back(check_fibration_reduction(caps));
    out.push_back(check_canonical_egfs(caps));
    out.push_back(check_extension_values(caps));
    out.push_back(check_round_trips(caps));
    out.push_back(check_beck_chevalley(caps));
    out.push_back(check_cartesian_chain(caps));
    out.push_back(check_tree_enumeration(caps));
    out.push_back(check_fubini(caps));
    out.push_back(check_composition(caps));
    return out;
}

}  // namespace grpoly
