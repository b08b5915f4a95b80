#include "grpoly/equivalence.hpp"

#include <algorithm>
#include <map>

#include "grpoly/builders.hpp"

namespace grpoly {

SkeletonData skeleton(GroupoidPtr g) {
    SkeletonData sk;
    sk.g = g;
    for (int c = 0; c < g->num_components(); ++c) sk.reps.push_back(g->component_rep(c));
    auto sub = full_subgroupoid(g, sk.reps, g->name() + "_skeleton");
    sk.skeletal = sub.g;
    sk.incl = sub.incl;

    std::vector<int> ob_to_sub(g->num_objects(), -1), mor_to_sub(g->num_morphisms(), -1);
    for (int x = 0; x < sk.skeletal->num_objects(); ++x) ob_to_sub[sk.incl.ob[x]] = x;
    for (int m = 0; m < sk.skeletal->num_morphisms(); ++m) mor_to_sub[sk.incl.mor[m]] = m;

    sk.retr.source = g;
    sk.retr.target = sk.skeletal;
    sk.retr.ob.resize(g->num_objects());
    sk.retr.mor.resize(g->num_morphisms());
    for (int x = 0; x < g->num_objects(); ++x)
        sk.retr.ob[x] = ob_to_sub[g->component_rep(g->component_of(x))];
    for (int m = 0; m < g->num_morphisms(); ++m) {
        int cx = g->connection(g->src(m)), cy = g->connection(g->tgt(m));
        int loop = g->compose_chain({g->inverse(cy), m, cx});
        sk.retr.mor[m] = mor_to_sub[loop];
    }

    sk.unit.lhs = compose_maps(sk.incl, sk.retr);
    sk.unit.rhs = identity_map(g);
    sk.unit.comp.resize(g->num_objects());
    for (int x = 0; x < g->num_objects(); ++x) sk.unit.comp[x] = g->connection(x);

    for (int c = 0; c < g->num_components(); ++c)
        sk.aut.push_back(aut_table(*g, sk.reps[c], nullptr));
    return sk;
}

EquivResult equivalent(GroupoidPtr a, GroupoidPtr b, const Caps& caps) {
    EquivResult res;
    SkeletonData sa = skeleton(a), sb = skeleton(b);
    int na = static_cast<int>(sa.reps.size()), nb = static_cast<int>(sb.reps.size());
    if (na != nb) {
        res.reason = "different number of connected components (" + std::to_string(na) +
                     " vs " + std::to_string(nb) + ")";
        return res;
    }
    for (const auto& t : sa.aut)
        if (t.n > caps.max_group_order)
            throw cap_error("equivalence check: vertex group order " + std::to_string(t.n) +
                            " exceeds cap " + std::to_string(caps.max_group_order));
    for (const auto& t : sb.aut)
        if (t.n > caps.max_group_order)
            throw cap_error("equivalence check: vertex group order " + std::to_string(t.n) +
                            " exceeds cap " + std::to_string(caps.max_group_order));

    {
        std::vector<int> oa, ob;
        for (const auto& t : sa.aut) oa.push_back(t.n);
        for (const auto& t : sb.aut) ob.push_back(t.n);
        auto pa = oa, pb = ob;
        std::sort(pa.begin(), pa.end());
        std::sort(pb.begin(), pb.end());
        if (pa != pb) {
            auto show = [](const std::vector<int>& v) {
                std::string s = "[";
                for (size_t i = 0; i < v.size(); ++i)
                    s += (i ? "," : "") + std::to_string(v[i]);
                return s + "]";
            };
            res.reason = "vertex group order multisets differ: " + show(pa) + " vs " + show(pb);
            return res;
        }
    }

    // Isomorphism classes among a's components; b's components must fill the
    // same classes with the same multiplicities.
    struct IsoClass {
        int rep_comp;             // component index in a
        std::vector<int> a_members, b_members;
        std::vector<std::vector<int>> b_isos;  // per b member: iso a_rep -> b aut
    };
    std::vector<IsoClass> classes;
    std::vector<int> class_of_a(na, -1);
    for (int c = 0; c < na; ++c) {
        bool placed = false;
        for (auto& cl : classes) {
            if (sa.aut[cl.rep_comp].n != sa.aut[c].n) continue;
            std::vector<int> iso;
            if (groups_isomorphic(sa.aut[cl.rep_comp], sa.aut[c], &iso)) {
                cl.a_members.push_back(c);
                class_of_a[c] = static_cast<int>(&cl - classes.data());
                placed = true;
                break;
            }
        }
        if (!placed) {
            IsoClass cl;
            cl.rep_comp = c;
            cl.a_members.push_back(c);
            class_of_a[c] = static_cast<int>(classes.size());
            classes.push_back(std::move(cl));
        }
    }
    for (int c = 0; c < nb; ++c) {
        bool placed = false;
        for (auto& cl : classes) {
            if (sa.aut[cl.rep_comp].n != sb.aut[c].n) continue;
            std::vector<int> iso;
            if (groups_isomorphic(sa.aut[cl.rep_comp], sb.aut[c], &iso)) {
                cl.b_members.push_back(c);
                cl.b_isos.push_back(std::move(iso));
                placed = true;
                break;
            }
        }
        if (!placed) {
            res.reason = "vertex group at '" + b->object_id(sb.reps[c]) +
                         "' (order " + std::to_string(sb.aut[c].n) +
                         ") matches no vertex group class of the other groupoid";
            return res;
        }
    }
    for (const auto& cl : classes) {
        if (cl.a_members.size() != cl.b_members.size()) {
            res.reason = "vertex groups of order " + std::to_string(sa.aut[cl.rep_comp].n) +
                         " split into isomorphism classes with different multiplicities (" +
                         std::to_string(cl.a_members.size()) + " vs " +
                         std::to_string(cl.b_members.size()) + ")";
            return res;
        }
    }

    // Pair components: i-th member of a class with i-th member of b's.
    // Compose isos a_member -> class_rep -> b_member at the group level.
    std::vector<int> match(na, -1);             // a component -> b component
    std::vector<std::vector<int>> iso_ab(na);   // a aut elt -> b aut elt
    for (auto& cl : classes) {
        for (size_t i = 0; i < cl.a_members.size(); ++i) {
            int ca = cl.a_members[i], cb = cl.b_members[i];
            std::vector<int> rep_to_a;
            if (!groups_isomorphic(sa.aut[cl.rep_comp], sa.aut[ca], &rep_to_a))
                throw validation_error("internal: class member lost its isomorphism");
            // invert rep_to_a, then apply rep -> b.
            std::vector<int> a_to_rep(rep_to_a.size());
            for (size_t e = 0; e < rep_to_a.size(); ++e) a_to_rep[rep_to_a[e]] = static_cast<int>(e);
            std::vector<int> comp(a_to_rep.size());
            for (size_t e = 0; e < comp.size(); ++e) comp[e] = cl.b_isos[i][a_to_rep[e]];
            match[ca] = cb;
            iso_ab[ca] = std::move(comp);
        }
    }

    // Skeletal functor from the per-component group isomorphisms.
    std::vector<std::vector<int>> loops_a(na), loops_b(nb);
    for (int c = 0; c < na; ++c) aut_table(*a, sa.reps[c], &loops_a[c]);
    for (int c = 0; c < nb; ++c) aut_table(*b, sb.reps[c], &loops_b[c]);

    std::vector<int> a_mor_to_sub(a->num_morphisms(), -1), b_mor_to_sub(b->num_morphisms(), -1);
    for (int m = 0; m < sa.skeletal->num_morphisms(); ++m) a_mor_to_sub[sa.incl.mor[m]] = m;
    for (int m = 0; m < sb.skeletal->num_morphisms(); ++m) b_mor_to_sub[sb.incl.mor[m]] = m;

    GroupoidMap phi, phi_inv;
    phi.source = sa.skeletal;
    phi.target = sb.skeletal;
    phi.ob.assign(sa.skeletal->num_objects(), -1);
    phi.mor.assign(sa.skeletal->num_morphisms(), -1);
    phi_inv.source = sb.skeletal;
    phi_inv.target = sa.skeletal;
    phi_inv.ob.assign(sb.skeletal->num_objects(), -1);
    phi_inv.mor.assign(sb.skeletal->num_morphisms(), -1);
    std::vector<int> sub_oa(na), sub_ob(nb);
    for (int c = 0; c < na; ++c) sub_oa[c] = sa.skeletal->object_index(a->object_id(sa.reps[c]));
    for (int c = 0; c < nb; ++c) sub_ob[c] = sb.skeletal->object_index(b->object_id(sb.reps[c]));
    for (int c = 0; c < na; ++c) {
        int cb = match[c];
        phi.ob[sub_oa[c]] = sub_ob[cb];
        phi_inv.ob[sub_ob[cb]] = sub_oa[c];
        for (size_t e = 0; e < loops_a[c].size(); ++e) {
            int ma = a_mor_to_sub[loops_a[c][e]];
            int mb = b_mor_to_sub[loops_b[cb][iso_ab[c][e]]];
            phi.mor[ma] = mb;
            phi_inv.mor[mb] = ma;
        }
    }

    EquivWitness w;
    w.fwd = compose_maps(sb.incl, compose_maps(phi, sa.retr));
    w.bwd = compose_maps(sa.incl, compose_maps(phi_inv, sb.retr));
    w.cell_src.lhs = compose_maps(w.bwd, w.fwd);
    w.cell_src.rhs = identity_map(a);
    w.cell_src.comp = sa.unit.comp;
    w.cell_tgt.lhs = compose_maps(w.fwd, w.bwd);
    w.cell_tgt.rhs = identity_map(b);
    w.cell_tgt.comp = sb.unit.comp;

    res.equivalent = true;
    res.witness = std::move(w);
    return res;
}

}  // namespace grpoly
