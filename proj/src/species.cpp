#include "grpoly/species.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace grpoly {

namespace {

std::vector<std::vector<int>> all_perms(int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> p(k);
    std::iota(p.begin(), p.end(), 0);
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Target restricted to a full subgroupoid the image is known to land in.
GroupoidMap restrict_target(const GroupoidMap& f, const SubResult& sub) {
    std::vector<int> robj(f.target->num_objects(), -1);
    std::vector<int> rmor(f.target->num_morphisms(), -1);
    for (size_t i = 0; i < sub.incl.ob.size(); ++i) robj[sub.incl.ob[i]] = static_cast<int>(i);
    for (size_t i = 0; i < sub.incl.mor.size(); ++i) rmor[sub.incl.mor[i]] = static_cast<int>(i);
    GroupoidMap out;
    out.source = f.source;
    out.target = sub.g;
    out.ob.resize(f.ob.size());
    for (size_t o = 0; o < f.ob.size(); ++o) {
        out.ob[o] = robj[f.ob[o]];
        if (out.ob[o] < 0) throw std::logic_error("restrict_target: image escapes the subgroupoid");
    }
    out.mor.resize(f.mor.size());
    for (size_t m = 0; m < f.mor.size(); ++m) {
        out.mor[m] = rmor[f.mor[m]];
        if (out.mor[m] < 0) throw std::logic_error("restrict_target: image escapes the subgroupoid");
    }
    return out;
}

TwoCell identity_components_cell(const GroupoidMap& lhs, const GroupoidMap& rhs) {
    TwoCell c;
    c.lhs = lhs;
    c.rhs = rhs;
    c.comp.resize(lhs.ob.size());
    for (size_t o = 0; o < lhs.ob.size(); ++o) c.comp[o] = lhs.target->identity(lhs.ob[o]);
    return c;
}

PolyDiagram one_variable_diagram(GroupoidPtr E, GroupoidPtr B, GroupoidMap p,
                                 GroupoidPtr I, GroupoidPtr J, int truncation) {
    PolyDiagram P;
    P.I = std::move(I);
    P.J = std::move(J);
    P.E = std::move(E);
    P.B = std::move(B);
    P.s = constant_map(P.E, P.I, 0);
    P.p = std::move(p);
    P.t = constant_map(P.B, P.J, 0);
    P.truncation = truncation;
    return P;
}

}  // namespace

int perm_rank(const std::vector<int>& p) {
    int n = static_cast<int>(p.size());
    int rank = 0;
    for (int i = 0; i < n; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (p[j] < p[i]) ++smaller;
        int f = 1;
        for (int v = 2; v <= n - 1 - i; ++v) f *= v;
        rank += smaller * f;
    }
    return rank;
}

SymGroupoid b_omega(int n) {
    if (n < 0) throw validation_error("b_omega: negative truncation");
    if (n > 5) throw validation_error("b_omega: truncation above 5 is not supported");
    SymGroupoid res;
    res.truncation = n;
    res.obj_of_size.resize(n + 1);
    res.perm_mor.resize(n + 1);
    GroupoidBuilder bld("b_omega");
    for (int k = 0; k <= n; ++k)
        res.obj_of_size[k] = bld.add_object("s" + std::to_string(k));
    for (int k = 0; k <= n; ++k) {
        auto perms = all_perms(k);
        res.perm_mor[k].resize(perms.size());
        res.perm_mor[k][0] = bld.identity_of(res.obj_of_size[k]);
        for (size_t r = 1; r < perms.size(); ++r) {
            std::string id = "g" + std::to_string(k) + "_";
            for (int v : perms[r]) id += std::to_string(v);
            res.perm_mor[k][r] =
                bld.add_morphism(id, res.obj_of_size[k], res.obj_of_size[k]);
        }
        auto tab = GroupTable::symmetric(k);
        for (int a = 0; a < tab.n; ++a)
            for (int b = 0; b < tab.n; ++b)
                bld.set_compose(res.perm_mor[k][a], res.perm_mor[k][b],
                                res.perm_mor[k][tab.at(a, b)]);
    }
    res.g = bld.finalize();
    return res;
}

PointedSymGroupoid b_omega_pointed(int n, const SymGroupoid& base) {
    if (n != base.truncation)
        throw validation_error("b_omega_pointed: truncation mismatch with the base");
    PointedSymGroupoid res;
    res.truncation = n;
    res.obj_of_size.assign(n + 1, -1);
    res.perm_mor.resize(n + 1);
    GroupoidBuilder bld("b_omega_pointed");
    for (int k = 1; k <= n; ++k)
        res.obj_of_size[k] = bld.add_object("t" + std::to_string(k));
    for (int k = 1; k <= n; ++k) {
        auto perms = all_perms(k - 1);
        res.perm_mor[k].resize(perms.size());
        res.perm_mor[k][0] = bld.identity_of(res.obj_of_size[k]);
        for (size_t r = 1; r < perms.size(); ++r) {
            std::string id = "h" + std::to_string(k) + "_";
            for (int v : perms[r]) id += std::to_string(v);
            res.perm_mor[k][r] =
                bld.add_morphism(id, res.obj_of_size[k], res.obj_of_size[k]);
        }
        auto tab = GroupTable::symmetric(k - 1);
        for (int a = 0; a < tab.n; ++a)
            for (int b = 0; b < tab.n; ++b)
                bld.set_compose(res.perm_mor[k][a], res.perm_mor[k][b],
                                res.perm_mor[k][tab.at(a, b)]);
    }
    res.g = bld.finalize();
    res.proj.source = res.g;
    res.proj.target = base.g;
    res.proj.ob.assign(res.g->num_objects(), -1);
    res.proj.mor.assign(res.g->num_morphisms(), -1);
    for (int k = 1; k <= n; ++k) {
        res.proj.ob[res.obj_of_size[k]] = base.obj_of_size[k];
        auto perms = all_perms(k - 1);
        for (size_t r = 0; r < perms.size(); ++r) {
            std::vector<int> emb(k);
            emb[0] = 0;
            for (int i = 1; i < k; ++i) emb[i] = perms[r][i - 1] + 1;
            res.proj.mor[res.perm_mor[k][r]] = base.perm_mor[k][perm_rank(emb)];
        }
    }
    return res;
}

CycGroupoid c_omega(int n, const SymGroupoid& base) {
    if (n != base.truncation)
        throw validation_error("c_omega: truncation mismatch with the base");
    CycGroupoid res;
    res.truncation = n;
    res.obj_of_size.assign(n + 1, -1);
    res.rot_mor.resize(n + 1);
    GroupoidBuilder bld("c_omega");
    for (int k = 1; k <= n; ++k)
        res.obj_of_size[k] = bld.add_object_with_identity(
            "c" + std::to_string(k), "r" + std::to_string(k) + "_0");
    for (int k = 1; k <= n; ++k) {
        res.rot_mor[k].resize(k);
        res.rot_mor[k][0] = bld.identity_of(res.obj_of_size[k]);
        for (int j = 1; j < k; ++j)
            res.rot_mor[k][j] =
                bld.add_morphism("r" + std::to_string(k) + "_" + std::to_string(j),
                                 res.obj_of_size[k], res.obj_of_size[k]);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                bld.set_compose(res.rot_mor[k][a], res.rot_mor[k][b],
                                res.rot_mor[k][(a + b) % k]);
    }
    res.g = bld.finalize();
    res.to_sym.source = res.g;
    res.to_sym.target = base.g;
    res.to_sym.ob.assign(res.g->num_objects(), -1);
    res.to_sym.mor.assign(res.g->num_morphisms(), -1);
    for (int k = 1; k <= n; ++k) {
        res.to_sym.ob[res.obj_of_size[k]] = base.obj_of_size[k];
        for (int j = 0; j < k; ++j) {
            std::vector<int> rot(k);
            for (int i = 0; i < k; ++i) rot[i] = (i + j) % k;
            res.to_sym.mor[res.rot_mor[k][j]] = base.perm_mor[k][perm_rank(rot)];
        }
    }
    return res;
}

PointedCycGroupoid c_omega_pointed(int n, const CycGroupoid& base) {
    if (n != base.truncation)
        throw validation_error("c_omega_pointed: truncation mismatch with the base");
    PointedCycGroupoid res;
    res.obj_of_size.assign(n + 1, -1);
    GroupoidBuilder bld("c_omega_pointed");
    for (int k = 1; k <= n; ++k)
        res.obj_of_size[k] = bld.add_object("d" + std::to_string(k));
    res.g = bld.finalize();
    res.proj.source = res.g;
    res.proj.target = base.g;
    res.proj.ob.assign(res.g->num_objects(), -1);
    res.proj.mor.assign(res.g->num_morphisms(), -1);
    for (int k = 1; k <= n; ++k) {
        res.proj.ob[res.obj_of_size[k]] = base.obj_of_size[k];
        res.proj.mor[res.g->identity(res.obj_of_size[k])] =
            base.g->identity(base.obj_of_size[k]);
    }
    return res;
}

LinGroupoid lin(int n, const SymGroupoid& base) {
    if (n != base.truncation)
        throw validation_error("lin: truncation mismatch with the base");
    LinGroupoid res;
    res.obj_of_size.resize(n + 1);
    GroupoidBuilder bld("lin");
    for (int k = 0; k <= n; ++k)
        res.obj_of_size[k] = bld.add_object("l" + std::to_string(k));
    res.g = bld.finalize();
    res.to_sym.source = res.g;
    res.to_sym.target = base.g;
    res.to_sym.ob.resize(res.g->num_objects());
    res.to_sym.mor.resize(res.g->num_morphisms());
    for (int k = 0; k <= n; ++k) {
        res.to_sym.ob[res.obj_of_size[k]] = base.obj_of_size[k];
        res.to_sym.mor[res.g->identity(res.obj_of_size[k])] =
            base.g->identity(base.obj_of_size[k]);
    }
    return res;
}

PointedLinGroupoid lin_pointed(int n, const LinGroupoid& base) {
    PointedLinGroupoid res;
    res.obj_of.assign(n + 1, {});
    GroupoidBuilder bld("lin_pointed");
    for (int k = 1; k <= n; ++k) {
        res.obj_of[k].resize(k);
        for (int i = 0; i < k; ++i)
            res.obj_of[k][i] = bld.add_object("m" + std::to_string(k) + "_" +
                                              std::to_string(i));
    }
    res.g = bld.finalize();
    res.proj.source = res.g;
    res.proj.target = base.g;
    res.proj.ob.assign(res.g->num_objects(), -1);
    res.proj.mor.assign(res.g->num_morphisms(), -1);
    for (int k = 1; k <= n; ++k)
        for (int i = 0; i < k; ++i) {
            res.proj.ob[res.obj_of[k][i]] = base.obj_of_size[k];
            res.proj.mor[res.g->identity(res.obj_of[k][i])] =
                base.g->identity(base.obj_of_size[k]);
        }
    return res;
}

PolyDiagram multiset_polynomial(int n) {
    auto base = b_omega(n);
    auto ptd = b_omega_pointed(n, base);
    return one_variable_diagram(ptd.g, base.g, ptd.proj, trivial_groupoid(),
                                trivial_groupoid(), n);
}

PolyDiagram positive_multiset_polynomial(int n) {
    auto base = b_omega(n);
    auto ptd = b_omega_pointed(n, base);
    std::vector<int> keep;
    for (int k = 1; k <= n; ++k) keep.push_back(base.obj_of_size[k]);
    auto sub = full_subgroupoid(base.g, keep, "b_omega_pos");
    return one_variable_diagram(ptd.g, sub.g, restrict_target(ptd.proj, sub),
                                trivial_groupoid(), trivial_groupoid(), n);
}

PolyDiagram list_polynomial(int n) {
    auto base = b_omega(n);
    auto ln = lin(n, base);
    auto ptd = lin_pointed(n, ln);
    return one_variable_diagram(ptd.g, ln.g, ptd.proj, trivial_groupoid(),
                                trivial_groupoid(), n);
}

PolyDiagram positive_list_polynomial(int n) {
    auto base = b_omega(n);
    auto ln = lin(n, base);
    auto ptd = lin_pointed(n, ln);
    std::vector<int> keep;
    for (int k = 1; k <= n; ++k) keep.push_back(ln.obj_of_size[k]);
    auto sub = full_subgroupoid(ln.g, keep, "lin_pos");
    return one_variable_diagram(ptd.g, sub.g, restrict_target(ptd.proj, sub),
                                trivial_groupoid(), trivial_groupoid(), n);
}

PolyDiagram cyclic_polynomial(int n) {
    auto base = b_omega(n);
    auto cyc = c_omega(n, base);
    auto ptd = c_omega_pointed(n, cyc);
    return one_variable_diagram(ptd.g, cyc.g, ptd.proj, trivial_groupoid(),
                                trivial_groupoid(), n);
}

PolySquare lists_to_cycles_square(int n) {
    if (n < 1) throw validation_error("lists_to_cycles_square: truncation must be positive");
    auto I = trivial_groupoid();
    auto J = trivial_groupoid();
    auto base = b_omega(n);

    auto cyc = c_omega(n, base);
    auto cycp = c_omega_pointed(n, cyc);
    auto ln = lin(n, base);
    auto lnp = lin_pointed(n, ln);
    std::vector<int> keep;
    for (int k = 1; k <= n; ++k) keep.push_back(ln.obj_of_size[k]);
    auto sub = full_subgroupoid(ln.g, keep, "lin_pos");

    PolySquare sq;
    sq.to = one_variable_diagram(cycp.g, cyc.g, cycp.proj, I, J, n);
    sq.from = one_variable_diagram(lnp.g, sub.g, restrict_target(lnp.proj, sub), I, J, n);

    // size of each positive shape, recovered through the inclusion
    std::vector<int> size_of_sub(sub.g->num_objects(), -1);
    for (int o = 0; o < sub.g->num_objects(); ++o)
        for (int k = 1; k <= n; ++k)
            if (sub.incl.ob[o] == ln.obj_of_size[k]) size_of_sub[o] = k;

    sq.eMap.source = lnp.g;
    sq.eMap.target = cycp.g;
    sq.eMap.ob.assign(lnp.g->num_objects(), -1);
    sq.eMap.mor.assign(lnp.g->num_morphisms(), -1);
    sq.bMap.source = sub.g;
    sq.bMap.target = cyc.g;
    sq.bMap.ob.assign(sub.g->num_objects(), -1);
    sq.bMap.mor.assign(sub.g->num_morphisms(), -1);
    for (int o = 0; o < sub.g->num_objects(); ++o) {
        sq.bMap.ob[o] = cyc.obj_of_size[size_of_sub[o]];
        sq.bMap.mor[sub.g->identity(o)] = cyc.g->identity(sq.bMap.ob[o]);
    }
    std::vector<int> mid_comp(lnp.g->num_objects(), -1);
    for (int k = 1; k <= n; ++k)
        for (int i = 0; i < k; ++i) {
            int o = lnp.obj_of[k][i];
            sq.eMap.ob[o] = cycp.obj_of_size[k];
            sq.eMap.mor[lnp.g->identity(o)] = cycp.g->identity(cycp.obj_of_size[k]);
            mid_comp[o] = cyc.rot_mor[k][i];
        }
    sq.mid.lhs = compose_maps(sq.to.p, sq.eMap);
    sq.mid.rhs = compose_maps(sq.bMap, sq.from.p);
    sq.mid.comp = mid_comp;
    sq.cellI = identity_components_cell(compose_maps(sq.to.s, sq.eMap), sq.from.s);
    sq.cellJ = identity_components_cell(compose_maps(sq.to.t, sq.bMap), sq.from.t);
    return sq;
}

PolySquare cycles_to_multisets_square(int n) {
    if (n < 1) throw validation_error("cycles_to_multisets_square: truncation must be positive");
    auto I = trivial_groupoid();
    auto J = trivial_groupoid();
    auto base = b_omega(n);
    auto ptd = b_omega_pointed(n, base);
    auto cyc = c_omega(n, base);
    auto cycp = c_omega_pointed(n, cyc);

    PolySquare sq;
    sq.to = one_variable_diagram(ptd.g, base.g, ptd.proj, I, J, n);
    sq.from = one_variable_diagram(cycp.g, cyc.g, cycp.proj, I, J, n);

    sq.eMap.source = cycp.g;
    sq.eMap.target = ptd.g;
    sq.eMap.ob.assign(cycp.g->num_objects(), -1);
    sq.eMap.mor.assign(cycp.g->num_morphisms(), -1);
    for (int k = 1; k <= n; ++k) {
        sq.eMap.ob[cycp.obj_of_size[k]] = ptd.obj_of_size[k];
        sq.eMap.mor[cycp.g->identity(cycp.obj_of_size[k])] =
            ptd.g->identity(ptd.obj_of_size[k]);
    }
    sq.bMap = cyc.to_sym;
    sq.mid = identity_components_cell(compose_maps(sq.to.p, sq.eMap),
                                      compose_maps(sq.bMap, sq.from.p));
    sq.cellI = identity_components_cell(compose_maps(sq.to.s, sq.eMap), sq.from.s);
    sq.cellJ = identity_components_cell(compose_maps(sq.to.t, sq.bMap), sq.from.t);
    return sq;
}

ValidationReport validate_species(const Species& F) {
    ValidationReport rep;
    if (!F.total || !F.classifier.g) {
        rep.ok = false;
        rep.errors.push_back("species is missing a groupoid");
        return rep;
    }
    if (F.truncation != F.classifier.truncation) {
        rep.ok = false;
        rep.errors.push_back("species truncation disagrees with its classifier");
    }
    rep.merge(validate_groupoid(*F.total));
    if (F.map.source.get() != F.total.get() ||
        F.map.target.get() != F.classifier.g.get()) {
        rep.ok = false;
        rep.errors.push_back("size map endpoints are wrong");
        return rep;
    }
    rep.merge(validate_map(F.map));
    return rep;
}

Species multiset_species(int n) {
    Species F;
    F.truncation = n;
    F.classifier = b_omega(n);
    F.total = F.classifier.g;
    F.map = identity_map(F.classifier.g);
    return F;
}

Species cyclic_species(int n) {
    Species F;
    F.truncation = n;
    F.classifier = b_omega(n);
    auto cyc = c_omega(n, F.classifier);
    F.total = cyc.g;
    F.map = cyc.to_sym;
    return F;
}

Species linear_species(int n) {
    Species F;
    F.truncation = n;
    F.classifier = b_omega(n);
    auto ln = lin(n, F.classifier);
    F.total = ln.g;
    F.map = ln.to_sym;
    return F;
}

std::vector<Rat> egf(const Species& F, const Caps& caps) {
    std::vector<Rat> out;
    Rat fact(1);
    for (int k = 0; k <= F.truncation; ++k) {
        if (k > 0) fact = fact * Rat(k);
        auto fib = homotopy_fibre(F.map, F.classifier.obj_of_size[k], caps);
        out.push_back(fib.gpd->cardinality() / fact);
    }
    return out;
}

PowerResult power_groupoid(GroupoidPtr x, int k, const Caps& caps) {
    if (k < 0) throw validation_error("power_groupoid: negative exponent");
    const FinGroupoid& X = *x;
    long no = 1, nm = 1;
    for (int i = 0; i < k; ++i) {
        no *= X.num_objects();
        nm *= X.num_morphisms();
        check_object_cap(no, caps, "power_groupoid");
        check_morphism_cap(nm, caps, "power_groupoid");
        if (no == 0) {
            nm = 0;
            break;
        }
    }
    PowerResult res;
    GroupoidBuilder bld("power");
    if (no > 0) {
        std::vector<int> t(k, 0);
        for (long idx = 0; idx < no; ++idx) {
            res.obj_idx[t] = bld.add_object(padded_id("o", static_cast<int>(idx),
                                                       static_cast<int>(no)));
            res.obj_key.push_back(t);
            for (int i = k - 1; i >= 0; --i) {
                if (++t[i] < X.num_objects()) break;
                t[i] = 0;
            }
        }
        res.mor_key.resize(nm);
        std::vector<int> m(k, 0);
        for (long idx = 0; idx < nm; ++idx) {
            std::vector<int> st(k), tt(k);
            bool ident = true;
            for (int i = 0; i < k; ++i) {
                st[i] = X.src(m[i]);
                tt[i] = X.tgt(m[i]);
                ident = ident && X.is_identity(m[i]);
            }
            int mi;
            if (ident) {
                mi = bld.identity_of(res.obj_idx.at(st));
            } else {
                mi = bld.add_morphism(padded_id("m", static_cast<int>(idx),
                                                static_cast<int>(nm)),
                                      res.obj_idx.at(st), res.obj_idx.at(tt));
            }
            res.mor_idx[m] = mi;
            res.mor_key[mi] = m;
            for (int i = k - 1; i >= 0; --i) {
                if (++m[i] < X.num_morphisms()) break;
                m[i] = 0;
            }
        }
        for (long a = 0; a < nm; ++a)
            for (long b = 0; b < nm; ++b) {
                if (bld.src(static_cast<int>(a)) != bld.tgt(static_cast<int>(b))) continue;
                std::vector<int> c(k);
                for (int i = 0; i < k; ++i)
                    c[i] = X.compose(res.mor_key[a][i], res.mor_key[b][i]);
                bld.set_compose(static_cast<int>(a), static_cast<int>(b),
                                res.mor_idx.at(c));
            }
    }
    res.g = bld.finalize(&caps);
    return res;
}

GroupoidPtr species_extension(const Species& F, GroupoidPtr x, const Caps& caps) {
    auto vr = validate_species(F);
    if (!vr.ok)
        throw validation_error("species_extension: " + vr.errors.front());
    std::vector<GroupoidPtr> parts;
    for (int k = 0; k <= F.truncation; ++k) {
        int sk = F.classifier.obj_of_size[k];
        auto fib = homotopy_fibre(F.map, sk, caps);
        auto act = fibre_aut_action(fib, F.map, sk);
        auto pw = power_groupoid(x, k, caps);
        auto prod = product_groupoid(fib.gpd, pw.g, caps);
        std::map<std::pair<int, int>, int> poidx, pmidx;
        for (size_t i = 0; i < prod.obj_key.size(); ++i)
            poidx[prod.obj_key[i]] = static_cast<int>(i);
        for (size_t i = 0; i < prod.mor_key.size(); ++i)
            pmidx[prod.mor_key[i]] = static_cast<int>(i);
        std::vector<int> loops;
        aut_table(*F.classifier.g, sk, &loops);
        std::vector<int> rank_of_mor(F.classifier.g->num_morphisms(), -1);
        for (size_t r = 0; r < F.classifier.perm_mor[k].size(); ++r)
            rank_of_mor[F.classifier.perm_mor[k][r]] = static_cast<int>(r);
        auto perms = all_perms(k);
        GroupAction comb;
        comb.grp = act.grp;
        comb.space = prod.g;
        comb.ob.resize(comb.grp.n);
        comb.mor.resize(comb.grp.n);
        for (int g = 0; g < comb.grp.n; ++g) {
            const auto& pi = perms[rank_of_mor[loops[g]]];
            comb.ob[g].resize(prod.obj_key.size());
            for (size_t o = 0; o < prod.obj_key.size(); ++o) {
                const auto& t = pw.obj_key[prod.obj_key[o].second];
                std::vector<int> t2(k);
                for (int i = 0; i < k; ++i) t2[pi[i]] = t[i];
                comb.ob[g][o] =
                    poidx.at({act.ob[g][prod.obj_key[o].first], pw.obj_idx.at(t2)});
            }
            comb.mor[g].resize(prod.mor_key.size());
            for (size_t m = 0; m < prod.mor_key.size(); ++m) {
                const auto& t = pw.mor_key[prod.mor_key[m].second];
                std::vector<int> t2(k);
                for (int i = 0; i < k; ++i) t2[pi[i]] = t[i];
                comb.mor[g][m] =
                    pmidx.at({act.mor[g][prod.mor_key[m].first], pw.mor_idx.at(t2)});
            }
        }
        parts.push_back(homotopy_quotient(comb, caps).g);
    }
    return sum_groupoid(parts, "species_ext").g;
}

PolyDiagram species_to_polynomial(const Species& F, const Caps& caps) {
    auto vr = validate_species(F);
    if (!vr.ok)
        throw validation_error("species_to_polynomial: " + vr.errors.front());
    auto ptd = b_omega_pointed(F.truncation, F.classifier);
    auto pb = homotopy_pullback(F.map, ptd.proj, caps);
    PolyDiagram P;
    P.I = trivial_groupoid();
    P.J = trivial_groupoid();
    P.B = F.total;
    P.E = pb.apex;
    P.p = pb.to_left;
    P.s = constant_map(P.E, P.I, 0);
    P.t = constant_map(P.B, P.J, 0);
    P.truncation = F.truncation;
    return P;
}

Species polynomial_to_species(const PolyDiagram& P, int truncation, const Caps& caps) {
    if (!is_one_variable(P))
        throw validation_error("polynomial_to_species: diagram is not one-variable");
    auto cr = is_combinatorial(P, caps);
    if (!cr.first)
        throw validation_error(
            "polynomial_to_species: a position fibre has a nontrivial vertex group");
    Species F;
    F.truncation = truncation;
    F.classifier = b_omega(truncation);
    F.total = P.B;
    const FinGroupoid& B = *P.B;
    std::vector<FibreResult> fibs;
    fibs.reserve(B.num_objects());
    std::vector<std::map<std::pair<int, int>, int>> fidx(B.num_objects());
    for (int b = 0; b < B.num_objects(); ++b) {
        fibs.push_back(homotopy_fibre(P.p, b, caps));
        for (size_t o = 0; o < fibs[b].obj_key.size(); ++o)
            fidx[b][{fibs[b].obj_key[o][0], fibs[b].obj_key[o][1]}] = static_cast<int>(o);
    }
    F.map.source = P.B;
    F.map.target = F.classifier.g;
    F.map.ob.resize(B.num_objects());
    for (int b = 0; b < B.num_objects(); ++b) {
        int k = fibs[b].gpd->num_components();
        if (k > truncation)
            throw validation_error("polynomial_to_species: fibre over '" +
                                   B.object_id(b) +
                                   "' has more components than the truncation");
        F.map.ob[b] = F.classifier.obj_of_size[k];
    }
    F.map.mor.resize(B.num_morphisms());
    for (int m = 0; m < B.num_morphisms(); ++m) {
        int b = B.src(m), b2 = B.tgt(m);
        const auto& fb = fibs[b];
        int k = fb.gpd->num_components();
        std::vector<int> pi(k);
        for (int i = 0; i < k; ++i) {
            auto key = fb.obj_key[fb.gpd->component_rep(i)];
            int o2 = fidx[b2].at({key[0], B.compose(key[1], B.inverse(m))});
            pi[i] = fibs[b2].gpd->component_of(o2);
        }
        F.map.mor[m] = F.classifier.perm_mor[k][perm_rank(pi)];
    }
    return F;
}

long classical_extension(const PolyDiagram& P, int k, const Caps& caps) {
    if (!is_one_variable(P))
        throw validation_error("classical_extension: diagram is not one-variable");
    if (k < 0) throw validation_error("classical_extension: negative set size");
    auto d = discrete_n(k);
    FamilyOver x;
    x.base = P.I;
    x.total = d;
    x.proj = constant_map(d, P.I, 0);
    auto ext = extend(P, x, ProdMode::Auto, caps);
    return ext.total->num_components();
}

}  // namespace grpoly
