#include "grpoly/builders.hpp"

#include <unordered_map>

namespace grpoly {

GroupoidPtr discrete_groupoid(const std::vector<std::string>& ids, const std::string& name) {
    GroupoidBuilder b(name);
    for (const auto& id : ids) b.add_object(id);
    return b.finalize();
}

GroupoidPtr discrete_n(int n, const std::string& prefix) {
    std::vector<std::string> ids;
    ids.reserve(n);
    for (int i = 0; i < n; ++i) ids.push_back(padded_id(prefix, i, n));
    return discrete_groupoid(ids, "discrete" + std::to_string(n));
}

GroupoidPtr trivial_groupoid() { return discrete_groupoid({"pt"}, "trivial"); }

GroupoidPtr one_object_groupoid(const GroupTable& grp, const std::string& name) {
    GroupoidBuilder b(name);
    int pt = b.add_object_with_identity("pt", padded_id("g", 0, grp.n));
    std::vector<int> mor(grp.n);
    mor[0] = b.identity_of(pt);
    for (int a = 1; a < grp.n; ++a)
        mor[a] = b.add_morphism(padded_id("g", a, grp.n), pt, pt);
    for (int a = 0; a < grp.n; ++a)
        for (int c = 0; c < grp.n; ++c) b.set_compose(mor[a], mor[c], mor[grp.at(a, c)]);
    return b.finalize();
}

SumResult sum_groupoid(const std::vector<GroupoidPtr>& parts, const std::string& name) {
    SumResult res;
    int nobj = 0, nmor_extra = 0;
    for (const auto& p : parts) {
        nobj += p->num_objects();
        nmor_extra += p->num_morphisms() - p->num_objects();
    }
    GroupoidBuilder b(name);
    std::vector<std::vector<int>> ob_map(parts.size()), mor_map(parts.size());
    int oi = 0;
    for (size_t k = 0; k < parts.size(); ++k) {
        ob_map[k].assign(parts[k]->num_objects(), -1);
        mor_map[k].assign(parts[k]->num_morphisms(), -1);
        for (int x = 0; x < parts[k]->num_objects(); ++x) {
            int nx = b.add_object(padded_id("o", oi, nobj));
            ob_map[k][x] = nx;
            mor_map[k][parts[k]->identity(x)] = b.identity_of(nx);
            res.obj_key.emplace_back(static_cast<int>(k), x);
            ++oi;
        }
    }
    int mi = 0;
    for (size_t k = 0; k < parts.size(); ++k)
        for (int m = 0; m < parts[k]->num_morphisms(); ++m) {
            if (parts[k]->is_identity(m)) continue;
            mor_map[k][m] = b.add_morphism(padded_id("m", mi, nmor_extra),
                                           ob_map[k][parts[k]->src(m)],
                                           ob_map[k][parts[k]->tgt(m)]);
            ++mi;
        }
    for (size_t k = 0; k < parts.size(); ++k) {
        const FinGroupoid& p = *parts[k];
        for (int f = 0; f < p.num_morphisms(); ++f)
            for (int g : p.out(p.tgt(f))) {
                int gf = p.compose(g, f);
                if (gf >= 0) b.set_compose(mor_map[k][g], mor_map[k][f], mor_map[k][gf]);
            }
    }
    res.g = b.finalize();
    for (size_t k = 0; k < parts.size(); ++k) {
        GroupoidMap inj;
        inj.source = parts[k];
        inj.target = res.g;
        inj.ob = ob_map[k];
        inj.mor = mor_map[k];
        res.inj.push_back(std::move(inj));
    }
    return res;
}

ProductResult product_groupoid(GroupoidPtr a, GroupoidPtr b, const Caps& caps) {
    ProductResult res;
    long nobj = static_cast<long>(a->num_objects()) * b->num_objects();
    long nmor = static_cast<long>(a->num_morphisms()) * b->num_morphisms();
    check_object_cap(nobj, caps, "product");
    check_morphism_cap(nmor, caps, "product");
    GroupoidBuilder bb("product");
    std::vector<int> ob(a->num_objects() * b->num_objects());
    std::unordered_map<uint64_t, int> mor;
    auto mkey = [&](int m, int n) {
        return (static_cast<uint64_t>(m) << 32) | static_cast<uint32_t>(n);
    };
    int oi = 0;
    for (int x = 0; x < a->num_objects(); ++x)
        for (int y = 0; y < b->num_objects(); ++y) {
            int nx = bb.add_object(padded_id("o", oi, static_cast<int>(nobj)));
            ob[x * b->num_objects() + y] = nx;
            mor[mkey(a->identity(x), b->identity(y))] = bb.identity_of(nx);
            res.obj_key.emplace_back(x, y);
            ++oi;
        }
    int mi = 0;
    int extra = static_cast<int>(nmor) - static_cast<int>(nobj);
    for (int m = 0; m < a->num_morphisms(); ++m)
        for (int n = 0; n < b->num_morphisms(); ++n) {
            if (a->is_identity(m) && b->is_identity(n)) continue;
            mor[mkey(m, n)] = bb.add_morphism(padded_id("m", mi, extra),
                                              ob[a->src(m) * b->num_objects() + b->src(n)],
                                              ob[a->tgt(m) * b->num_objects() + b->tgt(n)]);
            ++mi;
        }
    res.mor_key.assign(static_cast<size_t>(nmor), {-1, -1});
    for (int m = 0; m < a->num_morphisms(); ++m)
        for (int n = 0; n < b->num_morphisms(); ++n)
            res.mor_key[static_cast<size_t>(mor[mkey(m, n)])] = {m, n};
    for (int m1 = 0; m1 < a->num_morphisms(); ++m1)
        for (int m2 : a->out(a->tgt(m1))) {
            int mc = a->compose(m2, m1);
            if (mc < 0) continue;
            for (int n1 = 0; n1 < b->num_morphisms(); ++n1)
                for (int n2 : b->out(b->tgt(n1))) {
                    int nc = b->compose(n2, n1);
                    if (nc < 0) continue;
                    bb.set_compose(mor[mkey(m2, n2)], mor[mkey(m1, n1)], mor[mkey(mc, nc)]);
                }
        }
    res.g = bb.finalize(&caps);
    res.pr1.source = res.pr2.source = res.g;
    res.pr1.target = a;
    res.pr2.target = b;
    res.pr1.ob.resize(nobj);
    res.pr2.ob.resize(nobj);
    for (size_t i = 0; i < res.obj_key.size(); ++i) {
        res.pr1.ob[i] = res.obj_key[i].first;
        res.pr2.ob[i] = res.obj_key[i].second;
    }
    res.pr1.mor.resize(nmor);
    res.pr2.mor.resize(nmor);
    for (size_t i = 0; i < res.mor_key.size(); ++i) {
        res.pr1.mor[i] = res.mor_key[i].first;
        res.pr2.mor[i] = res.mor_key[i].second;
    }
    return res;
}

SubResult full_subgroupoid(GroupoidPtr ambient, const std::vector<int>& objects,
                           const std::string& name) {
    SubResult res;
    res.obj_key = objects;
    GroupoidBuilder b(name);
    std::vector<int> ob_map(ambient->num_objects(), -1);
    std::vector<int> mor_map(ambient->num_morphisms(), -1);
    for (int x : objects) {
        int nx = b.add_object_with_identity(ambient->object_id(x),
                                            ambient->morph_id(ambient->identity(x)));
        ob_map[x] = nx;
        mor_map[ambient->identity(x)] = b.identity_of(nx);
    }
    for (int m = 0; m < ambient->num_morphisms(); ++m) {
        if (ambient->is_identity(m)) continue;
        if (ob_map[ambient->src(m)] < 0 || ob_map[ambient->tgt(m)] < 0) continue;
        mor_map[m] = b.add_morphism(ambient->morph_id(m), ob_map[ambient->src(m)],
                                    ob_map[ambient->tgt(m)]);
    }
    for (int m = 0; m < ambient->num_morphisms(); ++m) {
        if (mor_map[m] < 0) continue;
        for (int n : ambient->out(ambient->tgt(m))) {
            if (mor_map[n] < 0) continue;
            int nm = ambient->compose(n, m);
            if (nm >= 0) b.set_compose(mor_map[n], mor_map[m], mor_map[nm]);
        }
    }
    res.g = b.finalize();
    res.incl.source = res.g;
    res.incl.target = ambient;
    res.incl.ob.resize(res.g->num_objects());
    res.incl.mor.resize(res.g->num_morphisms());
    for (int x = 0; x < ambient->num_objects(); ++x)
        if (ob_map[x] >= 0) res.incl.ob[ob_map[x]] = x;
    for (int m = 0; m < ambient->num_morphisms(); ++m)
        if (mor_map[m] >= 0) res.incl.mor[mor_map[m]] = m;
    return res;
}

GroupAction trivial_action(const GroupTable& grp, GroupoidPtr space) {
    GroupAction a;
    a.grp = grp;
    a.space = space;
    std::vector<int> ob(space->num_objects()), mor(space->num_morphisms());
    for (int x = 0; x < space->num_objects(); ++x) ob[x] = x;
    for (int m = 0; m < space->num_morphisms(); ++m) mor[m] = m;
    a.ob.assign(grp.n, ob);
    a.mor.assign(grp.n, mor);
    return a;
}

GroupAction action_from_permutations(const GroupTable& grp, GroupoidPtr space,
                                     const std::vector<std::vector<int>>& perms) {
    GroupAction a;
    a.grp = grp;
    a.space = space;
    a.ob = perms;
    a.mor.resize(grp.n);
    for (int g = 0; g < grp.n; ++g) {
        a.mor[g].resize(space->num_morphisms());
        for (int m = 0; m < space->num_morphisms(); ++m) {
            if (!space->is_identity(m))
                throw validation_error("permutation action requires a discrete space");
            a.mor[g][m] = space->identity(perms[g][space->src(m)]);
        }
    }
    return a;
}

ValidationReport validate_action(const GroupAction& a) {
    ValidationReport rep;
    const FinGroupoid& s = *a.space;
    if (static_cast<int>(a.ob.size()) != a.grp.n || static_cast<int>(a.mor.size()) != a.grp.n) {
        rep.fail("action tables have wrong size");
        return rep;
    }
    for (int g = 0; g < a.grp.n; ++g) {
        GroupoidMap f;
        f.source = f.target = a.space;
        f.ob = a.ob[g];
        f.mor = a.mor[g];
        auto r = validate_map(f);
        if (!r.ok) {
            rep.fail("group element " + std::to_string(g) + " does not act functorially");
            rep.merge(r);
        }
    }
    for (int x = 0; x < s.num_objects(); ++x)
        if (a.ob[0][x] != x) rep.fail("identity element does not act as identity");
    for (int m = 0; m < s.num_morphisms(); ++m)
        if (a.mor[0][m] != m) {
            rep.fail("identity element does not act as identity on morphisms");
            break;
        }
    for (int g = 0; g < a.grp.n && rep.ok; ++g)
        for (int h = 0; h < a.grp.n && rep.ok; ++h) {
            int gh = a.grp.at(g, h);
            for (int x = 0; x < s.num_objects(); ++x)
                if (a.ob[g][a.ob[h][x]] != a.ob[gh][x]) {
                    rep.fail("action is not strictly multiplicative on objects");
                    break;
                }
            for (int m = 0; m < s.num_morphisms() && rep.ok; ++m)
                if (a.mor[g][a.mor[h][m]] != a.mor[gh][m]) {
                    rep.fail("action is not strictly multiplicative on morphisms");
                    break;
                }
        }
    return rep;
}

QuotientResult homotopy_quotient(const GroupAction& a, const Caps& caps) {
    const FinGroupoid& s = *a.space;
    const GroupTable& grp = a.grp;
    long nmor = static_cast<long>(grp.n) * s.num_morphisms();
    check_object_cap(s.num_objects(), caps, "homotopy quotient");
    check_morphism_cap(nmor, caps, "homotopy quotient");

    QuotientResult res;
    GroupoidBuilder b("quotient");
    for (int x = 0; x < s.num_objects(); ++x) b.add_object(s.object_id(x));

    // Morphism (g, alpha: g.x -> y) has source g^{-1}.src(alpha), target tgt(alpha).
    std::unordered_map<uint64_t, int> idx;
    auto mkey = [&](int g, int m) {
        return (static_cast<uint64_t>(g) << 32) | static_cast<uint32_t>(m);
    };
    res.mor_key.assign(static_cast<size_t>(nmor), {-1, -1});
    int extra = static_cast<int>(nmor) - s.num_objects();
    int mi = 0;
    for (int g = 0; g < grp.n; ++g) {
        int ginv = grp.inverse(g);
        for (int m = 0; m < s.num_morphisms(); ++m) {
            int srcx = a.ob[ginv][s.src(m)];
            int tgty = s.tgt(m);
            int nm;
            if (g == 0 && s.is_identity(m)) {
                nm = b.identity_of(srcx);
            } else {
                nm = b.add_morphism(padded_id("q", mi, extra), srcx, tgty);
                ++mi;
            }
            idx[mkey(g, m)] = nm;
            res.mor_key[static_cast<size_t>(nm)] = {g, m};
        }
    }
    // (h, beta) after (g, alpha) = (hg, beta after h.alpha).
    for (int g = 0; g < grp.n; ++g)
        for (int m = 0; m < s.num_morphisms(); ++m) {
            int mid = s.tgt(m);
            for (int h = 0; h < grp.n; ++h) {
                int halpha_src = a.ob[h][mid];
                for (int beta : s.out(halpha_src)) {
                    int c = s.compose(beta, a.mor[h][m]);
                    if (c < 0) continue;
                    b.set_compose(idx[mkey(h, beta)], idx[mkey(g, m)],
                                  idx[mkey(grp.at(h, g), c)]);
                }
            }
        }
    res.g = b.finalize(&caps);
    res.bg = one_object_groupoid(grp, "bgroup");
    res.proj.source = res.g;
    res.proj.target = res.bg;
    res.proj.ob.assign(res.g->num_objects(), 0);
    res.proj.mor.resize(res.g->num_morphisms());
    for (int m = 0; m < res.g->num_morphisms(); ++m) {
        int g = res.mor_key[static_cast<size_t>(m)].first;
        res.proj.mor[m] = g == 0 ? res.bg->identity(0)
                                 : res.bg->morph_index(padded_id("g", g, grp.n));
    }
    res.incl.source = a.space;
    res.incl.target = res.g;
    res.incl.ob.resize(s.num_objects());
    for (int x = 0; x < s.num_objects(); ++x) res.incl.ob[x] = x;
    res.incl.mor.resize(s.num_morphisms());
    for (int m = 0; m < s.num_morphisms(); ++m) res.incl.mor[m] = idx[mkey(0, m)];
    return res;
}

}  // namespace grpoly
