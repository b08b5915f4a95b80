#include "grpoly/homotopy.hpp"
#include "grpoly/mapping.hpp"

#include <algorithm>

namespace grpoly {

FamilyOver make_family(GroupoidMap proj) {
    FamilyOver f;
    f.base = proj.target;
    f.total = proj.source;
    f.proj = std::move(proj);
    return f;
}

FamilyOver identity_family(GroupoidPtr g) { return make_family(identity_map(g)); }

GroupoidMap name_map(GroupoidPtr g, int obj) {
    return constant_map(trivial_groupoid(), g, obj);
}

PullbackResult homotopy_pullback(const GroupoidMap& f, const GroupoidMap& g,
                                 const Caps& caps) {
    if (f.target.get() != g.target.get())
        throw validation_error("pullback legs have different targets");
    const FinGroupoid& X = *f.source;
    const FinGroupoid& Y = *g.source;
    const FinGroupoid& A = *f.target;

    PullbackResult res;
    std::map<std::array<int, 3>, int> obj_idx;
    long nobj = 0;
    for (int x = 0; x < X.num_objects(); ++x)
        for (int y = 0; y < Y.num_objects(); ++y)
            nobj += static_cast<long>(A.hom(f.ob[x], g.ob[y]).size());
    check_object_cap(nobj, caps, "homotopy pullback");
    long nmor = 0;
    for (int x = 0; x < X.num_objects(); ++x)
        for (int y = 0; y < Y.num_objects(); ++y)
            nmor += static_cast<long>(A.hom(f.ob[x], g.ob[y]).size()) *
                    static_cast<long>(X.out(x).size()) *
                    static_cast<long>(Y.out(y).size());
    check_morphism_cap(nmor, caps, "homotopy pullback");

    GroupoidBuilder b("pullback");
    for (int x = 0; x < X.num_objects(); ++x)
        for (int y = 0; y < Y.num_objects(); ++y)
            for (int phi : A.hom(f.ob[x], g.ob[y])) {
                int o = b.add_object(padded_id("o", static_cast<int>(res.obj_key.size()),
                                               static_cast<int>(nobj)));
                obj_idx[{x, y, phi}] = o;
                res.obj_key.push_back({x, y, phi});
            }

    std::map<std::array<int, 3>, int> mor_idx;
    int extra = static_cast<int>(nmor - nobj);
    int mi = 0;
    for (int o = 0; o < static_cast<int>(res.obj_key.size()); ++o) {
        auto [x, y, phi] = res.obj_key[o];
        for (int alpha : X.out(x))
            for (int beta : Y.out(y)) {
                int m;
                if (X.is_identity(alpha) && Y.is_identity(beta)) {
                    m = b.identity_of(o);
                } else {
                    int phi2 = A.compose_chain({g.mor[beta], phi, A.inverse(f.mor[alpha])});
                    int o2 = obj_idx.at({X.tgt(alpha), Y.tgt(beta), phi2});
                    m = b.add_morphism(padded_id("m", mi, extra), o, o2);
                    ++mi;
                }
                mor_idx[{o, alpha, beta}] = m;
                if (m >= static_cast<int>(res.mor_key.size()))
                    res.mor_key.resize(m + 1, {-1, -1, -1});
                res.mor_key[m] = {o, alpha, beta};
            }
    }
    for (int o = 0; o < static_cast<int>(res.obj_key.size()); ++o) {
        auto [x, y, phi] = res.obj_key[o];
        for (int a1 : X.out(x))
            for (int b1 : Y.out(y)) {
                int m1 = mor_idx.at({o, a1, b1});
                int o2 = b.tgt(m1);
                auto [x2, y2, phi2] = res.obj_key[o2];
                for (int a2 : X.out(x2))
                    for (int b2 : Y.out(y2)) {
                        int m2 = mor_idx.at({o2, a2, b2});
                        int ac = X.compose(a2, a1), bc = Y.compose(b2, b1);
                        b.set_compose(m2, m1, mor_idx.at({o, ac, bc}));
                    }
            }
    }
    res.apex = b.finalize(&caps);

    res.to_left.source = res.to_right.source = res.apex;
    res.to_left.target = f.source;
    res.to_right.target = g.source;
    for (const auto& k : res.obj_key) {
        res.to_left.ob.push_back(k[0]);
        res.to_right.ob.push_back(k[1]);
    }
    for (const auto& k : res.mor_key) {
        res.to_left.mor.push_back(k[1]);
        res.to_right.mor.push_back(k[2]);
    }
    res.cmp.lhs = compose_maps(f, res.to_left);
    res.cmp.rhs = compose_maps(g, res.to_right);
    for (const auto& k : res.obj_key) res.cmp.comp.push_back(k[2]);
    return res;
}

StrictPullback strict_pullback(const GroupoidMap& f, const GroupoidMap& g,
                               const Caps& caps) {
    if (f.target.get() != g.target.get())
        throw validation_error("pullback legs have different targets");
    const FinGroupoid& X = *f.source;
    const FinGroupoid& Y = *g.source;

    StrictPullback res;
    std::map<std::array<int, 2>, int> obj_idx, mor_idx;
    for (int x = 0; x < X.num_objects(); ++x)
        for (int y = 0; y < Y.num_objects(); ++y)
            if (f.ob[x] == g.ob[y]) res.obj_key.push_back({x, y});
    check_object_cap(static_cast<long>(res.obj_key.size()), caps, "strict pullback");

    GroupoidBuilder b("strict_pullback");
    for (int o = 0; o < static_cast<int>(res.obj_key.size()); ++o) {
        b.add_object(padded_id("o", o, static_cast<int>(res.obj_key.size())));
        obj_idx[res.obj_key[o]] = o;
    }
    std::vector<std::array<int, 2>> mors;
    for (int alpha = 0; alpha < X.num_morphisms(); ++alpha)
        for (int beta = 0; beta < Y.num_morphisms(); ++beta)
            if (f.mor[alpha] == g.mor[beta]) mors.push_back({alpha, beta});
    check_morphism_cap(static_cast<long>(mors.size()), caps, "strict pullback");
    int extra = static_cast<int>(mors.size() - res.obj_key.size());
    int mi = 0;
    for (auto [alpha, beta] : mors) {
        int o = obj_idx.at({X.src(alpha), Y.src(beta)});
        int m;
        if (X.is_identity(alpha) && Y.is_identity(beta)) {
            m = b.identity_of(o);
        } else {
            int o2 = obj_idx.at({X.tgt(alpha), Y.tgt(beta)});
            m = b.add_morphism(padded_id("m", mi, extra), o, o2);
            ++mi;
        }
        mor_idx[{alpha, beta}] = m;
        if (m >= static_cast<int>(res.mor_key.size())) res.mor_key.resize(m + 1);
        res.mor_key[m] = {alpha, beta};
    }
    for (auto [a1, b1] : mors) {
        for (int a2 : X.out(X.tgt(a1)))
            for (int b2 : Y.out(Y.tgt(b1))) {
                if (f.mor[a2] != g.mor[b2]) continue;
                int ac = X.compose(a2, a1), bc = Y.compose(b2, b1);
                b.set_compose(mor_idx.at({a2, b2}), mor_idx.at({a1, b1}),
                              mor_idx.at({ac, bc}));
            }
    }
    res.apex = b.finalize(&caps);
    res.to_left.source = res.to_right.source = res.apex;
    res.to_left.target = f.source;
    res.to_right.target = g.source;
    for (const auto& k : res.obj_key) {
        res.to_left.ob.push_back(k[0]);
        res.to_right.ob.push_back(k[1]);
    }
    for (const auto& k : res.mor_key) {
        res.to_left.mor.push_back(k[0]);
        res.to_right.mor.push_back(k[1]);
    }
    return res;
}

FibreResult homotopy_fibre(const GroupoidMap& p, int base_obj, const Caps& caps) {
    const FinGroupoid& X = *p.source;
    const FinGroupoid& B = *p.target;

    FibreResult res;
    std::map<std::array<int, 2>, int> obj_idx, mor_idx;
    long nobj = 0;
    for (int x = 0; x < X.num_objects(); ++x)
        nobj += static_cast<long>(B.hom(base_obj, p.ob[x]).size());
    check_object_cap(nobj, caps, "homotopy fibre");

    GroupoidBuilder b("fibre");
    for (int x = 0; x < X.num_objects(); ++x)
        for (int phi : B.hom(base_obj, p.ob[x])) {
            int o = b.add_object(padded_id("o", static_cast<int>(res.obj_key.size()),
                                           static_cast<int>(nobj)));
            obj_idx[{x, phi}] = o;
            res.obj_key.push_back({x, phi});
        }
    long nmor = 0;
    for (const auto& k : res.obj_key) nmor += static_cast<long>(X.out(k[0]).size());
    check_morphism_cap(nmor, caps, "homotopy fibre");
    int extra = static_cast<int>(nmor - nobj);
    int mi = 0;
    for (int o = 0; o < static_cast<int>(res.obj_key.size()); ++o) {
        auto [x, phi] = res.obj_key[o];
        for (int alpha : X.out(x)) {
            int m;
            if (X.is_identity(alpha)) {
                m = b.identity_of(o);
            } else {
                int phi2 = B.compose(p.mor[alpha], phi);
                int o2 = obj_idx.at({X.tgt(alpha), phi2});
                m = b.add_morphism(padded_id("m", mi, extra), o, o2);
                ++mi;
            }
            mor_idx[{o, alpha}] = m;
            if (m >= static_cast<int>(res.mor_key.size())) res.mor_key.resize(m + 1);
            res.mor_key[m] = {o, alpha};
        }
    }
    for (int o = 0; o < static_cast<int>(res.obj_key.size()); ++o) {
        auto [x, phi] = res.obj_key[o];
        for (int a1 : X.out(x)) {
            int m1 = mor_idx.at({o, a1});
            int o2 = b.tgt(m1);
            for (int a2 : X.out(X.tgt(a1)))
                b.set_compose(mor_idx.at({o2, a2}), m1, mor_idx.at({o, X.compose(a2, a1)}));
        }
    }
    res.gpd = b.finalize(&caps);
    res.to_total.source = res.gpd;
    res.to_total.target = p.source;
    for (const auto& k : res.obj_key) res.to_total.ob.push_back(k[0]);
    for (const auto& k : res.mor_key) res.to_total.mor.push_back(k[1]);
    return res;
}

GroupAction fibre_aut_action(const FibreResult& fib, const GroupoidMap& p, int base_obj) {
    const FinGroupoid& B = *p.target;
    std::vector<int> loops;
    GroupAction act;
    act.grp = aut_table(B, base_obj, &loops);
    act.space = fib.gpd;
    std::map<std::array<int, 2>, int> obj_idx, mor_idx;
    for (int o = 0; o < static_cast<int>(fib.obj_key.size()); ++o) obj_idx[fib.obj_key[o]] = o;
    for (int m = 0; m < static_cast<int>(fib.mor_key.size()); ++m) mor_idx[fib.mor_key[m]] = m;
    act.ob.assign(act.grp.n, {});
    act.mor.assign(act.grp.n, {});
    for (int g = 0; g < act.grp.n; ++g) {
        int ginv = B.inverse(loops[g]);
        act.ob[g].resize(fib.obj_key.size());
        for (int o = 0; o < static_cast<int>(fib.obj_key.size()); ++o) {
            auto [x, phi] = fib.obj_key[o];
            act.ob[g][o] = obj_idx.at({x, B.compose(phi, ginv)});
        }
        act.mor[g].resize(fib.mor_key.size());
        for (int m = 0; m < static_cast<int>(fib.mor_key.size()); ++m) {
            auto [o, alpha] = fib.mor_key[m];
            act.mor[g][m] = mor_idx.at({act.ob[g][o], alpha});
        }
    }
    return act;
}

bool is_isofibration(const GroupoidMap& p) {
    const FinGroupoid& X = *p.source;
    const FinGroupoid& A = *p.target;
    for (int x = 0; x < X.num_objects(); ++x) {
        for (int tau : A.out(p.ob[x])) {
            bool lifted = false;
            for (int alpha : X.out(x))
                if (p.mor[alpha] == tau) {
                    lifted = true;
                    break;
                }
            if (!lifted) return false;
        }
    }
    return true;
}

FibrationFactorization factor_as_fibration(const GroupoidMap& f, const Caps& caps) {
    const FinGroupoid& X = *f.source;
    const FinGroupoid& A = *f.target;

    FibrationFactorization res;
    std::map<std::array<int, 2>, int> obj_idx;
    std::map<std::array<int, 3>, int> mor_idx;
    long nobj = 0;
    for (int x = 0; x < X.num_objects(); ++x)
        nobj += static_cast<long>(A.out(f.ob[x]).size());
    check_object_cap(nobj, caps, "fibration replacement");

    GroupoidBuilder b("replacement");
    for (int x = 0; x < X.num_objects(); ++x)
        for (int beta : A.out(f.ob[x])) {
            int o = b.add_object(padded_id("o", static_cast<int>(res.obj_key.size()),
                                           static_cast<int>(nobj)));
            obj_idx[{x, beta}] = o;
            res.obj_key.push_back({x, beta});
        }
    long nmor = 0;
    for (const auto& k : res.obj_key)
        nmor += static_cast<long>(X.out(k[0]).size()) *
                static_cast<long>(A.out(A.tgt(k[1])).size());
    check_morphism_cap(nmor, caps, "fibration replacement");
    int extra = static_cast<int>(nmor - nobj);
    int mi = 0;
    for (int o = 0; o < static_cast<int>(res.obj_key.size()); ++o) {
        auto [x, beta] = res.obj_key[o];
        for (int alpha : X.out(x))
            for (int tau : A.out(A.tgt(beta))) {
                int m;
                if (X.is_identity(alpha) && A.is_identity(tau)) {
                    m = b.identity_of(o);
                } else {
                    int beta2 = A.compose_chain({tau, beta, A.inverse(f.mor[alpha])});
                    int o2 = obj_idx.at({X.tgt(alpha), beta2});
                    m = b.add_morphism(padded_id("m", mi, extra), o, o2);
                    ++mi;
                }
                mor_idx[{o, alpha, tau}] = m;
                if (m >= static_cast<int>(res.mor_key.size()))
                    res.mor_key.resize(m + 1, {-1, -1, -1});
                res.mor_key[m] = {o, alpha, tau};
            }
    }
    for (int o = 0; o < static_cast<int>(res.obj_key.size()); ++o) {
        auto [x, beta] = res.obj_key[o];
        for (int a1 : X.out(x))
            for (int t1 : A.out(A.tgt(beta))) {
                int m1 = mor_idx.at({o, a1, t1});
                int o2 = b.tgt(m1);
                for (int a2 : X.out(X.tgt(a1)))
                    for (int t2 : A.out(A.tgt(t1)))
                        b.set_compose(mor_idx.at({o2, a2, t2}), m1,
                                      mor_idx.at({o, X.compose(a2, a1), A.compose(t2, t1)}));
            }
    }
    res.total = b.finalize(&caps);

    res.embed.source = f.source;
    res.embed.target = res.total;
    res.embed.ob.resize(X.num_objects());
    res.embed.mor.resize(X.num_morphisms());
    for (int x = 0; x < X.num_objects(); ++x)
        res.embed.ob[x] = obj_idx.at({x, A.identity(f.ob[x])});
    for (int m = 0; m < X.num_morphisms(); ++m)
        res.embed.mor[m] = mor_idx.at({res.embed.ob[X.src(m)], m, f.mor[m]});

    res.fibration.source = res.total;
    res.fibration.target = f.target;
    for (const auto& k : res.obj_key) res.fibration.ob.push_back(A.tgt(k[1]));
    for (const auto& k : res.mor_key) res.fibration.mor.push_back(k[2]);
    return res;
}

FamilyOver dep_sum(const GroupoidMap& f, const FamilyOver& y) {
    if (y.base.get() != f.source.get())
        throw validation_error("dependent sum: family base does not match");
    FamilyOver out;
    out.base = f.target;
    out.total = y.total;
    out.proj = compose_maps(f, y.proj);
    return out;
}

BaseChangeResult base_change(const GroupoidMap& f, const FamilyOver& x, const Caps& caps) {
    if (x.base.get() != f.target.get())
        throw validation_error("base change: family base does not match");
    BaseChangeResult res;
    res.pb = homotopy_pullback(f, x.proj, caps);
    res.fam.base = f.source;
    res.fam.total = res.pb.apex;
    res.fam.proj = res.pb.to_left;
    res.to_total = res.pb.to_right;
    return res;
}

FamilyOver dep_prod(const GroupoidMap& f, const FamilyOver& y, ProdMode mode,
                    const Caps& caps) {
    DepProd dp(f, y, mode, caps);
    return dp.family();
}

FibreDecomposition fibre_decomposition(const FamilyOver& x, const Caps& caps) {
    const FinGroupoid& B = *x.base;
    FibreDecomposition out;
    std::vector<GroupoidPtr> quots;
    for (int c = 0; c < B.num_components(); ++c) {
        FibreDecomposition::Piece piece;
        piece.base_obj = B.component_rep(c);
        piece.fibre = homotopy_fibre(x.proj, piece.base_obj, caps);
        piece.action = fibre_aut_action(piece.fibre, x.proj, piece.base_obj);
        piece.quot = homotopy_quotient(piece.action, caps);
        quots.push_back(piece.quot.g);
        out.pieces.push_back(std::move(piece));
    }
    auto s = sum_groupoid(quots, "decomposition");
    out.sum = s.g;
    out.reassemble.source = out.sum;
    out.reassemble.target = x.total;
    out.reassemble.ob.assign(out.sum->num_objects(), -1);
    out.reassemble.mor.assign(out.sum->num_morphisms(), -1);
    for (size_t k = 0; k < out.pieces.size(); ++k) {
        const auto& piece = out.pieces[k];
        const auto& inj = s.inj[k];
        for (int o = 0; o < piece.quot.g->num_objects(); ++o)
            out.reassemble.ob[inj.ob[o]] = piece.fibre.obj_key[o][0];
        for (int m = 0; m < piece.quot.g->num_morphisms(); ++m) {
            int fibre_mor = piece.quot.mor_key[m].second;
            out.reassemble.mor[inj.mor[m]] = piece.fibre.mor_key[fibre_mor][1];
        }
    }
    out.check = is_equivalence_functor(out.reassemble);
    return out;
}

FubiniReport fubini_check(const GroupoidMap& f, const FamilyOver& y, const Caps& caps) {
    if (y.base.get() != f.source.get())
        throw validation_error("grouped sum check: family base does not match");
    const FinGroupoid& A = *f.target;
    FubiniReport rep;
    rep.total_card = y.total->cardinality();
    Rat rhs;
    bool witness_all = true;
    for (int c = 0; c < A.num_components(); ++c) {
        int a = A.component_rep(c);
        auto fib = homotopy_fibre(f, a, caps);
        auto pulled = homotopy_pullback(fib.to_total, y.proj, caps);
        auto vact = fibre_aut_action(fib, f, a);

        // Lift the vertex-group action through the pullback leg.
        GroupAction act;
        act.grp = vact.grp;
        act.space = pulled.apex;
        std::map<std::array<int, 3>, int> obj_idx, mor_idx;
        for (int o = 0; o < static_cast<int>(pulled.obj_key.size()); ++o)
            obj_idx[pulled.obj_key[o]] = o;
        for (int m = 0; m < static_cast<int>(pulled.mor_key.size()); ++m)
            mor_idx[pulled.mor_key[m]] = m;
        act.ob.assign(act.grp.n, {});
        act.mor.assign(act.grp.n, {});
        for (int g = 0; g < act.grp.n; ++g) {
            act.ob[g].resize(pulled.obj_key.size());
            for (int o = 0; o < static_cast<int>(pulled.obj_key.size()); ++o) {
                auto [v, t, psi] = pulled.obj_key[o];
                act.ob[g][o] = obj_idx.at({vact.ob[g][v], t, psi});
            }
            act.mor[g].resize(pulled.mor_key.size());
            for (int m = 0; m < static_cast<int>(pulled.mor_key.size()); ++m) {
                auto [o, vm, tm] = pulled.mor_key[m];
                act.mor[g][m] = mor_idx.at({act.ob[g][o], vact.mor[g][vm], tm});
            }
        }
        auto q = homotopy_quotient(act, caps);
        rhs += q.g->cardinality();

        GroupoidMap w;
        w.source = q.g;
        w.target = y.total;
        for (int o = 0; o < q.g->num_objects(); ++o) w.ob.push_back(pulled.obj_key[o][1]);
        for (int m = 0; m < q.g->num_morphisms(); ++m) {
            int apex_mor = q.mor_key[m].second;
            w.mor.push_back(pulled.mor_key[apex_mor][2]);
        }
        // Witness lands in the part of the total over this base component; an
        // equivalence overall iff each piece hits its part correctly. Check
        // fullness and faithfulness here, essential surjectivity at the end.
        if (!validate_map(w).ok) witness_all = false;
    }
    rep.grouped_card = rhs;
    rep.cards_equal = rep.total_card == rep.grouped_card;

    // Global witness: disjoint sum of the per-component quotients mapping to
    // the total must be an equivalence.
    {
        std::vector<GroupoidPtr> quots;
        std::vector<GroupoidMap> maps;
        for (int c = 0; c < A.num_components(); ++c) {
            int a = A.component_rep(c);
            auto fib = homotopy_fibre(f, a, caps);
            auto pulled = homotopy_pullback(fib.to_total, y.proj, caps);
            auto vact = fibre_aut_action(fib, f, a);
            GroupAction act;
            act.grp = vact.grp;
            act.space = pulled.apex;
            std::map<std::array<int, 3>, int> obj_idx, mor_idx;
            for (int o = 0; o < static_cast<int>(pulled.obj_key.size()); ++o)
                obj_idx[pulled.obj_key[o]] = o;
            for (int m = 0; m < static_cast<int>(pulled.mor_key.size()); ++m)
                mor_idx[pulled.mor_key[m]] = m;
            act.ob.assign(act.grp.n, {});
            act.mor.assign(act.grp.n, {});
            for (int g = 0; g < act.grp.n; ++g) {
                act.ob[g].resize(pulled.obj_key.size());
                for (int o = 0; o < static_cast<int>(pulled.obj_key.size()); ++o) {
                    auto [v, t, psi] = pulled.obj_key[o];
                    act.ob[g][o] = obj_idx.at({vact.ob[g][v], t, psi});
                }
                act.mor[g].resize(pulled.mor_key.size());
                for (int m = 0; m < static_cast<int>(pulled.mor_key.size()); ++m) {
                    auto [o, vm, tm] = pulled.mor_key[m];
                    act.mor[g][m] = mor_idx.at({act.ob[g][o], vact.mor[g][vm], tm});
                }
            }
            auto q = homotopy_quotient(act, caps);
            GroupoidMap w;
            w.source = q.g;
            w.target = y.total;
            for (int o = 0; o < q.g->num_objects(); ++o) w.ob.push_back(pulled.obj_key[o][1]);
            for (int m = 0; m < q.g->num_morphisms(); ++m) {
                int apex_mor = q.mor_key[m].second;
                w.mor.push_back(pulled.mor_key[apex_mor][2]);
            }
            quots.push_back(q.g);
            maps.push_back(std::move(w));
        }
        auto s = sum_groupoid(quots, "grouped");
        GroupoidMap w;
        w.source = s.g;
        w.target = y.total;
        w.ob.assign(s.g->num_objects(), -1);
        w.mor.assign(s.g->num_morphisms(), -1);
        for (size_t k = 0; k < quots.size(); ++k) {
            for (int o = 0; o < quots[k]->num_objects(); ++o)
                w.ob[s.inj[k].ob[o]] = maps[k].ob[o];
            for (int m = 0; m < quots[k]->num_morphisms(); ++m)
                w.mor[s.inj[k].mor[m]] = maps[k].mor[m];
        }
        rep.witness_ok = witness_all && validate_map(w).ok && is_equivalence_functor(w).ok;
    }
    return rep;
}

GroupoidPtr slice_mapping_groupoid(const FamilyOver& v, const FamilyOver& y,
                                   const Caps& caps) {
    if (v.base.get() != y.base.get())
        throw validation_error("slice mapping groupoid: bases differ");
    const FinGroupoid& V = *v.total;
    const FinGroupoid& B = *v.base;
    auto mg = mapping_groupoid(v.total, y.total, caps);

    // For each functor u, all cells theta: y.proj u => v.proj.
    struct SliceObj {
        int u;
        std::vector<int> theta;
    };
    std::vector<SliceObj> objs;
    std::vector<GroupoidMap> qu(mg.functors.size());
    for (size_t ui = 0; ui < mg.functors.size(); ++ui) {
        qu[ui] = compose_maps(y.proj, mg.functors[ui]);
        const GroupoidMap& lhs = qu[ui];
        std::vector<std::vector<int>> per_comp(V.num_components());
        bool any = true;
        for (int c = 0; c < V.num_components() && any; ++c) {
            int r = V.component_rep(c);
            for (int cand : B.hom(lhs.ob[r], v.proj.ob[r])) {
                bool nat = true;
                for (int m : V.loops(r))
                    if (B.compose(v.proj.mor[m], cand) != B.compose(cand, lhs.mor[m])) {
                        nat = false;
                        break;
                    }
                if (nat) per_comp[c].push_back(cand);
            }
            if (per_comp[c].empty()) any = false;
        }
        if (!any) continue;
        long total = 1;
        for (const auto& pc : per_comp) {
            total *= static_cast<long>(pc.size());
            check_object_cap(static_cast<long>(objs.size()) + total, caps,
                             "slice mapping groupoid");
        }
        for (long pick = 0; pick < total; ++pick) {
            SliceObj so;
            so.u = static_cast<int>(ui);
            so.theta.assign(V.num_objects(), -1);
            long rem = pick;
            for (int c = V.num_components(); c-- > 0;) {
                int theta_r = per_comp[c][rem % per_comp[c].size()];
                rem /= static_cast<long>(per_comp[c].size());
                for (int x : V.component_objects(c)) {
                    int cx = V.connection(x);
                    so.theta[x] = B.compose_chain(
                        {v.proj.mor[cx], theta_r, B.inverse(lhs.mor[cx])});
                }
            }
            objs.push_back(std::move(so));
        }
    }

    GroupoidBuilder b("slice_mapping");
    for (int o = 0; o < static_cast<int>(objs.size()); ++o)
        b.add_object(padded_id("o", o, static_cast<int>(objs.size())));
    // Morphisms: mapping-groupoid cells nu: u => u' with theta' (q nu) = theta.
    struct SliceMor {
        int src, tgt, cell;
    };
    std::vector<SliceMor> mors;
    for (int o1 = 0; o1 < static_cast<int>(objs.size()); ++o1)
        for (int o2 = 0; o2 < static_cast<int>(objs.size()); ++o2) {
            for (int cm : mg.gpd->hom(objs[o1].u, objs[o2].u)) {
                const auto& nu = mg.cells[cm];
                bool ok = true;
                for (int x = 0; x < V.num_objects() && ok; ++x)
                    if (B.compose(objs[o2].theta[x], y.proj.mor[nu[x]]) != objs[o1].theta[x])
                        ok = false;
                if (ok) mors.push_back({o1, o2, cm});
            }
        }
    check_morphism_cap(static_cast<long>(mors.size()), caps, "slice mapping groupoid");
    std::map<std::array<int, 2>, int> midx;
    int extra = 0;
    for (const auto& sm : mors)
        if (!(sm.src == sm.tgt && mg.gpd->is_identity(sm.cell))) ++extra;
    int mi = 0;
    for (const auto& sm : mors) {
        int m;
        if (sm.src == sm.tgt && mg.gpd->is_identity(sm.cell)) {
            m = b.identity_of(sm.src);
        } else {
            m = b.add_morphism(padded_id("m", mi, extra), sm.src, sm.tgt);
            ++mi;
        }
        midx[{sm.src, sm.cell}] = m;
    }
    for (const auto& m1 : mors)
        for (const auto& m2 : mors) {
            if (m2.src != m1.tgt) continue;
            int cc = mg.gpd->compose(m2.cell, m1.cell);
            b.set_compose(midx.at({m2.src, m2.cell}), midx.at({m1.src, m1.cell}),
                          midx.at({m1.src, cc}));
        }
    return b.finalize(&caps);
}

}  // namespace grpoly
