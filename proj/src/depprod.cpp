#include <cstdint>

#include "grpoly/groups.hpp"
#include "grpoly/homotopy.hpp"

namespace grpoly {

namespace {

uint64_t pack2(int a, int b) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) |
           static_cast<uint32_t>(b);
}

// Order of a loop under repeated composition.
int loop_order(const FinGroupoid& g, int m) {
    int ord = 1, cur = m;
    while (!g.is_identity(cur)) {
        cur = g.compose(m, cur);
        ++ord;
    }
    return ord;
}

}  // namespace

DepProd::DepProd(const GroupoidMap& f, const FamilyOver& y, ProdMode mode,
                 const Caps& caps)
    : f_(f), y_(y) {
    if (y.base.get() != f.source.get())
        throw validation_error("dependent product: family base does not match");
    const FinGroupoid& A = *f_.target;
    const FinGroupoid& Y = *y_.total;

    fibres_.resize(A.num_objects());
    for (int a = 0; a < A.num_objects(); ++a) build_fibre(a, caps);

    bool all_trivial = true;
    for (int a = 0; a < A.num_objects() && all_trivial; ++a) {
        const FinGroupoid& g = *fibres_[a].gpd;
        for (int c = 0; c < g.num_components(); ++c)
            if (g.loops(g.component_rep(c)).size() != 1) {
                all_trivial = false;
                break;
            }
    }
    switch (mode) {
        case ProdMode::Auto: discrete_ = all_trivial; break;
        case ProdMode::General: discrete_ = false; break;
        case ProdMode::Discrete:
            if (!all_trivial)
                throw validation_error(
                    "discrete sections requested but a fibre has a nontrivial "
                    "vertex group");
            discrete_ = true;
            break;
    }

    sections_.resize(A.num_objects());
    section_idx_.resize(A.num_objects());
    for (int a = 0; a < A.num_objects(); ++a) enumerate_sections(a, caps);

    long nz = 0;
    zobj_.resize(A.num_objects());
    for (int a = 0; a < A.num_objects(); ++a) {
        zobj_[a].resize(sections_[a].size());
        for (size_t s = 0; s < sections_[a].size(); ++s) {
            zobj_[a][s] = static_cast<int>(nz++);
            zkey_.push_back({a, static_cast<int>(s)});
        }
    }
    check_object_cap(nz, caps, "dependent product");

    // Enumerate morphisms (tau, eta): reindex the source section along the
    // inverse transport, then match it against each target section by a
    // vertical cell chosen per fibre component.
    const FinGroupoid& B = *f_.source;
    (void)B;
    struct Rec {
        int src, tgt, tau;
        std::vector<int> delta;
    };
    std::vector<Rec> recs;
    for (int z1 = 0; z1 < static_cast<int>(zkey_.size()); ++z1) {
        auto [a, si] = zkey_[z1];
        const Section& sigma = sections_[a][si];
        for (int tau : A.out(a)) {
            int a2 = A.tgt(tau);
            int tauinv = A.inverse(tau);
            const Fibre& F2 = fibres_[a2];
            const FinGroupoid& G2 = *F2.gpd;
            Section sigt;
            sigt.obj.resize(F2.obj_key.size());
            sigt.mor.resize(F2.mor_key.size());
            for (int o = 0; o < static_cast<int>(F2.obj_key.size()); ++o)
                sigt.obj[o] = sigma.obj[transport_obj(tauinv, o)];
            for (int m = 0; m < static_cast<int>(F2.mor_key.size()); ++m)
                sigt.mor[m] = sigma.mor[transport_mor(tauinv, m)];
            for (int s2 = 0; s2 < static_cast<int>(sections_[a2].size()); ++s2) {
                const Section& sigp = sections_[a2][s2];
                std::vector<std::vector<int>> comp_cands(G2.num_components());
                bool possible = true;
                for (int c = 0; c < G2.num_components() && possible; ++c) {
                    int r = G2.component_rep(c);
                    auto [yt, alphat] = sigt.obj[r];
                    auto [yp, alphap] = sigp.obj[r];
                    int req = y_.base->compose(y_.base->inverse(alphap), alphat);
                    for (int delta : Y.hom(yt, yp)) {
                        if (y_.proj.mor[delta] != req) continue;
                        bool nat = true;
                        for (int lam : G2.loops(r))
                            if (Y.compose(sigp.mor[lam], delta) !=
                                Y.compose(delta, sigt.mor[lam])) {
                                nat = false;
                                break;
                            }
                        if (nat) comp_cands[c].push_back(delta);
                    }
                    if (comp_cands[c].empty()) possible = false;
                }
                if (!possible) continue;
                std::vector<int> digit(G2.num_components(), 0);
                while (true) {
                    Rec rec;
                    rec.src = z1;
                    rec.tgt = zobj_[a2][s2];
                    rec.tau = tau;
                    rec.delta.assign(F2.obj_key.size(), -1);
                    for (int c = 0; c < G2.num_components(); ++c) {
                        int dr = comp_cands[c][digit[c]];
                        for (int zz : G2.component_objects(c)) {
                            int cz = G2.connection(zz);
                            rec.delta[zz] = Y.compose_chain(
                                {sigp.mor[cz], dr, Y.inverse(sigt.mor[cz])});
                        }
                    }
                    recs.push_back(std::move(rec));
                    check_morphism_cap(static_cast<long>(recs.size()), caps,
                                       "dependent product");
                    int c = G2.num_components() - 1;
                    while (c >= 0 &&
                           ++digit[c] == static_cast<int>(comp_cands[c].size())) {
                        digit[c] = 0;
                        --c;
                    }
                    if (c < 0) break;
                }
            }
        }
    }

    GroupoidBuilder bld("prod");
    for (int z = 0; z < static_cast<int>(zkey_.size()); ++z)
        bld.add_object(padded_id("o", z, static_cast<int>(zkey_.size())));
    int extra = static_cast<int>(recs.size() - zkey_.size());
    int mi = 0;
    zmors_.resize(recs.size());
    for (const auto& rec : recs) {
        bool is_id = A.is_identity(rec.tau);
        if (is_id)
            for (int d : rec.delta)
                if (!Y.is_identity(d)) {
                    is_id = false;
                    break;
                }
        int mb;
        if (is_id) {
            mb = bld.identity_of(rec.src);
        } else {
            mb = bld.add_morphism(padded_id("m", mi, extra), rec.src, rec.tgt);
            ++mi;
        }
        ZMor& zm = zmors_[mb];
        zm.src = rec.src;
        zm.tgt = rec.tgt;
        zm.tau = rec.tau;
        zm.delta = rec.delta;
        std::vector<int> key;
        key.reserve(2 + rec.delta.size());
        key.push_back(rec.src);
        key.push_back(rec.tau);
        key.insert(key.end(), rec.delta.begin(), rec.delta.end());
        zmor_idx_[std::move(key)] = mb;
    }

    std::vector<std::vector<int>> out_by_src(zkey_.size());
    for (int mb = 0; mb < static_cast<int>(zmors_.size()); ++mb)
        out_by_src[zmors_[mb].src].push_back(mb);
    for (int m1 = 0; m1 < static_cast<int>(zmors_.size()); ++m1) {
        const ZMor& a1 = zmors_[m1];
        for (int m2 : out_by_src[a1.tgt]) {
            const ZMor& a2 = zmors_[m2];
            int tau = A.compose(a2.tau, a1.tau);
            int tau2inv = A.inverse(a2.tau);
            std::vector<int> key;
            key.reserve(2 + a2.delta.size());
            key.push_back(a1.src);
            key.push_back(tau);
            for (int o = 0; o < static_cast<int>(a2.delta.size()); ++o)
                key.push_back(
                    Y.compose(a2.delta[o], a1.delta[transport_obj(tau2inv, o)]));
            auto it = zmor_idx_.find(key);
            if (it == zmor_idx_.end())
                throw std::logic_error("dependent product: composite not found");
            bld.set_compose(m2, m1, it->second);
        }
    }

    fam_.base = f_.target;
    fam_.total = bld.finalize(&caps);
    fam_.proj.source = fam_.total;
    fam_.proj.target = f_.target;
    for (const auto& k : zkey_) fam_.proj.ob.push_back(k[0]);
    for (const auto& zm : zmors_) fam_.proj.mor.push_back(zm.tau);
}

void DepProd::build_fibre(int a, const Caps& caps) {
    const FinGroupoid& A = *f_.target;
    const FinGroupoid& B = *f_.source;
    Fibre& F = fibres_[a];

    long nobj = 0;
    for (int b = 0; b < B.num_objects(); ++b)
        nobj += static_cast<long>(A.hom(f_.ob[b], a).size());
    check_object_cap(nobj, caps, "dependent product fibre");

    GroupoidBuilder bld("fibre");
    for (int b = 0; b < B.num_objects(); ++b)
        for (int beta : A.hom(f_.ob[b], a)) {
            int o = bld.add_object(padded_id("o", static_cast<int>(F.obj_key.size()),
                                             static_cast<int>(nobj)));
            F.obj_idx[pack2(b, beta)] = o;
            F.obj_key.push_back({b, beta});
        }
    long nmor = 0;
    for (const auto& k : F.obj_key) nmor += static_cast<long>(B.out(k[0]).size());
    check_morphism_cap(nmor, caps, "dependent product fibre");
    int extra = static_cast<int>(nmor - nobj);
    int mi = 0;
    for (int o = 0; o < static_cast<int>(F.obj_key.size()); ++o) {
        auto [b, beta] = F.obj_key[o];
        for (int alpha : B.out(b)) {
            int m;
            if (B.is_identity(alpha)) {
                m = bld.identity_of(o);
            } else {
                int beta2 = A.compose(beta, A.inverse(f_.mor[alpha]));
                int o2 = F.obj_idx.at(pack2(B.tgt(alpha), beta2));
                m = bld.add_morphism(padded_id("m", mi, extra), o, o2);
                ++mi;
            }
            F.mor_idx[pack2(o, alpha)] = m;
            if (m >= static_cast<int>(F.mor_key.size())) F.mor_key.resize(m + 1);
            F.mor_key[m] = {o, alpha};
        }
    }
    for (int o = 0; o < static_cast<int>(F.obj_key.size()); ++o) {
        auto [b, beta] = F.obj_key[o];
        for (int a1 : B.out(b)) {
            int m1 = F.mor_idx.at(pack2(o, a1));
            int o2 = bld.tgt(m1);
            for (int a2 : B.out(B.tgt(a1)))
                bld.set_compose(F.mor_idx.at(pack2(o2, a2)), m1,
                                F.mor_idx.at(pack2(o, B.compose(a2, a1))));
        }
    }
    F.gpd = bld.finalize(&caps);
}

void DepProd::enumerate_sections(int a, const Caps& caps) {
    const FinGroupoid& B = *f_.source;
    const FinGroupoid& Y = *y_.total;
    const Fibre& F = fibres_[a];
    const FinGroupoid& G = *F.gpd;
    const GroupoidMap& q = y_.proj;

    // Per component, the partial sections on that component alone.
    struct Part {
        std::vector<std::array<int, 2>> obj;  // by fibre object, -1 outside
        std::vector<int> mor;                 // by fibre morphism, -1 outside
    };
    std::vector<std::vector<Part>> parts(G.num_components());
    std::vector<std::vector<int>> comp_mors(G.num_components());
    std::vector<int> comp_of(G.num_objects(), -1);
    for (int c = 0; c < G.num_components(); ++c)
        for (int x : G.component_objects(c)) comp_of[x] = c;
    for (int m = 0; m < G.num_morphisms(); ++m)
        comp_mors[comp_of[G.src(m)]].push_back(m);

    for (int c = 0; c < G.num_components(); ++c) {
        int r = G.component_rep(c);
        int br = F.obj_key[r][0];
        std::vector<int> loops;
        GroupTable ar = aut_table(G, r, &loops);
        std::vector<int> gens = minimal_generators(ar);
        std::vector<int> loop_pos(G.num_morphisms(), -1);
        for (int i = 0; i < static_cast<int>(loops.size()); ++i) loop_pos[loops[i]] = i;
        std::vector<int> others;
        for (int x : G.component_objects(c))
            if (x != r) others.push_back(x);

        for (int y0 = 0; y0 < Y.num_objects(); ++y0) {
            for (int alpha : B.hom(q.ob[y0], br)) {
                // Vertex-group lifts at the representative, one per group hom
                // compatible with the projection.
                std::vector<std::vector<int>> tables;
                if (discrete_) {
                    std::vector<int> t(ar.n, Y.identity(y0));
                    tables.push_back(std::move(t));
                } else {
                    std::vector<std::vector<int>> cand(gens.size());
                    bool any = true;
                    for (size_t gi = 0; gi < gens.size() && any; ++gi) {
                        int lam = loops[gens[gi]];
                        int alphab = F.mor_key[lam][1];
                        int req = B.compose_chain({B.inverse(alpha), alphab, alpha});
                        for (int d : Y.loops(y0)) {
                            if (q.mor[d] != req) continue;
                            if (ar.order_of(gens[gi]) % loop_order(Y, d) != 0) continue;
                            cand[gi].push_back(d);
                        }
                        if (cand[gi].empty()) any = false;
                    }
                    if (gens.empty()) {
                        tables.push_back(std::vector<int>{Y.identity(y0)});
                    } else if (any) {
                        std::vector<int> digit(gens.size(), 0);
                        while (true) {
                            std::vector<int> t(ar.n, -1);
                            t[0] = Y.identity(y0);
                            bool ok = true;
                            bool grew = true;
                            while (grew && ok) {
                                grew = false;
                                for (int g = 0; g < ar.n && ok; ++g) {
                                    if (t[g] < 0) continue;
                                    for (size_t gi = 0; gi < gens.size(); ++gi) {
                                        int h = ar.at(gens[gi], g);
                                        int val = Y.compose(cand[gi][digit[gi]], t[g]);
                                        if (t[h] < 0) {
                                            t[h] = val;
                                            grew = true;
                                        } else if (t[h] != val) {
                                            ok = false;
                                            break;
                                        }
                                    }
                                }
                            }
                            if (ok)
                                for (int i = 0; i < ar.n && ok; ++i)
                                    for (int j = 0; j < ar.n; ++j)
                                        if (t[ar.at(i, j)] != Y.compose(t[i], t[j])) {
                                            ok = false;
                                            break;
                                        }
                            if (ok) tables.push_back(std::move(t));
                            int gi = static_cast<int>(gens.size()) - 1;
                            while (gi >= 0 &&
                                   ++digit[gi] == static_cast<int>(cand[gi].size())) {
                                digit[gi] = 0;
                                --gi;
                            }
                            if (gi < 0) break;
                        }
                    }
                }

                for (const auto& t : tables) {
                    // Free transport choices at the non-representative objects.
                    std::vector<int> digit(others.size(), 0);
                    const auto& outy = Y.out(y0);
                    while (true) {
                        Part part;
                        part.obj.assign(G.num_objects(), {-1, -1});
                        part.mor.assign(G.num_morphisms(), -1);
                        std::vector<int> dvec(G.num_objects(), -1);
                        dvec[r] = Y.identity(y0);
                        part.obj[r] = {y0, alpha};
                        if (!discrete_) {
                            for (size_t i = 0; i < others.size(); ++i) {
                                int x = others[i];
                                int dx = outy[digit[i]];
                                dvec[x] = dx;
                                int ab = F.mor_key[G.connection(x)][1];
                                part.obj[x] = {
                                    Y.tgt(dx),
                                    B.compose_chain({ab, alpha, B.inverse(q.mor[dx])})};
                            }
                        } else {
                            for (int x : others) {
                                dvec[x] = Y.identity(y0);
                                int ab = F.mor_key[G.connection(x)][1];
                                part.obj[x] = {y0, B.compose(ab, alpha)};
                            }
                        }
                        for (int m : comp_mors[c]) {
                            int o = G.src(m), o1 = G.tgt(m);
                            int lam = G.compose_chain(
                                {G.inverse(G.connection(o1)), m, G.connection(o)});
                            part.mor[m] = Y.compose_chain(
                                {dvec[o1], t[loop_pos[lam]], Y.inverse(dvec[o])});
                        }
                        parts[c].push_back(std::move(part));
                        check_section_cap(static_cast<long>(parts[c].size()), caps,
                                          "dependent product");
                        if (discrete_ || others.empty()) break;
                        int i = static_cast<int>(others.size()) - 1;
                        while (i >= 0 && ++digit[i] == static_cast<int>(outy.size())) {
                            digit[i] = 0;
                            --i;
                        }
                        if (i < 0) break;
                    }
                    if (discrete_) break;  // single trivial table
                }
            }
        }
    }

    // Combine one part per component.
    long total = 1;
    for (int c = 0; c < G.num_components(); ++c) {
        total *= static_cast<long>(parts[c].size());
        if (total == 0) break;
        check_section_cap(total, caps, "dependent product");
    }
    if (G.num_components() == 0) total = 1;
    std::vector<int> digit(G.num_components(), 0);
    for (long k = 0; k < total; ++k) {
        Section s;
        s.obj.assign(G.num_objects(), {-1, -1});
        s.mor.assign(G.num_morphisms(), -1);
        for (int c = 0; c < G.num_components(); ++c) {
            const Part& p = parts[c][digit[c]];
            for (int x : G.component_objects(c)) s.obj[x] = p.obj[x];
            for (int m : comp_mors[c]) s.mor[m] = p.mor[m];
        }
        std::vector<int> key;
        key.reserve(s.obj.size() * 2 + s.mor.size());
        for (const auto& o : s.obj) {
            key.push_back(o[0]);
            key.push_back(o[1]);
        }
        key.insert(key.end(), s.mor.begin(), s.mor.end());
        section_idx_[a][key] = static_cast<int>(sections_[a].size());
        sections_[a].push_back(std::move(s));
        int c = G.num_components() - 1;
        while (c >= 0 && ++digit[c] == static_cast<int>(parts[c].size())) {
            digit[c] = 0;
            --c;
        }
        if (c < 0) break;
    }
}

int DepProd::find_section(int a, const Section& s) const {
    std::vector<int> key;
    key.reserve(s.obj.size() * 2 + s.mor.size());
    for (const auto& o : s.obj) {
        key.push_back(o[0]);
        key.push_back(o[1]);
    }
    key.insert(key.end(), s.mor.begin(), s.mor.end());
    auto it = section_idx_[a].find(key);
    return it == section_idx_[a].end() ? -1 : it->second;
}

int DepProd::find_z_morphism(int src, int tau, const std::vector<int>& delta) const {
    std::vector<int> key;
    key.reserve(2 + delta.size());
    key.push_back(src);
    key.push_back(tau);
    key.insert(key.end(), delta.begin(), delta.end());
    auto it = zmor_idx_.find(key);
    return it == zmor_idx_.end() ? -1 : it->second;
}

int DepProd::transport_obj(int tau, int fibre_obj) const {
    const FinGroupoid& A = *f_.target;
    const Fibre& from = fibres_[A.src(tau)];
    auto [b, beta] = from.obj_key[fibre_obj];
    return fibres_[A.tgt(tau)].obj_idx.at(pack2(b, A.compose(tau, beta)));
}

int DepProd::transport_mor(int tau, int fibre_mor) const {
    const FinGroupoid& A = *f_.target;
    const Fibre& from = fibres_[A.src(tau)];
    auto [o, alpha] = from.mor_key[fibre_mor];
    return fibres_[A.tgt(tau)].mor_idx.at(pack2(transport_obj(tau, o), alpha));
}

}  // namespace grpoly
