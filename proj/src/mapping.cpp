#include "grpoly/mapping.hpp"

#include <algorithm>
#include <map>

#include "grpoly/groups.hpp"

namespace grpoly {

namespace {

// All group homomorphisms A -> B, each as a full element map, enumerated
// deterministically via generator images.
std::vector<std::vector<int>> all_homs(const GroupTable& a, const GroupTable& b) {
    std::vector<int> gens = minimal_generators(a);
    std::vector<std::vector<int>> out;
    std::vector<int> imgs(gens.size(), 0);
    auto expand = [&](const std::vector<int>& chosen, std::vector<int>& full) {
        full.assign(a.n, -1);
        full[0] = 0;
        std::vector<int> frontier = {0};
        for (size_t i = 0; i < gens.size(); ++i) {
            if (full[gens[i]] >= 0) {
                if (full[gens[i]] != chosen[i]) return false;
                continue;
            }
            full[gens[i]] = chosen[i];
            frontier.push_back(gens[i]);
        }
        for (size_t i = 0; i < frontier.size(); ++i)
            for (size_t j = 0; j < gens.size(); ++j) {
                int x = a.at(gens[j], frontier[i]);
                int y = b.at(chosen[j], full[frontier[i]]);
                if (full[x] < 0) {
                    full[x] = y;
                    frontier.push_back(x);
                } else if (full[x] != y) {
                    return false;
                }
            }
        for (int x = 0; x < a.n; ++x)
            if (full[x] < 0) return false;
        for (int x = 0; x < a.n; ++x)
            for (int y = 0; y < a.n; ++y)
                if (full[a.at(x, y)] != b.at(full[x], full[y])) return false;
        return true;
    };
    if (gens.empty()) {
        std::vector<int> full;
        if (expand({}, full)) out.push_back(full);
        return out;
    }
    std::vector<size_t> pos(gens.size(), 0);
    // Mixed-radix enumeration over candidate images (all elements of b whose
    // order divides the generator's order).
    std::vector<std::vector<int>> cands(gens.size());
    for (size_t i = 0; i < gens.size(); ++i) {
        int og = a.order_of(gens[i]);
        for (int e = 0; e < b.n; ++e)
            if (og % b.order_of(e) == 0) cands[i].push_back(e);
    }
    std::vector<int> chosen(gens.size());
    size_t total = 1;
    for (const auto& c : cands) total *= c.size();
    for (size_t t = 0; t < total; ++t) {
        size_t rem = t;
        for (size_t i = gens.size(); i-- > 0;) {
            chosen[i] = cands[i][rem % cands[i].size()];
            rem /= cands[i].size();
        }
        std::vector<int> full;
        if (expand(chosen, full)) out.push_back(full);
    }
    return out;
}

}  // namespace

MappingGroupoid mapping_groupoid(GroupoidPtr source, GroupoidPtr target, const Caps& caps) {
    const FinGroupoid& s = *source;
    const FinGroupoid& t = *target;

    // Per component: candidate functor restrictions, parameterized by the
    // image of the representative, a vertex-group homomorphism, and an
    // arbitrary target morphism for each non-representative object.
    struct CompFunctor {
        std::vector<int> ob;   // per source object (unset outside component)
        std::vector<int> mor;  // per source morphism
    };
    std::vector<std::vector<CompFunctor>> per_comp(s.num_components());
    for (int c = 0; c < s.num_components(); ++c) {
        int r = s.component_rep(c);
        std::vector<int> loops_r;
        GroupTable ar = aut_table(s, r, &loops_r);
        std::unordered_map<int, int> loop_idx;
        for (size_t i = 0; i < loops_r.size(); ++i) loop_idx[loops_r[i]] = static_cast<int>(i);
        std::vector<int> others;
        for (int x : s.component_objects(c))
            if (x != r) others.push_back(x);

        for (int y0 = 0; y0 < t.num_objects(); ++y0) {
            std::vector<int> loops_y;
            GroupTable ay = aut_table(t, y0, &loops_y);
            auto homs = all_homs(ar, ay);
            for (const auto& rho : homs) {
                // Mixed-radix over u_x choices (any morphism out of y0).
                std::vector<const std::vector<int>*> uc;
                bool empty = false;
                for (int x : others) {
                    (void)x;
                    uc.push_back(&t.out(y0));
                    if (t.out(y0).empty()) empty = true;
                }
                if (empty) continue;
                long total = 1;
                for (auto* v : uc) {
                    total *= static_cast<long>(v->size());
                    if (total > caps.max_objects)
                        throw cap_error("mapping groupoid: functor count exceeds cap " +
                                        std::to_string(caps.max_objects));
                }
                for (long pick = 0; pick < total; ++pick) {
                    CompFunctor cf;
                    cf.ob.assign(s.num_objects(), -1);
                    cf.mor.assign(s.num_morphisms(), -1);
                    cf.ob[r] = y0;
                    std::vector<int> u(s.num_objects(), -1);
                    u[r] = t.identity(y0);
                    long rem = pick;
                    for (size_t i = others.size(); i-- > 0;) {
                        const auto& v = *uc[i];
                        u[others[i]] = v[rem % v.size()];
                        rem /= static_cast<long>(v.size());
                        cf.ob[others[i]] = t.tgt(u[others[i]]);
                    }
                    bool good = true;
                    for (int x : s.component_objects(c)) {
                        for (int m : s.out(x)) {
                            int y = s.tgt(m);
                            int loop = s.compose_chain({s.inverse(s.connection(y)), m,
                                                        s.connection(x)});
                            int rho_loop = loops_y[rho[loop_idx[loop]]];
                            int img = t.compose_chain({u[y], rho_loop, t.inverse(u[x])});
                            if (img < 0) {
                                good = false;
                                break;
                            }
                            cf.mor[m] = img;
                        }
                        if (!good) break;
                    }
                    if (good) per_comp[c].push_back(std::move(cf));
                }
            }
        }
    }

    long nfun = 1;
    for (const auto& v : per_comp) {
        nfun *= static_cast<long>(v.size());
        if (nfun > caps.max_objects)
            throw cap_error("mapping groupoid: functor count exceeds cap " +
                            std::to_string(caps.max_objects));
        if (nfun == 0) break;
    }

    MappingGroupoid mg;
    for (long pick = 0; pick < nfun; ++pick) {
        GroupoidMap f;
        f.source = source;
        f.target = target;
        f.ob.assign(s.num_objects(), -1);
        f.mor.assign(s.num_morphisms(), -1);
        long rem = pick;
        for (int c = s.num_components(); c-- > 0;) {
            const auto& cf = per_comp[c][rem % per_comp[c].size()];
            rem /= static_cast<long>(per_comp[c].size());
            for (int x : s.component_objects(c)) {
                f.ob[x] = cf.ob[x];
                for (int m : s.out(x)) f.mor[m] = cf.mor[m];
            }
        }
        mg.functors.push_back(std::move(f));
    }
    std::sort(mg.functors.begin(), mg.functors.end(),
              [](const GroupoidMap& a, const GroupoidMap& b) {
                  if (a.ob != b.ob) return a.ob < b.ob;
                  return a.mor < b.mor;
              });

    // Natural transformations F => G, assembled from representative components.
    struct CellRec {
        int from, to;
        std::vector<int> comp;
    };
    std::vector<CellRec> cells;
    long identity_count = static_cast<long>(mg.functors.size());
    long cell_count = 0;
    for (size_t fi = 0; fi < mg.functors.size(); ++fi) {
        for (size_t gi = 0; gi < mg.functors.size(); ++gi) {
            const GroupoidMap& f = mg.functors[fi];
            const GroupoidMap& g = mg.functors[gi];
            std::vector<std::vector<int>> per_comp_eta(s.num_components());
            bool any = true;
            for (int c = 0; c < s.num_components() && any; ++c) {
                int r = s.component_rep(c);
                for (int cand : t.hom(f.ob[r], g.ob[r])) {
                    bool nat = true;
                    for (int m : s.loops(r)) {
                        if (t.compose(g.mor[m], cand) != t.compose(cand, f.mor[m])) {
                            nat = false;
                            break;
                        }
                    }
                    if (nat) per_comp_eta[c].push_back(cand);
                }
                if (per_comp_eta[c].empty()) any = false;
            }
            if (!any) continue;
            long total = 1;
            for (const auto& v : per_comp_eta) {
                total *= static_cast<long>(v.size());
                if (cell_count + total > caps.max_morphisms)
                    throw cap_error("mapping groupoid: cell count exceeds cap " +
                                    std::to_string(caps.max_morphisms));
            }
            for (long pick = 0; pick < total; ++pick) {
                CellRec rec;
                rec.from = static_cast<int>(fi);
                rec.to = static_cast<int>(gi);
                rec.comp.assign(s.num_objects(), -1);
                long rem = pick;
                for (int c = s.num_components(); c-- > 0;) {
                    int eta_r = per_comp_eta[c][rem % per_comp_eta[c].size()];
                    rem /= static_cast<long>(per_comp_eta[c].size());
                    for (int x : s.component_objects(c)) {
                        int cx = s.connection(x);
                        rec.comp[x] = t.compose_chain({g.mor[cx], eta_r, t.inverse(f.mor[cx])});
                    }
                }
                cells.push_back(std::move(rec));
                ++cell_count;
            }
        }
    }
    (void)identity_count;

    // Build the groupoid. Identity cells coincide with object identities.
    GroupoidBuilder b("mapping");
    int nf = static_cast<int>(mg.functors.size());
    for (int i = 0; i < nf; ++i) b.add_object(padded_id("f", i, nf));
    std::map<std::pair<int, std::vector<int>>, int> cell_index;  // (from, comps) -> morphism
    mg.cells.resize(mg.functors.size());
    std::vector<int> mor_of_cell(cells.size(), -1);
    int extra = 0;
    for (const auto& rec : cells) {
        bool is_id = rec.from == rec.to;
        if (is_id)
            for (int x = 0; x < s.num_objects(); ++x)
                if (rec.comp[x] != t.identity(mg.functors[rec.from].ob[x])) {
                    is_id = false;
                    break;
                }
        if (!is_id) ++extra;
    }
    int mi = 0;
    mg.cells.assign(static_cast<size_t>(nf) + extra, {});
    for (size_t i = 0; i < cells.size(); ++i) {
        const auto& rec = cells[i];
        bool is_id = rec.from == rec.to;
        if (is_id)
            for (int x = 0; x < s.num_objects(); ++x)
                if (rec.comp[x] != t.identity(mg.functors[rec.from].ob[x])) {
                    is_id = false;
                    break;
                }
        int m;
        if (is_id) {
            m = b.identity_of(rec.from);
        } else {
            m = b.add_morphism(padded_id("n", mi, extra), rec.from, rec.to);
            ++mi;
        }
        mor_of_cell[i] = m;
        if (m >= static_cast<int>(mg.cells.size())) mg.cells.resize(m + 1);
        mg.cells[static_cast<size_t>(m)] = rec.comp;
        cell_index[{rec.from, rec.comp}] = m;
    }
    for (size_t i = 0; i < cells.size(); ++i) {
        for (size_t j = 0; j < cells.size(); ++j) {
            if (cells[j].from != cells[i].to) continue;
            std::vector<int> comp(s.num_objects());
            for (int x = 0; x < s.num_objects(); ++x)
                comp[x] = t.compose(cells[j].comp[x], cells[i].comp[x]);
            auto it = cell_index.find({cells[i].from, comp});
            if (it == cell_index.end())
                throw validation_error("internal: mapping groupoid not closed under composition");
            b.set_compose(mor_of_cell[j], mor_of_cell[i], it->second);
        }
    }
    mg.gpd = b.finalize(&caps);
    return mg;
}

}  // namespace grpoly
