#include "grpoly/groupoid.hpp"

#include <algorithm>
#include <numeric>

namespace grpoly {

bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                  (c >= '0' && c <= '9') || c == '_';
        if (!ok) return false;
    }
    return true;
}

std::string padded_id(const std::string& prefix, int index, int count) {
    int width = 1;
    for (long v = std::max(0, count - 1); v >= 10; v /= 10) ++width;
    std::string digits = std::to_string(index);
    std::string out = prefix;
    out.append(static_cast<size_t>(width) - std::min<size_t>(width, digits.size()), '0');
    out += digits;
    return out;
}

int FinGroupoid::compose_chain(std::initializer_list<int> outer_first) const {
    int acc = -1;
    bool first = true;
    for (int m : outer_first) {
        if (first) {
            acc = m;
            first = false;
            continue;
        }
        acc = compose(acc, m);
        if (acc < 0) throw validation_error("missing composite in chain");
    }
    return acc;
}

const std::vector<int>& FinGroupoid::hom(int x, int y) const {
    static const std::vector<int> empty;
    auto it = hom_.find(key(x, y));
    return it == hom_.end() ? empty : it->second;
}

Rat FinGroupoid::cardinality() const {
    Rat total;
    for (int c = 0; c < num_components(); ++c) {
        int r = comp_reps_[c];
        total += Rat(1, static_cast<long>(loops(r).size()));
    }
    return total;
}

GroupoidBuilder::GroupoidBuilder(std::string name)
    : g_(std::shared_ptr<FinGroupoid>(new FinGroupoid())) {
    g_->name_ = std::move(name);
}

int GroupoidBuilder::add_object(const std::string& id) {
    return add_object_with_identity(id, "id_" + id);
}

int GroupoidBuilder::add_object_with_identity(const std::string& id,
                                              const std::string& identity_id) {
    if (g_->obj_index_.count(id))
        throw validation_error("duplicate object identifier '" + id + "'");
    int x = g_->num_objects();
    g_->objects_.push_back(id);
    g_->obj_index_[id] = x;
    g_->identity_.push_back(-1);
    int e = add_morphism(identity_id, x, x);
    g_->identity_[x] = e;
    return x;
}

int GroupoidBuilder::add_morphism(const std::string& id, int src, int tgt) {
    if (g_->mor_index_.count(id))
        throw validation_error("duplicate morphism identifier '" + id + "'");
    if (src < 0 || src >= g_->num_objects() || tgt < 0 || tgt >= g_->num_objects())
        throw validation_error("morphism '" + id + "' has dangling endpoint");
    int m = g_->num_morphisms();
    g_->morphs_.push_back(Morph{id, src, tgt});
    g_->mor_index_[id] = m;
    return m;
}

void GroupoidBuilder::set_compose(int g, int f, int gf) {
    if (g_->morphs_[f].tgt != g_->morphs_[g].src)
        throw validation_error("composition entry for non-composable pair ('" +
                               g_->morphs_[g].id + "' after '" + g_->morphs_[f].id + "')");
    g_->table_[FinGroupoid::key(g, f)] = gf;
}

GroupoidPtr GroupoidBuilder::finalize(const Caps* caps) {
    FinGroupoid& g = *g_;
    int nobj = g.num_objects();
    int nmor = g.num_morphisms();
    if (caps) {
        check_object_cap(nobj, *caps, g.name_);
        check_morphism_cap(nmor, *caps, g.name_);
    }

    for (int m = 0; m < nmor; ++m) {
        const Morph& mm = g.morphs_[m];
        int ide_t = g.identity_[mm.tgt];
        int ide_s = g.identity_[mm.src];
        g.table_.emplace(FinGroupoid::key(ide_t, m), m);
        g.table_.emplace(FinGroupoid::key(m, ide_s), m);
    }

    g.out_.assign(nobj, {});
    g.in_.assign(nobj, {});
    for (int m = 0; m < nmor; ++m) {
        g.out_[g.morphs_[m].src].push_back(m);
        g.in_[g.morphs_[m].tgt].push_back(m);
        g.hom_[FinGroupoid::key(g.morphs_[m].src, g.morphs_[m].tgt)].push_back(m);
    }

    g.inverse_.assign(nmor, -1);
    for (int m = 0; m < nmor; ++m) {
        const Morph& mm = g.morphs_[m];
        for (int n : g.hom(mm.tgt, mm.src)) {
            if (g.compose(n, m) == g.identity_[mm.src] &&
                g.compose(m, n) == g.identity_[mm.tgt]) {
                g.inverse_[m] = n;
                break;
            }
        }
    }

    // Connected components; representative is the lexicographically least
    // object identifier, components ordered by representative.
    std::vector<int> parent(nobj);
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<int> root(nobj);
    auto find = [&](int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    };
    for (int m = 0; m < nmor; ++m) {
        int a = find(g.morphs_[m].src), b = find(g.morphs_[m].tgt);
        if (a != b) parent[a] = b;
    }
    std::vector<int> rep_of_root(nobj, -1);
    for (int x = 0; x < nobj; ++x) {
        int r = find(x);
        root[x] = r;
        int& best = rep_of_root[r];
        if (best < 0 || g.objects_[x] < g.objects_[best]) best = x;
    }
    std::vector<int> reps;
    for (int x = 0; x < nobj; ++x)
        if (rep_of_root[root[x]] == x) reps.push_back(x);
    std::sort(reps.begin(), reps.end(),
              [&](int a, int b) { return g.objects_[a] < g.objects_[b]; });
    g.comp_reps_ = reps;
    g.comp_of_.assign(nobj, -1);
    std::unordered_map<int, int> comp_of_root;
    for (int c = 0; c < static_cast<int>(reps.size()); ++c)
        comp_of_root[root[reps[c]]] = c;
    g.comp_objs_.assign(reps.size(), {});
    for (int x = 0; x < nobj; ++x) {
        int c = comp_of_root[root[x]];
        g.comp_of_[x] = c;
        g.comp_objs_[c].push_back(x);
    }

    // Connection morphisms: identity at the representative, otherwise the
    // lexicographically least morphism rep -> x.
    g.connection_.assign(nobj, -1);
    for (int x = 0; x < nobj; ++x) {
        int r = g.comp_reps_[g.comp_of_[x]];
        if (x == r) {
            g.connection_[x] = g.identity_[x];
            continue;
        }
        int best = -1;
        for (int m : g.hom(r, x))
            if (best < 0 || g.morphs_[m].id < g.morphs_[best].id) best = m;
        g.connection_[x] = best;
    }

    GroupoidPtr out = g_;
    g_.reset();
    return out;
}

ValidationReport validate_groupoid(const FinGroupoid& g) {
    ValidationReport rep;
    constexpr size_t kMaxErrors = 64;
    auto fail = [&](std::string msg) {
        if (rep.errors.size() < kMaxErrors) rep.fail(std::move(msg));
        else rep.ok = false;
    };

    for (int x = 0; x < g.num_objects(); ++x)
        if (!valid_identifier(g.object_id(x)))
            fail("object identifier '" + g.object_id(x) + "' is not [A-Za-z0-9_]+");
    for (int m = 0; m < g.num_morphisms(); ++m)
        if (!valid_identifier(g.morph_id(m)))
            fail("morphism identifier '" + g.morph_id(m) + "' is not [A-Za-z0-9_]+");

    for (int x = 0; x < g.num_objects(); ++x) {
        int e = g.identity(x);
        if (e < 0) {
            fail("object '" + g.object_id(x) + "' has no identity morphism");
            continue;
        }
        for (int m : g.out(x))
            if (g.compose(m, e) != m)
                fail("identity law fails: '" + g.morph_id(m) + "' after '" +
                     g.morph_id(e) + "' is not '" + g.morph_id(m) + "'");
        for (int m : g.in(x))
            if (g.compose(e, m) != m)
                fail("identity law fails: '" + g.morph_id(e) + "' after '" +
                     g.morph_id(m) + "'");
    }

    for (int f = 0; f < g.num_morphisms(); ++f) {
        for (int h : g.out(g.tgt(f))) {
            int c = g.compose(h, f);
            if (c < 0) {
                fail("missing composite '" + g.morph_id(h) + "' after '" +
                     g.morph_id(f) + "'");
            } else if (g.src(c) != g.src(f) || g.tgt(c) != g.tgt(h)) {
                fail("composite '" + g.morph_id(h) + "' after '" + g.morph_id(f) +
                     "' = '" + g.morph_id(c) + "' has wrong endpoints");
            }
        }
    }

    for (int f = 0; f < g.num_morphisms(); ++f) {
        for (int h : g.out(g.tgt(f))) {
            int hf = g.compose(h, f);
            if (hf < 0) continue;
            for (int k : g.out(g.tgt(h))) {
                int kh = g.compose(k, h);
                if (kh < 0) continue;
                int a = g.compose(k, hf), b = g.compose(kh, f);
                if (a != b)
                    fail("associativity fails on ('" + g.morph_id(k) + "','" +
                         g.morph_id(h) + "','" + g.morph_id(f) + "')");
            }
        }
    }

    for (int m = 0; m < g.num_morphisms(); ++m)
        if (g.inverse(m) < 0)
            fail("no inverse for morphism '" + g.morph_id(m) + "'");

    for (int m = 0; m < g.num_morphisms(); ++m) {
        if (g.src(m) != g.tgt(m) || g.is_identity(m)) continue;
        if (g.compose(m, m) == m)
            fail("morphism '" + g.morph_id(m) + "' is idempotent but not an identity ('" +
                 g.morph_id(m) + "' after itself equals itself, which forces it to be "
                 "the identity in a groupoid)");
    }

    return rep;
}

std::vector<std::vector<int>> pi0(const FinGroupoid& g) {
    std::vector<std::vector<int>> parts(g.num_components());
    for (int c = 0; c < g.num_components(); ++c) parts[c] = g.component_objects(c);
    return parts;
}

}  // namespace grpoly
