#include "grpoly/gmap.hpp"

#include <algorithm>

namespace grpoly {

GroupoidMap identity_map(GroupoidPtr g) {
    GroupoidMap f;
    f.source = f.target = g;
    f.ob.resize(g->num_objects());
    f.mor.resize(g->num_morphisms());
    for (int x = 0; x < g->num_objects(); ++x) f.ob[x] = x;
    for (int m = 0; m < g->num_morphisms(); ++m) f.mor[m] = m;
    return f;
}

GroupoidMap compose_maps(const GroupoidMap& g, const GroupoidMap& f) {
    if (f.target.get() != g.source.get())
        throw validation_error("functor composition endpoint mismatch");
    GroupoidMap h;
    h.source = f.source;
    h.target = g.target;
    h.ob.resize(f.ob.size());
    h.mor.resize(f.mor.size());
    for (size_t x = 0; x < f.ob.size(); ++x) h.ob[x] = g.ob[f.ob[x]];
    for (size_t m = 0; m < f.mor.size(); ++m) h.mor[m] = g.mor[f.mor[m]];
    return h;
}

GroupoidMap constant_map(GroupoidPtr src, GroupoidPtr tgt, int obj) {
    GroupoidMap f;
    f.source = src;
    f.target = tgt;
    f.ob.assign(src->num_objects(), obj);
    f.mor.assign(src->num_morphisms(), tgt->identity(obj));
    return f;
}

bool maps_equal(const GroupoidMap& a, const GroupoidMap& b) {
    return a.source.get() == b.source.get() && a.target.get() == b.target.get() &&
           a.ob == b.ob && a.mor == b.mor;
}

ValidationReport validate_map(const GroupoidMap& f) {
    ValidationReport rep;
    const FinGroupoid& s = *f.source;
    const FinGroupoid& t = *f.target;
    if (static_cast<int>(f.ob.size()) != s.num_objects() ||
        static_cast<int>(f.mor.size()) != s.num_morphisms()) {
        rep.fail("functor tables have wrong size");
        return rep;
    }
    for (int x = 0; x < s.num_objects(); ++x)
        if (f.ob[x] < 0 || f.ob[x] >= t.num_objects()) {
            rep.fail("object image out of range for '" + s.object_id(x) + "'");
            return rep;
        }
    for (int m = 0; m < s.num_morphisms(); ++m) {
        if (f.mor[m] < 0 || f.mor[m] >= t.num_morphisms()) {
            rep.fail("morphism image out of range for '" + s.morph_id(m) + "'");
            return rep;
        }
        if (t.src(f.mor[m]) != f.ob[s.src(m)] || t.tgt(f.mor[m]) != f.ob[s.tgt(m)])
            rep.fail("image of '" + s.morph_id(m) + "' has wrong endpoints");
    }
    if (!rep.ok) return rep;
    for (int x = 0; x < s.num_objects(); ++x)
        if (f.mor[s.identity(x)] != t.identity(f.ob[x]))
            rep.fail("identity at '" + s.object_id(x) + "' not sent to an identity");
    for (int m = 0; m < s.num_morphisms(); ++m) {
        for (int n : s.out(s.tgt(m))) {
            int nm = s.compose(n, m);
            if (nm < 0) continue;
            if (t.compose(f.mor[n], f.mor[m]) != f.mor[nm]) {
                rep.fail("composition not preserved on ('" + s.morph_id(n) + "','" +
                         s.morph_id(m) + "')");
                if (rep.errors.size() > 32) return rep;
            }
        }
    }
    return rep;
}

ValidationReport validate_two_cell(const TwoCell& c) {
    ValidationReport rep;
    const GroupoidMap& f = c.lhs;
    const GroupoidMap& g = c.rhs;
    if (f.source.get() != g.source.get() || f.target.get() != g.target.get()) {
        rep.fail("two-cell between non-parallel functors");
        return rep;
    }
    const FinGroupoid& s = *f.source;
    const FinGroupoid& t = *f.target;
    if (static_cast<int>(c.comp.size()) != s.num_objects()) {
        rep.fail("two-cell component table has wrong size");
        return rep;
    }
    for (int x = 0; x < s.num_objects(); ++x) {
        int m = c.comp[x];
        if (m < 0 || m >= t.num_morphisms() || t.src(m) != f.ob[x] || t.tgt(m) != g.ob[x]) {
            rep.fail("component at '" + s.object_id(x) + "' has wrong endpoints");
            return rep;
        }
    }
    for (int m = 0; m < s.num_morphisms(); ++m) {
        int a = t.compose(g.mor[m], c.comp[s.src(m)]);
        int b = t.compose(c.comp[s.tgt(m)], f.mor[m]);
        if (a < 0 || a != b)
            rep.fail("naturality fails at '" + s.morph_id(m) + "'");
    }
    return rep;
}

TwoCell identity_cell(const GroupoidMap& f) {
    TwoCell c;
    c.lhs = c.rhs = f;
    c.comp.resize(f.ob.size());
    for (size_t x = 0; x < f.ob.size(); ++x) c.comp[x] = f.target->identity(f.ob[x]);
    return c;
}

TwoCell invert_cell(const TwoCell& c) {
    TwoCell r;
    r.lhs = c.rhs;
    r.rhs = c.lhs;
    r.comp.resize(c.comp.size());
    for (size_t x = 0; x < c.comp.size(); ++x) {
        int inv = c.lhs.target->inverse(c.comp[x]);
        if (inv < 0) throw validation_error("two-cell component has no inverse");
        r.comp[x] = inv;
    }
    return r;
}

TwoCell vcompose(const TwoCell& later, const TwoCell& first) {
    if (!maps_equal(first.rhs, later.lhs))
        throw validation_error("two-cell vertical composition mismatch");
    TwoCell r;
    r.lhs = first.lhs;
    r.rhs = later.rhs;
    r.comp.resize(first.comp.size());
    const FinGroupoid& t = *first.lhs.target;
    for (size_t x = 0; x < first.comp.size(); ++x) {
        int m = t.compose(later.comp[x], first.comp[x]);
        if (m < 0) throw validation_error("two-cell components do not compose");
        r.comp[x] = m;
    }
    return r;
}

TwoCell whisker_left(const GroupoidMap& h, const TwoCell& c) {
    TwoCell r;
    r.lhs = compose_maps(h, c.lhs);
    r.rhs = compose_maps(h, c.rhs);
    r.comp.resize(c.comp.size());
    for (size_t x = 0; x < c.comp.size(); ++x) r.comp[x] = h.mor[c.comp[x]];
    return r;
}

TwoCell whisker_right(const TwoCell& c, const GroupoidMap& k) {
    TwoCell r;
    r.lhs = compose_maps(c.lhs, k);
    r.rhs = compose_maps(c.rhs, k);
    r.comp.resize(k.ob.size());
    for (size_t x = 0; x < k.ob.size(); ++x) r.comp[x] = c.comp[k.ob[x]];
    return r;
}

std::optional<TwoCell> find_two_cell(const GroupoidMap& f, const GroupoidMap& g) {
    if (f.source.get() != g.source.get() || f.target.get() != g.target.get())
        return std::nullopt;
    const FinGroupoid& s = *f.source;
    const FinGroupoid& t = *f.target;
    std::vector<int> comp(s.num_objects(), -1);
    for (int c = 0; c < s.num_components(); ++c) {
        int r = s.component_rep(c);
        bool found = false;
        for (int cand : t.hom(f.ob[r], g.ob[r])) {
            // Propagate along connections, then verify naturality on the
            // whole component.
            bool good = true;
            for (int x : s.component_objects(c)) {
                int cx = s.connection(x);
                int m = t.compose_chain({g.mor[cx], cand, t.inverse(f.mor[cx])});
                comp[x] = m;
            }
            for (int x : s.component_objects(c)) {
                for (int m : s.out(x)) {
                    int a = t.compose(g.mor[m], comp[x]);
                    int b = t.compose(comp[s.tgt(m)], f.mor[m]);
                    if (a < 0 || a != b) {
                        good = false;
                        break;
                    }
                }
                if (!good) break;
            }
            if (good) {
                found = true;
                break;
            }
        }
        if (!found) return std::nullopt;
    }
    TwoCell cell;
    cell.lhs = f;
    cell.rhs = g;
    cell.comp = std::move(comp);
    return cell;
}

EquivalenceCheck is_equivalence_functor(const GroupoidMap& f) {
    const FinGroupoid& s = *f.source;
    const FinGroupoid& t = *f.target;
    std::vector<char> hit(t.num_components(), 0);
    for (int x = 0; x < s.num_objects(); ++x) hit[t.component_of(f.ob[x])] = 1;
    for (int c = 0; c < t.num_components(); ++c)
        if (!hit[c])
            return {false, "not essentially surjective: component of '" +
                               t.object_id(t.component_rep(c)) + "' is missed"};
    std::vector<int> image_comp(s.num_components());
    for (int c = 0; c < s.num_components(); ++c)
        image_comp[c] = t.component_of(f.ob[s.component_rep(c)]);
    {
        std::vector<int> seen(t.num_components(), -1);
        for (int c = 0; c < s.num_components(); ++c) {
            int ic = image_comp[c];
            if (seen[ic] >= 0)
                return {false, "components of '" +
                                   s.object_id(s.component_rep(seen[ic])) + "' and '" +
                                   s.object_id(s.component_rep(c)) +
                                   "' collapse to one component"};
            seen[ic] = c;
        }
    }
    for (int c = 0; c < s.num_components(); ++c) {
        int r = s.component_rep(c);
        const auto& loops = s.loops(r);
        const auto& tloops = t.loops(f.ob[r]);
        std::vector<char> used(t.num_morphisms(), 0);
        for (int m : loops) {
            if (used[f.mor[m]])
                return {false, "not faithful on vertex group at '" + s.object_id(r) + "'"};
            used[f.mor[m]] = 1;
        }
        if (loops.size() != tloops.size())
            return {false, "vertex group sizes differ at '" + s.object_id(r) + "' (" +
                               std::to_string(loops.size()) + " vs " +
                               std::to_string(tloops.size()) + ")"};
    }
    return {true, ""};
}

QuasiInverse quasi_inverse(const GroupoidMap& f) {
    auto chk = is_equivalence_functor(f);
    if (!chk.ok) throw validation_error("not an equivalence: " + chk.reason);
    const FinGroupoid& s = *f.source;
    const FinGroupoid& t = *f.target;

    // One chosen source object per target component, plus a chosen morphism
    // from its image to the component representative.
    std::vector<int> pre(t.num_components(), -1), mu(t.num_components(), -1);
    for (int x = 0; x < s.num_objects(); ++x) {
        int c = t.component_of(f.ob[x]);
        if (pre[c] < 0) pre[c] = x;
    }
    for (int c = 0; c < t.num_components(); ++c) {
        int r = t.component_rep(c);
        const auto& h = t.hom(f.ob[pre[c]], r);
        if (h.empty()) throw validation_error("internal: missing connecting morphism");
        mu[c] = h[0];
    }

    GroupoidMap psi;
    psi.source = f.target;
    psi.target = f.source;
    psi.ob.assign(t.num_objects(), -1);
    psi.mor.assign(t.num_morphisms(), -1);
    // eps components nu_a : f(psi(a)) -> a, natural by construction.
    std::vector<int> nu(t.num_objects(), -1);
    for (int a = 0; a < t.num_objects(); ++a) {
        int c = t.component_of(a);
        psi.ob[a] = pre[c];
        nu[a] = t.compose(t.connection(a), mu[c]);
        if (nu[a] < 0) throw validation_error("internal: connection composite missing");
    }
    auto preimage = [&](int x, int y, int target_mor) {
        for (int n : s.hom(x, y))
            if (f.mor[n] == target_mor) return n;
        return -1;
    };
    for (int m = 0; m < t.num_morphisms(); ++m) {
        int a = t.src(m), b = t.tgt(m);
        int want = t.compose_chain({t.inverse(nu[b]), m, nu[a]});
        int n = preimage(psi.ob[a], psi.ob[b], want);
        if (n < 0) throw validation_error("not full: no preimage for '" + t.morph_id(m) + "'");
        psi.mor[m] = n;
    }

    QuasiInverse qi;
    qi.psi = psi;
    qi.eps.lhs = compose_maps(f, psi);
    qi.eps.rhs = identity_map(f.target);
    qi.eps.comp = nu;
    qi.eta.lhs = compose_maps(psi, f);
    qi.eta.rhs = identity_map(f.source);
    qi.eta.comp.assign(s.num_objects(), -1);
    for (int x = 0; x < s.num_objects(); ++x) {
        int u = preimage(psi.ob[f.ob[x]], x, nu[f.ob[x]]);
        if (u < 0) throw validation_error("not full: unit component missing");
        qi.eta.comp[x] = u;
    }
    return qi;
}

}  // namespace grpoly
