#include "grpoly/groups.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "grpoly/builders.hpp"

namespace grpoly {

int GroupTable::inverse(int a) const {
    for (int b = 0; b < n; ++b)
        if (at(a, b) == 0 && at(b, a) == 0) return b;
    return -1;
}

int GroupTable::order_of(int a) const {
    int x = a, k = 1;
    while (x != 0) {
        x = at(a, x);
        ++k;
        if (k > n) return -1;
    }
    return k;
}

bool GroupTable::valid() const {
    if (n <= 0 || static_cast<int>(mul.size()) != n * n) return false;
    for (int a = 0; a < n; ++a)
        if (at(0, a) != a || at(a, 0) != a) return false;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int ab = at(a, b);
            if (ab < 0 || ab >= n) return false;
            for (int c = 0; c < n; ++c)
                if (at(at(a, b), c) != at(a, at(b, c))) return false;
        }
    for (int a = 0; a < n; ++a)
        if (inverse(a) < 0) return false;
    return true;
}

GroupTable GroupTable::trivial() { return GroupTable{}; }

GroupTable GroupTable::cyclic(int k) {
    GroupTable g;
    g.n = k;
    g.mul.resize(static_cast<size_t>(k) * k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) g.mul[a * k + b] = (a + b) % k;
    return g;
}

GroupTable GroupTable::symmetric(int k) {
    if (k < 0 || k > 5) throw validation_error("symmetric group table limited to k <= 5");
    std::vector<std::vector<int>> perms;
    std::vector<int> p(k);
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
    GroupTable g;
    g.n = static_cast<int>(perms.size());
    g.mul.resize(static_cast<size_t>(g.n) * g.n);
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b) {
            std::vector<int> c(k);
            for (int i = 0; i < k; ++i) c[i] = perms[a][perms[b][i]];
            g.mul[a * g.n + b] = index[c];
        }
    return g;
}

GroupTable GroupTable::klein() { return product(cyclic(2), cyclic(2)); }

GroupTable GroupTable::dihedral(int k) {
    // Elements (r, s) = r in Z_k, s in {0,1}; (a,s)(b,t) uses s-twisted addition.
    GroupTable g;
    g.n = 2 * k;
    g.mul.resize(static_cast<size_t>(g.n) * g.n);
    auto enc = [&](int r, int s) { return s * k + ((r % k) + k) % k; };
    for (int s = 0; s < 2; ++s)
        for (int r = 0; r < k; ++r)
            for (int t = 0; t < 2; ++t)
                for (int q = 0; q < k; ++q) {
                    int rr = s ? r - q : r + q;
                    g.mul[enc(r, s) * g.n + enc(q, t)] = enc(rr, s ^ t);
                }
    return g;
}

GroupTable GroupTable::product(const GroupTable& a, const GroupTable& b) {
    GroupTable g;
    g.n = a.n * b.n;
    g.mul.resize(static_cast<size_t>(g.n) * g.n);
    auto enc = [&](int x, int y) { return x * b.n + y; };
    for (int x1 = 0; x1 < a.n; ++x1)
        for (int y1 = 0; y1 < b.n; ++y1)
            for (int x2 = 0; x2 < a.n; ++x2)
                for (int y2 = 0; y2 < b.n; ++y2)
                    g.mul[enc(x1, y1) * g.n + enc(x2, y2)] =
                        enc(a.at(x1, x2), b.at(y1, y2));
    return g;
}

namespace {

std::vector<char> closure(const GroupTable& g, const std::vector<int>& gens) {
    std::vector<char> in(g.n, 0);
    in[0] = 1;
    std::vector<int> frontier = {0};
    for (int x : gens)
        if (!in[x]) {
            in[x] = 1;
            frontier.push_back(x);
        }
    for (size_t i = 0; i < frontier.size(); ++i) {
        for (int x : gens) {
            int y = g.at(frontier[i], x);
            if (!in[y]) {
                in[y] = 1;
                frontier.push_back(y);
            }
            y = g.at(x, frontier[i]);
            if (!in[y]) {
                in[y] = 1;
                frontier.push_back(y);
            }
        }
    }
    return in;
}

// Extends gen images to a full homomorphism via left-multiplication words;
// returns false if the result is not an isomorphism.
bool try_images(const GroupTable& a, const GroupTable& b, const std::vector<int>& gens,
                const std::vector<int>& imgs, std::vector<int>& out) {
    out.assign(a.n, -1);
    out[0] = 0;
    std::vector<int> frontier = {0};
    for (size_t i = 0; i < gens.size(); ++i) {
        if (out[gens[i]] >= 0) {
            if (out[gens[i]] != imgs[i]) return false;
            continue;
        }
        out[gens[i]] = imgs[i];
        frontier.push_back(gens[i]);
    }
    for (size_t i = 0; i < frontier.size(); ++i) {
        for (size_t j = 0; j < gens.size(); ++j) {
            int x = a.at(gens[j], frontier[i]);
            int y = b.at(imgs[j], out[frontier[i]]);
            if (out[x] < 0) {
                out[x] = y;
                frontier.push_back(x);
            } else if (out[x] != y) {
                return false;
            }
        }
    }
    std::vector<char> used(b.n, 0);
    for (int x = 0; x < a.n; ++x) {
        if (out[x] < 0) return false;
        if (used[out[x]]) return false;
        used[out[x]] = 1;
    }
    for (int x = 0; x < a.n; ++x)
        for (int y = 0; y < a.n; ++y)
            if (out[a.at(x, y)] != b.at(out[x], out[y])) return false;
    return true;
}

bool search(const GroupTable& a, const GroupTable& b, const std::vector<int>& gens,
            size_t k, std::vector<int>& imgs, std::vector<int>& out) {
    if (k == gens.size()) return try_images(a, b, gens, imgs, out);
    int want = a.order_of(gens[k]);
    for (int cand = 0; cand < b.n; ++cand) {
        if (b.order_of(cand) != want) continue;
        imgs[k] = cand;
        if (search(a, b, gens, k + 1, imgs, out)) return true;
    }
    return false;
}

}  // namespace

std::vector<int> minimal_generators(const GroupTable& g) {
    std::vector<int> gens;
    std::vector<char> in = closure(g, gens);
    for (int x = 1; x < g.n; ++x) {
        if (in[x]) continue;
        gens.push_back(x);
        in = closure(g, gens);
    }
    return gens;
}

bool groups_isomorphic(const GroupTable& a, const GroupTable& b, std::vector<int>* iso_out) {
    if (a.n != b.n) return false;
    std::vector<int> prof_a(a.n), prof_b(b.n);
    for (int x = 0; x < a.n; ++x) prof_a[x] = a.order_of(x);
    for (int x = 0; x < b.n; ++x) prof_b[x] = b.order_of(x);
    auto sa = prof_a, sb = prof_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
    std::vector<int> gens = minimal_generators(a);
    std::vector<int> imgs(gens.size()), out;
    if (!search(a, b, gens, 0, imgs, out)) return false;
    if (iso_out) *iso_out = out;
    return true;
}

GroupTable aut_table(const FinGroupoid& g, int x, std::vector<int>* loops_out) {
    std::vector<int> loops;
    loops.push_back(g.identity(x));
    for (int m : g.loops(x))
        if (m != g.identity(x)) loops.push_back(m);
    std::unordered_map<int, int> idx;
    for (size_t i = 0; i < loops.size(); ++i) idx[loops[i]] = static_cast<int>(i);
    GroupTable t;
    t.n = static_cast<int>(loops.size());
    t.mul.assign(static_cast<size_t>(t.n) * t.n, -1);
    for (int a = 0; a < t.n; ++a)
        for (int b = 0; b < t.n; ++b) {
            int c = g.compose(loops[a], loops[b]);
            auto it = c < 0 ? idx.end() : idx.find(c);
            if (it == idx.end())
                throw validation_error("vertex group not closed at '" + g.object_id(x) + "'");
            t.mul[a * t.n + b] = it->second;
        }
    if (loops_out) *loops_out = loops;
    return t;
}

GroupoidPtr aut_group(const FinGroupoid& g, int x) {
    return one_object_groupoid(aut_table(g, x), "aut_" + g.object_id(x));
}

}  // namespace grpoly
