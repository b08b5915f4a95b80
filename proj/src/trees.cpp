#include "grpoly/trees.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace grpoly {

namespace {

bool is_point(const FinGroupoid& g) {
    return g.num_objects() == 1 && g.num_morphisms() == 1;
}

// Edge-indexed view of a tree: who consumes and who produces each edge.
struct TreeIndex {
    std::map<std::string, int> edge_idx;
    std::vector<int> consumer;       // node consuming the edge, -1 for the root
    std::vector<int> consumer_slot;  // position among that node's inputs
    std::vector<int> producer;       // node producing the edge, -1 for a leaf
    int root = -1;
};

TreeIndex index_tree(const TreeDiagram& t) {
    TreeIndex ix;
    for (size_t e = 0; e < t.edges.size(); ++e)
        ix.edge_idx[t.edges[e]] = static_cast<int>(e);
    ix.consumer.assign(t.edges.size(), -1);
    ix.consumer_slot.assign(t.edges.size(), -1);
    ix.producer.assign(t.edges.size(), -1);
    for (size_t n = 0; n < t.nodes.size(); ++n) {
        ix.producer[ix.edge_idx.at(t.nodes[n].out_edge)] = static_cast<int>(n);
        for (size_t i = 0; i < t.nodes[n].in_edges.size(); ++i) {
            int e = ix.edge_idx.at(t.nodes[n].in_edges[i]);
            ix.consumer[e] = static_cast<int>(n);
            ix.consumer_slot[e] = static_cast<int>(i);
        }
    }
    for (size_t e = 0; e < t.edges.size(); ++e)
        if (ix.consumer[e] < 0) ix.root = static_cast<int>(e);
    return ix;
}

}  // namespace

ValidationReport validate_tree(const TreeDiagram& t) {
    ValidationReport rep;
    if (t.edges.empty()) {
        rep.fail("a tree has at least its root edge");
        return rep;
    }
    std::set<std::string> ids;
    for (const auto& e : t.edges) {
        if (e.empty()) rep.fail("empty edge identifier");
        if (!ids.insert(e).second) rep.fail("duplicate edge '" + e + "'");
    }
    if (!rep.ok) return rep;

    std::set<std::string> outs, ins;
    for (const auto& n : t.nodes) {
        if (!ids.count(n.out_edge)) {
            rep.fail("unknown edge '" + n.out_edge + "'");
            return rep;
        }
        if (!outs.insert(n.out_edge).second)
            rep.fail("edge '" + n.out_edge + "' is produced twice");
        for (const auto& e : n.in_edges) {
            if (!ids.count(e)) {
                rep.fail("unknown edge '" + e + "'");
                return rep;
            }
            if (!ins.insert(e).second)
                rep.fail("edge '" + e + "' is consumed twice");
        }
    }
    if (!rep.ok) return rep;

    int roots = 0;
    for (const auto& e : t.edges)
        if (!ins.count(e)) ++roots;
    if (roots != 1) {
        rep.fail("a tree has exactly one root edge, found " + std::to_string(roots));
        return rep;
    }

    // every edge must walk down to the root in finitely many steps
    auto ix = index_tree(t);
    int ne = static_cast<int>(t.edges.size());
    for (int e = 0; e < ne; ++e) {
        int cur = e, steps = 0;
        while (ix.consumer[cur] >= 0 && steps <= ne) {
            cur = ix.edge_idx.at(t.nodes[ix.consumer[cur]].out_edge);
            ++steps;
        }
        if (steps > ne) {
            rep.fail("edge '" + t.edges[e] + "' never reaches the root");
            return rep;
        }
    }
    return rep;
}

TreeStats tree_stats(const TreeDiagram& t) {
    auto ix = index_tree(t);
    TreeStats st;
    st.root = t.edges[ix.root];
    st.node_count = static_cast<int>(t.nodes.size());
    st.edge_count = static_cast<int>(t.edges.size());
    for (size_t e = 0; e < t.edges.size(); ++e)
        if (ix.producer[e] < 0) st.leaves.push_back(t.edges[e]);
    for (size_t e = 0; e < t.edges.size(); ++e) {
        int cur = static_cast<int>(e), steps = 0;
        while (ix.consumer[cur] >= 0) {
            cur = ix.edge_idx.at(t.nodes[ix.consumer[cur]].out_edge);
            ++steps;
        }
        st.depth = std::max(st.depth, steps);
    }
    return st;
}

ValidationReport validate_ptree(const PTree& pt, const Caps& caps) {
    ValidationReport rep = validate_tree(pt.tree);
    if (!rep.ok) return rep;
    rep.merge(validate_polynomial(pt.poly));
    if (!rep.ok) return rep;
    if (pt.poly.I.get() != pt.poly.J.get()) {
        rep.fail("the two ends of the diagram must coincide");
        return rep;
    }
    const FinGroupoid& I = *pt.poly.I;
    const FinGroupoid& E = *pt.poly.E;
    const FinGroupoid& B = *pt.poly.B;
    size_t ne = pt.tree.edges.size(), nn = pt.tree.nodes.size();
    if (pt.edge_dec.size() != ne || pt.node_dec.size() != nn ||
        pt.slots.size() != nn || pt.out_cell.size() != nn) {
        rep.fail("decoration tables do not match the tree");
        return rep;
    }
    auto ix = index_tree(pt.tree);
    for (size_t e = 0; e < ne; ++e)
        if (pt.edge_dec[e] < 0 || pt.edge_dec[e] >= I.num_objects()) {
            rep.fail("edge colour out of range");
            return rep;
        }
    for (size_t n = 0; n < nn; ++n) {
        const auto& nd = pt.tree.nodes[n];
        if (pt.node_dec[n] < 0 || pt.node_dec[n] >= B.num_objects()) {
            rep.fail("node shape out of range");
            return rep;
        }
        if (pt.slots[n].size() != nd.in_edges.size()) {
            rep.fail("slot table does not match the node inputs");
            return rep;
        }
        int oc = pt.out_cell[n];
        int oe = ix.edge_idx.at(nd.out_edge);
        if (oc < 0 || oc >= I.num_morphisms() || I.src(oc) != pt.edge_dec[oe] ||
            I.tgt(oc) != pt.poly.t.ob[pt.node_dec[n]]) {
            rep.fail("output cell of a node is not typed correctly");
            return rep;
        }
        auto fib = homotopy_fibre(pt.poly.p, pt.node_dec[n], caps);
        int k = fib.gpd->num_components();
        for (int c = 0; c < k; ++c)
            if (fib.gpd->loops(fib.gpd->component_rep(c)).size() != 1) {
                rep.fail("a shape fibre is not discrete");
                return rep;
            }
        if (static_cast<int>(nd.in_edges.size()) != k) {
            rep.fail("node arity differs from the number of shape positions");
            return rep;
        }
        std::map<std::pair<int, int>, int> fidx;
        for (size_t o = 0; o < fib.obj_key.size(); ++o)
            fidx[{fib.obj_key[o][0], fib.obj_key[o][1]}] = static_cast<int>(o);
        std::set<int> seen;
        for (size_t i = 0; i < pt.slots[n].size(); ++i) {
            const auto& sl = pt.slots[n][i];
            if (sl.e < 0 || sl.e >= E.num_objects() || sl.beta < 0 ||
                sl.beta >= B.num_morphisms() || sl.phi < 0 ||
                sl.phi >= I.num_morphisms()) {
                rep.fail("slot entry out of range");
                return rep;
            }
            if (B.src(sl.beta) != pt.poly.p.ob[sl.e] ||
                B.tgt(sl.beta) != pt.node_dec[n]) {
                rep.fail("slot comparison morphism is not typed correctly");
                return rep;
            }
            int ein = ix.edge_idx.at(nd.in_edges[i]);
            if (I.src(sl.phi) != pt.edge_dec[ein] ||
                I.tgt(sl.phi) != pt.poly.s.ob[sl.e]) {
                rep.fail("slot colour morphism is not typed correctly");
                return rep;
            }
            int fo = fidx.at({sl.e, B.inverse(sl.beta)});
            seen.insert(fib.gpd->component_of(fo));
        }
        if (static_cast<int>(seen.size()) != k) {
            rep.fail("node inputs do not cover the shape positions");
            return rep;
        }
    }
    return rep;
}

namespace {

// Witnesses from a to b above a fixed matching of one edge: slot bijections,
// shape morphisms per node and position morphisms per slot, subject to the
// compatibility equations. The colour morphism of a consumed edge is forced by
// its slot; the equation at the node closing an edge checks it.
struct WitnessCounter {
    const PTree& a;
    const PTree& b;
    TreeIndex ia, ib;
    const FinGroupoid* I;
    const FinGroupoid* E;
    const FinGroupoid* B;

    // iota < 0: the edge colour morphism is unconstrained (root edge).
    long match_edge(int ea, int eb, int iota) {
        int na = ia.producer[ea], nb = ib.producer[eb];
        if ((na < 0) != (nb < 0)) return 0;
        if (na < 0) return 1;
        const auto& qa = a.tree.nodes[na];
        const auto& qb = b.tree.nodes[nb];
        int k = static_cast<int>(qa.in_edges.size());
        if (static_cast<int>(qb.in_edges.size()) != k) return 0;
        long total = 0;
        std::vector<int> pi(k);
        std::iota(pi.begin(), pi.end(), 0);
        do {
            for (int eta : B->hom(a.node_dec[na], b.node_dec[nb])) {
                if (iota >= 0) {
                    int lhs = I->compose(a.poly.t.mor[eta], a.out_cell[na]);
                    int rhs = I->compose(b.out_cell[nb], iota);
                    if (lhs != rhs) continue;
                }
                long prod = 1;
                for (int i = 0; i < k && prod > 0; ++i) {
                    const auto& sa = a.slots[na][i];
                    const auto& sb = b.slots[nb][pi[i]];
                    long sum = 0;
                    for (int eps : E->hom(sa.e, sb.e)) {
                        if (B->compose(sb.beta, a.poly.p.mor[eps]) !=
                            B->compose(eta, sa.beta))
                            continue;
                        int child_iota = I->compose_chain(
                            {I->inverse(sb.phi), a.poly.s.mor[eps], sa.phi});
                        sum += match_edge(ia.edge_idx.at(qa.in_edges[i]),
                                          ib.edge_idx.at(qb.in_edges[pi[i]]),
                                          child_iota);
                    }
                    prod *= sum;
                }
                total += prod;
            }
        } while (std::next_permutation(pi.begin(), pi.end()));
        return total;
    }
};

long count_witnesses(const PTree& a, const PTree& b, const Caps& caps) {
    if (a.poly.I.get() != b.poly.I.get() || a.poly.E.get() != b.poly.E.get() ||
        a.poly.B.get() != b.poly.B.get())
        throw validation_error("the trees are decorated in different diagrams");
    auto va = validate_ptree(a, caps);
    if (!va.ok) throw validation_error("left tree: " + va.errors.front());
    auto vb = validate_ptree(b, caps);
    if (!vb.ok) throw validation_error("right tree: " + vb.errors.front());
    if (a.tree.edges.size() != b.tree.edges.size() ||
        a.tree.nodes.size() != b.tree.nodes.size())
        return 0;
    WitnessCounter wc{a, b, index_tree(a.tree), index_tree(b.tree),
                      a.poly.I.get(), a.poly.E.get(), a.poly.B.get()};
    if (wc.ia.producer[wc.ia.root] < 0 && wc.ib.producer[wc.ib.root] < 0)
        return static_cast<long>(
            a.poly.I->hom(a.edge_dec[wc.ia.root], b.edge_dec[wc.ib.root]).size());
    return wc.match_edge(wc.ia.root, wc.ib.root, -1);
}

}  // namespace

bool ptree_isomorphic(const PTree& a, const PTree& b, const Caps& caps) {
    return count_witnesses(a, b, caps) > 0;
}

long ptree_aut_order(const PTree& pt, const Caps& caps) {
    return count_witnesses(pt, pt, caps);
}

namespace {

struct ClassRec {
    int edges = 0;
    long aut = 1;
    int bcomp = -1;  // -1 for the bare edge
    std::vector<int> childs;
    std::string form;
};

struct Enumerator {
    PolyDiagram P;
    const Caps& caps;
    std::vector<int> brep;                        // B-object per component
    std::vector<FibreResult> fibs;                // fibre per component
    std::vector<int> arity;                       // positions per component
    std::vector<std::vector<std::vector<int>>> perms;  // shape symmetries on positions
    std::vector<ClassRec> classes;

    void prepare() {
        const FinGroupoid& Bg = *P.B;
        for (int c = 0; c < Bg.num_components(); ++c) {
            int b = Bg.component_rep(c);
            brep.push_back(b);
            fibs.push_back(homotopy_fibre(P.p, b, caps));
            const auto& fib = fibs.back();
            int k = fib.gpd->num_components();
            for (int q = 0; q < k; ++q)
                if (fib.gpd->loops(fib.gpd->component_rep(q)).size() != 1)
                    throw validation_error(
                        "enumerate_ptrees: a shape fibre is not discrete");
            arity.push_back(k);
            auto act = fibre_aut_action(fibs.back(), P.p, b);
            std::vector<std::vector<int>> ps;
            for (int g = 0; g < act.grp.n; ++g) {
                std::vector<int> pi(k);
                for (int q = 0; q < k; ++q)
                    pi[q] = fib.gpd->component_of(act.ob[g][fib.gpd->component_rep(q)]);
                ps.push_back(std::move(pi));
            }
            perms.push_back(std::move(ps));
        }
    }

    void add_node_classes(int e) {
        for (size_t c = 0; c < brep.size(); ++c) {
            int k = arity[c];
            if (e == 1 && k != 0) continue;
            if (e > 1 && k == 0) continue;
            std::vector<int> tuple(k);
            gen(static_cast<int>(c), tuple, 0, e - 1);
        }
    }

    void gen(int c, std::vector<int>& tuple, int pos, int remaining) {
        int k = arity[c];
        if (pos == k) {
            if (remaining != 0) return;
            finish(c, tuple);
            return;
        }
        int slots_left = k - pos - 1;
        for (size_t t = 0; t < classes.size(); ++t) {
            int ce = classes[t].edges;
            if (ce > remaining - slots_left) break;  // classes are edge-sorted
            tuple[pos] = static_cast<int>(t);
            gen(c, tuple, pos + 1, remaining - ce);
        }
    }

    void finish(int c, const std::vector<int>& tuple) {
        int k = arity[c];
        long stab = 0;
        std::vector<int> img(k);
        for (const auto& pi : perms[c]) {
            for (int i = 0; i < k; ++i) img[pi[i]] = tuple[i];
            if (img < tuple) return;  // not the least tuple in its orbit
            if (img == tuple) ++stab;
        }
        ClassRec rec;
        rec.bcomp = c;
        rec.childs = tuple;
        rec.edges = 1;
        rec.aut = stab;
        rec.form = "n" + std::to_string(c) + "(";
        for (int i = 0; i < k; ++i) {
            rec.edges += classes[tuple[i]].edges;
            rec.aut *= classes[tuple[i]].aut;
            if (i) rec.form += ",";
            rec.form += classes[tuple[i]].form;
        }
        rec.form += ")";
        classes.push_back(std::move(rec));
        check_object_cap(static_cast<long>(classes.size()), caps, "tree enumeration");
    }

    PTree materialize(int cid) {
        PTree pt;
        pt.poly = P;
        int next_edge = 0;
        std::queue<std::pair<int, int>> work;  // (class, its root edge)
        pt.tree.edges.push_back("e" + std::to_string(next_edge++));
        work.push({cid, 0});
        while (!work.empty()) {
            auto [c, eidx] = work.front();
            work.pop();
            const ClassRec& rec = classes[c];
            if (rec.bcomp < 0) continue;
            TreeDiagram::Node nd;
            nd.out_edge = pt.tree.edges[eidx];
            const auto& fib = fibs[rec.bcomp];
            std::vector<PTree::Slot> sl;
            for (size_t i = 0; i < rec.childs.size(); ++i) {
                int ein = next_edge++;
                pt.tree.edges.push_back("e" + std::to_string(ein));
                nd.in_edges.push_back(pt.tree.edges[ein]);
                int fo = fib.gpd->component_rep(static_cast<int>(i));
                PTree::Slot s;
                s.e = fib.obj_key[fo][0];
                s.beta = P.B->inverse(fib.obj_key[fo][1]);
                s.phi = P.I->identity(0);
                sl.push_back(s);
                work.push({rec.childs[i], ein});
            }
            pt.tree.nodes.push_back(std::move(nd));
            pt.node_dec.push_back(brep[rec.bcomp]);
            pt.slots.push_back(std::move(sl));
            pt.out_cell.push_back(P.I->identity(0));
        }
        pt.edge_dec.assign(pt.tree.edges.size(), 0);
        return pt;
    }
};

}  // namespace

std::vector<PTreeClass> enumerate_ptrees(const PolyDiagram& P, int max_edges,
                                         const Caps& caps) {
    auto vr = validate_polynomial(P);
    if (!vr.ok) throw validation_error("enumerate_ptrees: " + vr.errors.front());
    if (!is_point(*P.I) || !is_point(*P.J))
        throw validation_error("enumerate_ptrees: the diagram ends must be points");
    Enumerator en{P, caps};
    if (en.P.J.get() != en.P.I.get()) {
        en.P.J = en.P.I;
        en.P.t = constant_map(en.P.B, en.P.I, 0);
    }
    en.prepare();
    std::vector<PTreeClass> out;
    if (max_edges < 1) return out;
    ClassRec bare;
    bare.edges = 1;
    bare.aut = 1;
    bare.form = "*";
    en.classes.push_back(bare);
    for (int e = 1; e <= max_edges; ++e) en.add_node_classes(e);
    // classes were discovered in edge order except the bare edge heads the list
    std::vector<int> order(en.classes.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return en.classes[x].edges < en.classes[y].edges;
    });
    for (int cid : order) {
        PTreeClass row;
        row.edges = en.classes[cid].edges;
        row.aut = en.classes[cid].aut;
        row.form = en.classes[cid].form;
        row.rep = en.materialize(cid);
        out.push_back(std::move(row));
    }
    return out;
}

namespace {

struct OracleTree {
    std::string canon;
    long aut = 1;
};

OracleTree oracle_canon(int v, const std::vector<std::vector<int>>& children) {
    std::vector<OracleTree> subs;
    for (int c : children[v]) subs.push_back(oracle_canon(c, children));
    std::sort(subs.begin(), subs.end(),
              [](const OracleTree& x, const OracleTree& y) { return x.canon < y.canon; });
    OracleTree res;
    res.canon = "(";
    long run = 1;
    for (size_t i = 0; i < subs.size(); ++i) {
        res.canon += subs[i].canon;
        res.aut *= subs[i].aut;
        if (i > 0 && subs[i].canon == subs[i - 1].canon)
            ++run;
        else
            run = 1;
        res.aut *= run;  // builds the factorial of each equal-run length
    }
    res.canon += ")";
    return res;
}

long count_bracket_words(int pairs) {
    // ordered trees by direct recursive generation of balanced words
    std::function<long(int, int)> go = [&](int open, int depth) -> long {
        if (open == pairs && depth == 0) return 1;
        long n = 0;
        if (open < pairs) n += go(open + 1, depth + 1);
        if (depth > 0) n += go(open, depth - 1);
        return n;
    };
    return go(0, 0);
}

}  // namespace

std::vector<TreeOracleRow> naive_tree_oracle(const std::string& flavor, int max_edges) {
    if (max_edges > 7)
        throw validation_error("naive_tree_oracle: supported up to 7 edges");
    std::vector<TreeOracleRow> rows;
    for (int v = 1; v <= max_edges; ++v) {
        TreeOracleRow row;
        row.edges = v;
        if (flavor == "linear") {
            row.count = 1;
            row.auts = {1};
        } else if (flavor == "planar") {
            row.count = count_bracket_words(v - 1);
            row.auts.assign(row.count, 1);
        } else if (flavor == "abstract") {
            // every rooted tree on v vertices appears among the parent arrays
            // with parent[i] < i; classes are merged by canonical form
            std::map<std::string, long> by_canon;
            std::vector<int> parent(v, -1);
            std::function<void(int)> walk = [&](int i) {
                if (i == v) {
                    std::vector<std::vector<int>> children(v);
                    for (int j = 1; j < v; ++j) children[parent[j]].push_back(j);
                    auto t = oracle_canon(0, children);
                    by_canon[t.canon] = t.aut;
                    return;
                }
                for (int p = 0; p < i; ++p) {
                    parent[i] = p;
                    walk(i + 1);
                }
            };
            walk(1);
            row.count = static_cast<long>(by_canon.size());
            for (const auto& [c, a] : by_canon) row.auts.push_back(a);
            std::sort(row.auts.begin(), row.auts.end());
        } else {
            throw validation_error("naive_tree_oracle: unknown flavor '" + flavor + "'");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace grpoly
