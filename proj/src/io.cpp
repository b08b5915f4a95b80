#include "grpoly/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <utility>
#include <vector>

#include "json.hpp"

#include "grpoly/builders.hpp"
#include "grpoly/groups.hpp"

namespace grpoly {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json read_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw parse_error(path + ": " + e.what());
    }
}

std::string dir_of(const std::string& path) {
    return fs::path(path).parent_path().string();
}

std::string join_dir(const std::string& base_dir, const std::string& rel) {
    fs::path p(rel);
    if (p.is_absolute() || base_dir.empty()) return rel;
    return (fs::path(base_dir) / p).string();
}

std::string canon(const std::string& path) {
    std::error_code ec;
    auto c = fs::weakly_canonical(fs::path(path), ec);
    return ec ? path : c.string();
}

const json& need(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key))
        throw parse_error(where + ": missing field '" + key + "'");
    return j.at(key);
}

std::string need_str(const json& j, const char* key, const std::string& where) {
    const json& v = need(j, key, where);
    if (!v.is_string())
        throw parse_error(where + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

int need_int(const json& j, const char* key, const std::string& where) {
    const json& v = need(j, key, where);
    if (!v.is_number_integer())
        throw parse_error(where + ": field '" + key + "' must be an integer");
    return v.get<int>();
}

int opt_int(const json& j, const char* key, int dflt, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) return dflt;
    const json& v = j.at(key);
    if (!v.is_number_integer())
        throw parse_error(where + ": field '" + key + "' must be an integer");
    return v.get<int>();
}

void need_ident(const std::string& s, const std::string& where) {
    if (!valid_identifier(s))
        throw parse_error(where + ": invalid identifier '" + s + "'");
}

// ---------------------------------------------------------------- groupoids

GroupoidPtr groupoid_from_json(const json& j, const std::string& where,
                               const std::string& name) {
    if (!j.is_object()) throw parse_error(where + ": groupoid must be an object");
    const json& jo = need(j, "objects", where);
    const json& jm = need(j, "morphisms", where);
    const json& jc = need(j, "compose", where);
    if (!jo.is_array() || !jm.is_array() || !jc.is_array())
        throw parse_error(where + ": objects/morphisms/compose must be arrays");

    std::vector<std::string> objs;
    for (const auto& v : jo) {
        if (!v.is_string()) throw parse_error(where + ": object entries must be strings");
        need_ident(v.get<std::string>(), where);
        objs.push_back(v.get<std::string>());
    }
    std::sort(objs.begin(), objs.end());

    struct MorRow {
        std::string id, src, tgt;
    };
    std::vector<MorRow> mors;
    for (const auto& v : jm) {
        MorRow r;
        r.id = need_str(v, "id", where + ".morphisms");
        r.src = need_str(v, "src", where + ".morphisms");
        r.tgt = need_str(v, "tgt", where + ".morphisms");
        need_ident(r.id, where);
        mors.push_back(std::move(r));
    }
    std::sort(mors.begin(), mors.end(),
              [](const MorRow& a, const MorRow& b) { return a.id < b.id; });

    GroupoidBuilder b(name);
    for (const auto& o : objs) b.add_object(o);
    for (const auto& r : mors) {
        int s = b.object_index(r.src), t = b.object_index(r.tgt);
        if (s < 0)
            throw validation_error(where + ": morphism '" + r.id +
                                   "' has unknown source object '" + r.src + "'");
        if (t < 0)
            throw validation_error(where + ": morphism '" + r.id +
                                   "' has unknown target object '" + r.tgt + "'");
        b.add_morphism(r.id, s, t);
    }

    std::map<std::pair<int, int>, int> seen;
    for (const auto& v : jc) {
        if (!v.is_array() || v.size() != 3)
            throw parse_error(where + ": compose entries must be [g, f, gf] triples");
        int idx[3];
        for (int i = 0; i < 3; ++i) {
            if (!v[i].is_string())
                throw parse_error(where + ": compose entries must name morphisms");
            idx[i] = b.morph_index(v[i].get<std::string>());
            if (idx[i] < 0)
                throw validation_error(where + ": compose entry names unknown morphism '" +
                                       v[i].get<std::string>() + "'");
        }
        auto key = std::make_pair(idx[0], idx[1]);
        auto it = seen.find(key);
        if (it != seen.end()) {
            if (it->second != idx[2])
                throw validation_error(where + ": conflicting compose entries for ('" +
                                       v[0].get<std::string>() + "', '" +
                                       v[1].get<std::string>() + "')");
            continue;
        }
        seen.emplace(key, idx[2]);
        b.set_compose(idx[0], idx[1], idx[2]);
    }
    return b.finalize();
}

GroupoidPtr builtin_groupoid(const json& j, const std::string& where) {
    std::string name = need_str(j, "builtin", where);
    if (name == "point") return trivial_groupoid();
    if (name == "discrete") return discrete_n(need_int(j, "n", where));
    if (name == "cyclic_group") {
        int n = need_int(j, "n", where);
        if (n < 1) throw validation_error(where + ": cyclic_group needs n >= 1");
        return one_object_groupoid(GroupTable::cyclic(n), "C" + std::to_string(n));
    }
    if (name == "symmetric_group") {
        int n = need_int(j, "n", where);
        if (n < 1 || n > 5)
            throw validation_error(where + ": symmetric_group supports n in 1..5");
        return one_object_groupoid(GroupTable::symmetric(n), "S" + std::to_string(n));
    }
    throw parse_error(where + ": unknown groupoid builtin '" + name + "'");
}

GroupoidPtr resolve_groupoid(const json& ref, const std::string& base_dir,
                             LoadContext& ctx, const std::string& where) {
    if (ref.is_string()) {
        std::string path = join_dir(base_dir, ref.get<std::string>());
        std::string key = canon(path);
        auto it = ctx.groupoid_cache.find(key);
        if (it != ctx.groupoid_cache.end()) return it->second;
        json j = read_json(path);
        GroupoidPtr g = j.is_object() && j.contains("builtin")
                            ? builtin_groupoid(j, path)
                            : groupoid_from_json(j, path, fs::path(path).stem().string());
        ctx.groupoid_cache.emplace(key, g);
        return g;
    }
    if (ref.is_object()) {
        if (ref.contains("builtin")) return builtin_groupoid(ref, where);
        return groupoid_from_json(ref, where, "inline");
    }
    throw parse_error(where + ": groupoid reference must be a path or an object");
}

// --------------------------------------------------------------------- maps

GroupoidMap map_body_from_json(const json& j, GroupoidPtr src, GroupoidPtr tgt,
                               const std::string& where) {
    GroupoidMap m;
    m.source = src;
    m.target = tgt;
    m.ob.assign(src->num_objects(), -1);
    m.mor.assign(src->num_morphisms(), -1);

    const json& om = need(j, "object_map", where);
    if (!om.is_object()) throw parse_error(where + ": object_map must be an object");
    for (auto it = om.begin(); it != om.end(); ++it) {
        int x = src->object_index(it.key());
        if (x < 0)
            throw validation_error(where + ": object_map names unknown source object '" +
                                   it.key() + "'");
        if (!it.value().is_string())
            throw parse_error(where + ": object_map values must be strings");
        int y = tgt->object_index(it.value().get<std::string>());
        if (y < 0)
            throw validation_error(where + ": object_map sends '" + it.key() +
                                   "' to unknown target object '" +
                                   it.value().get<std::string>() + "'");
        m.ob[x] = y;
    }
    for (int x = 0; x < src->num_objects(); ++x)
        if (m.ob[x] < 0)
            throw validation_error(where + ": object_map is missing '" +
                                   src->object_id(x) + "'");

    if (j.contains("morphism_map")) {
        const json& mm = j.at("morphism_map");
        if (!mm.is_object()) throw parse_error(where + ": morphism_map must be an object");
        for (auto it = mm.begin(); it != mm.end(); ++it) {
            int f = src->morph_index(it.key());
            if (f < 0)
                throw validation_error(where + ": morphism_map names unknown morphism '" +
                                       it.key() + "'");
            if (!it.value().is_string())
                throw parse_error(where + ": morphism_map values must be strings");
            int g = tgt->morph_index(it.value().get<std::string>());
            if (g < 0)
                throw validation_error(where + ": morphism_map sends '" + it.key() +
                                       "' to unknown target morphism '" +
                                       it.value().get<std::string>() + "'");
            m.mor[f] = g;
        }
    }
    // Identity images default to the identity of the image object.
    for (int x = 0; x < src->num_objects(); ++x) {
        int e = src->identity(x);
        if (m.mor[e] < 0) m.mor[e] = tgt->identity(m.ob[x]);
    }
    for (int f = 0; f < src->num_morphisms(); ++f)
        if (m.mor[f] < 0)
            throw validation_error(where + ": morphism_map is missing '" +
                                   src->morph_id(f) + "'");
    return m;
}

// Endpoints may come from the surrounding context, from the file, or both; a
// declared endpoint must resolve to the same instance as the context's.
GroupoidMap map_from_json(const json& j, const std::string& base_dir, LoadContext& ctx,
                          GroupoidPtr ctx_src, GroupoidPtr ctx_tgt,
                          const std::string& where) {
    if (!j.is_object()) throw parse_error(where + ": map must be an object");
    GroupoidPtr src = ctx_src, tgt = ctx_tgt;
    if (j.contains("source")) {
        GroupoidPtr declared = resolve_groupoid(j.at("source"), base_dir, ctx,
                                                where + ".source");
        if (src && declared.get() != src.get())
            throw validation_error(where +
                                   ": declared source is not the groupoid this map "
                                   "must start from (share the reference path)");
        src = declared;
    }
    if (j.contains("target")) {
        GroupoidPtr declared = resolve_groupoid(j.at("target"), base_dir, ctx,
                                                where + ".target");
        if (tgt && declared.get() != tgt.get())
            throw validation_error(where +
                                   ": declared target is not the groupoid this map "
                                   "must land in (share the reference path)");
        tgt = declared;
    }
    if (!src) throw parse_error(where + ": map needs a source reference");
    if (!tgt) throw parse_error(where + ": map needs a target reference");
    return map_body_from_json(j, src, tgt, where);
}

GroupoidMap resolve_map(const json& ref, const std::string& base_dir, LoadContext& ctx,
                        GroupoidPtr ctx_src, GroupoidPtr ctx_tgt,
                        const std::string& where) {
    if (ref.is_string()) {
        std::string path = join_dir(base_dir, ref.get<std::string>());
        json j = read_json(path);
        return map_from_json(j, dir_of(path), ctx, ctx_src, ctx_tgt, path);
    }
    if (ref.is_object()) return map_from_json(ref, base_dir, ctx, ctx_src, ctx_tgt, where);
    throw parse_error(where + ": map reference must be a path or an object");
}

TwoCell cell_from_json(const json& ref, const GroupoidMap& lhs, const GroupoidMap& rhs,
                       const std::string& where) {
    if (!ref.is_object()) throw parse_error(where + ": cell must be an object");
    TwoCell c;
    c.lhs = lhs;
    c.rhs = rhs;
    const FinGroupoid& src = *lhs.source;
    const FinGroupoid& tgt = *lhs.target;
    c.comp.assign(src.num_objects(), -1);
    const json& comp = need(ref, "comp", where);
    if (!comp.is_object()) throw parse_error(where + ": comp must be an object");
    for (auto it = comp.begin(); it != comp.end(); ++it) {
        int x = src.object_index(it.key());
        if (x < 0)
            throw validation_error(where + ": comp names unknown object '" + it.key() + "'");
        if (!it.value().is_string())
            throw parse_error(where + ": comp values must be strings");
        int m = tgt.morph_index(it.value().get<std::string>());
        if (m < 0)
            throw validation_error(where + ": comp sends '" + it.key() +
                                   "' to unknown morphism '" +
                                   it.value().get<std::string>() + "'");
        c.comp[x] = m;
    }
    for (int x = 0; x < src.num_objects(); ++x)
        if (c.comp[x] < 0)
            throw validation_error(where + ": comp is missing '" + src.object_id(x) + "'");
    return c;
}

// ----------------------------------------------------------------- diagrams

FamilyOver family_from_json(const json& j, const std::string& base_dir, LoadContext& ctx,
                            const std::string& where) {
    FamilyOver fam;
    fam.total = resolve_groupoid(need(j, "total", where), base_dir, ctx, where + ".total");
    fam.base = resolve_groupoid(need(j, "base", where), base_dir, ctx, where + ".base");
    fam.proj = resolve_map(need(j, "proj", where), base_dir, ctx, fam.total, fam.base,
                           where + ".proj");
    return fam;
}

PolyDiagram builtin_polynomial(const json& j, const std::string& where,
                               int trunc_override) {
    std::string name = need_str(j, "builtin", where);
    if (name == "identity") return identity_polynomial();
    int n = trunc_override >= 0 ? trunc_override : opt_int(j, "truncation", -1, where);
    if (n < 0)
        throw parse_error(where + ": builtin '" + name + "' needs a truncation");
    if (name == "multiset") return multiset_polynomial(n);
    if (name == "positive_multiset") return positive_multiset_polynomial(n);
    if (name == "list") return list_polynomial(n);
    if (name == "positive_list") return positive_list_polynomial(n);
    if (name == "cyclic") return cyclic_polynomial(n);
    throw parse_error(where + ": unknown polynomial builtin '" + name + "'");
}

PolyDiagram poly_from_json(const json& j, const std::string& base_dir, LoadContext& ctx,
                           const std::string& where, int trunc_override) {
    if (!j.is_object()) throw parse_error(where + ": polynomial must be an object");
    if (j.contains("builtin")) return builtin_polynomial(j, where, trunc_override);
    PolyDiagram P;
    P.I = resolve_groupoid(need(j, "I", where), base_dir, ctx, where + ".I");
    P.E = resolve_groupoid(need(j, "E", where), base_dir, ctx, where + ".E");
    P.B = resolve_groupoid(need(j, "B", where), base_dir, ctx, where + ".B");
    P.J = resolve_groupoid(need(j, "J", where), base_dir, ctx, where + ".J");
    P.s = resolve_map(need(j, "s", where), base_dir, ctx, P.E, P.I, where + ".s");
    P.p = resolve_map(need(j, "p", where), base_dir, ctx, P.E, P.B, where + ".p");
    P.t = resolve_map(need(j, "t", where), base_dir, ctx, P.B, P.J, where + ".t");
    P.truncation = opt_int(j, "truncation", -1, where);
    if (trunc_override >= 0) P.truncation = trunc_override;
    return P;
}

PolyDiagram poly_file_cached(const std::string& path, LoadContext& ctx,
                             int trunc_override) {
    std::string key = canon(path) + "#" + std::to_string(trunc_override);
    auto hit = ctx.polynomial_cache.find(key);
    if (hit != ctx.polynomial_cache.end()) return hit->second;
    json j = read_json(path);
    PolyDiagram P = poly_from_json(j, dir_of(path), ctx, path, trunc_override);
    ctx.polynomial_cache.emplace(key, P);
    return P;
}

PolyDiagram resolve_polynomial(const json& ref, const std::string& base_dir,
                               LoadContext& ctx, const std::string& where,
                               int trunc_override) {
    if (ref.is_string())
        return poly_file_cached(join_dir(base_dir, ref.get<std::string>()), ctx,
                                trunc_override);
    return poly_from_json(ref, base_dir, ctx, where, trunc_override);
}

Species species_from_json(const json& j, const std::string& base_dir, LoadContext& ctx,
                          const std::string& where, int trunc_override) {
    if (!j.is_object()) throw parse_error(where + ": species must be an object");
    if (j.contains("builtin")) {
        std::string name = need_str(j, "builtin", where);
        int n = trunc_override >= 0 ? trunc_override : opt_int(j, "truncation", -1, where);
        if (n < 0)
            throw parse_error(where + ": builtin '" + name + "' needs a truncation");
        if (name == "multiset") return multiset_species(n);
        if (name == "cyclic") return cyclic_species(n);
        if (name == "linear") return linear_species(n);
        throw parse_error(where + ": unknown species builtin '" + name + "'");
    }
    int n = trunc_override >= 0 ? trunc_override : need_int(j, "truncation", where);
    if (n < 0) throw validation_error(where + ": truncation must be >= 0");
    Species F;
    F.truncation = n;
    F.classifier = b_omega(n);
    F.total = resolve_groupoid(need(j, "total", where), base_dir, ctx, where + ".total");
    F.map = resolve_map(need(j, "map", where), base_dir, ctx, F.total, F.classifier.g,
                        where + ".map");
    return F;
}

TreeDiagram tree_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) throw parse_error(where + ": tree must be an object");
    TreeDiagram t;
    const json& je = need(j, "edges", where);
    const json& jn = need(j, "nodes", where);
    if (!je.is_array() || !jn.is_array())
        throw parse_error(where + ": edges and nodes must be arrays");
    for (const auto& v : je) {
        if (!v.is_string()) throw parse_error(where + ": edge entries must be strings");
        need_ident(v.get<std::string>(), where);
        t.edges.push_back(v.get<std::string>());
    }
    for (const auto& v : jn) {
        TreeDiagram::Node nd;
        nd.out_edge = need_str(v, "out", where + ".nodes");
        const json& in = need(v, "in", where + ".nodes");
        if (!in.is_array()) throw parse_error(where + ": node 'in' must be an array");
        for (const auto& e : in) {
            if (!e.is_string()) throw parse_error(where + ": node inputs must be strings");
            nd.in_edges.push_back(e.get<std::string>());
        }
        t.nodes.push_back(std::move(nd));
    }
    return t;
}

PTree ptree_from_json(const json& j, const std::string& base_dir, LoadContext& ctx,
                      const std::string& where, int trunc_override) {
    if (!j.is_object()) throw parse_error(where + ": decorated tree must be an object");
    PTree pt;
    const json& jt = need(j, "tree", where);
    if (jt.is_string()) {
        std::string path = join_dir(base_dir, jt.get<std::string>());
        pt.tree = tree_from_json(read_json(path), path);
    } else {
        pt.tree = tree_from_json(jt, where + ".tree");
    }
    pt.poly = resolve_polynomial(need(j, "poly", where), base_dir, ctx,
                                 where + ".poly", trunc_override);
    const FinGroupoid& I = *pt.poly.I;
    const FinGroupoid& E = *pt.poly.E;
    const FinGroupoid& B = *pt.poly.B;

    auto obj_in = [&](const FinGroupoid& g, const json& v, const std::string& ctx_msg) {
        if (!v.is_string()) throw parse_error(ctx_msg + ": expected an object identifier");
        int x = g.object_index(v.get<std::string>());
        if (x < 0)
            throw validation_error(ctx_msg + ": unknown object '" + v.get<std::string>() +
                                   "'");
        return x;
    };
    auto mor_in = [&](const FinGroupoid& g, const json& v, const std::string& ctx_msg) {
        if (!v.is_string()) throw parse_error(ctx_msg + ": expected a morphism identifier");
        int m = g.morph_index(v.get<std::string>());
        if (m < 0)
            throw validation_error(ctx_msg + ": unknown morphism '" + v.get<std::string>() +
                                   "'");
        return m;
    };

    const json& ed = need(j, "edge_dec", where);
    if (!ed.is_object()) throw parse_error(where + ": edge_dec must be an object");
    pt.edge_dec.assign(pt.tree.edges.size(), -1);
    for (size_t i = 0; i < pt.tree.edges.size(); ++i) {
        if (!ed.contains(pt.tree.edges[i]))
            throw validation_error(where + ": edge_dec is missing edge '" +
                                   pt.tree.edges[i] + "'");
        pt.edge_dec[i] = obj_in(I, ed.at(pt.tree.edges[i]), where + ".edge_dec");
    }
    for (auto it = ed.begin(); it != ed.end(); ++it)
        if (std::find(pt.tree.edges.begin(), pt.tree.edges.end(), it.key()) ==
            pt.tree.edges.end())
            throw validation_error(where + ": edge_dec names unknown edge '" + it.key() +
                                   "'");

    const json& nd = need(j, "node_dec", where);
    const json& sl = need(j, "slots", where);
    const json& oc = need(j, "out_cell", where);
    size_t nn = pt.tree.nodes.size();
    if (!nd.is_array() || nd.size() != nn)
        throw parse_error(where + ": node_dec must list one shape per node");
    if (!sl.is_array() || sl.size() != nn)
        throw parse_error(where + ": slots must list one row per node");
    if (!oc.is_array() || oc.size() != nn)
        throw parse_error(where + ": out_cell must list one morphism per node");
    for (size_t nidx = 0; nidx < nn; ++nidx) {
        pt.node_dec.push_back(obj_in(B, nd[nidx], where + ".node_dec"));
        pt.out_cell.push_back(mor_in(I, oc[nidx], where + ".out_cell"));
        const json& row = sl[nidx];
        if (!row.is_array() || row.size() != pt.tree.nodes[nidx].in_edges.size())
            throw parse_error(where + ": slots row " + std::to_string(nidx) +
                              " must match the node's input count");
        std::vector<PTree::Slot> srow;
        for (const auto& v : row) {
            PTree::Slot s;
            s.e = obj_in(E, need(v, "e", where + ".slots"), where + ".slots");
            s.beta = mor_in(B, need(v, "beta", where + ".slots"), where + ".slots");
            s.phi = mor_in(I, need(v, "phi", where + ".slots"), where + ".slots");
            srow.push_back(s);
        }
        pt.slots.push_back(std::move(srow));
    }
    return pt;
}

PolySquare square_from_json(const json& j, const std::string& base_dir, LoadContext& ctx,
                            const std::string& where, int trunc_override) {
    if (!j.is_object()) throw parse_error(where + ": square must be an object");
    if (j.contains("builtin")) {
        std::string name = need_str(j, "builtin", where);
        int n = trunc_override >= 0 ? trunc_override : opt_int(j, "truncation", -1, where);
        if (n < 0)
            throw parse_error(where + ": builtin '" + name + "' needs a truncation");
        if (name == "lists_to_cycles") return lists_to_cycles_square(n);
        if (name == "cycles_to_multisets") return cycles_to_multisets_square(n);
        throw parse_error(where + ": unknown square builtin '" + name + "'");
    }
    PolySquare sq;
    sq.from = resolve_polynomial(need(j, "from", where), base_dir, ctx, where + ".from",
                                 trunc_override);
    sq.to = resolve_polynomial(need(j, "to", where), base_dir, ctx, where + ".to",
                               trunc_override);
    sq.eMap = resolve_map(need(j, "e_map", where), base_dir, ctx, sq.from.E, sq.to.E,
                          where + ".e_map");
    sq.bMap = resolve_map(need(j, "b_map", where), base_dir, ctx, sq.from.B, sq.to.B,
                          where + ".b_map");
    sq.mid = cell_from_json(need(j, "mid", where), compose_maps(sq.to.p, sq.eMap),
                            compose_maps(sq.bMap, sq.from.p), where + ".mid");
    sq.cellI = cell_from_json(need(j, "cell_i", where), compose_maps(sq.to.s, sq.eMap),
                              sq.from.s, where + ".cell_i");
    sq.cellJ = cell_from_json(need(j, "cell_j", where), compose_maps(sq.to.t, sq.bMap),
                              sq.from.t, where + ".cell_j");
    return sq;
}

GroupAction action_from_json(const json& j, const std::string& base_dir, LoadContext& ctx,
                             const std::string& where) {
    if (!j.is_object()) throw parse_error(where + ": action must be an object");
    GroupoidPtr grp = resolve_groupoid(need(j, "group", where), base_dir, ctx,
                                       where + ".group");
    if (grp->num_objects() != 1)
        throw validation_error(where + ": the acting group must have a single object");
    GroupoidPtr space = resolve_groupoid(need(j, "space", where), base_dir, ctx,
                                         where + ".space");

    std::vector<int> loops;
    GroupAction a;
    a.grp = aut_table(*grp, 0, &loops);
    a.space = space;
    a.ob.assign(a.grp.n, {});
    a.mor.assign(a.grp.n, {});

    const json& act = need(j, "action", where);
    if (!act.is_object()) throw parse_error(where + ": action table must be an object");
    for (auto it = act.begin(); it != act.end(); ++it)
        if (grp->morph_index(it.key()) < 0)
            throw validation_error(where + ": action names unknown group element '" +
                                   it.key() + "'");

    for (int i = 0; i < a.grp.n; ++i) {
        const std::string& elem = grp->morph_id(loops[i]);
        if (!act.contains(elem)) {
            if (i == 0) {  // identity element acts trivially by default
                a.ob[i].resize(space->num_objects());
                for (int x = 0; x < space->num_objects(); ++x) a.ob[i][x] = x;
                a.mor[i].resize(space->num_morphisms());
                for (int m = 0; m < space->num_morphisms(); ++m) a.mor[i][m] = m;
                continue;
            }
            throw validation_error(where + ": action is missing element '" + elem + "'");
        }
        const json& ent = act.at(elem);
        GroupoidMap f = map_body_from_json(
            json{{"object_map", need(ent, "objects", where + "." + elem)},
                 {"morphism_map", ent.contains("morphisms") ? ent.at("morphisms")
                                                            : json::object()}},
            space, space, where + "." + elem);
        a.ob[i] = f.ob;
        a.mor[i] = f.mor;
    }
    return a;
}

// ------------------------------------------------------------ serialization

// Identity morphisms are written under the synthesized name "id_" + object;
// a groupoid whose stored identifiers clash with that scheme cannot be put
// into a file unambiguously.
void check_serializable(const FinGroupoid& g) {
    for (int x = 0; x < g.num_objects(); ++x) {
        int m = g.morph_index("id_" + g.object_id(x));
        if (m >= 0 && m != g.identity(x))
            throw validation_error("groupoid '" + g.name() + "': morphism '" +
                                   g.morph_id(m) +
                                   "' collides with the identity naming scheme");
    }
}

std::string mor_ref(const FinGroupoid& g, int m) {
    if (g.is_identity(m)) return "id_" + g.object_id(g.src(m));
    return g.morph_id(m);
}

json groupoid_to_json(const FinGroupoid& g) {
    check_serializable(g);
    std::vector<std::string> objs;
    for (int x = 0; x < g.num_objects(); ++x) objs.push_back(g.object_id(x));
    std::sort(objs.begin(), objs.end());

    std::vector<int> mors;
    for (int m = 0; m < g.num_morphisms(); ++m)
        if (!g.is_identity(m)) mors.push_back(m);
    std::sort(mors.begin(), mors.end(),
              [&](int a, int b) { return g.morph_id(a) < g.morph_id(b); });

    json jm = json::array();
    for (int m : mors)
        jm.push_back(json{{"id", g.morph_id(m)},
                          {"src", g.object_id(g.src(m))},
                          {"tgt", g.object_id(g.tgt(m))}});

    json jc = json::array();
    for (int a : mors)
        for (int b : mors) {
            if (g.tgt(b) != g.src(a)) continue;
            int ab = g.compose(a, b);
            if (ab < 0) continue;
            jc.push_back(json::array({g.morph_id(a), g.morph_id(b), mor_ref(g, ab)}));
        }
    return json{{"objects", objs}, {"morphisms", jm}, {"compose", jc}};
}

json map_to_json(const GroupoidMap& m) {
    check_serializable(*m.source);
    check_serializable(*m.target);
    json om = json::object(), mm = json::object();
    for (int x = 0; x < m.source->num_objects(); ++x)
        om[m.source->object_id(x)] = m.target->object_id(m.ob[x]);
    for (int f = 0; f < m.source->num_morphisms(); ++f) {
        if (m.source->is_identity(f)) continue;
        mm[m.source->morph_id(f)] = mor_ref(*m.target, m.mor[f]);
    }
    return json{{"object_map", om}, {"morphism_map", mm}};
}

std::string dump(const json& j, int indent) {
    return j.dump(indent) + "\n";
}

}  // namespace

GroupoidPtr load_groupoid_file(const std::string& path, LoadContext& ctx) {
    return resolve_groupoid(json(path), "", ctx, path);
}

GroupoidMap load_map_file(const std::string& path, LoadContext& ctx) {
    json j = read_json(path);
    return map_from_json(j, dir_of(path), ctx, nullptr, nullptr, path);
}

FamilyOver load_family_file(const std::string& path, LoadContext& ctx) {
    json j = read_json(path);
    return family_from_json(j, dir_of(path), ctx, path);
}

PolyDiagram load_polynomial_file(const std::string& path, LoadContext& ctx,
                                 int trunc_override) {
    return poly_file_cached(path, ctx, trunc_override);
}

Species load_species_file(const std::string& path, LoadContext& ctx, int trunc_override) {
    json j = read_json(path);
    return species_from_json(j, dir_of(path), ctx, path, trunc_override);
}

TreeDiagram load_tree_file(const std::string& path) {
    return tree_from_json(read_json(path), path);
}

PTree load_ptree_file(const std::string& path, LoadContext& ctx, int trunc_override) {
    json j = read_json(path);
    return ptree_from_json(j, dir_of(path), ctx, path, trunc_override);
}

PolySquare load_square_file(const std::string& path, LoadContext& ctx,
                            int trunc_override) {
    json j = read_json(path);
    return square_from_json(j, dir_of(path), ctx, path, trunc_override);
}

GroupAction load_action_file(const std::string& path, LoadContext& ctx) {
    json j = read_json(path);
    return action_from_json(j, dir_of(path), ctx, path);
}

std::string sniff_kind(const std::string& path) {
    json j = read_json(path);
    if (!j.is_object()) throw parse_error(path + ": expected a JSON object");
    if (j.contains("builtin")) {
        std::string b = need_str(j, "builtin", path);
        if (b == "point" || b == "discrete" || b == "cyclic_group" ||
            b == "symmetric_group")
            return "groupoid";
        if (b == "identity" || b == "multiset" || b == "positive_multiset" ||
            b == "list" || b == "positive_list" || b == "cyclic")
            return "polynomial";
        if (b == "linear") return "species";
        if (b == "lists_to_cycles" || b == "cycles_to_multisets") return "square";
        throw parse_error(path + ": unknown builtin '" + b + "'");
    }
    if (j.contains("objects")) return "groupoid";
    if (j.contains("tree")) return "ptree";
    if (j.contains("edges") && j.contains("nodes")) return "tree";
    if (j.contains("I") && j.contains("E")) return "polynomial";
    if (j.contains("from") && j.contains("to")) return "square";
    if (j.contains("group") && j.contains("space")) return "action";
    if (j.contains("proj")) return "family";
    if (j.contains("map") && j.contains("total")) return "species";
    if (j.contains("object_map")) return "map";
    throw parse_error(path + ": unrecognized file shape");
}

std::string groupoid_to_json_text(const FinGroupoid& g, int indent) {
    return dump(groupoid_to_json(g), indent);
}

std::string map_to_json_text(const GroupoidMap& m, int indent) {
    return dump(map_to_json(m), indent);
}

std::string polynomial_to_json_text(const PolyDiagram& P, int indent) {
    json j{{"I", groupoid_to_json(*P.I)}, {"E", groupoid_to_json(*P.E)},
           {"B", groupoid_to_json(*P.B)}, {"J", groupoid_to_json(*P.J)},
           {"s", map_to_json(P.s)},       {"p", map_to_json(P.p)},
           {"t", map_to_json(P.t)}};
    if (P.truncation >= 0) j["truncation"] = P.truncation;
    return dump(j, indent);
}

std::string species_to_json_text(const Species& F, int indent) {
    json j{{"total", groupoid_to_json(*F.total)},
           {"map", map_to_json(F.map)},
           {"truncation", F.truncation}};
    return dump(j, indent);
}

}  // namespace grpoly
