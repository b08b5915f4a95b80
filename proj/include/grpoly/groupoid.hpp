#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "grpoly/config.hpp"
#include "grpoly/rational.hpp"

namespace grpoly {

struct Morph {
    std::string id;
    int src = -1;
    int tgt = -1;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> errors;
    void fail(std::string msg) {
        ok = false;
        errors.push_back(std::move(msg));
    }
    void merge(const ValidationReport& o) {
        if (!o.ok) ok = false;
        errors.insert(errors.end(), o.errors.begin(), o.errors.end());
    }
};

bool valid_identifier(const std::string& s);

class FinGroupoid;
using GroupoidPtr = std::shared_ptr<const FinGroupoid>;

// Finite groupoid with explicit composition table. Identities are ordinary
// morphisms (flagged); composites/inverses may be absent (-1) so that broken
// inputs can be held in memory and reported on rather than rejected at load.
class FinGroupoid {
public:
    int num_objects() const { return static_cast<int>(objects_.size()); }
    int num_morphisms() const { return static_cast<int>(morphs_.size()); }

    const std::string& object_id(int x) const { return objects_[x]; }
    const Morph& morph(int m) const { return morphs_[m]; }
    const std::string& morph_id(int m) const { return morphs_[m].id; }
    int src(int m) const { return morphs_[m].src; }
    int tgt(int m) const { return morphs_[m].tgt; }

    int object_index(const std::string& id) const {
        auto it = obj_index_.find(id);
        return it == obj_index_.end() ? -1 : it->second;
    }
    int morph_index(const std::string& id) const {
        auto it = mor_index_.find(id);
        return it == mor_index_.end() ? -1 : it->second;
    }

    int identity(int x) const { return identity_[x]; }
    bool is_identity(int m) const {
        return morphs_[m].src == morphs_[m].tgt && identity_[morphs_[m].src] == m;
    }

    // g after f; -1 when undefined or non-composable.
    int compose(int g, int f) const {
        if (morphs_[f].tgt != morphs_[g].src) return -1;
        auto it = table_.find(key(g, f));
        return it == table_.end() ? -1 : it->second;
    }
    bool has_composite(int g, int f) const { return compose(g, f) >= 0; }

    // Composes a chain given outermost-first; throws on a missing composite.
    int compose_chain(std::initializer_list<int> outer_first) const;

    int inverse(int m) const { return inverse_[m]; }

    const std::vector<int>& out(int x) const { return out_[x]; }
    const std::vector<int>& in(int x) const { return in_[x]; }
    const std::vector<int>& hom(int x, int y) const;
    const std::vector<int>& loops(int x) const { return hom(x, x); }

    int num_components() const { return static_cast<int>(comp_reps_.size()); }
    int component_of(int x) const { return comp_of_[x]; }
    int component_rep(int c) const { return comp_reps_[c]; }
    const std::vector<int>& component_objects(int c) const { return comp_objs_[c]; }
    // Chosen morphism component_rep -> x; the identity at the representative.
    int connection(int x) const { return connection_[x]; }

    // Sum over components of 1/|Aut(rep)|. Undefined pieces count via loop size.
    Rat cardinality() const;

    const std::string& name() const { return name_; }

    long table_entries() const { return static_cast<long>(table_.size()); }

private:
    friend class GroupoidBuilder;
    FinGroupoid() = default;

    static uint64_t key(int g, int f) {
        return (static_cast<uint64_t>(static_cast<uint32_t>(g)) << 32) |
               static_cast<uint32_t>(f);
    }

    std::string name_;
    std::vector<std::string> objects_;
    std::vector<Morph> morphs_;
    std::unordered_map<std::string, int> obj_index_;
    std::unordered_map<std::string, int> mor_index_;
    std::vector<int> identity_;
    std::unordered_map<uint64_t, int> table_;
    std::vector<int> inverse_;
    std::vector<std::vector<int>> out_, in_;
    std::unordered_map<uint64_t, std::vector<int>> hom_;
    std::vector<int> comp_of_, comp_reps_, connection_;
    std::vector<std::vector<int>> comp_objs_;
};

class GroupoidBuilder {
public:
    explicit GroupoidBuilder(std::string name = "derived");

    // Creates the object's identity morphism immediately (default id "id_" + id).
    int add_object(const std::string& id);
    int add_object_with_identity(const std::string& id, const std::string& identity_id);
    int add_morphism(const std::string& id, int src, int tgt);
    void set_compose(int g, int f, int gf);

    int identity_of(int x) const { return g_->identity_[x]; }
    int num_objects() const { return g_->num_objects(); }
    int num_morphisms() const { return g_->num_morphisms(); }
    int object_index(const std::string& id) const { return g_->object_index(id); }
    int morph_index(const std::string& id) const { return g_->morph_index(id); }
    int src(int m) const { return g_->src(m); }
    int tgt(int m) const { return g_->tgt(m); }

    // Fills identity composites, indexes structure, applies caps when given.
    GroupoidPtr finalize(const Caps* caps = nullptr);

private:
    std::shared_ptr<FinGroupoid> g_;
};

// Structural law checks, reported rather than thrown: identity laws, closure
// of composition with endpoint consistency, associativity, two-sided inverses,
// plus the idempotence diagnostic (m*m = m forces m = id in a groupoid).
ValidationReport validate_groupoid(const FinGroupoid& g);

// Zero-padded canonical identifiers for derived constructions.
std::string padded_id(const std::string& prefix, int index, int count);

// Connected-component partition, components in canonical order (least object
// first), objects ascending within each.
std::vector<std::vector<int>> pi0(const FinGroupoid& g);

}  // namespace grpoly
