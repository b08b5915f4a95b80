#pragma once

#include <array>
#include <map>
#include <unordered_map>
#include <vector>

#include "grpoly/builders.hpp"
#include "grpoly/gmap.hpp"
#include "grpoly/groupoid.hpp"

namespace grpoly {

// A groupoid over a base, i.e. proj: total -> base.
struct FamilyOver {
    GroupoidPtr base, total;
    GroupoidMap proj;
};

FamilyOver make_family(GroupoidMap proj);
FamilyOver identity_family(GroupoidPtr g);

// Functor from the point hitting the given object.
GroupoidMap name_map(GroupoidPtr g, int obj);

// Objects are triples (x, y, phi: f x -> g y); morphisms are pairs acting on
// both legs with the comparison component transported.
struct PullbackResult {
    GroupoidPtr apex;
    GroupoidMap to_left, to_right;
    TwoCell cmp;  // f to_left => g to_right
    std::vector<std::array<int, 3>> obj_key;  // (x, y, phi)
    std::vector<std::array<int, 3>> mor_key;  // (src apex obj, alpha, beta)
};
PullbackResult homotopy_pullback(const GroupoidMap& f, const GroupoidMap& g,
                                 const Caps& caps);

struct StrictPullback {
    GroupoidPtr apex;
    GroupoidMap to_left, to_right;
    std::vector<std::array<int, 2>> obj_key;  // (x, y) with f x = g y
    std::vector<std::array<int, 2>> mor_key;  // (alpha, beta) with f alpha = g beta
};
StrictPullback strict_pullback(const GroupoidMap& f, const GroupoidMap& g,
                               const Caps& caps);

// Objects (x, phi: b -> p x); morphisms alpha: (x, phi) -> (x', p(alpha) phi).
struct FibreResult {
    GroupoidPtr gpd;
    GroupoidMap to_total;
    std::vector<std::array<int, 2>> obj_key;  // (x, phi)
    std::vector<std::array<int, 2>> mor_key;  // (src fibre obj, alpha)
};
FibreResult homotopy_fibre(const GroupoidMap& p, int base_obj, const Caps& caps);

// Strict action of the base vertex group on the homotopy fibre by
// precomposition of the comparison morphism.
GroupAction fibre_aut_action(const FibreResult& fib, const GroupoidMap& p, int base_obj);

// Every iso out of the image of an object lifts strictly.
bool is_isofibration(const GroupoidMap& p);

// Mapping-path factorization f = fibration after embed, embed an equivalence.
struct FibrationFactorization {
    GroupoidPtr total;        // objects (x, beta: f x -> a)
    GroupoidMap embed;        // source(f) -> total
    GroupoidMap fibration;    // total -> target(f), an isofibration
    std::vector<std::array<int, 2>> obj_key;  // (x, beta)
    std::vector<std::array<int, 3>> mor_key;  // (src obj, alpha, tau)
};
FibrationFactorization factor_as_fibration(const GroupoidMap& f, const Caps& caps);

// Postcomposition of the structure map.
FamilyOver dep_sum(const GroupoidMap& f, const FamilyOver& y);

struct BaseChangeResult {
    FamilyOver fam;           // over source(f)
    GroupoidMap to_total;     // new total -> old total
    PullbackResult pb;
};
BaseChangeResult base_change(const GroupoidMap& f, const FamilyOver& x, const Caps& caps);

enum class ProdMode { Auto, General, Discrete };

// Right adjoint to base change along f: the total over a base object a is the
// groupoid of strict sections of the replaced family over the strict fibre of
// the replaced f at a. Discrete mode keeps only canonical-lift sections and is
// valid exactly when all fibre vertex groups are trivial.
class DepProd {
public:
    DepProd(const GroupoidMap& f, const FamilyOver& y, ProdMode mode, const Caps& caps);

    struct Fibre {
        GroupoidPtr gpd;
        std::vector<std::array<int, 2>> obj_key;  // (b, beta: f b -> a)
        std::vector<std::array<int, 2>> mor_key;  // (src fibre obj, alpha in B)
        std::unordered_map<uint64_t, int> obj_idx;
        std::unordered_map<uint64_t, int> mor_idx;
    };
    struct Section {
        std::vector<std::array<int, 2>> obj;  // per fibre object: (y, alpha: q y -> b)
        std::vector<int> mor;                 // per fibre morphism: delta in the total
        bool operator==(const Section& o) const { return obj == o.obj && mor == o.mor; }
    };
    struct ZMor {
        int src = -1, tgt = -1, tau = -1;
        std::vector<int> delta;  // per target-fibre object: vertical morphism
    };

    const FamilyOver& family() const { return fam_; }
    bool discrete_mode() const { return discrete_; }
    const GroupoidMap& structure_map() const { return f_; }
    const FamilyOver& input() const { return y_; }

    const Fibre& fibre(int a) const { return fibres_[a]; }
    int num_sections(int a) const { return static_cast<int>(sections_[a].size()); }
    const Section& section(int a, int s) const { return sections_[a][s]; }
    int z_object(int a, int s) const { return zobj_[a][s]; }
    const std::array<int, 2>& z_key(int z) const { return zkey_[z]; }
    const ZMor& z_morphism(int m) const { return zmors_[m]; }

    int find_section(int a, const Section& s) const;
    int find_z_morphism(int src, int tau, const std::vector<int>& delta) const;
    int transport_obj(int tau, int fibre_obj) const;
    int transport_mor(int tau, int fibre_mor) const;

private:
    void build_fibre(int a, const Caps& caps);
    void enumerate_sections(int a, const Caps& caps);

    GroupoidMap f_;
    FamilyOver y_;
    bool discrete_ = false;
    FamilyOver fam_;
    std::vector<Fibre> fibres_;
    std::vector<std::vector<Section>> sections_;
    std::vector<std::map<std::vector<int>, int>> section_idx_;
    std::vector<std::vector<int>> zobj_;
    std::vector<std::array<int, 2>> zkey_;
    std::vector<ZMor> zmors_;
    std::map<std::vector<int>, int> zmor_idx_;
};

FamilyOver dep_prod(const GroupoidMap& f, const FamilyOver& y, ProdMode mode,
                    const Caps& caps);

struct FibreDecomposition {
    struct Piece {
        int base_obj;
        FibreResult fibre;
        GroupAction action;
        QuotientResult quot;
    };
    std::vector<Piece> pieces;
    GroupoidPtr sum;
    GroupoidMap reassemble;  // sum -> total of the family
    EquivalenceCheck check;
};
FibreDecomposition fibre_decomposition(const FamilyOver& x, const Caps& caps);

struct FubiniReport {
    Rat total_card, grouped_card;
    bool cards_equal = false;
    bool witness_ok = false;  // reassembly functor is an equivalence
};
// Sums the family over the base one component at a time: pull back to each
// homotopy fibre, quotient by the base vertex group, compare with the total.
FubiniReport fubini_check(const GroupoidMap& f, const FamilyOver& y, const Caps& caps);

// Groupoid of maps-over-base from the family v into the family y: objects are
// (functor u: v.total -> y.total, cell y.proj u => v.proj).
GroupoidPtr slice_mapping_groupoid(const FamilyOver& v, const FamilyOver& y,
                                   const Caps& caps);

}  // namespace grpoly
