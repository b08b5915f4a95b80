#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grpoly/groupoid.hpp"

namespace grpoly {

// Functor between finite groupoids, stored pointwise.
struct GroupoidMap {
    GroupoidPtr source, target;
    std::vector<int> ob;   // per source object index
    std::vector<int> mor;  // per source morphism index

    int apply_ob(int x) const { return ob[x]; }
    int apply_mor(int m) const { return mor[m]; }
};

GroupoidMap identity_map(GroupoidPtr g);
GroupoidMap compose_maps(const GroupoidMap& g, const GroupoidMap& f);
GroupoidMap constant_map(GroupoidPtr src, GroupoidPtr tgt, int obj);
bool maps_equal(const GroupoidMap& a, const GroupoidMap& b);

// Functor laws: endpoints, identities, composition compatibility.
ValidationReport validate_map(const GroupoidMap& f);

// Invertible natural transformation between parallel functors.
struct TwoCell {
    GroupoidMap lhs, rhs;
    std::vector<int> comp;  // per source object: target morphism lhs(x) -> rhs(x)
};

ValidationReport validate_two_cell(const TwoCell& c);
TwoCell identity_cell(const GroupoidMap& f);
TwoCell invert_cell(const TwoCell& c);
TwoCell vcompose(const TwoCell& later, const TwoCell& first);
TwoCell whisker_left(const GroupoidMap& h, const TwoCell& c);   // h*c : h lhs => h rhs
TwoCell whisker_right(const TwoCell& c, const GroupoidMap& k);  // c*k : lhs k => rhs k

// Least natural isomorphism F => G if one exists.
std::optional<TwoCell> find_two_cell(const GroupoidMap& f, const GroupoidMap& g);

struct EquivalenceCheck {
    bool ok = true;
    std::string reason;
};

// Essential surjectivity, injectivity on components, vertex-group bijectivity.
EquivalenceCheck is_equivalence_functor(const GroupoidMap& f);

struct QuasiInverse {
    GroupoidMap psi;
    TwoCell eps;  // f after psi => identity of target
    TwoCell eta;  // psi after f => identity of source
};

// Deterministic quasi-inverse of an equivalence; throws validation_error
// with the failure reason when f is not an equivalence.
QuasiInverse quasi_inverse(const GroupoidMap& f);

}  // namespace grpoly
