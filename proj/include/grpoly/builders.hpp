#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "grpoly/gmap.hpp"
#include "grpoly/groupoid.hpp"
#include "grpoly/groups.hpp"

namespace grpoly {

GroupoidPtr discrete_groupoid(const std::vector<std::string>& ids,
                              const std::string& name = "discrete");
// Objects x0..x{n-1} (zero-padded), no non-identity morphisms.
GroupoidPtr discrete_n(int n, const std::string& prefix = "x");
GroupoidPtr trivial_groupoid();  // one object "pt"

// One object "pt", vertex group G; morphism ids g0.., identity is g0's slot 0.
GroupoidPtr one_object_groupoid(const GroupTable& grp, const std::string& name = "bgroup");

struct SumResult {
    GroupoidPtr g;
    std::vector<GroupoidMap> inj;
    std::vector<std::pair<int, int>> obj_key;  // (summand, object there)
};
SumResult sum_groupoid(const std::vector<GroupoidPtr>& parts,
                       const std::string& name = "sum");

struct ProductResult {
    GroupoidPtr g;
    GroupoidMap pr1, pr2;
    std::vector<std::pair<int, int>> obj_key, mor_key;
};
ProductResult product_groupoid(GroupoidPtr a, GroupoidPtr b, const Caps& caps);

struct SubResult {
    GroupoidPtr g;
    GroupoidMap incl;
    std::vector<int> obj_key;  // sub object -> ambient object
};
// Full subgroupoid on the given objects; identifiers are kept.
SubResult full_subgroupoid(GroupoidPtr ambient, const std::vector<int>& objects,
                           const std::string& name = "sub");

// Strict action of a finite group on a groupoid by functors.
struct GroupAction {
    GroupTable grp;
    GroupoidPtr space;
    std::vector<std::vector<int>> ob;   // per group element: object map
    std::vector<std::vector<int>> mor;  // per group element: morphism map
};

GroupAction trivial_action(const GroupTable& grp, GroupoidPtr space);
// Action on a discrete groupoid from object permutations.
GroupAction action_from_permutations(const GroupTable& grp, GroupoidPtr space,
                                     const std::vector<std::vector<int>>& perms);
ValidationReport validate_action(const GroupAction& a);

struct QuotientResult {
    GroupoidPtr g;       // objects inherit the space's identifiers
    GroupoidPtr bg;      // one-object groupoid of the acting group
    GroupoidMap proj;    // quotient -> bg
    GroupoidMap incl;    // space -> quotient (group element: identity)
    std::vector<std::pair<int, int>> mor_key;  // (group element, space morphism)
};
// Action groupoid: morphisms x -> y are pairs (g, alpha: g.x -> y).
QuotientResult homotopy_quotient(const GroupAction& a, const Caps& caps);

}  // namespace grpoly
