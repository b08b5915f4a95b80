#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grpoly/gmap.hpp"
#include "grpoly/groupoid.hpp"
#include "grpoly/groups.hpp"

namespace grpoly {

struct SkeletonData {
    GroupoidPtr g;
    GroupoidPtr skeletal;      // full subgroupoid on component representatives
    GroupoidMap incl;          // skeletal -> g
    GroupoidMap retr;          // g -> skeletal
    TwoCell unit;              // incl after retr => identity of g
    std::vector<int> reps;     // per component: object of g
    std::vector<GroupTable> aut;  // per component: vertex group at the rep
};

SkeletonData skeleton(GroupoidPtr g);

struct EquivWitness {
    GroupoidMap fwd, bwd;
    TwoCell cell_src;  // bwd after fwd => identity of source
    TwoCell cell_tgt;  // fwd after bwd => identity of target
};

struct EquivResult {
    bool equivalent = false;
    std::string reason;  // set when not equivalent
    std::optional<EquivWitness> witness;
};

// Decides equivalence by matching skeleton components through vertex-group
// isomorphism classes, and assembles functorial witnesses when it holds.
EquivResult equivalent(GroupoidPtr a, GroupoidPtr b, const Caps& caps);

}  // namespace grpoly
