#pragma once

#include <vector>

#include "grpoly/gmap.hpp"
#include "grpoly/groupoid.hpp"

namespace grpoly {

struct MappingGroupoid {
    GroupoidPtr gpd;                       // objects: functors, morphisms: invertible cells
    std::vector<GroupoidMap> functors;     // per object index
    std::vector<std::vector<int>> cells;   // per morphism index: component table
};

// All functors source -> target and all natural transformations between them.
MappingGroupoid mapping_groupoid(GroupoidPtr source, GroupoidPtr target, const Caps& caps);

}  // namespace grpoly
