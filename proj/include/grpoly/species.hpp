#pragma once

#include <map>
#include <string>
#include <vector>

#include "grpoly/builders.hpp"
#include "grpoly/groups.hpp"
#include "grpoly/polynomial.hpp"

namespace grpoly {

// Lexicographic rank of a permutation given in one-line form.
int perm_rank(const std::vector<int>& p);

// Finite sets of sizes 0..n with their bijections, one object per size.
struct SymGroupoid {
    GroupoidPtr g;                           // objects s0..sn
    int truncation = 0;
    std::vector<int> obj_of_size;            // size -> object
    std::vector<std::vector<int>> perm_mor;  // size -> permutation rank -> morphism
};
SymGroupoid b_omega(int n);

// Pointed finite sets of sizes 1..n; morphisms fix the point.
struct PointedSymGroupoid {
    GroupoidPtr g;                           // objects t1..tn
    int truncation = 0;
    std::vector<int> obj_of_size;            // size -> object (slot 0 unused, -1)
    std::vector<std::vector<int>> perm_mor;  // size -> rank in the stabilizer -> morphism
    GroupoidMap proj;                        // forget the point
};
PointedSymGroupoid b_omega_pointed(int n, const SymGroupoid& base);

// Cyclic orders of sizes 1..n with their rotations.
struct CycGroupoid {
    GroupoidPtr g;                          // objects c1..cn
    int truncation = 0;
    std::vector<int> obj_of_size;           // size -> object (slot 0 unused, -1)
    std::vector<std::vector<int>> rot_mor;  // size -> amount -> morphism
    GroupoidMap to_sym;                     // underlying set of a cyclic order
};
CycGroupoid c_omega(int n, const SymGroupoid& base);

// Pointed cyclic orders: rigid, one object per size 1..n.
struct PointedCycGroupoid {
    GroupoidPtr g;  // objects d1..dn
    std::vector<int> obj_of_size;
    GroupoidMap proj;  // forget the point
};
PointedCycGroupoid c_omega_pointed(int n, const CycGroupoid& base);

// Linear orders of sizes 0..n: rigid.
struct LinGroupoid {
    GroupoidPtr g;  // objects l0..ln
    std::vector<int> obj_of_size;
    GroupoidMap to_sym;  // underlying set of a linear order
};
LinGroupoid lin(int n, const SymGroupoid& base);

// Pointed linear orders: one object per size and position of the point.
struct PointedLinGroupoid {
    GroupoidPtr g;                         // objects m{k}_{i}
    std::vector<std::vector<int>> obj_of;  // size -> position -> object
    GroupoidMap proj;                      // forget the point
};
PointedLinGroupoid lin_pointed(int n, const LinGroupoid& base);

// Canonical one-variable diagrams; the p-fibre over a size-k shape has
// exactly k positions.
PolyDiagram multiset_polynomial(int n);
PolyDiagram positive_multiset_polynomial(int n);  // sizes 1..n
PolyDiagram list_polynomial(int n);
PolyDiagram positive_list_polynomial(int n);  // sizes 1..n
PolyDiagram cyclic_polynomial(int n);         // sizes 1..n

// Cutting a cycle open at the chosen point: positive lists into cycles.
PolySquare lists_to_cycles_square(int n);
// Forgetting the cyclic order: cycles into multisets.
PolySquare cycles_to_multisets_square(int n);

// A groupoid fibred over finite sets: the map records the underlying size.
struct Species {
    int truncation = 0;
    GroupoidPtr total;
    GroupoidMap map;  // total -> classifier.g
    SymGroupoid classifier;
};

ValidationReport validate_species(const Species& F);

Species multiset_species(int n);
Species cyclic_species(int n);
Species linear_species(int n);

// Exact generating prefix: entry k is |fibre over the k-set| / k!.
std::vector<Rat> egf(const Species& F, const Caps& caps);

// k-fold product with componentwise composition.
struct PowerResult {
    GroupoidPtr g;
    std::vector<std::vector<int>> obj_key, mor_key;  // factors of each cell
    std::map<std::vector<int>, int> obj_idx, mor_idx;
};
PowerResult power_groupoid(GroupoidPtr x, int k, const Caps& caps);

// Sum over sizes k of (fibre over the k-set) x x^k, quotiented by the
// canonical action permuting the factors and moving the fibre.
GroupoidPtr species_extension(const Species& F, GroupoidPtr x, const Caps& caps);

// Positions = pointings of the underlying set, pulled back to the structures.
PolyDiagram species_to_polynomial(const Species& F, const Caps& caps);

// Shapes become structures on their position sets; needs every position
// fibre discrete with at most `truncation` components.
Species polynomial_to_species(const PolyDiagram& P, int truncation, const Caps& caps);

// Number of structures on a plain k-element set: components of the extension
// at the discrete groupoid with k objects.
long classical_extension(const PolyDiagram& P, int k, const Caps& caps);

}  // namespace grpoly
