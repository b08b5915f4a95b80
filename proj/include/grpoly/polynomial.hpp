#pragma once

#include <utility>
#include <vector>

#include "grpoly/homotopy.hpp"

namespace grpoly {

// Bridge diagram I <- E -> B -> J: B carries the shapes, the p-fibre over a
// shape carries its positions. extend() turns a family over I into a family
// over J by pulling back along s, taking sections along p, summing along t.
struct PolyDiagram {
    GroupoidPtr I, E, B, J;
    GroupoidMap s;  // E -> I
    GroupoidMap p;  // E -> B
    GroupoidMap t;  // B -> J
    int truncation = -1;  // informative bound on position counts, -1 = unknown
};

// Endpoint agreement of the three maps plus validity of all four groupoids.
ValidationReport validate_polynomial(const PolyDiagram& P);

// I and J are both single points with no extra morphisms.
bool is_one_variable(const PolyDiagram& P);

PolyDiagram identity_polynomial();

// Span f: E -> I, g: E -> J promoted to a diagram with p the identity on E.
PolyDiagram from_span(const GroupoidMap& f, const GroupoidMap& g);

FamilyOver extend(const PolyDiagram& P, const FamilyOver& x, ProdMode mode,
                  const Caps& caps);

// Per-component summary of the p-fibres.
struct FibreReport {
    struct Entry {
        int base_obj = -1;          // component representative in B
        int components = 0;         // pi0 of the fibre over it
        bool strictly_discrete = false;  // no non-identity morphisms at all
        bool trivial_auts = false;       // every vertex group is trivial
    };
    std::vector<Entry> entries;
};

// True when every p-fibre is equivalent to a finite discrete groupoid.
std::pair<bool, FibreReport> is_combinatorial(const PolyDiagram& P,
                                              const Caps& caps);

// Morphism of diagrams sharing I and J: maps on positions and shapes plus the
// invertible cells relating the two rows.
struct PolySquare {
    PolyDiagram from, to;
    GroupoidMap eMap;  // from.E -> to.E
    GroupoidMap bMap;  // from.B -> to.B
    TwoCell mid;       // to.p eMap => bMap from.p
    TwoCell cellI;     // to.s eMap => from.s
    TwoCell cellJ;     // to.t bMap => from.t
};

ValidationReport validate_square(const PolySquare& sq);

// The middle square is a homotopy pullback: the comparison functor from
// from.E into the homotopy pullback of (to.p, bMap) is an equivalence.
bool is_homotopy_cartesian(const PolySquare& sq, const Caps& caps);

struct PolyMapResult {
    FamilyOver src_ext, tgt_ext;  // extensions of sq.from and sq.to at x
    GroupoidMap map;              // src_ext.total -> tgt_ext.total
    TwoCell over_j;               // tgt_ext.proj map => src_ext.proj
};
// Natural comparison of the extensions along a homotopy cartesian square;
// throws validation_error when the square is not cartesian.
PolyMapResult apply_poly_morphism(const PolySquare& sq, const FamilyOver& x,
                                  ProdMode mode, const Caps& caps);

// Substitution of one-variable diagrams: shapes of the result are outer
// shapes with an inner shape in every slot, positions are inner positions
// inside a chosen slot.
PolyDiagram compose1(const PolyDiagram& outer, const PolyDiagram& inner,
                     const Caps& caps);

// A family whose base is a single point transplanted onto another point base.
FamilyOver rebase_point_family(const FamilyOver& fam, GroupoidPtr base);

// Commuting square of groupoids with corner P over the cospan (phi, beta).
struct BCSquare {
    GroupoidPtr P, X, Y, A;
    GroupoidMap alpha;  // P -> X
    GroupoidMap psi;    // P -> Y
    GroupoidMap phi;    // X -> A
    GroupoidMap beta;   // Y -> A
    TwoCell filler;     // phi alpha => beta psi
};

// Canonical cartesian square: P is the homotopy pullback of (phi, beta).
BCSquare square_from_cospan(const GroupoidMap& phi, const GroupoidMap& beta,
                            const Caps& caps);

struct BCReport {
    Rat sum_left, sum_right;    // push along alpha of the psi pullback vs
                                // phi pullback of the push along beta
    bool sum_ok = false;
    Rat prod_left, prod_right;  // beta pullback of sections along phi vs
                                // sections along psi of the alpha pullback
    bool prod_ok = false;
};
// Both interchange laws on a verified cartesian square: the sum law on a
// family over Y, the section law on a family over X. Totals are compared with
// equivalent() and fibrewise cardinalities over each base component.
BCReport beck_chevalley_check(const BCSquare& sq, const FamilyOver& on_y,
                              const FamilyOver& on_x, const Caps& caps);

}  // namespace grpoly
