#pragma once

#include <map>
#include <string>

#include "grpoly/polynomial.hpp"
#include "grpoly/species.hpp"
#include "grpoly/trees.hpp"

namespace grpoly {

// File loading. References inside a file are either a path string (relative
// to the referring file), an inline object in the same format, or a builtin
// tag {"builtin": name, ...}. Paths are cached per context so that two
// references to the same file yield the same instance; diagram legs check
// endpoint identity at that level.
//
// Error split: malformed JSON, missing/ill-typed fields and bad identifier
// syntax raise parse_error; dangling identifiers and semantic conflicts raise
// validation_error. Structural laws (associativity, functoriality, ...) are
// NOT checked at load time; callers run the validate_* reporters.
struct LoadContext {
    std::map<std::string, GroupoidPtr> groupoid_cache;  // canonical path -> instance
    // Keyed by canonical path plus the effective truncation, so two files
    // referencing the same diagram share its groupoids pointer-for-pointer.
    std::map<std::string, PolyDiagram> polynomial_cache;
};

// Builtins: point | discrete (field n) | cyclic_group (n) | symmetric_group (n, <= 5).
GroupoidPtr load_groupoid_file(const std::string& path, LoadContext& ctx);

// Standalone map files must carry source/target references.
GroupoidMap load_map_file(const std::string& path, LoadContext& ctx);

// {total, base, proj}.
FamilyOver load_family_file(const std::string& path, LoadContext& ctx);

// {I, E, B, J, s, p, t, truncation?} or a builtin
// identity | multiset | positive_multiset | list | positive_list | cyclic,
// sized by the file's truncation unless trunc_override >= 0.
PolyDiagram load_polynomial_file(const std::string& path, LoadContext& ctx,
                                 int trunc_override = -1);

// {total, map, truncation} or a builtin multiset | cyclic | linear. The
// classifier is synthesized at the truncation; map values use its canonical
// identifiers (objects s0.., morphisms g{k}_{rank}).
Species load_species_file(const std::string& path, LoadContext& ctx,
                          int trunc_override = -1);

// {edges: [...], nodes: [{out, in: [...]}]}.
TreeDiagram load_tree_file(const std::string& path);

// {tree, poly, edge_dec: {edge: I-object}, node_dec: [B-object per node],
//  slots: [[{e, beta, phi} per input] per node], out_cell: [I-morphism per node]}.
PTree load_ptree_file(const std::string& path, LoadContext& ctx,
                      int trunc_override = -1);

// {from, to, e_map, b_map, mid, cell_i, cell_j} with cells given by their
// component tables, or a builtin lists_to_cycles | cycles_to_multisets.
PolySquare load_square_file(const std::string& path, LoadContext& ctx,
                            int trunc_override = -1);

// {group: one-object groupoid ref, space: groupoid ref,
//  action: {element-morphism-id: {objects: {..}, morphisms: {..}}}};
// the identity element may be omitted.
GroupAction load_action_file(const std::string& path, LoadContext& ctx);

// File kind by shape: groupoid | map | family | polynomial | species | tree |
// ptree | square | action, or the builtin's own kind.
std::string sniff_kind(const std::string& path);

// Serialization, inverse to the loaders up to identity-morphism renaming:
// identities are dropped from morphism lists and written as "id_" + object
// where referenced. Objects, morphisms and composition entries are emitted in
// identifier order, so output bytes are stable across runs.
std::string groupoid_to_json_text(const FinGroupoid& g, int indent = 2);
std::string map_to_json_text(const GroupoidMap& m, int indent = 2);
std::string polynomial_to_json_text(const PolyDiagram& P, int indent = 2);
std::string species_to_json_text(const Species& F, int indent = 2);

}  // namespace grpoly
