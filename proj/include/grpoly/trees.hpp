#pragma once

#include <string>
#include <vector>

#include "grpoly/polynomial.hpp"

namespace grpoly {

// Rooted tree presented bottom-up: a node names the edge it produces and the
// edges it consumes. The one edge consumed nowhere is the root; edges produced
// nowhere are the leaves. The trivial tree is a single edge with no nodes.
struct TreeDiagram {
    struct Node {
        std::string out_edge;
        std::vector<std::string> in_edges;
    };
    std::vector<std::string> edges;
    std::vector<Node> nodes;
};

ValidationReport validate_tree(const TreeDiagram& t);

struct TreeStats {
    std::string root;
    std::vector<std::string> leaves;  // in edge-list order
    int node_count = 0;
    int edge_count = 0;
    int depth = 0;  // longest descent from an edge to the root
};
// Requires a valid tree.
TreeStats tree_stats(const TreeDiagram& t);

// A tree decorated in a one-variable diagram whose two ends are the same
// groupoid: edges carry colours, nodes carry shapes, and each node input is
// matched to a distinct position of its shape.
struct PTree {
    TreeDiagram tree;
    PolyDiagram poly;

    std::vector<int> edge_dec;  // I-object per edge
    std::vector<int> node_dec;  // B-object per node
    struct Slot {
        int e = -1;     // E-object filling the position
        int beta = -1;  // B-morphism p(e) -> node shape
        int phi = -1;   // I-morphism edge colour -> s(e)
    };
    std::vector<std::vector<Slot>> slots;  // aligned with nodes[n].in_edges
    std::vector<int> out_cell;  // I-morphism out-edge colour -> t(shape), per node
};

ValidationReport validate_ptree(const PTree& pt, const Caps& caps);

// Isomorphisms are tree isomorphisms together with compatible morphisms on all
// decorations; the automorphism count is the number of witnesses to itself.
bool ptree_isomorphic(const PTree& a, const PTree& b, const Caps& caps);
long ptree_aut_order(const PTree& pt, const Caps& caps);

struct PTreeClass {
    int edges = 0;
    long aut = 1;
    std::string form;  // canonical constructor expression
    PTree rep;
};
// Isomorphism classes of decorated trees with at most max_edges edges, fewest
// edges first. Requires both ends of the diagram to be points.
std::vector<PTreeClass> enumerate_ptrees(const PolyDiagram& P, int max_edges,
                                         const Caps& caps);

// Rooted-tree class counts and automorphism orders by direct combinatorics on
// parent arrays and bracket words, for cross-checking the enumeration.
// flavor is "abstract", "planar" or "linear".
struct TreeOracleRow {
    int edges = 0;
    long count = 0;
    std::vector<long> auts;  // sorted ascending
};
std::vector<TreeOracleRow> naive_tree_oracle(const std::string& flavor, int max_edges);

}  // namespace grpoly
