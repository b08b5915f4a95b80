#pragma once

#include <string>
#include <vector>

#include "grpoly/groupoid.hpp"

namespace grpoly {

// Finite group as a multiplication table over 0..n-1 with identity 0.
struct GroupTable {
    int n = 1;
    std::vector<int> mul = {0};  // row-major: mul[a*n+b] = a*b

    int at(int a, int b) const { return mul[a * n + b]; }
    int inverse(int a) const;
    int order_of(int a) const;
    bool valid() const;

    static GroupTable trivial();
    static GroupTable cyclic(int k);
    static GroupTable symmetric(int k);  // k <= 5
    static GroupTable klein();
    static GroupTable dihedral(int k);   // order 2k, k >= 1
    static GroupTable product(const GroupTable& a, const GroupTable& b);
};

// Greedy deterministic generating set: repeatedly adjoin the least element
// outside the current closure.
std::vector<int> minimal_generators(const GroupTable& g);

bool groups_isomorphic(const GroupTable& a, const GroupTable& b,
                       std::vector<int>* iso_out = nullptr);

// Vertex group at x as a table; loops_out[i] is the morphism behind element i
// (identity first, others in morphism-index order).
GroupTable aut_table(const FinGroupoid& g, int x, std::vector<int>* loops_out = nullptr);

// Vertex group at x packaged as a one-object groupoid.
GroupoidPtr aut_group(const FinGroupoid& g, int x);

}  // namespace grpoly
