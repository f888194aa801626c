#pragma once

#include <array>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace hicyclo {

// A (p,q)-shuffle as the output sequence: an interleaving of 0..p-1 and
// p..p+q-1 that keeps each block in increasing order.
using Shuffle = std::vector<int>;

std::vector<Shuffle> shuffles(int p, int q);
bool is_shuffle(const Shuffle& s, int p, int q);

// All compositions of w into m positive parts, lexicographic.
std::vector<std::vector<int>> compositions(int w, int m);

// Plane trivalent tree with legs 0..num_legs-1 in circular order.
// Stored as the binary split structure over legs 1..num_legs-1 rooted at the
// leg-0 stem: child < 0 encodes leaf leg -child, child >= 0 an internal node.
struct PlaneTree {
    int num_legs = 0;
    std::vector<std::array<int, 2>> nodes; // node 0 is the root
    std::string serialize() const;
    bool operator==(const PlaneTree& o) const = default;
};

std::vector<PlaneTree> plane_trivalent_trees(int num_legs);

// Cyclic word over {Y} u {X_g : g in Z/N}; letter 0 is Y, letter 1+g is X_g.
struct CyclicWord {
    int level = 1;
    std::vector<int> letters;
    bool operator<(const CyclicWord& o) const {
        return std::tie(level, letters) < std::tie(o.level, o.letters);
    }
    bool operator==(const CyclicWord& o) const = default;
};

// Least-rotation canonical form and the number of rotations fixing the word.
std::pair<CyclicWord, int> cyclic_canonicalize(const CyclicWord& w);

// Independent count of triangulations of a convex n-gon (test oracle lives in
// tests; this is the closed-form Catalan value used by the CLI).
unsigned long catalan(int n);

} // namespace hicyclo
