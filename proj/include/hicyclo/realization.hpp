#pragma once

#include "hicyclo/combinatorics.hpp"
#include "hicyclo/formal_sum.hpp"
#include "hicyclo/modular.hpp"

#include <string>
#include <vector>

namespace hicyclo::realization {

using Vec = std::vector<long>;

// Lattice vector taken up to global sign: first nonzero coordinate positive.
Vec canonical_vector(Vec v); // throws on the zero vector

// Symbolic Voronoi cell: the convex hull of the forms phi(v) for the listed
// vectors. Vertices are kept canonically sorted; the chain coefficient
// carries the orientation.
struct VoronoiCell {
    std::vector<Vec> verts;
    int dim() const { return static_cast<int>(verts.size()) - 1; }
    bool operator<(const VoronoiCell& o) const { return verts < o.verts; }
    bool operator==(const VoronoiCell& o) const = default;
};

using CellChain = FormalSum<VoronoiCell>;

// Edges of a plane trivalent tree in planar contour order from leg 0; each
// entry lists the legs on the far side of the edge.
std::vector<std::vector<int>> contour_edges(const PlaneTree& t);

// f_E: sum of the labels over the legs on one side, canonical up to sign.
Vec edge_vector(const PlaneTree& t, const std::vector<int>& edge_legs,
                const std::vector<Vec>& labels);

// Sign of the given edge enumeration (a permutation of the contour order)
// relative to the canonical planar orientation.
int tree_sign(const PlaneTree& t, const std::vector<int>& enumeration);

// psi on a top generator <v_1,..,v_{m+1}>: the signed sum over plane
// trivalent trees of the cells of their edge vectors. Legs are labeled
// (e_0,..,e_m) = (v_{m+1}, v_1,..,v_m) in circular order.
CellChain psi_top(const std::vector<Vec>& extended_basis);

// Linear extension of psi to wedges of blocks (join of the factors' chains).
CellChain psi_gen(const modular::ModularGen& g);
CellChain relation_image(const FormalSum<modular::ModularGen>& rel);

// Oriented join: concatenate vertex lists, then canonical sort.
CellChain join(const CellChain& a, const CellChain& b);

// Alternating facet sum of the cell treated as a simplex on its sorted
// vertex list.
CellChain simplex_boundary(const VoronoiCell& c);

// Golden-file format: one line "coef | v1; v2; ...; vk" per cell.
std::string chain_str(const CellChain& ch);

// Chain equality up to one global sign.
bool equal_up_to_sign(const CellChain& a, const CellChain& b);

} // namespace hicyclo::realization
