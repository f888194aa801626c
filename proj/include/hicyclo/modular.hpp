#pragma once

#include "hicyclo/dihedral.hpp"
#include "hicyclo/formal_sum.hpp"
#include "hicyclo/sparse_matrix.hpp"

#include <string>
#include <tuple>
#include <vector>

namespace hicyclo::modular {

using Vec = std::vector<long>;
using Mat = std::vector<std::vector<long>>; // row-major, square

long det(const Mat& a);
Mat mat_mul(const Mat& a, const Mat& b);
Mat inverse_unimodular(const Mat& a); // requires |det| = 1
Vec mat_apply(const Mat& a, const Vec& v);

// One generator [v_1..v_k] of M^1 of the sublattice spanned by the tuple;
// the closing vector -(v_1+..+v_k) is implied.
struct Block {
    std::vector<Vec> v;
    int rank() const { return static_cast<int>(v.size()); }
    // rank ascending, then vector lists descending, so the standard frame
    // [e_1] ^ [e_2] ^ ... is its own canonical form.
    bool operator<(const Block& o) const {
        if (v.size() != o.v.size()) return v.size() < o.v.size();
        return o.v < v;
    }
    bool operator==(const Block& o) const = default;
};

// Wedge of blocks over a lattice decomposition.
struct ModularGen {
    std::vector<Block> blocks;
    bool operator<(const ModularGen& o) const { return blocks < o.blocks; }
    bool operator==(const ModularGen& o) const = default;
};

// Canonical presentation data: block sizes (ascending), the assembled
// unimodular frame matrix (columns = block vectors), and the sign picked up
// by sorting anticommuting blocks and by rank-1 sign flips.
struct Normalized {
    std::vector<int> shape;
    Mat frame;
    int sign = 1;
    ModularGen canon;
};

// Throws std::invalid_argument when the blocks do not decompose the lattice.
Normalized normalize(const ModularGen& q);

ModularGen standard_gen(const std::vector<int>& shape);

// Boundary: -Cycle(sum of consecutive splits) on rank >= 2 blocks, extended
// by the signed Leibniz rule; rank-1 blocks are cycles.
FormalSum<ModularGen> modular_boundary(const ModularGen& g);

// First-shuffle (and optionally affine second-shuffle) relation instances on
// the given tuple: each row is a list of (coefficient, replacement tuple)
// that sums to zero in M^1 of the sublattice.
using TupleRelation = std::vector<std::pair<Rational, std::vector<Vec>>>;
std::vector<TupleRelation> block_relation_terms(const std::vector<Vec>& tuple,
                                                bool with_affine);

// The same rows as canonical single-block generators; the tuple must span
// the ambient lattice.
std::vector<FormalSum<ModularGen>> block_relations(const std::vector<Vec>& tuple,
                                                   bool with_affine);

// Relation rows of rank m on the standard extended basis (shape {m}).
std::vector<FormalSum<ModularGen>> relation_rows_modular(int m);

// All nonzero vectors of (Z/N)^m for prime N; the single zero coset for N=1.
std::vector<std::vector<int>> coset_space(int m, int N);

// x reduces to zero modulo the first/second shuffle relations instantiated on
// the permutation closure of its support (the free-level dd = 0 check).
bool reduces_to_zero(const FormalSum<ModularGen>& x);

struct TensorComplex {
    int m = 0, N = 1, w = 0;
    std::vector<long> gen_counts;   // raw generators per term
    std::vector<long> term_dims;    // after the relation quotient
    std::vector<long> cohomology;
    long euler = 0;
};

// M^*_(m) tensored over Gamma_1(m;N) with S^{w-m}V_m; m in {2,3}, N = 1 or
// prime. Checks that the differentials descend to the quotients.
TensorComplex tensor_complex(int m, int N, int w);

// Appends relation instances translated by pseudo-random unimodular matrices
// and reports whether the term-1 rank is unchanged.
bool stability_check(int m, int N, int w, int translates, unsigned seed);

// mu at w = m: standard generator with a coset maps to I_{1,..,1} with
// comma-coordinate arguments read off the coset pairing.
dihedral::DihedralGen mu_block(int N, const std::vector<int>& coset, const Block& b);

// mu o d = delta o mu on every rank-2 coinvariant generator.
bool mu_chain_map_ok(dihedral::Context& ctx, int N);
// rank of mu^1 onto D_{m,m}(mu_N); surjective iff equal to dim.
long mu_image_rank(dihedral::Context& ctx, int m, int N);

std::string complex_report_json(const TensorComplex& tc);

} // namespace hicyclo::modular
