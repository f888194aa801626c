#pragma once

#include "hicyclo/formal_sum.hpp"
#include "hicyclo/sparse_matrix.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace hicyclo::dihedral {

// Generator I_{n_1..n_m}(g_1:...:g_m:e) of the dihedral Lie coalgebra of
// mu_N in homogeneity-normalized form: the last slot is always the identity,
// so only the first m residues are stored.
struct DihedralGen {
    int level = 1;
    std::vector<int> comp;  // n_1..n_m
    std::vector<int> slots; // g_1..g_m residues mod level

    int depth() const { return static_cast<int>(comp.size()); }
    int weight() const;
    std::string serialize() const; // "I[n1,..,nm](a1:..:am+1)@N"

    // Ordered by (weight, depth, comp, slots) so mixed-bidegree keys sort by
    // bidegree first.
    bool operator<(const DihedralGen& o) const {
        const int w = weight(), ow = o.weight();
        if (w != ow) return w < ow;
        if (comp.size() != o.comp.size()) return comp.size() < o.comp.size();
        if (comp != o.comp) return comp < o.comp;
        if (slots != o.slots) return slots < o.slots;
        return level < o.level;
    }
    bool operator==(const DihedralGen& o) const = default;
};

// Canonicalize an (m+1)-slot tuple by shifting all slots by -last.
DihedralGen make_canonical(int level, std::vector<int> comp, const std::vector<int>& full_slots);

struct Options {
    bool hat = false;          // keep I_1(e:e) as a generator
    bool distribution = true;  // distribution relations for every l | N, l > 1
    bool dihedral_m1 = true;   // cyclic/reflection/inversion rows at depth 1
    int threads = 0;
    bool operator<(const Options& o) const {
        return std::tie(hat, distribution, dihedral_m1) <
               std::tie(o.hat, o.distribution, o.dihedral_m1);
    }
};

// All canonical generators of bidegree (w, m), sorted.
std::vector<DihedralGen> generators(int level, int w, int m);

// Polynomials in the free dual-slot variables t_1..t_m under the global
// sum-zero gauge t_{m+1} = -(t_1 + .. + t_m).
using TPoly = std::map<std::vector<int>, Rational>;
// Linear form over the free variables; tvar(j, m) is t_{j+1}, with j = m
// giving the substituted t_{m+1}.
using TForm = std::vector<long>;
TForm tform(int j, int mvars);

// Weight-w part of the generating series {slots | targs}: canonical
// generators with their polynomial coefficients. slots has k+1 entries and
// targs k+1 linear forms over mvars variables.
std::vector<std::pair<DihedralGen, TPoly>>
series_part(int level, const std::vector<int>& slots, const std::vector<TForm>& targs,
            int weight, int mvars);

// {g_1:..:g_{m+1} | t_1:..:t_{m+1}} at the standard dual-slot assignment.
std::vector<std::pair<DihedralGen, TPoly>>
colon_series(int level, const std::vector<int>& slots, int weight);

// {g_1:..:g_{m+1} | t_1,..,t_{m+1}}: the cumulative-sum substitution of
// (ginf112), last colon slot zero.
std::vector<std::pair<DihedralGen, TPoly>>
comma_series(int level, const std::vector<int>& slots, int weight);

// {g_1,..,g_{m+1} | t_1:..:t_{m+1}}: slots replaced by partial products;
// requires the product of all entries to be the identity.
std::vector<std::pair<DihedralGen, TPoly>>
product_coordinates(int level, const std::vector<int>& slots, int weight);

// Relation rows of bidegree (w, m): double shuffle (gw3)/(gw4) over all slot
// tuples and (p, q) splits, distribution rows per divisor, I_1(e:e) = 0
// unless hat, and the depth-1 dihedral rows when enabled. Columns follow
// generators(level, w, m). with_dihedral_all_m appends the cyclic,
// reflection and inversion rows for m >= 2 (rank-stability checks).
SparseMatrixQ relation_matrix(int level, int w, int m, const Options& opts,
                              bool with_dihedral_all_m = false);

long dim_D(int level, int w, int m, const Options& opts);

// Quotient D_{w,m} = span(generators) / relations, presented through the
// reduced echelon form of the relation matrix.
struct QuotientBasis {
    std::vector<DihedralGen> gens;
    std::vector<int> basis_cols; // non-pivot generator indices; the basis
    // class_of[i]: coordinates of generator i over basis_cols positions.
    std::vector<std::vector<std::pair<int, Rational>>> classes;
    long dim() const { return static_cast<long>(basis_cols.size()); }
};

using GenPair = std::pair<DihedralGen, DihedralGen>; // ordered as produced

// Bidegree piece identifier (w, m).
using Bidegree = std::pair<int, int>;

// Cached per-level computation context.
class Context {
public:
    Context(int level, Options opts = {}) : level_(level), opts_(opts) {}

    int level() const { return level_; }
    const Options& options() const { return opts_; }

    const QuotientBasis& quotient(int w, int m);

    // Cobracket of one generator as a sum of ordered factor pairs (ccc3).
    FormalSum<GenPair> cobracket_pairs(const DihedralGen& g);

    // Lambda^2 coordinates of total bidegree (w, m): blocks are pairs of
    // piece bidegrees; within a block, (i, j) index pairs of quotient basis
    // elements, i < j when the pieces coincide.
    struct Lambda2 {
        struct Block {
            Bidegree a, b;
            long offset = 0;
            long dim_a = 0, dim_b = 0;
        };
        std::vector<Block> blocks;
        long dim = 0;
        long index(const Bidegree& a, long ia, const Bidegree& b, long ib, int& sign) const;
    };
    const Lambda2& lambda2(int w, int m);

    // Push a raw pair sum into Lambda^2 quotient coordinates.
    std::map<long, Rational> lambda2_coords(int w, int m, const FormalSum<GenPair>& pairs);

    // delta of x in Lambda^2 quotient coordinates; x must be homogeneous of
    // bidegree (w, m).
    std::map<long, Rational> cobracket_coords(const FormalSum<DihedralGen>& x);

private:
    friend struct CochainBuilder;
    int level_;
    Options opts_;
    std::map<Bidegree, QuotientBasis> quotients_;
    std::map<Bidegree, Lambda2> lambda2_;
    // Inverse of the monomial-expansion matrix of P_n = prod (t_j - t_{m+1})^{n_j-1}.
    std::map<Bidegree, std::vector<std::vector<Rational>>> extract_inv_;
    const std::vector<std::vector<Rational>>& extractor(int w, int m);
};

struct ComplexReport {
    std::vector<long> term_dims;          // Lambda^1..Lambda^m
    std::vector<SparseMatrixQ> diffs;     // diffs[k]: Lambda^{k+1} x Lambda^k
    std::vector<long> cohomology;         // H^1..H^m
    long euler() const;
};

// Weight-w depth-m part of the standard cochain complex, terms in degrees
// 1..m built from quotient pieces of every bidegree decomposition.
ComplexReport cochain_complex(Context& ctx, int w, int m);

// Matrix of the cobracket on raw generators of (w, m) in Lambda^2 quotient
// coordinates; used for image/rank checks and the modular comparison.
SparseMatrixQ cobracket_matrix(Context& ctx, int w, int m);

std::string generator_sidecar_json(int level, int w, int m);

} // namespace hicyclo::dihedral
