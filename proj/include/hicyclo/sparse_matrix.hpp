#pragma once

#include "hicyclo/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace hicyclo {

// One sparse row: strictly increasing column indices, no explicit zeros.
using SparseRow = std::vector<std::pair<int, Rational>>;

// Sparse matrix of exact rationals. Entries are kept row-major and
// duplicate-free; this is the carrier for every dimension computation.
class SparseMatrixQ {
public:
    SparseMatrixQ() = default;
    SparseMatrixQ(int n_rows, int n_cols) : n_rows_(n_rows), n_cols_(n_cols), rows_(n_rows) {}

    int n_rows() const { return n_rows_; }
    int n_cols() const { return n_cols_; }

    void set(int i, int j, const Rational& v);
    Rational get(int i, int j) const;
    void add_row(const SparseRow& row); // row must be sorted by column
    const SparseRow& row(int i) const { return rows_[i]; }

    size_t nnz() const;

    std::string to_json() const;
    static SparseMatrixQ from_json(const std::string& text);

    bool operator==(const SparseMatrixQ& o) const = default;

private:
    int n_rows_ = 0;
    int n_cols_ = 0;
    std::vector<SparseRow> rows_;
};

struct EliminationResult {
    int rank = 0;
    std::vector<int> pivot_columns;                // increasing
    std::vector<std::vector<Rational>> kernel;     // dense vectors, length n_cols
    // Reduced echelon rows, one per pivot, over the original columns.
    // rref_rows[k] has leading 1 in pivot_columns[k].
    std::vector<SparseRow> rref_rows;
};

struct EliminationOptions {
    int threads = 0;            // 0 = library default (all available)
    size_t max_cells = 0;       // 0 = use global ceiling
    bool want_kernel = true;
};

// Exact rank / kernel / reduced echelon form.
// Fraction-free cross-multiplication updates with per-row content reduction,
// Markowitz-style pivoting, ties broken by (lowest column, lowest row).
// Throws hicyclo::dimension_overflow if n_rows*n_cols exceeds the ceiling.
EliminationResult rank_and_kernel(const SparseMatrixQ& m, const EliminationOptions& opts = {});

inline long quotient_dim(long n_cols, long rank) { return n_cols - rank; }

struct dimension_overflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Global matrix-size ceiling (cells = rows*cols). Initialized from the
// HICYCLO_MAX_CELLS environment variable when set.
size_t max_matrix_cells();
void set_max_matrix_cells(size_t cells);

namespace reference {
// Dense fraction-free Bareiss elimination; the independent test oracle.
int rank_dense_bareiss(const SparseMatrixQ& m);
} // namespace reference

} // namespace hicyclo
