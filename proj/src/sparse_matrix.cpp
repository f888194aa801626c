#include "hicyclo/sparse_matrix.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hicyclo {

namespace {

size_t g_max_cells = 0;

size_t default_max_cells() {
    if (const char* env = std::getenv("HICYCLO_MAX_CELLS")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<size_t>(v);
    }
    return 64u * 1000u * 1000u;
}

} // namespace

size_t max_matrix_cells() {
    if (g_max_cells == 0) g_max_cells = default_max_cells();
    return g_max_cells;
}

void set_max_matrix_cells(size_t cells) { g_max_cells = cells; }

void SparseMatrixQ::set(int i, int j, const Rational& v) {
    if (i < 0 || i >= n_rows_ || j < 0 || j >= n_cols_)
        throw std::out_of_range("SparseMatrixQ::set index");
    auto& r = rows_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const auto& e, int col) { return e.first < col; });
    if (it != r.end() && it->first == j) {
        if (v == 0) r.erase(it);
        else it->second = v;
    } else if (v != 0) {
        r.insert(it, {j, v});
    }
}

Rational SparseMatrixQ::get(int i, int j) const {
    const auto& r = rows_.at(i);
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const auto& e, int col) { return e.first < col; });
    if (it != r.end() && it->first == j) return it->second;
    return Rational(0);
}

void SparseMatrixQ::add_row(const SparseRow& row) {
    for (size_t k = 0; k < row.size(); ++k) {
        if (row[k].first < 0 || row[k].first >= n_cols_)
            throw std::out_of_range("SparseMatrixQ::add_row column");
        if (k > 0 && row[k - 1].first >= row[k].first)
            throw std::invalid_argument("SparseMatrixQ::add_row not sorted");
    }
    rows_.push_back(row);
    ++n_rows_;
}

size_t SparseMatrixQ::nnz() const {
    size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
}

std::string SparseMatrixQ::to_json() const {
    nlohmann::json j;
    j["rows"] = n_rows_;
    j["cols"] = n_cols_;
    auto entries = nlohmann::json::array();
    for (int i = 0; i < n_rows_; ++i)
        for (const auto& [c, v] : rows_[i])
            entries.push_back({i, c, rat_str(v)});
    j["entries"] = std::move(entries);
    return j.dump();
}

SparseMatrixQ SparseMatrixQ::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    SparseMatrixQ m(j.at("rows").get<int>(), j.at("cols").get<int>());
    for (const auto& e : j.at("entries"))
        m.set(e.at(0).get<int>(), e.at(1).get<int>(), rat_parse(e.at(2).get<std::string>()));
    return m;
}

namespace {

// Integer row with positive content divided out as we go.
using IRow = std::vector<std::pair<int, Integer>>;

IRow to_integer_row(const SparseRow& r) {
    Integer lcm = 1;
    for (const auto& [c, v] : r) {
        Integer den = v.get_den();
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    }
    IRow out;
    out.reserve(r.size());
    Integer content = 0;
    for (const auto& [c, v] : r) {
        Integer t = v.get_num() * (lcm / v.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), t.get_mpz_t());
        out.push_back({c, std::move(t)});
    }
    if (content > 1)
        for (auto& [c, t] : out) t /= content;
    return out;
}

void reduce_content(IRow& r) {
    if (r.empty()) return;
    Integer g = 0;
    for (const auto& [c, v] : r) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) return;
    }
    for (auto& [c, v] : r) v /= g;
}

const Integer* find_col(const IRow& r, int col) {
    auto it = std::lower_bound(r.begin(), r.end(), col,
                               [](const auto& e, int c) { return e.first < c; });
    if (it != r.end() && it->first == col) return &it->second;
    return nullptr;
}

// row := a*row - b*piv, merged by column; the pivot column cancels exactly.
IRow cross_eliminate(const IRow& row, const IRow& piv, const Integer& a, const Integer& b) {
    IRow out;
    out.reserve(row.size() + piv.size());
    size_t i = 0, j = 0;
    while (i < row.size() || j < piv.size()) {
        int ci = i < row.size() ? row[i].first : std::numeric_limits<int>::max();
        int cj = j < piv.size() ? piv[j].first : std::numeric_limits<int>::max();
        if (ci < cj) {
            out.push_back({ci, a * row[i].second});
            ++i;
        } else if (cj < ci) {
            out.push_back({cj, -b * piv[j].second});
            ++j;
        } else {
            Integer v = a * row[i].second - b * piv[j].second;
            if (v != 0) out.push_back({ci, std::move(v)});
            ++i;
            ++j;
        }
    }
    reduce_content(out);
    return out;
}

} // namespace

EliminationResult rank_and_kernel(const SparseMatrixQ& m, const EliminationOptions& opts) {
    const size_t ceiling = opts.max_cells ? opts.max_cells : max_matrix_cells();
    if (static_cast<size_t>(m.n_rows()) * static_cast<size_t>(std::max(m.n_cols(), 1)) > ceiling)
        throw dimension_overflow("matrix exceeds HICYCLO_MAX_CELLS ceiling");

    const int nr = m.n_rows(), nc = m.n_cols();
    std::vector<IRow> rows(nr);
    for (int i = 0; i < nr; ++i) rows[i] = to_integer_row(m.row(i));

    std::vector<char> is_pivot_row(nr, 0);
    std::vector<std::pair<int, int>> pivots; // (col, row)

#ifdef _OPENMP
    int nthreads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
#else
    (void)opts;
#endif

    for (;;) {
        // Column fill counts over non-pivot rows.
        std::vector<int> col_count(nc, 0);
        for (int i = 0; i < nr; ++i) {
            if (is_pivot_row[i]) continue;
            for (const auto& [c, v] : rows[i]) ++col_count[c];
        }
        // Markowitz cost (nnz_row-1)*(nnz_col-1); ties by (lowest column, lowest row).
        long best_cost = -1;
        int best_row = -1, best_col = -1;
        for (int i = 0; i < nr; ++i) {
            if (is_pivot_row[i] || rows[i].empty()) continue;
            for (const auto& [c, v] : rows[i]) {
                long cost = static_cast<long>(rows[i].size() - 1) * (col_count[c] - 1);
                if (best_cost < 0 || cost < best_cost ||
                    (cost == best_cost && (c < best_col || (c == best_col && i < best_row)))) {
                    best_cost = cost;
                    best_row = i;
                    best_col = c;
                }
            }
        }
        if (best_row < 0) break;

        is_pivot_row[best_row] = 1;
        pivots.push_back({best_col, best_row});
        const IRow& piv = rows[best_row];
        const Integer pval = *find_col(piv, best_col);

        // Independent row updates; results do not depend on thread count.
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) num_threads(nthreads)
#endif
        for (int i = 0; i < nr; ++i) {
            if (i == best_row) continue;
            const Integer* e = find_col(rows[i], best_col);
            if (!e) continue;
            rows[i] = cross_eliminate(rows[i], piv, pval, *e);
        }
    }

    std::sort(pivots.begin(), pivots.end());

    EliminationResult res;
    res.rank = static_cast<int>(pivots.size());
    res.rref_rows.reserve(pivots.size());
    for (const auto& [c, r] : pivots) {
        res.pivot_columns.push_back(c);
        const Integer pval = *find_col(rows[r], c);
        SparseRow out;
        out.reserve(rows[r].size());
        for (const auto& [col, v] : rows[r]) out.push_back({col, Rational(v) / Rational(pval)});
        res.rref_rows.push_back(std::move(out));
    }

    if (opts.want_kernel) {
        std::vector<int> pivot_of_col(nc, -1);
        for (size_t k = 0; k < res.pivot_columns.size(); ++k) pivot_of_col[res.pivot_columns[k]] = static_cast<int>(k);
        for (int j = 0; j < nc; ++j) {
            if (pivot_of_col[j] >= 0) continue;
            std::vector<Rational> v(nc, Rational(0));
            v[j] = 1;
            for (size_t k = 0; k < res.pivot_columns.size(); ++k) {
                const auto& rr = res.rref_rows[k];
                auto it = std::lower_bound(rr.begin(), rr.end(), j,
                                           [](const auto& e, int col) { return e.first < col; });
                if (it != rr.end() && it->first == j) v[res.pivot_columns[k]] = -it->second;
            }
            res.kernel.push_back(std::move(v));
        }
    }
    return res;
}

namespace reference {

int rank_dense_bareiss(const SparseMatrixQ& m) {
    const int nr = m.n_rows(), nc = m.n_cols();
    // Clear denominators row by row; rank is scaling-invariant.
    std::vector<std::vector<Integer>> a(nr, std::vector<Integer>(nc, 0));
    for (int i = 0; i < nr; ++i) {
        Integer lcm = 1;
        for (const auto& [c, v] : m.row(i)) {
            Integer den = v.get_den();
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
        }
        for (const auto& [c, v] : m.row(i)) a[i][c] = v.get_num() * (lcm / v.get_den());
    }

    Integer prev = 1;
    int rank = 0;
    for (int col = 0; col < nc && rank < nr; ++col) {
        int pr = -1;
        for (int i = rank; i < nr; ++i)
            if (a[i][col] != 0) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(a[rank], a[pr]);
        const Integer p = a[rank][col];
        for (int i = rank + 1; i < nr; ++i) {
            for (int j = col + 1; j < nc; ++j) {
                a[i][j] = (p * a[i][j] - a[i][col] * a[rank][j]) / prev;
            }
            a[i][col] = 0;
        }
        prev = p;
        ++rank;
    }
    return rank;
}

} // namespace reference

} // namespace hicyclo
