// Benchmark of the OpenMP kernels against their single-thread runs. The
// parallel paths are deterministic, so each case also asserts that the
// outputs agree bit for bit.

#include "hicyclo/dihedral.hpp"
#include "hicyclo/mzv.hpp"
#include "hicyclo/numerics.hpp"
#include "hicyclo/sparse_matrix.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace hicyclo;

namespace {

double seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SparseMatrixQ random_sparse(int n, int m, int nnz_per_row, unsigned seed) {
    std::mt19937 rng(seed);
    SparseMatrixQ mat(0, m);
    for (int i = 0; i < n; ++i) {
        SparseRow row;
        std::vector<int> cols;
        for (int k = 0; k < nnz_per_row; ++k) cols.push_back(static_cast<int>(rng() % m));
        std::sort(cols.begin(), cols.end());
        cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
        for (int c : cols) row.push_back({c, Rational(static_cast<long>(rng() % 19) - 9)});
        while (!row.empty() && row.back().second == 0) row.pop_back();
        mat.add_row(row);
    }
    return mat;
}

} // namespace

int main() {
#ifdef _OPENMP
    const int max_threads = omp_get_max_threads();
#else
    const int max_threads = 1;
#endif
    std::printf("# kernel\tserial_s\tparallel_s(%d threads)\tspeedup\tidentical\n", max_threads);

    {
        auto mat = random_sparse(420, 420, 9, 7);
        EliminationOptions serial, parallel;
        serial.threads = 1;
        parallel.threads = max_threads;
        serial.want_kernel = parallel.want_kernel = false;
        auto t0 = std::chrono::steady_clock::now();
        auto r1 = rank_and_kernel(mat, serial);
        double s1 = seconds(t0);
        t0 = std::chrono::steady_clock::now();
        auto r2 = rank_and_kernel(mat, parallel);
        double s2 = seconds(t0);
        bool same = r1.rank == r2.rank && r1.rref_rows == r2.rref_rows;
        std::printf("sparse_elimination\t%.3f\t%.3f\t%.2f\t%s\n", s1, s2, s1 / s2, same ? "yes" : "NO");
    }

    {
        dihedral::Options serial, parallel;
        serial.threads = 1;
        parallel.threads = max_threads;
        auto t0 = std::chrono::steady_clock::now();
        auto m1 = dihedral::relation_matrix(13, 3, 2, serial);
        double s1 = seconds(t0);
        t0 = std::chrono::steady_clock::now();
        auto m2 = dihedral::relation_matrix(13, 3, 2, parallel);
        double s2 = seconds(t0);
        std::printf("relation_rows\t%.3f\t%.3f\t%.2f\t%s\n", s1, s2, s1 / s2, m1 == m2 ? "yes" : "NO");
    }

    {
        auto z = mzv::zeta({2, 3});
#ifdef _OPENMP
        omp_set_num_threads(1);
#endif
        auto t0 = std::chrono::steady_clock::now();
        auto r1 = numerics::eval_polylog(z, 500);
        double s1 = seconds(t0);
#ifdef _OPENMP
        omp_set_num_threads(max_threads);
#endif
        t0 = std::chrono::steady_clock::now();
        auto r2 = numerics::eval_polylog(z, 500);
        double s2 = seconds(t0);
        numerics::BigFloat d = r1.value.re - r2.value.re;
        bool same = mpfr_zero_p(d.raw());
        std::printf("polylog_splits\t%.3f\t%.3f\t%.2f\t%s\n", s1, s2, s1 / s2, same ? "yes" : "NO");
    }
    return 0;
}
