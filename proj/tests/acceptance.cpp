// Acceptance suite: one line per criterion, exact checks at the stated
// tolerances. Exit code 0 only if every criterion passes.

#include "hicyclo/derivations.hpp"
#include "hicyclo/dihedral.hpp"
#include "hicyclo/modular.hpp"
#include "hicyclo/mzv.hpp"
#include "hicyclo/numerics.hpp"
#include "hicyclo/realization.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

using namespace hicyclo;

namespace {

int failures = 0;

void report(int criterion, const char* what, bool ok, double secs) {
    std::printf("criterion %2d: %s  (%.2fs)  %s\n", criterion, ok ? "PASS" : "FAIL", secs, what);
    if (!ok) ++failures;
}

template <class F>
void run(int criterion, const char* what, F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = f();
    } catch (const std::exception& e) {
        std::printf("criterion %2d: exception: %s\n", criterion, e.what());
        ok = false;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(criterion, what, ok, secs);
}

bool close_pow10(const numerics::BigFloat& a, const numerics::BigFloat& b, long digits) {
    numerics::BigFloat d = a - b;
    return d.less_than_pow10(-digits);
}

} // namespace

int main() {
    // 1. d_k table
    run(1, "d_k recurrence with d_12 = 12", [] {
        bool ok = mzv::zeta_dim_bound(12) == 12;
        for (int k = 3; k <= 30; ++k)
            ok = ok && mzv::zeta_dim_bound(k) ==
                           mzv::zeta_dim_bound(k - 2) + mzv::zeta_dim_bound(k - 3);
        return ok;
    });

    // 2. free Lie dims with the Lyndon oracle
    run(2, "dim F(3,5,7,..)_{-12} = 2, Lyndon oracle to degree 12", [] {
        std::vector<int> odd{3, 5, 7, 9, 11};
        if (mzv::witt_dims(odd, 12) != 2) return false;
        std::function<long(const std::vector<int>&, int)> lyndon =
            [](const std::vector<int>& degrees, int k) {
                long count = 0;
                std::vector<int> word;
                std::function<void(int)> rec = [&](int rest) {
                    if (rest == 0 && !word.empty()) {
                        const int n = static_cast<int>(word.size());
                        bool ly = true;
                        for (int r = 1; r < n && ly; ++r) {
                            std::vector<int> rot;
                            for (int i = 0; i < n; ++i) rot.push_back(word[(i + r) % n]);
                            if (!(word < rot)) ly = false;
                        }
                        if (ly) ++count;
                    }
                    if (rest <= 0) return;
                    for (size_t l = 0; l < degrees.size(); ++l) {
                        if (degrees[l] > rest) continue;
                        word.push_back(static_cast<int>(l));
                        rec(rest - degrees[l]);
                        word.pop_back();
                    }
                };
                rec(k);
                return count;
            };
        for (int k = 3; k <= 12; ++k)
            if (mzv::witt_dims(odd, k) != lyndon(odd, k)) return false;
        return true;
    });

    // 3. depth-2 dims at N=1
    run(3, "dim D(1,w,2): 0 odd, floor((w-2)/6) even, w <= 16", [] {
        dihedral::Options opts;
        for (int w = 2; w <= 16; ++w) {
            long expect = (w % 2 == 0) ? (w - 2) / 6 : 0;
            if (dihedral::dim_D(1, w, 2, opts) != expect) return false;
        }
        return true;
    });

    // 4. depth-3 dims at N=1
    run(4, "dim D(1,w,3): 0 even, floor(((w-3)^2-1)/48) odd, w in 8..13", [] {
        dihedral::Options opts;
        for (int w : {8, 10, 12})
            if (dihedral::dim_D(1, w, 3, opts) != 0) return false;
        for (int w : {9, 11, 13}) {
            long expect = ((w - 3) * (w - 3) - 1) / 48;
            if (dihedral::dim_D(1, w, 3, opts) != expect) return false;
        }
        return true;
    });

    // 5. level-p diagonal
    run(5, "dim D(p,2,2) = (p-5)(p-1)/12 for p in {5,7,11,13}", [] {
        dihedral::Options opts;
        for (int p : {5, 7, 11, 13})
            if (dihedral::dim_D(p, 2, 2, opts) != static_cast<long>(p - 5) * (p - 1) / 12)
                return false;
        return true;
    });

    // 6. depth-1 cyclotomic dims
    run(6, "dim D(p,n,1) = (p-1)/2 for n in {1,2,3}, p in {5,7}", [] {
        dihedral::Options opts; // depth-1 dihedral symmetry on by default
        for (int p : {5, 7})
            for (int n = 1; n <= 3; ++n)
                if (dihedral::dim_D(p, n, 1, opts) != (p - 1) / 2) return false;
        return true;
    });

    // 7. weight-12 cobracket
    run(7, "rank(delta | D(1,12,2)) = 1 with both I3^I9 and I5^I7 hit", [] {
        dihedral::Context ctx(1);
        auto mat = dihedral::cobracket_matrix(ctx, 12, 2);
        if (ctx.lambda2(12, 2).dim != 2) return false;
        EliminationOptions eo;
        eo.want_kernel = false;
        if (rank_and_kernel(mat, eo).rank != 1) return false;
        bool row0 = false, row1 = false;
        for (int j = 0; j < mat.n_cols(); ++j) {
            if (mat.get(0, j) != 0) row0 = true;
            if (mat.get(1, j) != 0) row1 = true;
        }
        return row0 && row1;
    });

    // 8. Thm dw1 / dwhn1 comparison
    run(8, "modular vs hat-dihedral terms and Euler (w <= 14); mu at (2,5),(2,7)", [] {
        dihedral::Options hat;
        hat.hat = true;
        for (int w = 2; w <= 14; w += 2) {
            auto tc = modular::tensor_complex(2, 1, w);
            dihedral::Context ctx(1, hat);
            auto rep = dihedral::cochain_complex(ctx, w, 2);
            if (tc.term_dims[0] != rep.term_dims[0]) return false;
            if (tc.term_dims[1] != rep.term_dims[1]) return false;
            if (tc.euler != rep.euler()) return false;
        }
        for (int p : {5, 7}) {
            dihedral::Context ctx(p);
            if (!modular::mu_chain_map_ok(ctx, p)) return false;
            if (modular::mu_image_rank(ctx, 2, p) != ctx.quotient(2, 2).dim()) return false;
        }
        return true;
    });

    // 9. realization suite
    run(9, "psi reproduces examples a/b; relation images vanish; 5-simplex boundary", [] {
        using namespace realization;
        auto orient = [](std::vector<Vec> verts, Rational c) {
            int sign = 1;
            for (size_t i = 0; i + 1 < verts.size(); ++i)
                for (size_t j = 0; j + 1 < verts.size() - i; ++j)
                    if (verts[j + 1] < verts[j]) {
                        std::swap(verts[j], verts[j + 1]);
                        sign = -sign;
                    }
            VoronoiCell cell;
            cell.verts = std::move(verts);
            CellChain out;
            out.add(cell, c * sign);
            return out;
        };
        // example a
        if (!(psi_top({{1, 0}, {0, 1}, {-1, -1}}) == orient({{1, 1}, {1, 0}, {0, 1}}, Rational(1))))
            return false;
        // example b
        {
            CellChain expect;
            expect += orient({{1, 1, 1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 1, 1}}, Rational(1));
            expect += orient({{1, 1, 1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}}, Rational(-1));
            if (!(psi_top({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}}) == expect)) return false;
        }
        for (int m = 2; m <= 4; ++m) {
            std::vector<modular::Vec> tup;
            for (int i = 0; i < m; ++i) {
                modular::Vec e(m, 0);
                e[i] = 1;
                tup.push_back(e);
            }
            std::vector<modular::Vec> full = tup;
            full.push_back(modular::Vec(m, -1));
            auto mk = [&](const std::vector<modular::Vec>& t) {
                modular::ModularGen g;
                g.blocks.push_back({t});
                auto n = modular::normalize(g);
                return std::pair{n.canon, Rational(n.sign)};
            };
            // cyclic and reflection images vanish
            {
                std::vector<modular::Vec> rot(full.begin() + 1, full.end());
                FormalSum<modular::ModularGen> rel;
                auto [g1, s1] = mk(rot);
                rel.add(g1, s1);
                auto [g2, s2] = mk(tup);
                rel.add(g2, -s2);
                if (!relation_image(rel).is_zero()) return false;
            }
            {
                std::vector<modular::Vec> rev(full.rbegin(), full.rend());
                rev.resize(m);
                FormalSum<modular::ModularGen> rel;
                auto [g1, s1] = mk(rev);
                rel.add(g1, Rational(((m + 1) % 2 == 0) ? 1 : -1) * s1);
                auto [g2, s2] = mk(tup);
                rel.add(g2, -s2);
                if (!relation_image(rel).is_zero()) return false;
            }
            for (const auto& rel : modular::block_relations(tup, false))
                if (!relation_image(rel).is_zero()) return false;
        }
        // m=3 second shuffle -> +- the Voronoi 5-simplex boundary
        {
            std::vector<modular::Vec> tup{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
            auto rels = modular::block_relations(tup, true);
            VoronoiCell simplex;
            simplex.verts = {{0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {1, 0, 0}, {1, 1, 0}, {1, 1, 1}};
            auto bd = simplex_boundary(simplex);
            for (size_t i = 2; i < rels.size(); ++i) {
                auto img = relation_image(rels[i]);
                if (img.is_zero() || !equal_up_to_sign(img, bd)) return false;
            }
        }
        return true;
    });

    // 10. property suites
    run(10, "delta^2 = 0; dd = 0; dihedral-row rank stability; kappa/xi checks", [] {
        dihedral::Options opts;
        // delta^2 = 0 for N <= 3, w <= 6, m <= 3
        for (int N = 1; N <= 3; ++N) {
            dihedral::Context ctx(N, opts);
            for (int m = 2; m <= 3; ++m)
                for (int w = m; w <= 6; ++w) {
                    auto rep = dihedral::cochain_complex(ctx, w, m);
                    if (rep.diffs.size() < 2) continue;
                    const auto& d1 = rep.diffs[0];
                    const auto& d2 = rep.diffs[1];
                    for (int j = 0; j < d1.n_cols(); ++j) {
                        std::vector<Rational> col(d1.n_rows(), Rational(0));
                        for (int i = 0; i < d1.n_rows(); ++i) col[i] = d1.get(i, j);
                        for (int i = 0; i < d2.n_rows(); ++i) {
                            Rational s = 0;
                            for (const auto& [k, v] : d2.row(i)) s += v * col[k];
                            if (s != 0) return false;
                        }
                    }
                }
        }
        // modular dd = 0 for m <= 4 (free reduction)
        for (int m = 2; m <= 4; ++m) {
            auto g = modular::standard_gen({m});
            FormalSum<modular::ModularGen> dd;
            const auto bd = modular::modular_boundary(g);
            for (const auto& [t, c] : bd.terms()) {
                auto b2 = modular::modular_boundary(t);
                b2 *= c;
                dd += b2;
            }
            if (!modular::reduces_to_zero(dd)) return false;
        }
        // Thm 2/7/00/3: extra dihedral rows do not raise the rank, m >= 2
        EliminationOptions eo;
        eo.want_kernel = false;
        for (int N = 1; N <= 5; ++N)
            for (int w = 2; w <= 6; ++w) {
                auto base = dihedral::relation_matrix(N, w, 2, opts, false);
                auto more = dihedral::relation_matrix(N, w, 2, opts, true);
                if (rank_and_kernel(base, eo).rank != rank_and_kernel(more, eo).rank) return false;
            }
        for (int N = 1; N <= 3; ++N)
            for (int w = 3; w <= 6; ++w) {
                auto base = dihedral::relation_matrix(N, w, 3, opts, false);
                auto more = dihedral::relation_matrix(N, w, 3, opts, true);
                if (rank_and_kernel(base, eo).rank != rank_and_kernel(more, eo).rank) return false;
            }
        // kappa specialness, N <= 3, length <= 5 (4 at N = 3)
        for (int level = 1; level <= 3; ++level) {
            bool ok = true;
            std::vector<int> cur;
            std::function<void()> gen = [&]() {
                if (!cur.empty()) {
                    CyclicWord w{level, cur};
                    if (!derivations::special_defect(derivations::kappa(w)).is_zero()) ok = false;
                }
                if (static_cast<int>(cur.size()) == (level == 3 ? 4 : 5)) return;
                for (int l = 0; l <= level; ++l) {
                    cur.push_back(l);
                    gen();
                    cur.pop_back();
                }
            };
            gen();
            if (!ok) return false;
        }
        // xi bracket morphism, total weight <= 6, N in {1,2}, w > m pieces
        for (int level = 1; level <= 2; ++level) {
            dihedral::Context ctx(level);
            std::vector<std::pair<int, int>> pieces;
            for (int w = 2; w <= 5; ++w)
                if (ctx.quotient(w, 1).dim() > 0) pieces.push_back({w, 1});
            for (auto [w1, m1] : pieces)
                for (auto [w2, m2] : pieces) {
                    if (w1 + w2 > 6) continue;
                    const int w = w1 + w2, m = m1 + m2;
                    const auto& q = ctx.quotient(w, m);
                    const auto& l2 = ctx.lambda2(w, m);
                    for (long i = 0; i < ctx.quotient(w1, m1).dim(); ++i)
                        for (long j = 0; j < ctx.quotient(w2, m2).dim(); ++j) {
                            std::map<long, Rational> phi;
                            for (long pos = 0; pos < q.dim(); ++pos) {
                                auto coords = ctx.cobracket_coords(FormalSum<dihedral::DihedralGen>(
                                    q.gens[q.basis_cols[pos]]));
                                int sign = 0;
                                long col = l2.index({w1, m1}, i, {w2, m2}, j, sign);
                                auto it = coords.find(col);
                                if (it != coords.end() && sign != 0) phi[pos] = it->second * sign;
                            }
                            auto lhs = derivations::xi_functional(ctx, w, m, phi);
                            auto rhs = derivations::derivation_bracket(
                                derivations::xi_dual(ctx, w1, m1, i),
                                derivations::xi_dual(ctx, w2, m2, j));
                            if (!derivations::gr_equal(lhs, rhs, m)) return false;
                        }
                }
        }
        return true;
    });

    // 11. numeric identities
    run(11, "certificates: (4-15.3) at 30 digits; Euler zeta(2n); Li2(-1); 20 random", [] {
        using namespace numerics;
        auto cert = mzv::stuffle_certificate(mzv::zeta({2}), mzv::zeta({3}));
        auto r = verify_certificate(cert, 30);
        if (!r.pass || !r.residual.less_than_pow10(-20)) return false;

        for (int n = 1; n <= 5; ++n) {
            auto series = eval_polylog(mzv::zeta({2 * n}), 25);
            if (!close_pow10(series.value.re, euler_even_zeta(n, 30), 25)) return false;
        }
        {
            mzv::ZSymbol z;
            z.level = 2;
            z.comp = {2};
            z.args = {1};
            auto rm = eval_polylog(z, 25);
            const long prec = 256;
            BigFloat pi = BigFloat::pi(prec);
            BigFloat expect = pi * pi / BigFloat::from_long(-12, prec);
            if (!close_pow10(rm.value.re, expect, 25)) return false;
        }
        std::mt19937 rng(20260810);
        int done = 0;
        while (done < 20) {
            auto draw = [&](int max_depth, int max_part) {
                mzv::ZSymbol z;
                z.level = 1;
                const int d = 1 + static_cast<int>(rng() % max_depth);
                for (int i = 0; i < d; ++i) {
                    z.comp.push_back(1 + static_cast<int>(rng() % max_part));
                    z.args.push_back(0);
                }
                if (z.comp.back() == 1) z.comp.back() = 2;
                return z;
            };
            auto u = draw(2, 3), v = draw(1, 2);
            if (u.weight() + v.weight() > 6 || !u.convergent() || !v.convergent()) continue;
            auto c = mzv::double_shuffle_certificate(u, v);
            if (!verify_certificate(c, 25).pass) return false;
            ++done;
        }
        return true;
    });

    if (failures == 0) {
        std::printf("acceptance: all criteria PASS\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) FAILED\n", failures);
    return 1;
}
