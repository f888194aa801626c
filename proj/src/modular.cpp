#include "hicyclo/modular.hpp"

#include "hicyclo/combinatorics.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace hicyclo::modular {

long det(const Mat& a) {
    const size_t n = a.size();
    if (n == 0) return 1;
    if (n == 1) return a[0][0];
    long d = 0;
    // cofactor expansion; matrices here are at most 4x4
    for (size_t j = 0; j < n; ++j) {
        if (a[0][j] == 0) continue;
        Mat minor(n - 1, std::vector<long>(n - 1));
        for (size_t r = 1; r < n; ++r) {
            size_t cc = 0;
            for (size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor[r - 1][cc++] = a[r][c];
            }
        }
        d += ((j % 2 == 0) ? 1 : -1) * a[0][j] * det(minor);
    }
    return d;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    const size_t n = a.size();
    Mat r(n, std::vector<long>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

Vec mat_apply(const Mat& a, const Vec& v) {
    const size_t n = a.size();
    Vec r(n, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) r[i] += a[i][j] * v[j];
    return r;
}

Mat inverse_unimodular(const Mat& a) {
    const long d = det(a);
    if (d != 1 && d != -1) throw std::invalid_argument("inverse_unimodular: |det| != 1");
    const size_t n = a.size();
    Mat inv(n, std::vector<long>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            // adjugate entry (i,j) = (-1)^{i+j} det(a with row j, column i removed)
            Mat minor(n - 1, std::vector<long>(n - 1));
            for (size_t r = 0, rr = 0; r < n; ++r) {
                if (r == j) continue;
                for (size_t c = 0, cc = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor[rr][cc++] = a[r][c];
                }
                ++rr;
            }
            long cof = det(minor);
            if ((i + j) % 2) cof = -cof;
            inv[i][j] = cof * d; // divide by det = +-1
        }
    return inv;
}

namespace {

bool vec_is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
}

Vec vec_neg(const Vec& v) {
    Vec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
    return r;
}

Vec completion(const std::vector<Vec>& vs) {
    Vec s(vs[0].size(), 0);
    for (const auto& v : vs)
        for (size_t i = 0; i < s.size(); ++i) s[i] += v[i];
    return vec_neg(s);
}

} // namespace

Normalized normalize(const ModularGen& q) {
    Normalized n;
    n.canon = q;
    n.sign = 1;
    // rank-1 sign canonicalization: <v,-v> = <-v,v>
    for (auto& b : n.canon.blocks) {
        if (b.rank() != 1) continue;
        const auto& v = b.v[0];
        auto it = std::find_if(v.begin(), v.end(), [](long x) { return x != 0; });
        if (it != v.end() && *it < 0) b.v[0] = vec_neg(v);
    }
    // sort anticommuting blocks, tracking parity
    for (size_t i = 0; i + 1 < n.canon.blocks.size(); ++i)
        for (size_t j = 0; j + 1 < n.canon.blocks.size() - i; ++j)
            if (n.canon.blocks[j + 1] < n.canon.blocks[j]) {
                std::swap(n.canon.blocks[j], n.canon.blocks[j + 1]);
                n.sign = -n.sign;
            }
    const size_t m = n.canon.blocks.empty() ? 0 : n.canon.blocks[0].v[0].size();
    size_t total = 0;
    for (const auto& b : n.canon.blocks) total += b.v.size();
    if (total != m) throw std::invalid_argument("normalize: blocks do not span");
    n.frame.assign(m, std::vector<long>(m, 0));
    size_t col = 0;
    for (const auto& b : n.canon.blocks) {
        n.shape.push_back(b.rank());
        for (const auto& v : b.v) {
            for (size_t i = 0; i < m; ++i) n.frame[i][col] = v[i];
            ++col;
        }
    }
    const long d = det(n.frame);
    if (d != 1 && d != -1) throw std::invalid_argument("normalize: frame not unimodular");
    return n;
}

ModularGen standard_gen(const std::vector<int>& shape) {
    const int m = std::accumulate(shape.begin(), shape.end(), 0);
    ModularGen g;
    int col = 0;
    for (int k : shape) {
        Block b;
        for (int i = 0; i < k; ++i) {
            Vec e(m, 0);
            e[col++] = 1;
            b.v.push_back(std::move(e));
        }
        g.blocks.push_back(std::move(b));
    }
    return g;
}

FormalSum<ModularGen> modular_boundary(const ModularGen& g) {
    FormalSum<ModularGen> out;
    for (size_t pos = 0; pos < g.blocks.size(); ++pos) {
        const Block& blk = g.blocks[pos];
        const int k = blk.rank();
        if (k < 2) continue;
        const Rational leib = (pos % 2 == 0) ? Rational(1) : Rational(-1);
        std::vector<Vec> tuple = blk.v;
        tuple.push_back(completion(blk.v));
        // - Cycle_{k+1} sum over splits of the first k of each rotation
        for (int rot = 0; rot <= k; ++rot) {
            for (int split = 1; split < k; ++split) {
                Block a, b;
                for (int j = 0; j < split; ++j) a.v.push_back(tuple[(j + rot) % (k + 1)]);
                for (int j = split; j < k; ++j) b.v.push_back(tuple[(j + rot) % (k + 1)]);
                ModularGen term;
                for (size_t t = 0; t < g.blocks.size(); ++t) {
                    if (t == pos) {
                        term.blocks.push_back(a);
                        term.blocks.push_back(b);
                    } else {
                        term.blocks.push_back(g.blocks[t]);
                    }
                }
                auto n = normalize(term);
                out.add(n.canon, -leib * n.sign);
            }
        }
    }
    return out;
}

std::vector<TupleRelation> block_relation_terms(const std::vector<Vec>& tuple,
                                                bool with_affine) {
    const int r = static_cast<int>(tuple.size());
    std::vector<TupleRelation> rows;
    if (r < 2) return rows;
    for (int k = 1; k < r; ++k) {
        // first shuffle: sum over sigma of <v_{s(1)},..,v_{s(r)}, v_{r+1}>
        TupleRelation terms;
        for (const auto& s : shuffles(k, r - k)) {
            std::vector<Vec> tup;
            for (int j = 0; j < r; ++j) tup.push_back(tuple[s[j]]);
            terms.push_back({Rational(1), std::move(tup)});
        }
        rows.push_back(std::move(terms));
    }
    if (with_affine) {
        // homogeneous affine basis u_1 = 0, u_{j+1} = v_1 + .. + v_j
        std::vector<Vec> u(r + 1, Vec(tuple[0].size(), 0));
        for (int j = 1; j <= r; ++j) {
            u[j] = u[j - 1];
            for (size_t i = 0; i < u[j].size(); ++i) u[j][i] += tuple[j - 1][i];
        }
        for (int k = 1; k < r; ++k) {
            TupleRelation terms;
            for (const auto& s : shuffles(k, r - k)) {
                std::vector<Vec> useq;
                for (int j = 0; j < r; ++j) useq.push_back(u[s[j]]);
                useq.push_back(u[r]);
                // difference tuple (indices mod r+1), keep the first r entries
                std::vector<Vec> tup;
                for (int j = 0; j < r; ++j) {
                    Vec d(useq[j].size());
                    for (size_t i = 0; i < d.size(); ++i)
                        d[i] = useq[(j + 1) % (r + 1)][i] - useq[j][i];
                    tup.push_back(std::move(d));
                }
                terms.push_back({Rational(1), std::move(tup)});
            }
            rows.push_back(std::move(terms));
        }
    }
    return rows;
}

std::vector<FormalSum<ModularGen>> block_relations(const std::vector<Vec>& tuple,
                                                   bool with_affine) {
    std::vector<FormalSum<ModularGen>> rows;
    for (const auto& rel : block_relation_terms(tuple, with_affine)) {
        FormalSum<ModularGen> row;
        for (const auto& [c, tup] : rel) {
            ModularGen g;
            g.blocks.push_back({tup});
            auto n = normalize(g);
            row.add(n.canon, c * n.sign);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<FormalSum<ModularGen>> relation_rows_modular(int m) {
    if (m < 2 || m > 4) throw std::invalid_argument("relation_rows_modular: rank out of range");
    std::vector<Vec> std_tuple;
    for (int i = 0; i < m; ++i) {
        Vec e(m, 0);
        e[i] = 1;
        std_tuple.push_back(std::move(e));
    }
    return block_relations(std_tuple, true);
}

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

} // namespace

std::vector<std::vector<int>> coset_space(int m, int N) {
    if (N == 1) return {std::vector<int>(m, 0)};
    if (!is_prime(N))
        throw std::invalid_argument("coset_space: composite level not supported");
    std::vector<std::vector<int>> out;
    std::vector<int> cur(m, 0);
    for (;;) {
        if (!std::all_of(cur.begin(), cur.end(), [](int x) { return x == 0; })) out.push_back(cur);
        int i = m - 1;
        while (i >= 0 && ++cur[i] == N) cur[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

bool reduces_to_zero(const FormalSum<ModularGen>& x) {
    if (x.is_zero()) return true;
    // permutation closure of the support under single-block first-shuffle rows
    std::set<ModularGen> support;
    for (const auto& [g, c] : x.terms()) support.insert(g);
    std::vector<FormalSum<ModularGen>> rows;
    std::set<ModularGen> processed;
    bool grew = true;
    int rounds = 0;
    while (grew && rounds < 12) {
        grew = false;
        ++rounds;
        std::vector<ModularGen> todo;
        for (const auto& g : support)
            if (!processed.count(g)) todo.push_back(g);
        for (const auto& g : todo) {
            processed.insert(g);
            for (size_t pos = 0; pos < g.blocks.size(); ++pos) {
                if (g.blocks[pos].rank() < 2) continue;
                for (const auto& rel : block_relation_terms(g.blocks[pos].v, true)) {
                    FormalSum<ModularGen> wedge_row;
                    for (const auto& [c, tup] : rel) {
                        ModularGen term = g;
                        term.blocks[pos] = Block{tup};
                        auto n = normalize(term);
                        wedge_row.add(n.canon, c * n.sign);
                    }
                    if (wedge_row.is_zero()) continue;
                    rows.push_back(wedge_row);
                    for (const auto& [t, c] : wedge_row.terms())
                        if (support.insert(t).second) grew = true;
                }
            }
        }
    }
    std::map<ModularGen, int> col;
    for (const auto& g : support) col.emplace(g, static_cast<int>(col.size()));
    auto to_row = [&](const FormalSum<ModularGen>& fs) {
        SparseRow r;
        for (const auto& [g, c] : fs.terms()) r.push_back({col.at(g), c});
        std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return r;
    };
    SparseMatrixQ rel(0, static_cast<int>(col.size()));
    for (const auto& r : rows) rel.add_row(to_row(r));
    EliminationOptions eo;
    eo.want_kernel = false;
    const int base = rank_and_kernel(rel, eo).rank;
    rel.add_row(to_row(x));
    return rank_and_kernel(rel, eo).rank == base;
}

// ---- coinvariants ----------------------------------------------------------

namespace {

using PolyM = std::map<std::vector<int>, Rational>;

std::vector<std::vector<int>> monomials_of_degree(int deg, int nvars) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(nvars, 0);
    struct Rec {
        int nvars;
        std::vector<std::vector<int>>& out;
        std::vector<int>& cur;
        void go(int pos, int rest) {
            if (pos == nvars - 1) {
                cur[pos] = rest;
                out.push_back(cur);
                return;
            }
            for (int v = rest; v >= 0; --v) {
                cur[pos] = v;
                go(pos + 1, rest - v);
            }
        }
    } rec{nvars, out, cur};
    rec.go(0, deg);
    return out;
}

// substitute e_j -> sum_i M[i][j] e_i into the monomial with given exponents
PolyM substitute_monomial(const std::vector<int>& expo, const Mat& M) {
    const int m = static_cast<int>(expo.size());
    PolyM acc;
    acc[std::vector<int>(m, 0)] = 1;
    for (int j = 0; j < m; ++j) {
        PolyM lin;
        for (int i = 0; i < m; ++i)
            if (M[i][j] != 0) {
                std::vector<int> mo(m, 0);
                mo[i] = 1;
                lin[mo] = Rational(M[i][j]);
            }
        for (int rep = 0; rep < expo[j]; ++rep) {
            PolyM next;
            for (const auto& [ma, ca] : acc)
                for (const auto& [mb, cb] : lin) {
                    std::vector<int> mo(m);
                    for (int i = 0; i < m; ++i) mo[i] = ma[i] + mb[i];
                    auto [it, fresh] = next.try_emplace(mo, ca * cb);
                    if (!fresh) {
                        it->second += ca * cb;
                        if (it->second == 0) next.erase(it);
                    }
                }
            acc = std::move(next);
        }
    }
    return acc;
}

struct CoinvariantSpace {
    int m = 0, N = 1, w = 0;
    std::vector<std::vector<std::vector<int>>> shapes; // per term: list of shapes
    std::vector<std::vector<int>> cosets;
    std::vector<std::vector<int>> monos;
    std::map<std::vector<int>, int> coset_idx;
    std::map<std::vector<int>, int> mono_idx;
    // per term: number of generators = #shapes * #cosets * #monos
    std::vector<long> gen_counts;

    long columns(int term) const {
        return static_cast<long>(shapes[term].size()) * cosets.size() * monos.size();
    }
    long column(int term, int shape_i, int coset_i, int mono_i) const {
        return (static_cast<long>(shape_i) * cosets.size() + coset_i) * monos.size() + mono_i;
    }
    int shape_index(int term, const std::vector<int>& s) const {
        for (size_t i = 0; i < shapes[term].size(); ++i)
            if (shapes[term][i] == s) return static_cast<int>(i);
        return -1;
    }
};

// ascending partitions of m into k parts
void partitions_rec(int m, int k, int minpart, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
    if (k == 1) {
        if (m >= minpart) {
            cur.push_back(m);
            out.push_back(cur);
            cur.pop_back();
        }
        return;
    }
    for (int p = minpart; p * k <= m; ++p) {
        cur.push_back(p);
        partitions_rec(m - p, k - 1, p, cur, out);
        cur.pop_back();
    }
}

CoinvariantSpace make_space(int m, int N, int w) {
    CoinvariantSpace sp;
    sp.m = m;
    sp.N = N;
    sp.w = w;
    sp.cosets = coset_space(m, N);
    for (size_t i = 0; i < sp.cosets.size(); ++i) sp.coset_idx[sp.cosets[i]] = static_cast<int>(i);
    sp.monos = monomials_of_degree(w - m, m);
    for (size_t i = 0; i < sp.monos.size(); ++i) sp.mono_idx[sp.monos[i]] = static_cast<int>(i);
    for (int k = 1; k <= m; ++k) {
        std::vector<std::vector<int>> parts;
        std::vector<int> cur;
        partitions_rec(m, k, 1, cur, parts);
        sp.shapes.push_back(parts);
        sp.gen_counts.push_back(static_cast<long>(parts.size()) * sp.cosets.size() * sp.monos.size());
    }
    return sp;
}

// coinvariant coordinates of coefficient * presentation at (coset, monomial)
void accumulate_presentation(const CoinvariantSpace& sp, int term, const ModularGen& pres,
                             const Rational& coef, int coset_i, int mono_i,
                             std::map<long, Rational>& out) {
    auto n = normalize(pres);
    const int si = sp.shape_index(term, n.shape);
    if (si < 0) throw std::logic_error("accumulate_presentation: unknown shape");
    // translated coset: c * frame mod N
    const auto& c = sp.cosets[coset_i];
    std::vector<int> c2(sp.m, 0);
    for (int j = 0; j < sp.m; ++j) {
        long acc = 0;
        for (int i = 0; i < sp.m; ++i) acc += static_cast<long>(c[i]) * n.frame[i][j];
        c2[j] = static_cast<int>(((acc % sp.N) + sp.N) % sp.N);
    }
    auto cit = sp.coset_idx.find(c2);
    if (cit == sp.coset_idx.end()) throw std::logic_error("accumulate_presentation: coset left the space");
    // translated polynomial: frame^{-1} . P
    const Mat inv = inverse_unimodular(n.frame);
    for (const auto& [mo, v] : substitute_monomial(sp.monos[mono_i], inv)) {
        const long col = sp.column(term, si, cit->second, sp.mono_idx.at(mo));
        const Rational add = coef * n.sign * v;
        auto [it, fresh] = out.try_emplace(col, add);
        if (!fresh) {
            it->second += add;
            if (it->second == 0) out.erase(it);
        }
    }
}

SparseRow map_to_row(const std::map<long, Rational>& entries) {
    SparseRow r;
    for (const auto& [c, v] : entries) r.push_back({static_cast<int>(c), v});
    return r;
}

// relation rows of one term over all (coset, monomial) translates
std::vector<SparseRow> term_relation_rows(const CoinvariantSpace& sp, int term) {
    std::vector<SparseRow> rows;
    for (size_t si = 0; si < sp.shapes[term].size(); ++si) {
        const auto& shape = sp.shapes[term][si];
        const ModularGen std_q = standard_gen(shape);
        // presentation-level identities: each is a FormalSum of (coef, presentation)
        // minus a direct translate term handled via an explicit matrix.
        struct Move {
            Mat g;
        };
        std::vector<Mat> moves;
        int col0 = 0;
        for (size_t b = 0; b < shape.size(); ++b) {
            if (shape[b] == 1) {
                Mat flip(sp.m, std::vector<long>(sp.m, 0));
                for (int i = 0; i < sp.m; ++i) flip[i][i] = (i == col0) ? -1 : 1;
                moves.push_back(flip);
            }
            if (b + 1 < shape.size() && shape[b] == shape[b + 1]) {
                // swap adjacent equal blocks
                Mat sw(sp.m, std::vector<long>(sp.m, 0));
                for (int i = 0; i < sp.m; ++i) sw[i][i] = 1;
                for (int i = 0; i < shape[b]; ++i) {
                    for (int r = 0; r < sp.m; ++r) {
                        std::swap(sw[r][col0 + i], sw[r][col0 + shape[b] + i]);
                    }
                }
                moves.push_back(sw);
            }
            col0 += shape[b];
        }
        for (const auto& g0 : moves) {
            // <g0 . std> at (c, P) equals <std> at (c*g0, g0^{-1} P)
            ModularGen lhs = std_q;
            size_t vi = 0;
            for (auto& blk : lhs.blocks)
                for (auto& v : blk.v) {
                    Vec nv(sp.m, 0);
                    for (int i = 0; i < sp.m; ++i)
                        for (int j = 0; j < sp.m; ++j) nv[i] += g0[i][j] * v[j];
                    v = std::move(nv);
                    ++vi;
                }
            const Mat g0inv = inverse_unimodular(g0);
            for (size_t ci = 0; ci < sp.cosets.size(); ++ci)
                for (size_t mi = 0; mi < sp.monos.size(); ++mi) {
                    std::map<long, Rational> entries;
                    accumulate_presentation(sp, term, lhs, Rational(1), static_cast<int>(ci),
                                            static_cast<int>(mi), entries);
                    // subtract the translate coordinates
                    const auto& c = sp.cosets[ci];
                    std::vector<int> c2(sp.m, 0);
                    for (int j = 0; j < sp.m; ++j) {
                        long acc = 0;
                        for (int i = 0; i < sp.m; ++i) acc += static_cast<long>(c[i]) * g0[i][j];
                        c2[j] = static_cast<int>(((acc % sp.N) + sp.N) % sp.N);
                    }
                    for (const auto& [mo, v] : substitute_monomial(sp.monos[mi], g0inv)) {
                        const long col = sp.column(term, static_cast<int>(si),
                                                   sp.coset_idx.at(c2), sp.mono_idx.at(mo));
                        auto [it, fresh] = entries.try_emplace(col, -v);
                        if (!fresh) {
                            it->second -= v;
                            if (it->second == 0) entries.erase(it);
                        }
                    }
                    if (!entries.empty()) rows.push_back(map_to_row(entries));
                }
        }
        // block-internal shuffle relations
        col0 = 0;
        for (size_t b = 0; b < shape.size(); ++b) {
            if (shape[b] >= 2) {
                std::vector<Vec> tuple;
                for (int i = 0; i < shape[b]; ++i) {
                    Vec e(sp.m, 0);
                    e[col0 + i] = 1;
                    tuple.push_back(std::move(e));
                }
                for (const auto& rel : block_relation_terms(tuple, true)) {
                    for (size_t ci = 0; ci < sp.cosets.size(); ++ci)
                        for (size_t mi = 0; mi < sp.monos.size(); ++mi) {
                            std::map<long, Rational> entries;
                            for (const auto& [coef, tup] : rel) {
                                ModularGen pres = std_q;
                                pres.blocks[b] = Block{tup};
                                accumulate_presentation(sp, term, pres, coef, static_cast<int>(ci),
                                                        static_cast<int>(mi), entries);
                            }
                            if (!entries.empty()) rows.push_back(map_to_row(entries));
                        }
                }
            }
            col0 += shape[b];
        }
    }
    return rows;
}

// gen-level boundary rows: image of every term-k generator in term-(k+1) coords
std::vector<std::map<long, Rational>> term_boundary(const CoinvariantSpace& sp, int term) {
    std::vector<std::map<long, Rational>> images(sp.columns(term));
    for (size_t si = 0; si < sp.shapes[term].size(); ++si) {
        const ModularGen std_q = standard_gen(sp.shapes[term][si]);
        const auto bd = modular_boundary(std_q);
        for (size_t ci = 0; ci < sp.cosets.size(); ++ci)
            for (size_t mi = 0; mi < sp.monos.size(); ++mi) {
                std::map<long, Rational> entries;
                for (const auto& [pres, coef] : bd.terms())
                    accumulate_presentation(sp, term + 1, pres, coef, static_cast<int>(ci),
                                            static_cast<int>(mi), entries);
                images[sp.column(term, static_cast<int>(si), static_cast<int>(ci),
                                 static_cast<int>(mi))] = std::move(entries);
            }
    }
    return images;
}

int matrix_rank(const std::vector<SparseRow>& rows, long ncols) {
    SparseMatrixQ mat(0, static_cast<int>(std::max<long>(ncols, 1)));
    for (const auto& r : rows) mat.add_row(r);
    EliminationOptions eo;
    eo.want_kernel = false;
    return rank_and_kernel(mat, eo).rank;
}

} // namespace

TensorComplex tensor_complex(int m, int N, int w) {
    if (m < 2 || m > 3) throw std::invalid_argument("tensor_complex: rank must be 2 or 3");
    if (w < m) throw std::invalid_argument("tensor_complex: weight below rank");
    auto sp = make_space(m, N, w);

    TensorComplex tc;
    tc.m = m;
    tc.N = N;
    tc.w = w;
    tc.gen_counts = sp.gen_counts;

    std::vector<std::vector<SparseRow>> rel(m);
    std::vector<int> rel_rank(m, 0);
    for (int k = 0; k < m; ++k) {
        rel[k] = term_relation_rows(sp, k);
        rel_rank[k] = matrix_rank(rel[k], sp.columns(k));
        tc.term_dims.push_back(sp.columns(k) - rel_rank[k]);
    }

    std::vector<int> induced_rank(m, 0);
    std::vector<std::vector<std::map<long, Rational>>> images(m - 1);
    for (int k = 0; k + 1 < m; ++k) {
        images[k] = term_boundary(sp, k);
        // rank of the induced map: stack images with target relations
        std::vector<SparseRow> rows = rel[k + 1];
        for (const auto& img : images[k])
            if (!img.empty()) rows.push_back(map_to_row(img));
        induced_rank[k] = matrix_rank(rows, sp.columns(k + 1)) - rel_rank[k + 1];
        // well-definedness: images of relation rows live in the target relations
        std::vector<SparseRow> check = rel[k + 1];
        for (const auto& row : rel[k]) {
            std::map<long, Rational> img;
            for (const auto& [col, v] : row)
                for (const auto& [tcol, tv] : images[k][col]) {
                    auto [it, fresh] = img.try_emplace(tcol, v * tv);
                    if (!fresh) {
                        it->second += v * tv;
                        if (it->second == 0) img.erase(it);
                    }
                }
            if (!img.empty()) check.push_back(map_to_row(img));
        }
        if (matrix_rank(check, sp.columns(k + 1)) != rel_rank[k + 1])
            throw std::logic_error("tensor_complex: boundary does not descend");
    }

    for (int k = 0; k < m; ++k) {
        const long dim_k = tc.term_dims[k];
        const long out_rank = (k + 1 < m) ? induced_rank[k] : 0;
        const long in_rank = (k >= 1) ? induced_rank[k - 1] : 0;
        tc.cohomology.push_back(dim_k - out_rank - in_rank);
    }
    long e = 0;
    for (int k = 0; k < m; ++k) e += (k % 2 == 0 ? 1 : -1) * tc.term_dims[k];
    tc.euler = e;
    return tc;
}

bool stability_check(int m, int N, int w, int translates, unsigned seed) {
    auto sp = make_space(m, N, w);
    auto rows = term_relation_rows(sp, 0);
    const int base = matrix_rank(rows, sp.columns(0));

    std::mt19937 rng(seed);
    std::vector<Vec> std_tuple;
    for (int i = 0; i < m; ++i) {
        Vec e(m, 0);
        e[i] = 1;
        std_tuple.push_back(std::move(e));
    }
    for (int t = 0; t < translates; ++t) {
        // random unimodular matrix: a short word in elementary transvections
        Mat g(m, std::vector<long>(m, 0));
        for (int i = 0; i < m; ++i) g[i][i] = 1;
        const int steps = 2 + static_cast<int>(rng() % 4);
        for (int s = 0; s < steps; ++s) {
            int i = static_cast<int>(rng() % m), j = static_cast<int>(rng() % m);
            if (i == j) {
                Mat f(m, std::vector<long>(m, 0));
                for (int d = 0; d < m; ++d) f[d][d] = (d == i) ? -1 : 1;
                g = mat_mul(g, f);
            } else {
                Mat f(m, std::vector<long>(m, 0));
                for (int d = 0; d < m; ++d) f[d][d] = 1;
                f[i][j] = (rng() % 2) ? 1 : -1;
                g = mat_mul(g, f);
            }
        }
        std::vector<Vec> tup;
        for (const auto& v : std_tuple) tup.push_back(mat_apply(g, v));
        for (const auto& rel : block_relations(tup, true)) {
            for (size_t ci = 0; ci < sp.cosets.size(); ++ci)
                for (size_t mi = 0; mi < sp.monos.size(); ++mi) {
                    std::map<long, Rational> entries;
                    for (const auto& [single, coef] : rel.terms())
                        accumulate_presentation(sp, 0, single, coef, static_cast<int>(ci),
                                                static_cast<int>(mi), entries);
                    if (!entries.empty()) rows.push_back(map_to_row(entries));
                }
        }
    }
    return matrix_rank(rows, sp.columns(0)) == base;
}

dihedral::DihedralGen mu_block(int N, const std::vector<int>& coset, const Block& b) {
    const int k = b.rank();
    std::vector<int> full(k + 1, 0);
    long acc = 0;
    for (int j = 0; j < k; ++j) {
        long a = 0;
        for (size_t i = 0; i < coset.size(); ++i) a += static_cast<long>(coset[i]) * b.v[j][i];
        acc += a;
        full[j + 1] = static_cast<int>(((acc % N) + N) % N);
    }
    return dihedral::make_canonical(N, std::vector<int>(k, 1), full);
}

bool mu_chain_map_ok(dihedral::Context& ctx, int N) {
    const int m = 2;
    auto sp = make_space(m, N, m);
    const ModularGen std_q = standard_gen({2});
    const auto bd = modular_boundary(std_q);
    for (const auto& c : sp.cosets) {
        // mu then delta
        auto lhs = ctx.cobracket_coords(
            FormalSum<dihedral::DihedralGen>(mu_block(N, c, std_q.blocks[0])));
        // boundary then mu
        FormalSum<dihedral::GenPair> pairs;
        for (const auto& [pres, coef] : bd.terms()) {
            // presentations here are two rank-1 blocks (canonical order baked in)
            pairs.add({mu_block(N, c, pres.blocks[0]), mu_block(N, c, pres.blocks[1])}, coef);
        }
        auto rhs = ctx.lambda2_coords(m, m, pairs);
        if (lhs != rhs) return false;
    }
    return true;
}

long mu_image_rank(dihedral::Context& ctx, int m, int N) {
    auto sp = make_space(m, N, m);
    const ModularGen std_q = standard_gen({m});
    const auto& q = ctx.quotient(m, m);
    SparseMatrixQ mat(static_cast<int>(sp.cosets.size()), static_cast<int>(std::max<long>(q.dim(), 1)));
    for (size_t ci = 0; ci < sp.cosets.size(); ++ci) {
        auto gen = mu_block(N, sp.cosets[ci], std_q.blocks[0]);
        auto it = std::lower_bound(q.gens.begin(), q.gens.end(), gen);
        for (const auto& [pos, v] : q.classes[it - q.gens.begin()])
            mat.set(static_cast<int>(ci), static_cast<int>(pos), v);
    }
    EliminationOptions eo;
    eo.want_kernel = false;
    return rank_and_kernel(mat, eo).rank;
}

std::string complex_report_json(const TensorComplex& tc) {
    nlohmann::json j;
    j["rank"] = tc.m;
    j["level"] = tc.N;
    j["weight"] = tc.w;
    j["term_dims"] = tc.term_dims;
    j["cohomology"] = tc.cohomology;
    j["euler"] = tc.euler;
    return j.dump();
}

} // namespace hicyclo::modular
