#include "hicyclo/dihedral.hpp"

#include "hicyclo/combinatorics.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hicyclo::dihedral {

int DihedralGen::weight() const { return std::accumulate(comp.begin(), comp.end(), 0); }

std::string DihedralGen::serialize() const {
    std::string s = "I[";
    for (size_t i = 0; i < comp.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(comp[i]);
    }
    s += "](";
    for (int g : slots) { s += std::to_string(g); s += ':'; }
    s += "0)@";
    s += std::to_string(level);
    return s;
}

DihedralGen make_canonical(int level, std::vector<int> comp, const std::vector<int>& full_slots) {
    if (full_slots.size() != comp.size() + 1)
        throw std::invalid_argument("make_canonical: slot count");
    DihedralGen g;
    g.level = level;
    g.comp = std::move(comp);
    g.slots.resize(g.comp.size());
    const int last = full_slots.back();
    for (size_t i = 0; i < g.slots.size(); ++i)
        g.slots[i] = ((full_slots[i] - last) % level + level) % level;
    return g;
}

namespace {

using Mono = std::vector<int>;
using Poly = TPoly;
using LinForm = TForm;

LinForm tvar(int j, int m) { return tform(j, m); }

LinForm lf_sub(const LinForm& a, const LinForm& b) {
    LinForm r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

LinForm lf_add(const LinForm& a, const LinForm& b) {
    LinForm r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

LinForm lf_scale(const LinForm& a, long c) {
    LinForm r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

Poly poly_one(int m) { return {{Mono(m, 0), Rational(1)}}; }

Poly poly_of_linform(const LinForm& f) {
    Poly p;
    const int m = static_cast<int>(f.size());
    for (int i = 0; i < m; ++i) {
        if (f[i] == 0) continue;
        Mono mo(m, 0);
        mo[i] = 1;
        p[mo] = Rational(f[i]);
    }
    return p;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            Mono mo(ma.size());
            for (size_t i = 0; i < mo.size(); ++i) mo[i] = ma[i] + mb[i];
            auto [it, fresh] = r.try_emplace(mo, ca * cb);
            if (!fresh) {
                it->second += ca * cb;
                if (it->second == 0) r.erase(it);
            }
        }
    return r;
}

Poly poly_pow_linform(const LinForm& f, int e) {
    Poly r = poly_one(static_cast<int>(f.size()));
    if (e == 0) return r;
    Poly base = poly_of_linform(f);
    for (int i = 0; i < e; ++i) r = poly_mul(r, base);
    return r;
}

std::vector<std::pair<DihedralGen, Poly>>
series_weight_part(int level, const std::vector<int>& slots,
                   const std::vector<LinForm>& targs, int weight) {
    return series_part(level, slots, targs, weight,
                       targs.empty() ? 0 : static_cast<int>(targs[0].size()));
}

struct SeriesTerm {
    Rational coef;
    std::vector<int> slots;      // m+1 residues
    std::vector<LinForm> targs;  // m+1 forms
};

struct Instance {
    std::vector<SeriesTerm> terms;
    bool skip_zero_mono = false;
};

std::vector<std::vector<int>> all_tuples(int level, int m) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(m, 0);
    for (;;) {
        out.push_back(cur);
        int i = m - 1;
        while (i >= 0 && ++cur[i] == level) cur[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

int norm_mod(long x, int n) { return static_cast<int>(((x % n) + n) % n); }

std::vector<Instance> build_instances(int level, int w, int m, const Options& opts,
                                      bool with_dihedral_all_m) {
    std::vector<Instance> out;
    std::vector<LinForm> t(m + 1);
    for (int j = 0; j <= m; ++j) t[j] = tvar(j, m);

    const auto tuples = all_tuples(level, m);

    // Double shuffle (gw3): colon slots, comma dual slots.
    for (int p = 1; p < m; ++p) {
        const int q = m - p;
        const auto sigmas = shuffles(p, q);
        for (const auto& g : tuples) {
            Instance inst;
            for (const auto& s : sigmas) {
                SeriesTerm term;
                term.coef = 1;
                term.slots.reserve(m + 1);
                term.targs.reserve(m + 1);
                LinForm acc(m, 0);
                for (int j = 0; j < m; ++j) {
                    term.slots.push_back(g[s[j]]);
                    acc = lf_add(acc, t[s[j]]);
                    term.targs.push_back(acc);
                }
                term.slots.push_back(0);
                term.targs.push_back(LinForm(m, 0)); // the cumulative gauge endpoint
                inst.terms.push_back(std::move(term));
            }
            out.push_back(std::move(inst));
        }
    }

    // Double shuffle (gw4): comma slots, colon dual slots; products multiply to e.
    for (int p = 1; p < m; ++p) {
        const int q = m - p;
        const auto sigmas = shuffles(p, q);
        for (const auto& g : tuples) {
            Instance inst;
            for (const auto& s : sigmas) {
                SeriesTerm term;
                term.coef = 1;
                long acc = 0;
                term.slots.push_back(0); // leading identity of the partial products
                for (int j = 0; j < m; ++j) {
                    acc += g[s[j]];
                    term.slots.push_back(norm_mod(acc, level));
                }
                for (int j = 0; j < m; ++j) term.targs.push_back(t[s[j]]);
                term.targs.push_back(t[m]);
                inst.terms.push_back(std::move(term));
            }
            out.push_back(std::move(inst));
        }
    }

    // Distribution rows, one per divisor l > 1 of the level and per tuple of
    // l-th powers; the (m=1, x=e, degree-0) coefficient is skipped.
    if (opts.distribution) {
        for (int l = 2; l <= level; ++l) {
            if (level % l != 0) continue;
            const int sub = level / l; // the l-th powers are the multiples of l, N/l of them
            for (const auto& r : all_tuples(sub, m)) {
                Instance inst;
                std::vector<int> x(m);
                for (int j = 0; j < m; ++j) x[j] = norm_mod(static_cast<long>(r[j]) * l, level);
                SeriesTerm lhs;
                lhs.coef = 1;
                lhs.slots = x;
                lhs.slots.push_back(0);
                lhs.targs = t;
                inst.terms.push_back(std::move(lhs));
                // Sum over y with y^l = x, last slot pinned to e by homogeneity.
                for (const auto& jj : all_tuples(l, m)) {
                    SeriesTerm rhs;
                    rhs.coef = -1;
                    for (int j = 0; j < m; ++j)
                        rhs.slots.push_back(norm_mod(r[j] + static_cast<long>(jj[j]) * sub, level));
                    rhs.slots.push_back(0);
                    for (int j = 0; j <= m; ++j) rhs.targs.push_back(lf_scale(t[j], l));
                    inst.terms.push_back(std::move(rhs));
                }
                inst.skip_zero_mono =
                    (m == 1 && x[0] == 0);
                out.push_back(std::move(inst));
            }
        }
    }

    auto push_symmetry_rows = [&](const std::vector<int>& g) {
        std::vector<int> full = g;
        full.push_back(0);
        // cyclic
        {
            Instance inst;
            inst.terms.push_back({Rational(1), full, t});
            SeriesTerm rot;
            rot.coef = -1;
            for (int j = 0; j <= m; ++j) {
                rot.slots.push_back(full[(j + 1) % (m + 1)]);
                rot.targs.push_back(t[(j + 1) % (m + 1)]);
            }
            inst.terms.push_back(std::move(rot));
            out.push_back(std::move(inst));
        }
        // reflection: {g|t} - (-1)^{m+1} {g_{m+1}:..:g_1 | -t_m:..:-t_1:-t_{m+1}} = 0
        {
            Instance inst;
            inst.terms.push_back({Rational(1), full, t});
            SeriesTerm ref;
            ref.coef = (m % 2 == 0) ? Rational(1) : Rational(-1); // -(-1)^{m+1}
            for (int j = m; j >= 0; --j) ref.slots.push_back(full[j]);
            for (int j = m - 1; j >= 0; --j) ref.targs.push_back(lf_scale(t[j], -1));
            ref.targs.push_back(lf_scale(t[m], -1));
            inst.terms.push_back(std::move(ref));
            out.push_back(std::move(inst));
        }
        // inversion
        {
            Instance inst;
            inst.terms.push_back({Rational(1), full, t});
            SeriesTerm inv;
            inv.coef = -1;
            for (int j = 0; j <= m; ++j) inv.slots.push_back(norm_mod(-full[j], level));
            for (int j = 0; j <= m; ++j) inv.targs.push_back(lf_scale(t[j], -1));
            inst.terms.push_back(std::move(inv));
            out.push_back(std::move(inst));
        }
    };

    if (m == 1 && opts.dihedral_m1)
        for (const auto& g : tuples) push_symmetry_rows(g);
    if (m >= 2 && with_dihedral_all_m)
        for (const auto& g : tuples) push_symmetry_rows(g);

    return out;
}

} // namespace

TForm tform(int j, int mvars) {
    TForm f(mvars, 0);
    if (j < mvars) f[j] = 1;
    else for (int i = 0; i < mvars; ++i) f[i] = -1;
    return f;
}

std::vector<std::pair<DihedralGen, TPoly>>
series_part(int level, const std::vector<int>& slots, const std::vector<TForm>& targs,
            int weight, int mvars) {
    const int k = static_cast<int>(slots.size()) - 1;
    std::vector<std::pair<DihedralGen, TPoly>> out;
    if (weight < k || k < 1) return out;
    std::vector<TForm> diffs(k);
    for (int j = 0; j < k; ++j) diffs[j] = lf_sub(targs[j], targs[k]);
    for (const auto& comp : compositions(weight, k)) {
        TPoly p = poly_one(mvars);
        for (int j = 0; j < k; ++j)
            if (comp[j] > 1) p = poly_mul(p, poly_pow_linform(diffs[j], comp[j] - 1));
        if (p.empty()) continue;
        out.push_back({make_canonical(level, comp, slots), std::move(p)});
    }
    return out;
}

std::vector<std::pair<DihedralGen, TPoly>>
colon_series(int level, const std::vector<int>& slots, int weight) {
    const int m = static_cast<int>(slots.size()) - 1;
    std::vector<TForm> targs;
    for (int j = 0; j <= m; ++j) targs.push_back(tform(j, m));
    return series_part(level, slots, targs, weight, m);
}

std::vector<std::pair<DihedralGen, TPoly>>
comma_series(int level, const std::vector<int>& slots, int weight) {
    const int m = static_cast<int>(slots.size()) - 1;
    std::vector<TForm> targs;
    TForm acc(m, 0);
    for (int j = 0; j < m; ++j) {
        acc = lf_add(acc, tform(j, m));
        targs.push_back(acc);
    }
    targs.push_back(TForm(m, 0));
    return series_part(level, slots, targs, weight, m);
}

std::vector<std::pair<DihedralGen, TPoly>>
product_coordinates(int level, const std::vector<int>& slots, int weight) {
    const int m = static_cast<int>(slots.size()) - 1;
    long total = 0;
    for (int g : slots) total += g;
    if (total % level != 0)
        throw std::invalid_argument("product_coordinates: slots do not multiply to the identity");
    std::vector<int> partial;
    partial.push_back(0);
    long acc = 0;
    for (int j = 0; j < m; ++j) {
        acc += slots[j];
        partial.push_back(norm_mod(acc, level));
    }
    return colon_series(level, partial, weight);
}

std::vector<DihedralGen> generators(int level, int w, int m) {
    std::vector<DihedralGen> out;
    for (const auto& comp : compositions(w, m))
        for (const auto& g : all_tuples(level, m)) {
            DihedralGen gen;
            gen.level = level;
            gen.comp = comp;
            gen.slots = g;
            out.push_back(std::move(gen));
        }
    std::sort(out.begin(), out.end());
    return out;
}

SparseMatrixQ relation_matrix(int level, int w, int m, const Options& opts,
                              bool with_dihedral_all_m) {
    if (level < 1 || m < 1 || w < m) throw std::invalid_argument("relation_matrix: bad bidegree");
    if (level > 100 || w > 16 || m > 4)
        throw std::invalid_argument("relation_matrix: beyond the desk-scale bounds N<=100, w<=16, m<=4");
    const auto gens = generators(level, w, m);
    std::map<DihedralGen, int> col;
    for (size_t i = 0; i < gens.size(); ++i) col[gens[i]] = static_cast<int>(i);

    const auto instances = build_instances(level, w, m, opts, with_dihedral_all_m);

    std::vector<std::vector<SparseRow>> rows_per_instance(instances.size());
#ifdef _OPENMP
    int nthreads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
#endif
    for (size_t ii = 0; ii < instances.size(); ++ii) {
        const auto& inst = instances[ii];
        std::map<Mono, FormalSum<DihedralGen>> sr;
        for (const auto& term : inst.terms) {
            for (auto& [gen, poly] : series_weight_part(level, term.slots, term.targs, w))
                for (const auto& [mono, c] : poly) sr[mono].add(gen, term.coef * c);
        }
        std::vector<SparseRow> rows;
        for (const auto& [mono, fs] : sr) {
            if (fs.is_zero()) continue;
            if (inst.skip_zero_mono &&
                std::all_of(mono.begin(), mono.end(), [](int e) { return e == 0; }))
                continue;
            SparseRow row;
            for (const auto& [gen, c] : fs.terms()) row.push_back({col.at(gen), c});
            std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            rows.push_back(std::move(row));
        }
        rows_per_instance[ii] = std::move(rows);
    }

    SparseMatrixQ mat(0, static_cast<int>(gens.size()));
    for (auto& rows : rows_per_instance)
        for (auto& r : rows) mat.add_row(r);

    if (!opts.hat && w == 1 && m == 1) {
        DihedralGen unit;
        unit.level = level;
        unit.comp = {1};
        unit.slots = {0};
        mat.add_row({{col.at(unit), Rational(1)}});
    }
    return mat;
}

long dim_D(int level, int w, int m, const Options& opts) {
    const auto gens = generators(level, w, m);
    auto mat = relation_matrix(level, w, m, opts);
    EliminationOptions eo;
    eo.threads = opts.threads;
    eo.want_kernel = false;
    return static_cast<long>(gens.size()) - rank_and_kernel(mat, eo).rank;
}

const QuotientBasis& Context::quotient(int w, int m) {
    auto key = Bidegree{w, m};
    auto it = quotients_.find(key);
    if (it != quotients_.end()) return it->second;

    QuotientBasis qb;
    qb.gens = generators(level_, w, m);
    auto mat = relation_matrix(level_, w, m, opts_);
    EliminationOptions eo;
    eo.threads = opts_.threads;
    eo.want_kernel = false;
    auto elim = rank_and_kernel(mat, eo);

    std::vector<int> pivot_row_of_col(qb.gens.size(), -1);
    for (size_t k = 0; k < elim.pivot_columns.size(); ++k)
        pivot_row_of_col[elim.pivot_columns[k]] = static_cast<int>(k);

    std::vector<long> basis_pos(qb.gens.size(), -1);
    for (size_t j = 0; j < qb.gens.size(); ++j)
        if (pivot_row_of_col[j] < 0) {
            basis_pos[j] = static_cast<long>(qb.basis_cols.size());
            qb.basis_cols.push_back(static_cast<int>(j));
        }

    qb.classes.resize(qb.gens.size());
    for (size_t j = 0; j < qb.gens.size(); ++j) {
        if (pivot_row_of_col[j] < 0) {
            qb.classes[j] = {{basis_pos[j], Rational(1)}};
        } else {
            const auto& rr = elim.rref_rows[pivot_row_of_col[j]];
            for (const auto& [c, v] : rr)
                if (c != static_cast<int>(j) && basis_pos[c] >= 0)
                    qb.classes[j].push_back({basis_pos[c], -v});
        }
    }
    return quotients_.emplace(key, std::move(qb)).first->second;
}

namespace {

std::vector<Mono> monomials_of_degree(int deg, int nvars) {
    std::vector<Mono> out;
    Mono cur(nvars, 0);
    // Recursive enumeration in lexicographic order.
    struct Rec {
        int nvars, deg;
        std::vector<Mono>& out;
        Mono& cur;
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
    } rec{nvars, deg, out, cur};
    if (nvars == 0) return out;
    rec.go(0, deg);
    return out;
}

// Dense inverse by Gauss-Jordan; throws if singular.
std::vector<std::vector<Rational>> dense_inverse(std::vector<std::vector<Rational>> a) {
    const size_t n = a.size();
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw std::runtime_error("dense_inverse: singular");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        const Rational d = a[col][col];
        for (size_t j = 0; j < n; ++j) { a[col][j] /= d; inv[col][j] /= d; }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col] == 0) continue;
            const Rational f = a[i][col];
            for (size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

} // namespace

const std::vector<std::vector<Rational>>& Context::extractor(int w, int m) {
    auto key = Bidegree{w, m};
    auto it = extract_inv_.find(key);
    if (it != extract_inv_.end()) return it->second;

    const auto comps = compositions(w, m);
    const auto monos = monomials_of_degree(w - m, m);
    std::map<Mono, size_t> mono_idx;
    for (size_t i = 0; i < monos.size(); ++i) mono_idx[monos[i]] = i;
    if (comps.size() != monos.size())
        throw std::logic_error("extractor: basis size mismatch");

    // A[mono][comp] = coefficient of the monomial in prod (t_j - t_{m+1})^{n_j - 1}.
    std::vector<std::vector<Rational>> A(monos.size(), std::vector<Rational>(comps.size(), Rational(0)));
    for (size_t c = 0; c < comps.size(); ++c) {
        Poly p = poly_one(m);
        for (int j = 0; j < m; ++j)
            if (comps[c][j] > 1)
                p = poly_mul(p, poly_pow_linform(lf_sub(tvar(j, m), tvar(m, m)), comps[c][j] - 1));
        for (const auto& [mono, v] : p) A[mono_idx.at(mono)][c] = v;
    }
    return extract_inv_.emplace(key, dense_inverse(std::move(A))).first->second;
}

FormalSum<GenPair> Context::cobracket_pairs(const DihedralGen& g) {
    const int m = g.depth();
    const int w = g.weight();
    FormalSum<GenPair> result;
    if (m < 2) return result;

    std::vector<int> full = g.slots;
    full.push_back(0);
    std::vector<LinForm> t(m + 1);
    for (int j = 0; j <= m; ++j) t[j] = tvar(j, m);

    // rhs per monomial of the whole series; extract this composition at the end.
    std::map<Mono, FormalSum<GenPair>> rhs;
    for (int k = 2; k <= m; ++k) {
        for (int i = 0; i <= m; ++i) { // rotation by i
            auto rho = [&](int j) { return (j + i) % (m + 1); };
            std::vector<int> ls, rs;
            std::vector<LinForm> lt, rt;
            for (int j = 0; j < k; ++j) ls.push_back(full[rho(j)]);
            for (int j = 0; j < k - 1; ++j) lt.push_back(t[rho(j)]);
            lt.push_back(t[rho(m)]);
            for (int j = k - 1; j <= m; ++j) {
                rs.push_back(full[rho(j)]);
                rt.push_back(t[rho(j)]);
            }
            const int dl = k - 1, dr = m + 1 - k;
            for (int wl = dl; wl <= w - dr; ++wl) {
                const int wr = w - wl;
                auto L = series_weight_part(level_, ls, lt, wl);
                auto R = series_weight_part(level_, rs, rt, wr);
                for (const auto& [gl, pl] : L)
                    for (const auto& [gr, pr] : R) {
                        Poly prod = poly_mul(pl, pr);
                        for (const auto& [mono, c] : prod)
                            rhs[mono].add({gl, gr}, -c);
                    }
            }
        }
    }

    const auto& inv = extractor(w, m);
    const auto monos = monomials_of_degree(w - m, m);
    std::map<Mono, size_t> mono_idx;
    for (size_t i = 0; i < monos.size(); ++i) mono_idx[monos[i]] = i;
    const auto comps = compositions(w, m);
    size_t cidx = std::find(comps.begin(), comps.end(), g.comp) - comps.begin();
    for (const auto& [mono, fs] : rhs) {
        const Rational& coef = inv[cidx][mono_idx.at(mono)];
        if (coef == 0) continue;
        FormalSum<GenPair> scaled = fs;
        scaled *= coef;
        result += scaled;
    }
    return result;
}

long Context::Lambda2::index(const Bidegree& a, long ia, const Bidegree& b, long ib,
                             int& sign) const {
    Bidegree pa = a, pb = b;
    long i = ia, j = ib;
    sign = 1;
    if (pb < pa || (pa == pb && j < i)) {
        std::swap(pa, pb);
        std::swap(i, j);
        sign = -1;
    }
    if (pa == pb && i == j) { sign = 0; return -1; }
    for (const auto& blk : blocks) {
        if (blk.a != pa || blk.b != pb) continue;
        if (pa == pb) return blk.offset + (i * (2 * blk.dim_a - i - 1)) / 2 + (j - i - 1);
        return blk.offset + i * blk.dim_b + j;
    }
    sign = 0;
    return -1;
}

const Context::Lambda2& Context::lambda2(int w, int m) {
    auto key = Bidegree{w, m};
    auto it = lambda2_.find(key);
    if (it != lambda2_.end()) return it->second;

    Lambda2 l2;
    for (int m1 = 1; m1 < m; ++m1) {
        const int m2 = m - m1;
        for (int w1 = m1; w1 + m2 <= w; ++w1) {
            const int w2 = w - w1;
            Bidegree a{w1, m1}, b{w2, m2};
            if (b < a) continue;
            const long da = quotient(a.first, a.second).dim();
            const long db = quotient(b.first, b.second).dim();
            if (da == 0 || db == 0) continue;
            Lambda2::Block blk;
            blk.a = a;
            blk.b = b;
            blk.dim_a = da;
            blk.dim_b = db;
            blk.offset = l2.dim;
            l2.dim += (a == b) ? da * (da - 1) / 2 : da * db;
            l2.blocks.push_back(blk);
        }
    }
    return lambda2_.emplace(key, std::move(l2)).first->second;
}

std::map<long, Rational> Context::lambda2_coords(int w, int m, const FormalSum<GenPair>& pairs) {
    const auto& l2 = lambda2(w, m);
    std::map<long, Rational> out;
    for (const auto& [pr, c] : pairs.terms()) {
        const auto& [ga, gb] = pr;
        Bidegree ba{ga.weight(), ga.depth()}, bb{gb.weight(), gb.depth()};
        const auto& qa = quotient(ba.first, ba.second);
        const auto& qb = quotient(bb.first, bb.second);
        auto ia_it = std::lower_bound(qa.gens.begin(), qa.gens.end(), ga);
        auto ib_it = std::lower_bound(qb.gens.begin(), qb.gens.end(), gb);
        const auto& ca = qa.classes[ia_it - qa.gens.begin()];
        const auto& cb = qb.classes[ib_it - qb.gens.begin()];
        for (const auto& [pa, va] : ca)
            for (const auto& [pb, vb] : cb) {
                int sign = 0;
                long col = l2.index(ba, pa, bb, pb, sign);
                if (sign == 0) continue;
                Rational add = c * va * vb * sign;
                auto [it2, fresh] = out.try_emplace(col, add);
                if (!fresh) {
                    it2->second += add;
                    if (it2->second == 0) out.erase(it2);
                }
            }
    }
    return out;
}

std::map<long, Rational> Context::cobracket_coords(const FormalSum<DihedralGen>& x) {
    if (x.is_zero()) return {};
    int w = -1, m = -1;
    FormalSum<GenPair> pairs;
    for (const auto& [g, c] : x.terms()) {
        if (w < 0) { w = g.weight(); m = g.depth(); }
        else if (w != g.weight() || m != g.depth())
            throw std::invalid_argument("cobracket: input not homogeneous");
        auto p = cobracket_pairs(g);
        p *= c;
        pairs += p;
    }
    return lambda2_coords(w, m, pairs);
}

SparseMatrixQ cobracket_matrix(Context& ctx, int w, int m) {
    const auto gens = generators(ctx.level(), w, m);
    const auto& l2 = ctx.lambda2(w, m);
    SparseMatrixQ mat(static_cast<int>(l2.dim), static_cast<int>(gens.size()));
    for (size_t j = 0; j < gens.size(); ++j) {
        auto coords = ctx.cobracket_coords(FormalSum<DihedralGen>(gens[j]));
        for (const auto& [row, v] : coords) mat.set(static_cast<int>(row), static_cast<int>(j), v);
    }
    return mat;
}

// ---- cochain complex -------------------------------------------------------

struct CochainBuilder {
    Context& ctx;
    int w, m;

    using Factor = std::pair<Bidegree, long>;
    using Word = std::vector<Factor>;

    std::vector<Bidegree> pieces;
    std::map<Bidegree, long> piece_dim;
    // cobracket of each piece basis element decoded to ordered factor pairs
    std::map<Factor, std::vector<std::tuple<Factor, Factor, Rational>>> delta_cache;

    explicit CochainBuilder(Context& c, int w_, int m_) : ctx(c), w(w_), m(m_) {
        for (int mi = 1; mi <= m; ++mi)
            for (int wi = mi; wi <= w - (m - mi); ++wi) {
                long d = ctx.quotient(wi, mi).dim();
                if (d > 0) {
                    pieces.push_back({wi, mi});
                    piece_dim[{wi, mi}] = d;
                }
            }
        std::sort(pieces.begin(), pieces.end());
    }

    void enumerate(int k, std::vector<Word>& out) {
        Word cur;
        rec(k, w, m, {{-1, -1}, -1}, cur, out);
    }

    void rec(int k_left, int w_left, int m_left, Factor min_bound, Word& cur,
             std::vector<Word>& out) {
        if (k_left == 0) {
            if (w_left == 0 && m_left == 0) out.push_back(cur);
            return;
        }
        for (const auto& b : pieces) {
            if (b < min_bound.first) continue;
            if (b.second > m_left - (k_left - 1)) continue;
            if (b.first > w_left - (m_left - b.second)) continue;
            const long d = piece_dim.at(b);
            long start = (b == min_bound.first) ? min_bound.second + 1 : 0;
            for (long i = start; i < d; ++i) {
                cur.push_back({b, i});
                rec(k_left - 1, w_left - b.first, m_left - b.second, {b, i}, cur, out);
                cur.pop_back();
            }
        }
    }

    const std::vector<std::tuple<Factor, Factor, Rational>>& delta_factor(const Factor& f) {
        auto it = delta_cache.find(f);
        if (it != delta_cache.end()) return it->second;
        const auto& q = ctx.quotient(f.first.first, f.first.second);
        const DihedralGen& rep = q.gens[q.basis_cols[f.second]];
        auto pairs = ctx.cobracket_pairs(rep);
        auto coords = ctx.lambda2_coords(f.first.first, f.first.second, pairs);
        const auto& l2 = ctx.lambda2(f.first.first, f.first.second);
        std::vector<std::tuple<Factor, Factor, Rational>> decoded;
        for (const auto& [col, v] : coords) {
            // invert the block layout
            for (const auto& blk : l2.blocks) {
                long size = (blk.a == blk.b) ? blk.dim_a * (blk.dim_a - 1) / 2 : blk.dim_a * blk.dim_b;
                if (col < blk.offset || col >= blk.offset + size) continue;
                long off = col - blk.offset;
                long ia, ib;
                if (blk.a == blk.b) {
                    ia = 0;
                    long rem = off;
                    while (rem >= blk.dim_a - ia - 1) { rem -= blk.dim_a - ia - 1; ++ia; }
                    ib = ia + 1 + rem;
                } else {
                    ia = off / blk.dim_b;
                    ib = off % blk.dim_b;
                }
                decoded.push_back({{blk.a, ia}, {blk.b, ib}, v});
                break;
            }
        }
        return delta_cache.emplace(f, std::move(decoded)).first->second;
    }
};

ComplexReport cochain_complex(Context& ctx, int w, int m) {
    CochainBuilder cb(ctx, w, m);
    ComplexReport rep;
    std::vector<std::vector<CochainBuilder::Word>> bases(m);
    std::vector<std::map<CochainBuilder::Word, long>> index(m);
    for (int k = 1; k <= m; ++k) {
        cb.enumerate(k, bases[k - 1]);
        for (size_t i = 0; i < bases[k - 1].size(); ++i) index[k - 1][bases[k - 1][i]] = static_cast<long>(i);
        rep.term_dims.push_back(static_cast<long>(bases[k - 1].size()));
    }

    std::vector<int> ranks(m, 0);
    for (int k = 1; k < m; ++k) {
        SparseMatrixQ d(static_cast<int>(bases[k].size()), static_cast<int>(bases[k - 1].size()));
        for (size_t j = 0; j < bases[k - 1].size(); ++j) {
            const auto& word = bases[k - 1][j];
            for (size_t pos = 0; pos < word.size(); ++pos) {
                const Rational lead = (pos % 2 == 0) ? Rational(1) : Rational(-1);
                for (const auto& [fa, fb, c] : cb.delta_factor(word[pos])) {
                    // assemble the new word with the pair in place of position pos
                    CochainBuilder::Word nw;
                    nw.reserve(word.size() + 1);
                    for (size_t t2 = 0; t2 < pos; ++t2) nw.push_back(word[t2]);
                    nw.push_back(fa);
                    nw.push_back(fb);
                    for (size_t t2 = pos + 1; t2 < word.size(); ++t2) nw.push_back(word[t2]);
                    // sort with parity, dropping duplicate factors
                    int parity = 1;
                    bool dup = false;
                    for (size_t a = 0; a < nw.size() && !dup; ++a)
                        for (size_t b2 = a + 1; b2 < nw.size() && !dup; ++b2) {
                            if (nw[a] == nw[b2]) dup = true;
                            else if (nw[b2] < nw[a]) parity = -parity;
                        }
                    if (dup) continue;
                    std::sort(nw.begin(), nw.end());
                    auto it = index[k].find(nw);
                    if (it == index[k].end()) continue;
                    const Rational add = lead * c * parity;
                    d.set(static_cast<int>(it->second), static_cast<int>(j),
                          d.get(static_cast<int>(it->second), static_cast<int>(j)) + add);
                }
            }
        }
        EliminationOptions eo;
        eo.want_kernel = false;
        ranks[k] = rank_and_kernel(d, eo).rank;
        rep.diffs.push_back(std::move(d));
    }

    for (int k = 1; k <= m; ++k) {
        long dim_k = rep.term_dims[k - 1];
        long rank_out = (k < m) ? ranks[k] : 0;
        long rank_in = (k >= 2) ? ranks[k - 1] : 0;
        rep.cohomology.push_back(dim_k - rank_out - rank_in);
    }
    return rep;
}

long ComplexReport::euler() const {
    long e = 0;
    for (size_t k = 0; k < term_dims.size(); ++k)
        e += (k % 2 == 0 ? 1 : -1) * term_dims[k];
    return e;
}

std::string generator_sidecar_json(int level, int w, int m) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& g : generators(level, w, m)) j.push_back(g.serialize());
    return j.dump();
}

} // namespace hicyclo::dihedral
