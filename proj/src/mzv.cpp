#include "hicyclo/mzv.hpp"

#include "hicyclo/combinatorics.hpp"

#include <json.hpp>

#include <numeric>
#include <stdexcept>

namespace hicyclo::mzv {

namespace {
int norm_mod(long x, int n) { return static_cast<int>(((x % n) + n) % n); }
} // namespace

int ZSymbol::weight() const { return std::accumulate(comp.begin(), comp.end(), 0); }

bool ZSymbol::convergent() const {
    if (comp.empty()) return true;
    return comp.back() > 1 || args.back() != 0;
}

std::string ZSymbol::str() const {
    std::string s = "Li[";
    for (size_t i = 0; i < comp.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(comp[i]);
    }
    s += "](";
    for (size_t i = 0; i < args.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(args[i]);
    }
    s += ")@";
    s += std::to_string(level);
    return s;
}

ZSymbol zeta(std::vector<int> comp) {
    ZSymbol z;
    z.level = 1;
    z.args.assign(comp.size(), 0);
    z.comp = std::move(comp);
    return z;
}

int IntegralWord::depth() const {
    int d = 0;
    for (int l : letters) d += (l >= 0);
    return d;
}

bool IntegralWord::convergent() const {
    return !letters.empty() && letters.front() >= 0 && letters.back() < 0;
}

namespace {

using Seq = std::vector<std::pair<int, int>>; // (part, arg)

void stuffle_rec(const Seq& u, const Seq& v, size_t iu, size_t iv, int level, Seq& cur,
                 FormalSum<ZSymbol>& out) {
    if (iu == 0 && iv == 0) {
        ZSymbol z;
        z.level = level;
        for (auto it = cur.rbegin(); it != cur.rend(); ++it) {
            z.comp.push_back(it->first);
            z.args.push_back(it->second);
        }
        out.add(z, Rational(1));
        return;
    }
    // Build from the largest summation index down; cur holds the tail.
    if (iu > 0) {
        cur.push_back(u[iu - 1]);
        stuffle_rec(u, v, iu - 1, iv, level, cur, out);
        cur.pop_back();
    }
    if (iv > 0) {
        cur.push_back(v[iv - 1]);
        stuffle_rec(u, v, iu, iv - 1, level, cur, out);
        cur.pop_back();
    }
    if (iu > 0 && iv > 0) {
        cur.push_back({u[iu - 1].first + v[iv - 1].first,
                       norm_mod(u[iu - 1].second + v[iv - 1].second, level)});
        stuffle_rec(u, v, iu - 1, iv - 1, level, cur, out);
        cur.pop_back();
    }
}

} // namespace

FormalSum<ZSymbol> stuffle(const ZSymbol& u, const ZSymbol& v) {
    if (u.level != v.level) throw std::invalid_argument("stuffle: level mismatch");
    Seq su, sv;
    for (size_t i = 0; i < u.comp.size(); ++i) su.push_back({u.comp[i], u.args[i]});
    for (size_t i = 0; i < v.comp.size(); ++i) sv.push_back({v.comp[i], v.args[i]});
    FormalSum<ZSymbol> out;
    Seq cur;
    stuffle_rec(su, sv, su.size(), sv.size(), u.level, cur, out);
    return out;
}

IntegralWord comp_to_word(const ZSymbol& z) {
    IntegralWord w;
    w.level = z.level;
    // Letter i carries c_i = (x_i x_{i+1} ... x_m)^{-1}: the cumulative-product
    // slots of the iterated integral, scaled so the endpoint is 1.
    const int m = z.depth();
    std::vector<int> suffix(m + 1, 0);
    for (int i = m - 1; i >= 0; --i) suffix[i] = norm_mod(suffix[i + 1] + z.args[i], z.level);
    for (int i = 0; i < m; ++i) {
        w.letters.push_back(norm_mod(-suffix[i], z.level));
        for (int j = 1; j < z.comp[i]; ++j) w.letters.push_back(-1);
    }
    return w;
}

ZSymbol word_to_comp(const IntegralWord& w) {
    if (!w.letters.empty() && w.letters.front() < 0)
        throw std::invalid_argument("word_to_comp: word starts with dt/t");
    ZSymbol z;
    z.level = w.level;
    std::vector<int> cs;
    for (size_t i = 0; i < w.letters.size(); ++i) {
        if (w.letters[i] >= 0) {
            cs.push_back(w.letters[i]);
            z.comp.push_back(1);
        } else {
            ++z.comp.back();
        }
    }
    const int m = static_cast<int>(cs.size());
    for (int i = 0; i < m; ++i) {
        const int next = (i + 1 < m) ? cs[i + 1] : 0;
        z.args.push_back(norm_mod(next - cs[i], w.level));
    }
    return z;
}

FormalSum<IntegralWord> shuffle_product(const IntegralWord& u, const IntegralWord& v) {
    if (u.level != v.level) throw std::invalid_argument("shuffle_product: level mismatch");
    const int p = u.weight(), q = v.weight();
    FormalSum<IntegralWord> out;
    for (const auto& s : shuffles(p, q)) {
        IntegralWord w;
        w.level = u.level;
        w.letters.reserve(p + q);
        for (int idx : s) w.letters.push_back(idx < p ? u.letters[idx] : v.letters[idx - p]);
        out.add(w, Rational(1));
    }
    return out;
}

FormalSum<ZSymbol> double_shuffle_identity(const ZSymbol& u, const ZSymbol& v) {
    if (!u.convergent() || !v.convergent())
        throw std::invalid_argument("double_shuffle_identity: divergent symbol");
    FormalSum<ZSymbol> out = stuffle(u, v);
    auto sh = shuffle_product(comp_to_word(u), comp_to_word(v));
    for (const auto& [w, c] : sh.terms()) out.add(word_to_comp(w), -c);
    return out;
}

long zeta_dim_bound(int k) {
    if (k < 0) throw std::invalid_argument("zeta_dim_bound: negative weight");
    std::vector<long> d(std::max(3, k + 1));
    d[0] = 1;
    d[1] = 0;
    d[2] = 1;
    for (int i = 3; i <= k; ++i) d[i] = d[i - 2] + d[i - 3];
    return d[k];
}

long witt_dims(const std::vector<int>& generator_degrees, int k) {
    if (k < 1) throw std::invalid_argument("witt_dims: degree must be positive");
    // f(x) = sum of x^{deg}; q_m = m [x^m] (-log(1 - f)); k l_k = sum_{d|k} mu(d) q_{k/d}.
    std::vector<Rational> f(k + 1, Rational(0));
    for (int d : generator_degrees)
        if (d >= 1 && d <= k) f[d] += 1;
    std::vector<Rational> fn(k + 1, Rational(0)); // f^n truncated
    fn[0] = 1;
    std::vector<Rational> logsum(k + 1, Rational(0));
    for (int n = 1; n <= k; ++n) {
        std::vector<Rational> next(k + 1, Rational(0));
        for (int i = 0; i <= k; ++i) {
            if (fn[i] == 0) continue;
            for (int j = 1; i + j <= k; ++j) next[i + j] += fn[i] * f[j];
        }
        fn = std::move(next);
        for (int i = 0; i <= k; ++i) logsum[i] += fn[i] / n;
    }
    auto mobius = [](int n) {
        int mu = 1;
        for (int p = 2; p * p <= n; ++p) {
            if (n % p) continue;
            n /= p;
            if (n % p == 0) return 0;
            mu = -mu;
        }
        if (n > 1) mu = -mu;
        return mu;
    };
    Rational acc = 0;
    for (int d = 1; d <= k; ++d)
        if (k % d == 0) acc += Rational(mobius(d)) * Rational(k / d) * logsum[k / d];
    acc /= k;
    if (acc.get_den() != 1) throw std::logic_error("witt_dims: non-integer result");
    return static_cast<long>(acc.get_num().get_si());
}

namespace {

int euler_phi(int n) {
    int r = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}

int prime_factor_count(int n) {
    int c = 0;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        ++c;
        while (n % p == 0) n /= p;
    }
    if (n > 1) ++c;
    return c;
}

} // namespace

long ktheory_dims(int N, int n) {
    if (N < 1 || n < 1) throw std::invalid_argument("ktheory_dims: bad arguments");
    if (N <= 2) return (n > 1 && n % 2 == 1) ? 1 : 0;
    if (n == 1) return euler_phi(N) / 2 + prime_factor_count(N) - 1;
    return euler_phi(N) / 2;
}

namespace {

nlohmann::json symbol_json(const ZSymbol& z) {
    return {{"comp", z.comp}, {"args", z.args}};
}

ZSymbol symbol_from_json(const nlohmann::json& j, int level) {
    ZSymbol z;
    z.level = level;
    z.comp = j.at("comp").get<std::vector<int>>();
    z.args = j.at("args").get<std::vector<int>>();
    return z;
}

} // namespace

std::string Certificate::to_json() const {
    nlohmann::json j;
    j["level"] = level;
    auto ts = nlohmann::json::array();
    for (const auto& t : terms) {
        auto e = symbol_json(t.z);
        e["coef"] = rat_str(t.coef);
        ts.push_back(std::move(e));
    }
    j["terms"] = std::move(ts);
    auto ps = nlohmann::json::array();
    for (const auto& p : products) {
        nlohmann::json e;
        e["coef"] = rat_str(p.coef);
        e["factors"] = nlohmann::json::array({symbol_json(p.a), symbol_json(p.b)});
        ps.push_back(std::move(e));
    }
    j["products"] = std::move(ps);
    return j.dump();
}

Certificate Certificate::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    Certificate c;
    c.level = j.at("level").get<int>();
    for (const auto& e : j.at("terms"))
        c.terms.push_back({rat_parse(e.at("coef").get<std::string>()), symbol_from_json(e, c.level)});
    for (const auto& e : j.at("products"))
        c.products.push_back({rat_parse(e.at("coef").get<std::string>()),
                              symbol_from_json(e.at("factors").at(0), c.level),
                              symbol_from_json(e.at("factors").at(1), c.level)});
    return c;
}

Certificate stuffle_certificate(const ZSymbol& u, const ZSymbol& v) {
    Certificate c;
    c.level = u.level;
    c.products.push_back({Rational(1), u, v});
    const auto expansion = stuffle(u, v);
    for (const auto& [z, coef] : expansion.terms()) c.terms.push_back({-coef, z});
    return c;
}

Certificate double_shuffle_certificate(const ZSymbol& u, const ZSymbol& v) {
    Certificate c;
    c.level = u.level;
    const auto identity = double_shuffle_identity(u, v);
    for (const auto& [z, coef] : identity.terms()) c.terms.push_back({coef, z});
    return c;
}

Certificate distribution_certificate(int level, int n, int arg, int l) {
    if (level % l != 0 || l < 2) throw std::invalid_argument("distribution_certificate: l must divide N");
    Certificate c;
    c.level = level;
    ZSymbol lhs;
    lhs.level = level;
    lhs.comp = {n};
    lhs.args = {norm_mod(static_cast<long>(arg) * l, level)};
    c.terms.push_back({Rational(1), lhs});
    Integer scale = 1;
    for (int i = 1; i < n; ++i) scale *= l;
    for (int j = 0; j < l; ++j) {
        ZSymbol t;
        t.level = level;
        t.comp = {n};
        t.args = {norm_mod(arg + static_cast<long>(j) * (level / l), level)};
        c.terms.push_back({-Rational(scale), t});
    }
    return c;
}

} // namespace hicyclo::mzv
