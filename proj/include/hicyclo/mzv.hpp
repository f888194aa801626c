#pragma once

#include "hicyclo/formal_sum.hpp"

#include <string>
#include <tuple>
#include <vector>

namespace hicyclo::mzv {

// Multiple polylogarithm symbol Li_{n_1..n_m}(zeta^{a_1},..,zeta^{a_m}) at
// level N; classical MZVs are level 1 (all arguments the identity).
struct ZSymbol {
    int level = 1;
    std::vector<int> comp; // n_1..n_m
    std::vector<int> args; // residues mod level

    int weight() const;
    int depth() const { return static_cast<int>(comp.size()); }
    // last part > 1, or last argument away from the identity
    bool convergent() const;
    std::string str() const;

    bool operator<(const ZSymbol& o) const {
        return std::tie(level, comp, args) < std::tie(o.level, o.comp, o.args);
    }
    bool operator==(const ZSymbol& o) const = default;
};

ZSymbol zeta(std::vector<int> comp); // classical, level 1

// Iterated-integral word over the forms dt/t (letter -1) and dt/(c - t) for
// c = zeta^g (letter g >= 0); the integration endpoint is normalized to 1.
struct IntegralWord {
    int level = 1;
    std::vector<int> letters;

    int weight() const { return static_cast<int>(letters.size()); }
    int depth() const;
    bool convergent() const; // starts with an a-letter, ends with dt/t

    bool operator<(const IntegralWord& o) const {
        return std::tie(level, letters) < std::tie(o.level, o.letters);
    }
    bool operator==(const IntegralWord& o) const = default;
};

// Quasi-shuffle product of the defining series, contraction terms included.
FormalSum<ZSymbol> stuffle(const ZSymbol& u, const ZSymbol& v);

IntegralWord comp_to_word(const ZSymbol& z);
ZSymbol word_to_comp(const IntegralWord& w); // throws if the word starts with dt/t

FormalSum<IntegralWord> shuffle_product(const IntegralWord& u, const IntegralWord& v);

// stuffle(u,v) - shuffle(u,v) pulled back to symbols; evaluates to zero.
FormalSum<ZSymbol> double_shuffle_identity(const ZSymbol& u, const ZSymbol& v);

// d_k = d_{k-2} + d_{k-3}, d_0 = 1, d_1 = 0, d_2 = 1.
long zeta_dim_bound(int k);

// Degree-k dimension of the free graded Lie algebra on generators of the
// given degrees (graded Witt formula).
long witt_dims(const std::vector<int>& generator_degrees, int k);

// Rank of K_{2n-1}(Z[zeta_N, 1/N]) x Q per the Borel/cyclotomic tables.
long ktheory_dims(int N, int n);

// Identity certificate consumed by the numerics module: a signed sum of
// symbols plus two-factor products that adds to zero.
struct Certificate {
    struct Term {
        Rational coef;
        ZSymbol z;
    };
    struct Product {
        Rational coef;
        ZSymbol a, b;
    };
    int level = 1;
    std::vector<Term> terms;
    std::vector<Product> products;

    std::string to_json() const;
    static Certificate from_json(const std::string& text);
};

// zeta(a)*zeta(b) expanded by the series product: the product term minus the
// stuffle expansion.
Certificate stuffle_certificate(const ZSymbol& u, const ZSymbol& v);
// stuffle minus shuffle, no product term.
Certificate double_shuffle_certificate(const ZSymbol& u, const ZSymbol& v);
// Li_n(x^l) = l^{n-1} * sum over l-th roots y of x of Li_n(y), depth 1.
Certificate distribution_certificate(int level, int n, int arg, int l);

} // namespace hicyclo::mzv
