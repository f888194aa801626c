#pragma once

#include "hicyclo/combinatorics.hpp"
#include "hicyclo/dihedral.hpp"
#include "hicyclo/formal_sum.hpp"

#include <map>
#include <vector>

namespace hicyclo::derivations {

// Word in the free associative algebra on {Y} u {X_g : g in Z/N};
// letter 0 is Y, letter 1+g is X_g (the CyclicWord encoding, linearized).
struct AssocWord {
    int level = 1;
    std::vector<int> letters;
    int weight() const { return static_cast<int>(letters.size()); }
    int xcount() const;
    bool operator<(const AssocWord& o) const {
        return std::tie(level, letters) < std::tie(o.level, o.letters);
    }
    bool operator==(const AssocWord& o) const = default;
};

using WordSum = FormalSum<AssocWord>;

WordSum concat(const WordSum& a, const WordSum& b);
WordSum commutator(const WordSum& a, const WordSum& b);

// Special derivation X_j -> [S_j, X_j], stored by its witnesses; index 0 is
// Y, index 1+g is X_g.
struct Derivation {
    int level = 1;
    std::vector<WordSum> witness; // size level + 1

    Derivation() = default;
    explicit Derivation(int N) : level(N), witness(N + 1) {}
    bool is_zero() const;
};

// Reads around the cycle from each occurrence of the letter.
WordSum cyclic_partial(const CyclicWord& c, int letter);

// kappa C (X_j) = [d_{X_j} C, X_j]; pure powers map to the zero derivation.
Derivation kappa(const CyclicWord& c);

// D(X_letter) = [S_letter, X_letter]
WordSum derivation_value(const Derivation& d, int letter);
// D applied to a word sum by the Leibniz rule.
WordSum derivation_apply(const Derivation& d, const WordSum& x);

// [d1, d2] via S''_i = D(S'_i) - D'(S_i) + [S'_i, S_i].
Derivation derivation_bracket(const Derivation& a, const Derivation& b);

// D(X_inf) expanded; zero iff D is special. Witness-built derivations are
// special by construction only when the witnesses cooperate, so this check
// is meaningful.
WordSum special_defect(const Derivation& d);

// Relabel the group letters by h (equivariance checks).
CyclicWord relabel(const CyclicWord& c, int h);
Derivation relabel(const Derivation& d, int h);

// Values truncated to words with exactly m X-letters (the depth-graded part).
bool gr_equal(const Derivation& a, const Derivation& b, int m);
bool gr_is_zero(const Derivation& a, int m);

// All bidegree-(w,m) cyclic words (canonical forms) at the context level,
// grouped into shift orbits; each entry is (orbit representative, |Aut|).
std::vector<std::pair<CyclicWord, int>> word_orbits(int level, int w, int m);

// Symbol paired with a cyclic word: read the least rotation that starts at
// an X-letter as X_{g_1} Y^{n_1-1} ... X_{g_m} Y^{n_m-1} and form
// I_{n_1..n_m}(g_1:..:g_m:e).
dihedral::DihedralGen word_symbol(const CyclicWord& c);

// xi of a linear functional on D_{w,m} given by coordinates over the
// quotient basis of ctx.quotient(w, m).
Derivation xi_functional(dihedral::Context& ctx, int w, int m,
                         const std::map<long, Rational>& phi);
// xi of the dual of one quotient basis element.
Derivation xi_dual(dihedral::Context& ctx, int w, int m, long basis_pos);

} // namespace hicyclo::derivations
